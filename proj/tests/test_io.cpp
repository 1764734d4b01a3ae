#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "duowalk/config.hpp"
#include "duowalk/csv.hpp"
#include "duowalk/errors.hpp"
#include "duowalk/experiments.hpp"

using namespace duowalk;

namespace {

namespace fs = std::filesystem;

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("duowalk_test_" + name);
}

std::size_t line_count(const fs::path& path) {
    std::ifstream in(path);
    std::size_t lines = 0;
    std::string line;
    while (std::getline(in, line)) ++lines;
    return lines;
}

}  // namespace

TEST_CASE("reals are printed with 12 significant digits in scientific form") {
    CHECK(format_real(0.5) == "5.00000000000e-01");
    CHECK(format_real(0.0) == "0.00000000000e+00");
    CHECK(format_real(-1.0 / 3.0) == "-3.33333333333e-01");
    CHECK(format_real(70.0) == "7.00000000000e+01");
}

TEST_CASE("a 141-sample trace writes 141 data rows plus the header") {
    const ChainSpec chain{5, 1.0, 1.0};
    const EvolutionTrace trace =
        run_timeseries(chain, InitialCondition::phased(2, 3, 0.0), PropagatorConfig{}, 70.0);
    REQUIRE(trace.records.size() == 141);

    const fs::path path = temp_file("timeseries.csv");
    write_timeseries_csv(trace, path);
    CHECK(line_count(path) == 142);

    const CsvTable table = read_csv(path);
    CHECK(table.columns ==
          std::vector<std::string>{"t", "gamma_a", "gamma_diag", "gamma_offdiag", "c_l1",
                                   "norm_error", "w_sym", "w_antisym"});
    CHECK(table.rows.size() == 141);
    fs::remove(path);
}

TEST_CASE("timeseries round-trips within 1e-10 per field") {
    const ChainSpec chain{15, 1.0, 3.0};
    const EvolutionTrace trace =
        run_timeseries(chain, InitialCondition::phased(7, 8, 1.0), PropagatorConfig{}, 5.0);
    const fs::path path = temp_file("roundtrip.csv");
    write_timeseries_csv(trace, path);
    const CsvTable table = read_csv(path);

    REQUIRE(table.rows.size() == trace.records.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const ObservableRecord& rec = trace.records[i];
        CHECK(std::abs(table.rows[i][0] - trace.times[i]) < 1e-10);
        CHECK(std::abs(table.rows[i][1] - rec.gamma_a) < 1e-10);
        CHECK(std::abs(table.rows[i][2] - rec.gamma_diag) < 1e-10);
        CHECK(std::abs(table.rows[i][3] - rec.gamma_offdiag) < 1e-10);
        CHECK(std::abs(table.rows[i][4] - rec.c_l1) < 1e-10);
        CHECK(std::abs(table.rows[i][6] - rec.w_sym) < 1e-10);
    }
    fs::remove(path);
}

TEST_CASE("a 33x41 map writes 1353 data rows") {
    SweepSpec sweep;
    sweep.chain = ChainSpec{3, 1.0, 0.0};
    sweep.ic = InitialCondition::phased(1, 2, 0.0);
    sweep.u_grid = parse_grid("0:20:41", "u_grid");
    sweep.theta_grid = parse_grid("0:" + std::to_string(std::numbers::pi) + ":33", "theta_grid");
    sweep.t_final = 0.1;
    sweep.propagation.sample_stride = 5;

    const MapResult map = run_max_purity_map(sweep, 2);
    REQUIRE(map.cells.size() == 1353);

    const fs::path path = temp_file("map.csv");
    write_map_csv(map, path);
    CHECK(line_count(path) == 1354);

    const CsvTable table = read_csv(path);
    CHECK(table.columns ==
          std::vector<std::string>{"theta", "u", "gamma_max", "t_at_max", "gamma_late_avg"});
    CHECK(table.rows.size() == 1353);
    fs::remove(path);
}

TEST_CASE("u-sweep csv gains the slice column only when requested") {
    SweepSpec sweep;
    sweep.chain = ChainSpec{9, 1.0, 0.0};
    sweep.ic = InitialCondition::phased(4, 5, 0.0);
    sweep.u_grid = {0.0, 1.0};
    sweep.t_final = 1.0;

    const fs::path path = temp_file("usweep.csv");
    write_u_sweep_csv(run_u_sweep(sweep, 1), path);
    CHECK(read_csv(path).columns ==
          std::vector<std::string>{"u", "gamma_max", "t_at_max", "gamma_late_avg"});

    write_u_sweep_csv(run_u_sweep(sweep, 1, 0.5), path);
    CHECK(read_csv(path).columns == std::vector<std::string>{"u", "gamma_max", "t_at_max",
                                                             "gamma_late_avg", "gamma_at_slice"});
    fs::remove(path);
}

TEST_CASE("failed cells serialize as nan and parse back") {
    SweepSpec sweep;
    sweep.chain = ChainSpec{9, 1.0, 0.0};
    sweep.ic = InitialCondition::phased(4, 5, 0.0);
    sweep.u_grid = {-2.0, 1.0};
    sweep.t_final = 1.0;

    const fs::path path = temp_file("failed.csv");
    write_u_sweep_csv(run_u_sweep(sweep, 1), path);
    const CsvTable table = read_csv(path);
    CHECK(std::isnan(table.rows[0][1]));
    CHECK(!std::isnan(table.rows[1][1]));
    fs::remove(path);
}

TEST_CASE("correlation csv uses 1-based indices and keeps the total probability") {
    const ChainSpec chain{4, 1.0, 0.0};
    const TwoParticleState psi = build_initial_state(chain, {2, 3, 0.0});
    const fs::path path = temp_file("corr.csv");
    write_correlation_csv(correlation_map(psi), 4, path);

    const CsvTable table = read_csv(path);
    CHECK(table.columns == std::vector<std::string>{"m", "n", "prob"});
    REQUIRE(table.rows.size() == 16);
    CHECK(table.rows.front()[0] == 1.0);
    CHECK(table.rows.back()[0] == 4.0);
    double sum = 0.0;
    for (const auto& row : table.rows) sum += row[2];
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
    fs::remove(path);
}

TEST_CASE("csv writer reports unwritable destinations") {
    const ChainSpec chain{5, 1.0, 0.0};
    const EvolutionTrace trace =
        run_timeseries(chain, InitialCondition::phased(2, 3, 0.0), PropagatorConfig{}, 1.0);
    CHECK_THROWS_AS(write_timeseries_csv(trace, "/nonexistent-dir/x.csv"), IoError);
}

TEST_CASE("config files parse every documented key") {
    const fs::path path = temp_file("config.txt");
    {
        std::ofstream out(path);
        out << "# comment line\n"
            << "n_sites = 40\n"
            << "j = 1.5\n"
            << "u = 7.25      # trailing comment\n"
            << "m0 = 20\n"
            << "n0 = 21\n"
            << "theta = 0.5\n"
            << "dt = 0.02\n"
            << "order = 12\n"
            << "t_final = 30\n"
            << "sample_stride = 25\n"
            << "u_grid = 0,0.5,1\n"
            << "theta_grid = 0:3.14:5\n"
            << "late_window_fraction = 0.25\n"
            << "out_path = run.csv\n";
    }
    const RunConfig cfg = load_config_file(path);
    CHECK(cfg.n_sites == 40);
    CHECK(cfg.j == 1.5);
    CHECK(cfg.u == 7.25);
    CHECK(cfg.m0 == 20);
    CHECK(cfg.n0 == 21);
    CHECK(cfg.theta == 0.5);
    CHECK(cfg.dt == 0.02);
    CHECK(cfg.order == 12);
    CHECK(cfg.t_final == 30.0);
    CHECK(cfg.sample_stride == 25);
    CHECK(cfg.u_grid == std::vector<double>{0.0, 0.5, 1.0});
    REQUIRE(cfg.theta_grid.size() == 5);
    CHECK(cfg.theta_grid.front() == 0.0);
    CHECK(cfg.theta_grid.back() == doctest::Approx(3.14).epsilon(1e-12));
    CHECK(cfg.late_window_fraction == 0.25);
    CHECK(cfg.out_path == "run.csv");
    fs::remove(path);
}

TEST_CASE("config rejects unknown keys and bad values, naming them") {
    const fs::path path = temp_file("bad_config.txt");
    {
        std::ofstream out(path);
        out << "frobnicate = 3\n";
    }
    CHECK_THROWS_WITH_AS(load_config_file(path), doctest::Contains("frobnicate"), InputError);
    {
        std::ofstream out(path);
        out << "n_sites = twelve\n";
    }
    CHECK_THROWS_WITH_AS(load_config_file(path), doctest::Contains("n_sites"), InputError);
    {
        std::ofstream out(path);
        out << "just a line\n";
    }
    CHECK_THROWS_AS(load_config_file(path), InputError);
    fs::remove(path);
}

TEST_CASE("theta=product selects the product input") {
    const fs::path path = temp_file("product_config.txt");
    {
        std::ofstream out(path);
        out << "theta = product\n";
    }
    const RunConfig cfg = load_config_file(path);
    CHECK(cfg.product_input);
    CHECK(!cfg.theta.has_value());
    fs::remove(path);
}

TEST_CASE("grid literals: comma list, linspace, and errors") {
    CHECK(parse_grid("1,2,3.5", "g") == std::vector<double>{1.0, 2.0, 3.5});
    CHECK(parse_grid("0:1:3", "g") == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(parse_grid("2:2:1", "g") == std::vector<double>{2.0});
    CHECK_THROWS_AS(parse_grid("0:1", "g"), InputError);
    CHECK_THROWS_AS(parse_grid("a,b", "g"), InputError);
    CHECK_THROWS_AS(parse_grid("", "g"), InputError);
    CHECK_THROWS_AS(parse_grid("0:1:0", "g"), InputError);
}

TEST_CASE("environment overrides are read from DUOWALK_ variables") {
    setenv("DUOWALK_U", "3.25", 1);
    setenv("DUOWALK_N_SITES", "17", 1);
    setenv("DUOWALK_OUT_PATH", "env.csv", 1);
    const RunConfig cfg = env_overrides();
    unsetenv("DUOWALK_U");
    unsetenv("DUOWALK_N_SITES");
    unsetenv("DUOWALK_OUT_PATH");
    CHECK(cfg.u == 3.25);
    CHECK(cfg.n_sites == 17);
    CHECK(cfg.out_path == "env.csv");
    CHECK(!cfg.theta.has_value());
}

TEST_CASE("merge precedence: later sources win field by field") {
    RunConfig base;
    base.u = 1.0;
    base.n_sites = 10;
    base.theta = 0.5;

    RunConfig higher;
    higher.u = 2.0;
    higher.product_input = true;  // clears theta

    base.merge_from(higher);
    CHECK(base.u == 2.0);
    CHECK(base.n_sites == 10);
    CHECK(base.product_input);
    CHECK(!base.theta.has_value());

    RunConfig theta_again;
    theta_again.theta = 1.0;
    base.merge_from(theta_again);
    CHECK(base.theta == 1.0);
    CHECK(!base.product_input);
}
