#include "duowalk/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>

#include "duowalk/errors.hpp"

namespace duowalk {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& value, const std::string& key) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end != value.c_str() + value.size() || value.empty())
        throw InputError(key + ": expected a real number, got '" + value + "'");
    return v;
}

int to_int(const std::string& value, const std::string& key) {
    char* end = nullptr;
    const long v = std::strtol(value.c_str(), &end, 10);
    if (end != value.c_str() + value.size() || value.empty())
        throw InputError(key + ": expected an integer, got '" + value + "'");
    return static_cast<int>(v);
}

void assign(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "n_sites")
        cfg.n_sites = to_int(value, key);
    else if (key == "j")
        cfg.j = to_double(value, key);
    else if (key == "u")
        cfg.u = to_double(value, key);
    else if (key == "m0")
        cfg.m0 = to_int(value, key);
    else if (key == "n0")
        cfg.n0 = to_int(value, key);
    else if (key == "theta") {
        if (value == "product") {
            cfg.product_input = true;
            cfg.theta.reset();
        } else {
            cfg.theta = to_double(value, key);
            cfg.product_input = false;
        }
    } else if (key == "dt")
        cfg.dt = to_double(value, key);
    else if (key == "order")
        cfg.order = to_int(value, key);
    else if (key == "t_final")
        cfg.t_final = to_double(value, key);
    else if (key == "sample_stride")
        cfg.sample_stride = to_int(value, key);
    else if (key == "u_grid")
        cfg.u_grid = parse_grid(value, key);
    else if (key == "theta_grid")
        cfg.theta_grid = parse_grid(value, key);
    else if (key == "late_window_fraction")
        cfg.late_window_fraction = to_double(value, key);
    else if (key == "out_path")
        cfg.out_path = value;
    else
        throw InputError("unknown config key '" + key + "'");
}

}  // namespace

std::vector<double> parse_grid(const std::string& text, const std::string& key) {
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        // lo:hi:count linspace
        const auto first = text.find(':');
        const auto second = text.find(':', first + 1);
        if (second == std::string::npos)
            throw InputError(key + ": linspace grid must be lo:hi:count, got '" + text + "'");
        const double lo = to_double(trim(text.substr(0, first)), key);
        const double hi = to_double(trim(text.substr(first + 1, second - first - 1)), key);
        const int count = to_int(trim(text.substr(second + 1)), key);
        if (count < 1) throw InputError(key + ": grid count must be >= 1");
        if (count == 1) {
            grid.push_back(lo);
            return grid;
        }
        grid.reserve(count);
        for (int i = 0; i < count; ++i)
            grid.push_back(lo + (hi - lo) * static_cast<double>(i) / (count - 1));
        return grid;
    }
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string item =
            trim(comma == std::string::npos ? text.substr(pos) : text.substr(pos, comma - pos));
        if (!item.empty()) grid.push_back(to_double(item, key));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (grid.empty()) throw InputError(key + ": empty grid");
    return grid;
}

void RunConfig::merge_from(const RunConfig& higher) {
    if (higher.n_sites) n_sites = higher.n_sites;
    if (higher.j) j = higher.j;
    if (higher.u) u = higher.u;
    if (higher.m0) m0 = higher.m0;
    if (higher.n0) n0 = higher.n0;
    if (higher.theta) {
        theta = higher.theta;
        product_input = false;
    }
    if (higher.product_input) {
        product_input = true;
        theta.reset();
    }
    if (higher.dt) dt = higher.dt;
    if (higher.order) order = higher.order;
    if (higher.t_final) t_final = higher.t_final;
    if (higher.sample_stride) sample_stride = higher.sample_stride;
    if (!higher.u_grid.empty()) u_grid = higher.u_grid;
    if (!higher.theta_grid.empty()) theta_grid = higher.theta_grid;
    if (higher.late_window_fraction) late_window_fraction = higher.late_window_fraction;
    if (higher.out_path) out_path = higher.out_path;
}

RunConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path.string());

    RunConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InputError("config line " + std::to_string(line_no) +
                             ": expected key=value, got '" + line + "'");
        assign(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

RunConfig env_overrides() {
    RunConfig cfg;
    static const char* keys[] = {"n_sites",       "j",      "u",       "m0",
                                 "n0",            "theta",  "dt",      "order",
                                 "t_final",       "sample_stride",     "u_grid",
                                 "theta_grid",    "late_window_fraction", "out_path"};
    for (const char* key : keys) {
        std::string env_name = "DUOWALK_";
        for (const char* p = key; *p; ++p)
            env_name += static_cast<char>(std::toupper(static_cast<unsigned char>(*p)));
        if (const char* value = std::getenv(env_name.c_str())) assign(cfg, key, value);
    }
    return cfg;
}

}  // namespace duowalk
