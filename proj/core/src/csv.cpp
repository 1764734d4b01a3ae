#include "duowalk/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "duowalk/errors.hpp"

namespace duowalk {

std::string format_real(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", value);
    return buf;
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);  // binary: '\n' endings everywhere
    if (!out) throw IoError("cannot open for writing: " + path.string());
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

void write_timeseries_csv(const EvolutionTrace& trace, const std::filesystem::path& path) {
    std::ofstream out = open_for_write(path);
    out << "t,gamma_a,gamma_diag,gamma_offdiag,c_l1,norm_error,w_sym,w_antisym\n";
    for (std::size_t i = 0; i < trace.records.size(); ++i) {
        const ObservableRecord& r = trace.records[i];
        out << format_real(trace.times[i]) << ',' << format_real(r.gamma_a) << ','
            << format_real(r.gamma_diag) << ',' << format_real(r.gamma_offdiag) << ','
            << format_real(r.c_l1) << ',' << format_real(r.norm_error) << ','
            << format_real(r.w_sym) << ',' << format_real(r.w_antisym) << '\n';
    }
    finish(out, path);
}

void write_u_sweep_csv(const std::vector<USweepCell>& cells,
                       const std::filesystem::path& path) {
    const bool with_slice = !cells.empty() && cells.front().gamma_at_slice.has_value();
    std::ofstream out = open_for_write(path);
    out << "u,gamma_max,t_at_max,gamma_late_avg";
    if (with_slice) out << ",gamma_at_slice";
    out << '\n';
    for (const USweepCell& c : cells) {
        out << format_real(c.u) << ',' << format_real(c.gamma_max) << ','
            << format_real(c.t_at_max) << ',' << format_real(c.gamma_late_avg);
        if (with_slice) out << ',' << format_real(c.gamma_at_slice.value_or(0.0));
        out << '\n';
    }
    finish(out, path);
}

void write_map_csv(const MapResult& map, const std::filesystem::path& path) {
    std::ofstream out = open_for_write(path);
    out << "theta,u,gamma_max,t_at_max,gamma_late_avg\n";
    for (const MapCell& c : map.cells) {
        out << format_real(c.theta) << ',' << format_real(c.u) << ','
            << format_real(c.gamma_max) << ',' << format_real(c.t_at_max) << ','
            << format_real(c.gamma_late_avg) << '\n';
    }
    finish(out, path);
}

void write_correlation_csv(const std::vector<double>& probabilities, int n_sites,
                           const std::filesystem::path& path) {
    if (probabilities.size() != static_cast<std::size_t>(n_sites) * n_sites)
        throw InputError("write_correlation_csv: probability matrix size mismatch");
    std::ofstream out = open_for_write(path);
    out << "m,n,prob\n";
    for (int m = 0; m < n_sites; ++m)
        for (int n = 0; n < n_sites; ++n)
            out << (m + 1) << ',' << (n + 1) << ','
                << format_real(probabilities[static_cast<std::size_t>(m) * n_sites + n])
                << '\n';
    finish(out, path);
}

std::size_t CsvTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw InputError("csv: no column named '" + name + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());

    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty csv: " + path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::stringstream header(line);
    std::string field;
    while (std::getline(header, field, ',')) table.columns.push_back(field);

    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        row.reserve(table.columns.size());
        std::stringstream cells(line);
        while (std::getline(cells, field, ',')) {
            char* end = nullptr;
            const double v = std::strtod(field.c_str(), &end);
            if (end == field.c_str())
                throw IoError("csv: unparsable field '" + field + "' in " + path.string());
            row.push_back(v);
        }
        if (row.size() != table.columns.size())
            throw IoError("csv: ragged row in " + path.string());
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace duowalk
