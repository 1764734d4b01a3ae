#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "duowalk/experiments.hpp"
#include "duowalk/propagator.hpp"

// CSV emission, bit-specified: comma separator, dot decimal point,
// newline-terminated rows, reals in scientific notation with 12 significant
// digits. Failed sweep/map cells carry nan metrics.

namespace duowalk {

// Header: t,gamma_a,gamma_diag,gamma_offdiag,c_l1,norm_error,w_sym,w_antisym
void write_timeseries_csv(const EvolutionTrace& trace, const std::filesystem::path& path);

// Header: u,gamma_max,t_at_max,gamma_late_avg[,gamma_at_slice]
// The slice column appears only when the sweep recorded slice values.
void write_u_sweep_csv(const std::vector<USweepCell>& cells, const std::filesystem::path& path);

// Header: theta,u,gamma_max,t_at_max,gamma_late_avg
void write_map_csv(const MapResult& map, const std::filesystem::path& path);

// Header: m,n,prob with 1-based site indices.
void write_correlation_csv(const std::vector<double>& probabilities, int n_sites,
                           const std::filesystem::path& path);

// Minimal reader for round-trip checks and downstream tooling.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t column_index(const std::string& name) const;  // throws InputError
};

CsvTable read_csv(const std::filesystem::path& path);

// "%.11e" formatting used for every real field (12 significant digits).
std::string format_real(double value);

}  // namespace duowalk
