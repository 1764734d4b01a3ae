#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

// Flat key=value run configuration. Recognized keys: n_sites, j, u, m0, n0,
// theta, dt, order, t_final, sample_stride, u_grid, theta_grid,
// late_window_fraction, out_path. '#' starts a comment. theta accepts a
// real (radians) or the word "product" for the plain |m0,n0> input. Grids
// are either comma lists ("0,0.5,1") or linspace triples ("lo:hi:count").
//
// Merge precedence, lowest to highest: config file, DUOWALK_* environment
// variables (key upper-cased), CLI flags.

namespace duowalk {

struct RunConfig {
    std::optional<int> n_sites;
    std::optional<double> j;
    std::optional<double> u;
    std::optional<int> m0;
    std::optional<int> n0;
    std::optional<double> theta;
    bool product_input = false;
    std::optional<double> dt;
    std::optional<int> order;
    std::optional<double> t_final;
    std::optional<int> sample_stride;
    std::vector<double> u_grid;
    std::vector<double> theta_grid;
    std::optional<double> late_window_fraction;
    std::optional<std::string> out_path;

    // Overlays every value present in `higher` onto this config.
    void merge_from(const RunConfig& higher);
};

// Parses a config file; throws InputError naming the bad key or line.
RunConfig load_config_file(const std::filesystem::path& path);

// Reads DUOWALK_<KEY> overrides from the environment.
RunConfig env_overrides();

// Grid literal parser shared by config values and CLI flags.
std::vector<double> parse_grid(const std::string& text, const std::string& key);

}  // namespace duowalk
