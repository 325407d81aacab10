#pragma once

#include "grimglue/report.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

namespace grimglue {

// Resolved run parameters: defaults, then config-file values, then
// command-line overrides. Every report embeds the full resolved block.
struct RunConfig {
    double epsilon = 1e-3;
    double R = 10.0;          // gluing radius (the scale parameter A of the
                              // small-scale problems is R where one is needed)
    double R0 = 2.0;
    double c = 1.0;
    double Delta = 10.0;
    double eta = 0.1;
    double Cbound = 2.0;
    double delta = 1.5;
    double gamma = 0.05;
    double alpha = 0.05;
    double tol = 1e-12;
    int n_samples = 3001;
    int n_nodes = 1800;
    int m_max = 8;
    int symmetry_order = 1;
    int laurent_n = 5;
    int bivariate_k = 2;
    int order = 2;            // construction order of Grim ends
    std::uint64_t seed = 20240817;
    std::string out_dir = "out";

    json to_json() const;
};

// Flat key=value file; '#' starts a comment. Unknown keys are rejected.
RunConfig load_config_file(const std::filesystem::path& path, RunConfig base = {});

// Applies a single key=value assignment (shared by the file loader and any
// programmatic override).
void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value);

}  // namespace grimglue
