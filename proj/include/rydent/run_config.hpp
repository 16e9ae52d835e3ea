#pragma once

#include <cstdint>
#include <string>

namespace rydent {

// Flat key=value configuration; every key is also a CLI flag of the same
// name. Defaults mirror the reference point: 6 rungs, rb_over_a = 2.35,
// delta_over_omega = 3.5, half cut.
struct RunConfig {
    int n_rungs = 6;
    double rb_over_a = 2.35;
    double delta_over_omega = 3.5;
    int size_a = -1; // -1: half cut (n_atoms / 2)
    double grid_min_exp = -7.0;
    double grid_max_exp = -0.5;
    int grid_points = 121;
    std::uint64_t shots = 0; // 0: analyze the exact distribution
    std::uint64_t seed = 12345;
    double tol = 1e-10;
    int max_iterations = 500;
    int max_atoms = 22;         // exact-solve ceiling; raising it is an explicit
                                // acknowledgement of the memory cost
    std::uint64_t max_basis_mb = 1536;
    std::string state_file;     // cache path; empty disables caching
    std::string output_json;
    std::string output_csv;
};

// Apply one key=value pair; unknown keys and unparsable values are
// validation errors.
void apply_config_kv(RunConfig& cfg, const std::string& key, const std::string& value);

RunConfig load_config_file(const std::string& path, RunConfig base = {});

int resolved_size_a(const RunConfig& cfg);

// Cross-field checks used by every command that solves.
void validate_config(const RunConfig& cfg);

} // namespace rydent
