#pragma once

#include <string>
#include <vector>

#include "rydent/reports.hpp"
#include "rydent/run_config.hpp"
#include "rydent/shot_io.hpp"

namespace rydent {

// Solve fresh, or reuse cfg.state_file when it exists. Loaded states are
// checked against the configured Hamiltonian (Rayleigh residual) so a stale
// cache cannot silently feed a wrong analysis; their energy and residual are
// recomputed, the gap stays unknown.
GroundState solve_or_load(const RunConfig& cfg, bool* cache_hit = nullptr);

// Command drivers. Each validates, runs, writes cfg.output_json /
// cfg.output_csv atomically when set, and returns the full JSON document.
ordered_json run_ground_state(const RunConfig& cfg);
ordered_json run_estimate(const RunConfig& cfg);
ordered_json run_sweep_volume(const RunConfig& cfg, const std::vector<int>& rungs);
ordered_json run_sweep_spacing(const RunConfig& cfg, const std::vector<double>& rb_values);
ordered_json run_sweep_bipartition(const RunConfig& cfg, const std::vector<int>& sizes);
ordered_json run_phase_scan(const RunConfig& cfg, const std::vector<double>& rb_grid,
                            const std::vector<double>& delta_grid);
ordered_json run_ingest(const RunConfig& cfg, const std::string& input_path, ShotFormat format);
ordered_json run_sample(const RunConfig& cfg, const std::string& output_path, ShotFormat format);

} // namespace rydent
