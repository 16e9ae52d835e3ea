#pragma once

#include <optional>
#include <vector>

#include "rydent/distribution.hpp"
#include "rydent/entanglement.hpp"

namespace rydent {

struct FilterPoint {
    double p_min = 0.0;
    std::uint64_t kept_states = 0;
    double kept_mass = 0.0; // pre-renormalization probability retained
    EntropySummary summary; // of the renormalized filtered distribution
    std::optional<double> filtered_svn; // exact-state sources only
};

struct FilterCurve {
    std::vector<FilterPoint> points; // increasing p_min
    int n_atoms = 0;
    Bipartition part;
    Source source = Source::exact;
    std::uint64_t n_shots = 0;
    std::optional<double> cutoff_p_min; // first grid value with no survivors
};

// Keep entries with p >= p_min, renormalize. p_min = 0 is the identity.
BitstringDistribution filter_distribution(const BitstringDistribution& dist, double p_min);

// Empirical only: drop states observed fewer than min_count times.
BitstringDistribution filter_by_min_count(const BitstringDistribution& dist,
                                          std::uint64_t min_count);

// 121 log-uniform points from 1e-7 to 10^-0.5 plus the p_min = 0 anchor.
std::vector<double> default_pmin_grid();
std::vector<double> make_pmin_grid(double min_exp, double max_exp, int points);

FilterCurve sweep(const BitstringDistribution& dist, const Bipartition& part,
                  const std::vector<double>& grid, const GroundState* state = nullptr);

} // namespace rydent
