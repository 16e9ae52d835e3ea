#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rydent/filtering.hpp"

namespace rydent {

enum class CondSide { a_given_b, b_given_a };
enum class FitMethod { least_squares, half_reduction_fallback };

// f(x) = d + L / (1 + exp(k (x - x0))), x = log10 p_min; decreasing for
// L, k > 0, inflection exactly at x0.
struct SigmoidFit {
    double d = 0.0;  // floor
    double l = 0.0;  // amplitude
    double k = 0.0;  // steepness
    double x0 = 0.0; // center, log10 p_min units
    double residual_rms = 0.0;
    bool converged = false;
    FitMethod method = FitMethod::least_squares;
};

struct EstimateReport {
    EntropySummary unfiltered;
    double i_unfiltered = 0.0;
    std::optional<double> p_star;          // 10^x0 of the primary fit
    std::optional<double> i_at_inflection; // mutual information at the grid
                                           // point nearest to x0 (ties: smaller p_min)
    std::optional<double> i_at_inflection_alt; // from S_{B|A} when |A| != |B|
    CondSide conditional_curve_used = CondSide::a_given_b;
    std::optional<SigmoidFit> fit;
    std::optional<SigmoidFit> fit_alt;
    std::optional<double> reference_svn;
    bool fit_failed = false;
    std::string fit_failure;
    FilterCurve curve;
};

SigmoidFit fit_sigmoid(const FilterCurve& curve, CondSide which);

EstimateReport estimate(const BitstringDistribution& dist, const Bipartition& part,
                        const std::vector<double>& grid, const GroundState* state = nullptr);

// Multinomial draw via CDF inversion; deterministic given seed.
std::map<std::uint64_t, std::uint64_t> sample_shots(const BitstringDistribution& dist,
                                                    std::uint64_t n_shots, std::uint64_t seed);

struct SubsampleStats {
    std::vector<double> p_min;
    std::vector<int> n_draws; // draws whose curve reached this grid point
    std::vector<double> mean_i;
    std::vector<double> std_i; // population std over contributing draws
};

// n_subsamples draws of sub_size shots without replacement from the pooled
// shot list; per-draw filtered I curves, pointwise mean/std. Subsample t
// uses seed + t.
SubsampleStats subsample_errors(const std::map<std::uint64_t, std::uint64_t>& counts,
                                std::uint64_t sub_size, int n_subsamples,
                                const Bipartition& part, const std::vector<double>& grid,
                                std::uint64_t seed);

namespace detail {

double sigmoid_model(double x, double d, double l, double k, double x0);
// {d, L, k, x0} from the data: d = min, L = range, x0 = half-drop crossing,
// k = 4 / span of the central half of the drop
std::array<double, 4> sigmoid_initial_guess(const std::vector<double>& xs,
                                            const std::vector<double>& ys);
double half_reduction_x0(const std::vector<double>& xs, const std::vector<double>& ys);
SigmoidFit fit_xy(const std::vector<double>& xs, const std::vector<double>& ys);

} // namespace detail

} // namespace rydent
