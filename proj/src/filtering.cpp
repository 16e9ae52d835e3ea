#include "rydent/filtering.hpp"

#include <cmath>
#include <string>

#include "rydent/errors.hpp"

namespace rydent {

namespace {

BitstringDistribution filter_impl(const BitstringDistribution& dist, double p_min,
                                  double* kept_mass_out) {
    if (!(p_min >= 0.0) || p_min > 1.0)
        throw validation_error("filter_distribution: p_min must lie in [0, 1]");
    if (p_min == 0.0) {
        if (kept_mass_out) {
            double total = 0.0;
            for (const auto& e : dist.entries) total += e.second;
            *kept_mass_out = total;
        }
        return dist;
    }
    BitstringDistribution out;
    out.n_atoms = dist.n_atoms;
    out.source = dist.source;
    double kept = 0.0;
    for (const auto& e : dist.entries) {
        if (e.second >= p_min) {
            out.entries.push_back(e);
            kept += e.second;
        }
    }
    if (out.entries.empty())
        throw empty_filter_error("filter_distribution: no state reaches p_min");
    for (auto& e : out.entries) e.second /= kept;
    if (dist.source == Source::empirical) {
        // surviving probabilities are counts over the surviving total, so the
        // shot count shrinks with the kept mass
        out.n_shots =
            static_cast<std::uint64_t>(std::llround(kept * static_cast<double>(dist.n_shots)));
    }
    if (kept_mass_out) *kept_mass_out = kept;
    return out;
}

} // namespace

BitstringDistribution filter_distribution(const BitstringDistribution& dist, double p_min) {
    return filter_impl(dist, p_min, nullptr);
}

BitstringDistribution filter_by_min_count(const BitstringDistribution& dist,
                                          std::uint64_t min_count) {
    if (dist.source != Source::empirical)
        throw validation_error("filter_by_min_count: distribution is not empirical");
    const double p_min =
        static_cast<double>(min_count) / static_cast<double>(dist.n_shots);
    return filter_distribution(dist, p_min);
}

std::vector<double> make_pmin_grid(double min_exp, double max_exp, int points) {
    if (points < 2) throw validation_error("p_min grid needs at least 2 points");
    if (!(min_exp < max_exp)) throw validation_error("p_min grid: min_exp must be < max_exp");
    if (max_exp > 0.0) throw validation_error("p_min grid: max_exp must be <= 0 (p_min <= 1)");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points) + 1);
    grid.push_back(0.0);
    const double step = (max_exp - min_exp) / (points - 1);
    for (int i = 0; i < points; ++i) grid.push_back(std::pow(10.0, min_exp + step * i));
    return grid;
}

std::vector<double> default_pmin_grid() { return make_pmin_grid(-7.0, -0.5, 121); }

FilterCurve sweep(const BitstringDistribution& dist, const Bipartition& part,
                  const std::vector<double>& grid, const GroundState* state) {
    if (grid.empty()) throw validation_error("sweep: empty p_min grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0) || grid[i] > 1.0)
            throw validation_error("sweep: grid values must lie in [0, 1]");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw validation_error("sweep: grid must be strictly increasing");
    }
    FilterCurve curve;
    curve.n_atoms = dist.n_atoms;
    curve.part = part;
    curve.source = dist.source;
    curve.n_shots = dist.n_shots;
    const bool with_svn = state != nullptr && dist.source == Source::exact;
    for (double p : grid) {
        double kept_mass = 0.0;
        BitstringDistribution filtered;
        try {
            filtered = filter_impl(dist, p, &kept_mass);
        } catch (const empty_filter_error&) {
            curve.cutoff_p_min = p; // early termination is data, not failure
            break;
        }
        FilterPoint pt;
        pt.p_min = p;
        pt.kept_states = filtered.entries.size();
        pt.kept_mass = kept_mass;
        pt.summary = entropy_summary(filtered, part);
        if (with_svn) pt.filtered_svn = filtered_vn_entropy(*state, part, p);
        curve.points.push_back(std::move(pt));
    }
    return curve;
}

} // namespace rydent
