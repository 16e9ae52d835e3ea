#include "rydent/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <unordered_set>

#include <Eigen/Dense>

#include "rydent/errors.hpp"
#include "rydent/rng.hpp"

namespace rydent {

namespace detail {

double sigmoid_model(double x, double d, double l, double k, double x0) {
    double z = k * (x - x0);
    if (z > 500.0) z = 500.0;
    if (z < -500.0) z = -500.0;
    return d + l / (1.0 + std::exp(z));
}

namespace {

// first x (scanning increasing x) where y drops to <= level, linearly
// interpolated between the bracketing points
double first_crossing(const std::vector<double>& xs, const std::vector<double>& ys,
                      double level) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (ys[i] <= level) {
            if (i == 0) return xs[0];
            const double y0 = ys[i - 1], y1 = ys[i];
            if (y0 == y1) return xs[i];
            const double t = (y0 - level) / (y0 - y1);
            return xs[i - 1] + t * (xs[i] - xs[i - 1]);
        }
    }
    return xs.back();
}

double sse_of(const std::vector<double>& xs, const std::vector<double>& ys, double d, double l,
              double k, double x0) {
    double s = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = sigmoid_model(xs[i], d, l, k, x0) - ys[i];
        s += r * r;
    }
    return s;
}

struct LmResult {
    std::array<double, 4> p; // d, L, k, x0
    double sse = 0.0;
    bool converged = false;
};

LmResult levenberg_marquardt(const std::vector<double>& xs, const std::vector<double>& ys,
                             std::array<double, 4> p) {
    const std::size_t n = xs.size();
    const double xmin = xs.front() - 1.0, xmax = xs.back() + 1.0;
    double lam = 1e-3;
    double cur = sse_of(xs, ys, p[0], p[1], p[2], p[3]);
    bool converged = false;
    for (int iter = 0; iter < 200 && !converged; ++iter) {
        Eigen::Matrix4d jtj = Eigen::Matrix4d::Zero();
        Eigen::Vector4d jtr = Eigen::Vector4d::Zero();
        for (std::size_t i = 0; i < n; ++i) {
            double z = p[2] * (xs[i] - p[3]);
            if (z > 500.0) z = 500.0;
            if (z < -500.0) z = -500.0;
            const double s = 1.0 / (1.0 + std::exp(z));
            const double r = p[0] + p[1] * s - ys[i];
            const double sp = s * (1.0 - s);
            Eigen::Vector4d j;
            j << 1.0, s, -p[1] * sp * (xs[i] - p[3]), p[1] * sp * p[2];
            jtj.noalias() += j * j.transpose();
            jtr.noalias() += j * r;
        }
        bool stepped = false;
        for (int tries = 0; tries < 40; ++tries) {
            Eigen::Matrix4d m = jtj;
            for (int a = 0; a < 4; ++a) m(a, a) += lam * std::max(jtj(a, a), 1e-12);
            const Eigen::Vector4d dp = m.ldlt().solve(-jtr);
            if (!dp.allFinite()) {
                lam *= 10.0;
                continue;
            }
            const std::array<double, 4> cand{p[0] + dp(0), p[1] + dp(1), p[2] + dp(2),
                                             p[3] + dp(3)};
            if (cand[1] <= 0.0 || cand[2] <= 0.0 || cand[3] < xmin || cand[3] > xmax) {
                lam *= 10.0;
                continue;
            }
            const double c = sse_of(xs, ys, cand[0], cand[1], cand[2], cand[3]);
            if (c <= cur) {
                double rel = 0.0;
                for (int a = 0; a < 4; ++a)
                    rel = std::max(rel, std::abs(dp(a)) / std::max(1.0, std::abs(p[a])));
                const double drop = cur - c;
                p = cand;
                cur = c;
                lam = std::max(lam * 0.1, 1e-12);
                stepped = true;
                if (rel < 1e-8 || drop <= 1e-16 * std::max(cur, 1e-30)) converged = true;
                break;
            }
            lam *= 10.0;
        }
        if (!stepped) break;
    }
    return {p, cur, converged};
}

} // namespace

std::array<double, 4> sigmoid_initial_guess(const std::vector<double>& xs,
                                            const std::vector<double>& ys) {
    const double d0 = *std::min_element(ys.begin(), ys.end());
    const double l0 = *std::max_element(ys.begin(), ys.end()) - d0;
    const double x00 = first_crossing(xs, ys, d0 + 0.5 * l0);
    const double xhi = first_crossing(xs, ys, d0 + 0.75 * l0);
    const double xlo = first_crossing(xs, ys, d0 + 0.25 * l0);
    double span = xlo - xhi;
    if (!(span > 0.0)) span = (xs.back() - xs.front()) / std::max<std::size_t>(xs.size() - 1, 1);
    return {d0, l0, 4.0 / span, x00};
}

double half_reduction_x0(const std::vector<double>& xs, const std::vector<double>& ys) {
    return first_crossing(xs, ys, 0.5 * ys.front());
}

SigmoidFit fit_xy(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() < 8)
        throw fit_error("fit_sigmoid: need at least 8 usable points, have " +
                        std::to_string(xs.size()));
    const double ymin = *std::min_element(ys.begin(), ys.end());
    const double ymax = *std::max_element(ys.begin(), ys.end());
    if (ymax - ymin < 1e-6) throw fit_error("fit_sigmoid: flat curve, nothing to filter");

    const std::array<double, 4> p0 = sigmoid_initial_guess(xs, ys);
    LmResult best = levenberg_marquardt(xs, ys, p0);
    if (!best.converged) {
        // coarse grid seeds one retry before declaring fallback
        double bsse = std::numeric_limits<double>::infinity();
        std::array<double, 4> bp = p0;
        for (int gi = 0; gi < 25; ++gi) {
            const double x0g = xs.front() + (xs.back() - xs.front()) * gi / 24.0;
            for (double kg : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
                const double s = sse_of(xs, ys, p0[0], p0[1], kg, x0g);
                if (s < bsse) {
                    bsse = s;
                    bp = {p0[0], p0[1], kg, x0g};
                }
            }
        }
        const LmResult retry = levenberg_marquardt(xs, ys, bp);
        if (retry.converged && retry.sse <= best.sse) best = retry;
    }

    SigmoidFit fit;
    if (best.converged) {
        fit.d = best.p[0];
        fit.l = best.p[1];
        fit.k = best.p[2];
        fit.x0 = best.p[3];
        fit.converged = true;
        fit.method = FitMethod::least_squares;
        fit.residual_rms = std::sqrt(best.sse / static_cast<double>(xs.size()));
    } else {
        fit.d = p0[0];
        fit.l = p0[1];
        fit.k = p0[2];
        fit.x0 = half_reduction_x0(xs, ys);
        fit.converged = false;
        fit.method = FitMethod::half_reduction_fallback;
        fit.residual_rms =
            std::sqrt(sse_of(xs, ys, fit.d, fit.l, fit.k, fit.x0) / static_cast<double>(xs.size()));
    }
    return fit;
}

} // namespace detail

namespace {

void curve_xy(const FilterCurve& curve, CondSide which, std::vector<double>& xs,
              std::vector<double>& ys) {
    xs.clear();
    ys.clear();
    for (const auto& pt : curve.points) {
        if (pt.p_min <= 0.0) continue; // the p_min = 0 anchor has no log10 abscissa
        xs.push_back(std::log10(pt.p_min));
        ys.push_back(which == CondSide::a_given_b ? pt.summary.s_a_given_b
                                                  : pt.summary.s_b_given_a);
    }
}

} // namespace

SigmoidFit fit_sigmoid(const FilterCurve& curve, CondSide which) {
    std::vector<double> xs, ys;
    curve_xy(curve, which, xs, ys);
    return detail::fit_xy(xs, ys);
}

EstimateReport estimate(const BitstringDistribution& dist, const Bipartition& part,
                        const std::vector<double>& grid, const GroundState* state) {
    EstimateReport rep;
    rep.curve = sweep(dist, part, grid, state);
    if (rep.curve.points.empty())
        throw empty_filter_error("estimate: no grid point has survivors");
    rep.unfiltered = rep.curve.points.front().summary;
    rep.i_unfiltered = rep.unfiltered.mutual_information;
    if (state != nullptr)
        rep.reference_svn = von_neumann_entropy(schmidt_spectrum(*state, part));

    auto nearest_i = [&](double x0) {
        double best_dx = std::numeric_limits<double>::infinity();
        double best_i = 0.0;
        for (const auto& pt : rep.curve.points) { // ascending p_min: ties keep the smaller
            if (pt.p_min <= 0.0) continue;
            const double dx = std::abs(std::log10(pt.p_min) - x0);
            if (dx < best_dx) {
                best_dx = dx;
                best_i = pt.summary.mutual_information;
            }
        }
        return best_i;
    };

    try {
        rep.fit = fit_sigmoid(rep.curve, CondSide::a_given_b);
        rep.p_star = std::pow(10.0, rep.fit->x0);
        rep.i_at_inflection = nearest_i(rep.fit->x0);
    } catch (const fit_error& e) {
        rep.fit_failed = true;
        rep.fit_failure = e.what();
    }
    if (part.size_a != part.size_b) {
        try {
            rep.fit_alt = fit_sigmoid(rep.curve, CondSide::b_given_a);
            rep.i_at_inflection_alt = nearest_i(rep.fit_alt->x0);
        } catch (const fit_error&) {
            // the alternate curve is advisory; its failure is not a report failure
        }
    }
    return rep;
}

std::map<std::uint64_t, std::uint64_t> sample_shots(const BitstringDistribution& dist,
                                                    std::uint64_t n_shots, std::uint64_t seed) {
    if (n_shots < 1) throw validation_error("sample_shots: n_shots must be >= 1");
    if (dist.entries.empty()) throw validation_error("sample_shots: empty distribution");
    std::vector<double> cdf(dist.entries.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.entries.size(); ++i) {
        acc += dist.entries[i].second;
        cdf[i] = acc;
    }
    std::mt19937_64 eng(seed);
    std::vector<std::uint64_t> hits(dist.entries.size(), 0);
    for (std::uint64_t s = 0; s < n_shots; ++s) {
        const double u = uniform53(eng) * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t idx =
            (it == cdf.end()) ? dist.entries.size() - 1
                              : static_cast<std::size_t>(it - cdf.begin());
        ++hits[idx];
    }
    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::size_t i = 0; i < hits.size(); ++i)
        if (hits[i] > 0) counts.emplace(dist.entries[i].first, hits[i]);
    return counts;
}

SubsampleStats subsample_errors(const std::map<std::uint64_t, std::uint64_t>& counts,
                                std::uint64_t sub_size, int n_subsamples,
                                const Bipartition& part, const std::vector<double>& grid,
                                std::uint64_t seed) {
    std::uint64_t total = 0;
    for (const auto& [bits, c] : counts) total += c;
    if (sub_size < 1 || sub_size > total)
        throw validation_error("subsample_errors: sub_size must lie in [1, total shots]");
    if (n_subsamples < 1) throw validation_error("subsample_errors: n_subsamples must be >= 1");

    std::vector<std::uint64_t> pool;
    pool.reserve(total);
    for (const auto& [bits, c] : counts)
        for (std::uint64_t r = 0; r < c; ++r) pool.push_back(bits);

    SubsampleStats stats;
    stats.p_min = grid;
    stats.n_draws.assign(grid.size(), 0);
    std::vector<double> sum(grid.size(), 0.0), sumsq(grid.size(), 0.0);

    for (int t = 0; t < n_subsamples; ++t) {
        std::mt19937_64 eng(seed + static_cast<std::uint64_t>(t));
        // Floyd's algorithm: sub_size distinct indices into the pool
        std::unordered_set<std::uint64_t> chosen;
        chosen.reserve(static_cast<std::size_t>(sub_size) * 2);
        for (std::uint64_t j = total - sub_size; j < total; ++j) {
            const std::uint64_t r = uniform_below(eng, j + 1);
            if (!chosen.insert(r).second) chosen.insert(j);
        }
        std::map<std::uint64_t, std::uint64_t> sub_counts;
        for (std::uint64_t idx : chosen) ++sub_counts[pool[idx]];
        const BitstringDistribution sub = empirical_distribution(sub_counts, part.n_atoms);
        const FilterCurve curve = sweep(sub, part, grid, nullptr);
        for (std::size_t g = 0; g < curve.points.size(); ++g) {
            const double i = curve.points[g].summary.mutual_information;
            ++stats.n_draws[g];
            sum[g] += i;
            sumsq[g] += i * i;
        }
    }

    stats.mean_i.assign(grid.size(), 0.0);
    stats.std_i.assign(grid.size(), 0.0);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        if (stats.n_draws[g] == 0) continue;
        const double n = static_cast<double>(stats.n_draws[g]);
        const double mean = sum[g] / n;
        stats.mean_i[g] = mean;
        stats.std_i[g] = std::sqrt(std::max(0.0, sumsq[g] / n - mean * mean));
    }
    return stats;
}

} // namespace rydent
