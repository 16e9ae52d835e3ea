// Acceptance gate: one line per criterion, measured values against pinned
// tolerances, exit code = number of failures. Run a single criterion with
// --criterion N.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rydent/bipartition.hpp"
#include "rydent/distribution.hpp"
#include "rydent/entanglement.hpp"
#include "rydent/errors.hpp"
#include "rydent/estimator.hpp"
#include "rydent/filtering.hpp"
#include "rydent/hamiltonian.hpp"
#include "rydent/lattice.hpp"
#include "rydent/rng.hpp"

using namespace rydent;

namespace {

struct Outcome {
    bool pass = false;
    std::string headline;
    std::vector<std::string> notes;
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

GroundState solve(int rungs, double rb, double delta, int max_iterations = 500) {
    LadderGeometry geom = build_ladder(rungs);
    CouplingTable coup = couplings(geom, rb);
    SolverOptions opts;
    opts.max_iterations = max_iterations;
    return ground_state(make_hamiltonian(std::move(geom), std::move(coup), delta), opts);
}

const Bipartition& reference_part() {
    static const Bipartition part = make_bipartition(12, 6);
    return part;
}

const GroundState& reference_state() {
    static const GroundState gs = solve(6, 2.35, 3.5);
    return gs;
}

const BitstringDistribution& reference_dist() {
    static const BitstringDistribution d = exact_distribution(reference_state());
    return d;
}

const EstimateReport& reference_report() {
    static const EstimateReport rep =
        estimate(reference_dist(), reference_part(), default_pmin_grid(), &reference_state());
    return rep;
}

double reference_svn() {
    static const double svn =
        von_neumann_entropy(schmidt_spectrum(reference_state(), reference_part()));
    return svn;
}

// 1. 6 rungs, rb_over_a 2.35, delta/omega 3.5, half cut: S^vN = 0.844 +/- 0.010,
//    under 60 s.
Outcome criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const double svn = reference_svn();
    const double dt = seconds_since(t0);
    Outcome o;
    o.pass = std::abs(svn - 0.844) <= 0.010 && dt < 60.0;
    o.headline = fmt("reference S^vN = %.6f nats (target 0.844 +/- 0.010, solved in %.1f s / 60 s)",
                     svn, dt);
    return o;
}

// 2. Same configuration: unfiltered I = 0.559 +/- 0.010 and (S^vN - I)/S^vN =
//    0.30 +/- 0.04.
Outcome criterion_2() {
    const EntropySummary s = entropy_summary(reference_dist(), reference_part());
    const double i = s.mutual_information;
    const double svn = reference_svn();
    const double ratio = (svn - i) / svn;
    Outcome o;
    o.pass = std::abs(i - 0.559) <= 0.010 && std::abs(ratio - 0.30) <= 0.04;
    o.headline = fmt("unfiltered I = %.6f nats (target 0.559 +/- 0.010), deficit "
                     "(S^vN - I)/S^vN = %.4f (target 0.30 +/- 0.04)",
                     i, ratio);
    return o;
}

// 3. Inflection rule on the reference curve: p_star inside [1e-3, 1e-1] and the
//    filtered estimate strictly closer to 0.844 than 0.559 is.
Outcome criterion_3() {
    const EstimateReport& rep = reference_report();
    Outcome o;
    if (!rep.p_star || !rep.i_at_inflection) {
        o.headline = "sigmoid fit did not produce an inflection point";
        o.notes.push_back("note: " + rep.fit_failure);
        return o;
    }
    const double p_star = *rep.p_star;
    const double i_star = *rep.i_at_inflection;
    const double budget = std::abs(0.559 - 0.844);
    o.pass = p_star >= 1e-3 && p_star <= 1e-1 && std::abs(i_star - 0.844) < budget;
    o.headline = fmt("p_star = %.3e (window [1e-3, 1e-1]), I at inflection = %.6f, "
                     "|error| = %.4f vs unfiltered budget %.4f",
                     p_star, i_star, std::abs(i_star - 0.844), budget);
    return o;
}

// 4. Bound chain -1e-9 <= I <= S^vN + 1e-9 <= min(S_A, S_B) + 1e-9 on the
//    rb x size x delta grid, under 30 min.
Outcome criterion_4() {
    const auto t0 = std::chrono::steady_clock::now();
    const double tol = 1e-9;
    int cells = 0, failures = 0;
    double worst_low = 1.0, worst_mid = -1.0, worst_high = -1.0;
    Outcome o;
    for (int rungs : {4, 6}) {
        for (int step = 0; step <= 8; ++step) {
            const double rb = 1.0 + 0.25 * step;
            for (double delta : {1.0, 3.5}) {
                const GroundState gs = solve(rungs, rb, delta, 2500);
                const Bipartition part = make_bipartition(gs.n_atoms, rungs);
                const double svn = von_neumann_entropy(schmidt_spectrum(gs, part));
                const EntropySummary s = entropy_summary(exact_distribution(gs), part);
                const double i = s.mutual_information;
                const double min_side = std::min(s.s_a, s.s_b);
                ++cells;
                worst_low = std::min(worst_low, i);
                worst_mid = std::max(worst_mid, i - svn);
                worst_high = std::max(worst_high, svn - min_side);
                if (!(i >= -tol && i <= svn + tol && svn <= min_side + tol)) {
                    ++failures;
                    if (o.notes.size() < 5)
                        o.notes.push_back(fmt("note: rungs=%d rb=%.2f delta=%.1f: I=%.3e "
                                              "svn=%.3e min(S_A,S_B)=%.3e",
                                              rungs, rb, delta, i, svn, min_side));
                }
            }
        }
    }
    const double dt = seconds_since(t0);
    o.pass = failures == 0 && dt < 1800.0;
    o.headline = fmt("bound chain held in %d/%d cells (min I = %.2e, max I - S^vN = %.2e, "
                     "max S^vN - min(S_A,S_B) = %.2e, tol 1e-9, %.0f s / 1800 s)",
                     cells - failures, cells, worst_low, worst_mid, worst_high, dt);
    return o;
}

// 5. Filtered bound I(p_min) <= S^vN(p_min) + 1e-9 along the reference sweep.
Outcome criterion_5() {
    const FilterCurve& curve = reference_report().curve;
    const double tol = 1e-9;
    int checked = 0, failures = 0;
    double worst = -1.0;
    Outcome o;
    for (const FilterPoint& pt : curve.points) {
        if (!pt.filtered_svn) continue;
        ++checked;
        const double gap = pt.summary.mutual_information - *pt.filtered_svn;
        worst = std::max(worst, gap);
        if (gap > tol) {
            ++failures;
            if (o.notes.size() < 5)
                o.notes.push_back(fmt("note: p_min=%.3e: I - filtered S^vN = %.3e", pt.p_min, gap));
        }
    }
    o.pass = failures == 0 && checked > 0;
    o.headline = fmt("I(p_min) <= S^vN(p_min) + 1e-9 at %d/%d sweep points "
                     "(max I - S^vN = %.2e)",
                     checked - failures, checked, worst);
    return o;
}

// 6. Krylov vs dense on every spec with <= 10 atoms in the test grid: energies
//    within 1e-8, bitstring distributions within 1e-8 total variation.
Outcome criterion_6() {
    int specs = 0, failures = 0;
    double worst_de = 0.0, worst_tv = 0.0;
    Outcome o;
    for (int rungs = 1; rungs <= 5; ++rungs) {
        for (double rb : {1.0, 2.35, 3.0}) {
            for (double delta : {0.0, 1.0, 3.5}) {
                LadderGeometry geom = build_ladder(rungs);
                CouplingTable coup = couplings(geom, rb);
                const HamiltonianSpec spec =
                    make_hamiltonian(std::move(geom), std::move(coup), delta);
                const GroundState dense = dense_ground_state(spec);
                SolverOptions opts;
                opts.max_iterations = 2500;
                const GroundState krylov = ground_state(spec, opts);
                const double de = std::abs(dense.energy - krylov.energy);
                double tv = 0.0;
                for (std::size_t n = 0; n < dense.amplitudes.size(); ++n)
                    tv += std::abs(dense.amplitudes[n] * dense.amplitudes[n] -
                                   krylov.amplitudes[n] * krylov.amplitudes[n]);
                tv *= 0.5;
                ++specs;
                worst_de = std::max(worst_de, de);
                worst_tv = std::max(worst_tv, tv);
                if (de > 1e-8 || tv > 1e-8) {
                    ++failures;
                    if (o.notes.size() < 5)
                        o.notes.push_back(fmt("note: rungs=%d rb=%.2f delta=%.1f: |dE|=%.3e "
                                              "TV=%.3e",
                                              rungs, rb, delta, de, tv));
                }
            }
        }
    }
    o.pass = failures == 0;
    o.headline = fmt("Krylov matches dense on %d/%d Hamiltonians (max |dE| = %.2e, "
                     "max TV = %.2e, tol 1e-8)",
                     specs - failures, specs, worst_de, worst_tv);
    return o;
}

// 7. 1e7 seeded shots from the reference distribution: |I_emp - I_exact| < 0.02
//    at every grid point with >= 2 survivors on both curves, under 5 min.
Outcome criterion_7() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto counts = sample_shots(reference_dist(), 10000000, 7);
    const BitstringDistribution emp = empirical_distribution(counts, 12);
    const FilterCurve emp_curve = sweep(emp, reference_part(), default_pmin_grid());
    const FilterCurve& exact_curve = reference_report().curve;

    const std::size_t n = std::min(emp_curve.points.size(), exact_curve.points.size());
    int checked = 0, failures = 0;
    double worst = 0.0;
    Outcome o;
    for (std::size_t i = 0; i < n; ++i) {
        const FilterPoint& pe = emp_curve.points[i];
        const FilterPoint& px = exact_curve.points[i];
        if (pe.kept_states < 2 || px.kept_states < 2) continue;
        ++checked;
        const double dev =
            std::abs(pe.summary.mutual_information - px.summary.mutual_information);
        worst = std::max(worst, dev);
        if (dev >= 0.02) {
            ++failures;
            if (o.notes.size() < 5)
                o.notes.push_back(fmt("note: p_min=%.3e: |dI| = %.4f", px.p_min, dev));
        }
    }
    const double dt = seconds_since(t0);
    o.pass = failures == 0 && checked > 0 && dt < 300.0;
    o.headline = fmt("sampled curve (1e7 shots, seed 7) within 0.02 of exact at %d/%d "
                     "comparable points (max |dI| = %.4f, %.0f s / 300 s)",
                     checked - failures, checked, worst, dt);
    return o;
}

// 8. 8 rungs: I and S^vN agree within 1e-9 between size_a = k and 16 - k.
Outcome criterion_8() {
    const GroundState gs = solve(8, 2.35, 3.5, 2500);
    const BitstringDistribution dist = exact_distribution(gs);
    double worst_i = 0.0, worst_s = 0.0;
    for (int k : {2, 4, 6, 8}) {
        const Bipartition left = make_bipartition(16, k);
        const Bipartition right = make_bipartition(16, 16 - k);
        const double i_l = entropy_summary(dist, left).mutual_information;
        const double i_r = entropy_summary(dist, right).mutual_information;
        const double s_l = von_neumann_entropy(schmidt_spectrum(gs, left));
        const double s_r = von_neumann_entropy(schmidt_spectrum(gs, right));
        worst_i = std::max(worst_i, std::abs(i_l - i_r));
        worst_s = std::max(worst_s, std::abs(s_l - s_r));
    }
    Outcome o;
    o.pass = worst_i <= 1e-9 && worst_s <= 1e-9;
    o.headline = fmt("cut-reversal symmetry at 8 rungs: max |dI| = %.2e, max |dS^vN| = %.2e "
                     "(tol 1e-9)",
                     worst_i, worst_s);
    return o;
}

// 9. 1000 subsamples of 1000 shots from a 1e6-shot pool: std of unfiltered I
//    nonzero and the exact value inside mean +/- 3 std.
Outcome criterion_9() {
    const auto pool = sample_shots(reference_dist(), 1000000, 3141);
    const std::vector<double> grid = {0.0};
    const SubsampleStats stats =
        subsample_errors(pool, 1000, 1000, reference_part(), grid, 3141);
    const double mean = stats.mean_i[0];
    const double sd = stats.std_i[0];
    const double exact_i = reference_report().i_unfiltered;
    const double gap = std::abs(exact_i - mean);
    Outcome o;
    o.pass = sd > 0.0 && gap <= 3.0 * sd;
    o.headline = fmt("subsampled I = %.4f +/- %.4f (1000 x 1000 shots), exact I = %.4f, "
                     "|gap| = %.4f vs 3 std = %.4f",
                     mean, sd, exact_i, gap, 3.0 * sd);
    if (!o.pass) {
        // first-order plug-in bias from the substring richness of one draw
        const auto probe = sample_shots(reference_dist(), 1000, 3141);
        std::set<std::uint64_t> ka, kb, kab;
        for (const auto& [bits, c] : probe) {
            ka.insert(a_substring(reference_part(), bits));
            kb.insert(b_substring(reference_part(), bits));
            kab.insert(bits);
        }
        const double predicted =
            (static_cast<double>(kab.size()) - static_cast<double>(ka.size()) -
             static_cast<double>(kb.size()) + 1.0) /
            (2.0 * 1000.0);
        o.notes.push_back(fmt("note: plug-in mutual information overshoots systematically on "
                              "1000-shot draws; the leading-order bias term "
                              "(K_AB - K_A - K_B + 1) / (2 n) = %.3f nats for a typical draw "
                              "(K_AB = %zu, K_A = %zu, K_B = %zu) already covers half the gap, "
                              "and higher orders add the rest since the joint support is barely "
                              "sampled (K_AB / n = %.2f)",
                              predicted, kab.size(), ka.size(), kb.size(),
                              static_cast<double>(kab.size()) / 1000.0));
        o.notes.push_back("note: no bias correction is applied anywhere, so the spread over "
                          "subsamples measures noise, not this systematic offset; the exact "
                          "value can only re-enter the 3-sigma band at larger subsample sizes");
    }
    return o;
}

// 10. 100 seeded synthetic logistic curves with sigma = 0.01 noise: x0
//     recovered within +/- 0.2 in at least 95 cases.
Outcome criterion_10() {
    std::vector<double> xs;
    for (double p : default_pmin_grid())
        if (p > 0.0) xs.push_back(std::log10(p));
    int recovered = 0;
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        std::mt19937_64 eng(777 + static_cast<std::uint64_t>(t));
        const double d = 0.5 * uniform53(eng);
        const double l = 0.3 + 1.7 * uniform53(eng);
        const double k = 1.0 + 5.0 * uniform53(eng);
        const double x0 = -5.0 + 4.0 * uniform53(eng);
        std::vector<double> ys;
        ys.reserve(xs.size());
        for (double x : xs)
            ys.push_back(detail::sigmoid_model(x, d, l, k, x0) + 0.01 * gaussian(eng));
        try {
            const SigmoidFit fit = detail::fit_xy(xs, ys);
            const double err = std::abs(fit.x0 - x0);
            worst = std::max(worst, err);
            if (err <= 0.2) ++recovered;
        } catch (const fit_error&) {
            worst = std::max(worst, 1.0);
        }
    }
    Outcome o;
    o.pass = recovered >= 95;
    o.headline = fmt("x0 recovered within 0.2 on %d/100 noisy curves (worst error %.3f, "
                     "need >= 95)",
                     recovered, worst);
    return o;
}

const char* kTitles[10] = {
    "reference entanglement entropy", "reference mutual information",
    "inflection stopping rule",       "bound chain over the phase grid",
    "filtered bound along the sweep", "solver oracle equivalence",
    "sampling fidelity",              "bipartition symmetry",
    "subsample error protocol",       "fitter self-consistency",
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[i + 1]);
            ++i;
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 64;
        }
    }
    if (only < 0 || only > 10) {
        std::fprintf(stderr, "criterion must be 1..10\n");
        return 64;
    }

    const std::function<Outcome()> criteria[10] = {
        criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
        criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
    };

    int failures = 0, ran = 0;
    for (int id = 1; id <= 10; ++id) {
        if (only != 0 && id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[id - 1]();
        } catch (const std::exception& e) {
            o.pass = false;
            o.headline = std::string("unexpected error: ") + e.what();
        }
        const double dt = seconds_since(t0);
        std::printf("%s criterion %2d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id,
                    kTitles[id - 1], o.headline.c_str(), dt);
        for (const std::string& note : o.notes) std::printf("    %s\n", note.c_str());
        std::fflush(stdout);
        ++ran;
        if (!o.pass) ++failures;
    }
    std::printf("%d of %d criteria passed\n", ran - failures, ran);
    return failures;
}
