#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "rydent/errors.hpp"
#include "rydent/hamiltonian.hpp"
#include "rydent/rng.hpp"

namespace rydent {

namespace {

// Orthogonalize w against the first j columns of basis (classical
// Gram-Schmidt); accumulate projection coefficients into coeffs. A second
// pass runs when the norm drops enough that cancellation is suspected
// (DGKS criterion), which at these Krylov depths is full
// reorthogonalization in practice.
void reorthogonalize(const Eigen::MatrixXd& basis, Eigen::Index j, Eigen::VectorXd& w,
                     Eigen::VectorXd& coeffs) {
    const auto cols = basis.leftCols(j);
    coeffs.head(j) = cols.transpose() * w;
    w.noalias() -= cols * coeffs.head(j);
    const double after = w.norm();
    const double before = std::hypot(after, coeffs.head(j).norm());
    if (after < 0.707 * before) {
        Eigen::VectorXd corr = cols.transpose() * w;
        w.noalias() -= cols * corr;
        coeffs.head(j) += corr;
    }
}

struct RitzInfo {
    Eigen::VectorXd evals;
    Eigen::MatrixXd evecs;
};

RitzInfo ritz(const Eigen::MatrixXd& t, Eigen::Index j) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t.topLeftCorner(j, j));
    if (es.info() != Eigen::Success)
        throw numerical_error("ground_state: projected eigenproblem failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

} // namespace

GroundState ground_state(const HamiltonianSpec& spec, const SolverOptions& opts) {
    if (!(opts.tol > 0.0)) throw validation_error("ground_state: tol must be positive");
    if (opts.max_iterations < 1)
        throw validation_error("ground_state: max_iterations must be >= 1");

    HamiltonianOperator op(spec);
    const auto dim = static_cast<Eigen::Index>(op.dimension());
    const std::size_t vec_bytes = op.dimension() * sizeof(double);
    const std::size_t budget_vecs = (opts.max_basis_mb * std::size_t{1024} * 1024) / vec_bytes;
    const auto depth = static_cast<Eigen::Index>(std::min<std::size_t>(
        {static_cast<std::size_t>(dim), static_cast<std::size_t>(opts.max_iterations) + 1,
         std::max<std::size_t>(budget_vecs, 2), 500}));
    if (depth < 3 && dim > 4)
        throw capability_error("ground_state: max_basis_mb too small to hold a Krylov basis");

    Eigen::MatrixXd basis(dim, depth);
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(depth, depth);
    Eigen::VectorXd w(dim), coeffs(depth);

    std::mt19937_64 eng(opts.seed);
    for (Eigen::Index i = 0; i < dim; ++i) basis(i, 0) = uniform53(eng) - 0.5;
    basis.col(0) /= basis.col(0).norm();

    int matvecs = 0;
    Eigen::Index j = 0;        // index of the newest basis vector
    double best_res = std::numeric_limits<double>::infinity();
    double check_bar = 0.5 * opts.tol; // residual-estimate level that triggers verification
    double theta = 0.0, gap = 0.0;
    Eigen::VectorXd x;

    auto make_ritz_vector = [&](const RitzInfo& ri, Eigen::Index n) {
        x.noalias() = basis.leftCols(n) * ri.evecs.col(0);
        x /= x.norm();
    };

    while (matvecs < opts.max_iterations) {
        op.apply(basis.col(j).data(), w.data());
        ++matvecs;
        reorthogonalize(basis, j + 1, w, coeffs);
        t.col(j).head(j + 1) = coeffs.head(j + 1);
        t.row(j).head(j + 1) = coeffs.head(j + 1);
        const double beta = w.norm();

        const bool last_slot = (j + 1 == depth);
        const bool out_of_budget = (matvecs >= opts.max_iterations);
        const bool breakdown = (beta < 1e-13);
        const bool cheap_check = (j < 32) || ((j & 7) == 0);
        if (!(last_slot || out_of_budget || breakdown || cheap_check)) {
            basis.col(j + 1) = w / beta;
            ++j;
            continue;
        }

        RitzInfo ri = ritz(t, j + 1);
        const double res_est = std::abs(beta * ri.evecs(j, 0));
        gap = (j > 0) ? ri.evals(1) - ri.evals(0) : 0.0;

        if (res_est <= check_bar || last_slot || out_of_budget || breakdown) {
            make_ritz_vector(ri, j + 1);
            Eigen::VectorXd hx(dim);
            op.apply(x.data(), hx.data());
            ++matvecs;
            theta = x.dot(hx);
            const double res_true = (hx - theta * x).norm();
            best_res = std::min(best_res, res_true);
            if (res_true <= opts.tol) {
                GroundState gs;
                gs.n_atoms = op.n_atoms();
                gs.amplitudes.assign(x.data(), x.data() + dim);
                gs.energy = theta;
                gs.gap = gap;
                gs.converged = true;
                gs.residual_norm = res_true;
                gs.degenerate = gap < 100.0 * opts.tol;
                for (std::size_t i = 0; i < gs.amplitudes.size(); ++i) {
                    if (!std::isfinite(gs.amplitudes[i]))
                        throw numerical_error("ground_state: non-finite amplitudes");
                }
                // fixed global sign: largest-magnitude amplitude positive
                std::size_t imax = 0;
                double amax = -1.0;
                for (std::size_t i = 0; i < gs.amplitudes.size(); ++i) {
                    const double a = std::abs(gs.amplitudes[i]);
                    if (a > amax) {
                        amax = a;
                        imax = i;
                    }
                }
                if (gs.amplitudes[imax] < 0.0)
                    for (double& a : gs.amplitudes) a = -a;
                return gs;
            }
            check_bar = std::max(0.1 * check_bar, 1e-18); // estimate was optimistic
            if (out_of_budget) break;

            if (breakdown) {
                // invariant subspace without convergence: restart direction
                Eigen::VectorXd v(dim);
                for (Eigen::Index i = 0; i < dim; ++i) v(i) = uniform53(eng) - 0.5;
                Eigen::VectorXd c(depth);
                reorthogonalize(basis, j + 1, v, c);
                if (j + 1 == depth) break; // basis saturated
                basis.col(j + 1) = v / v.norm();
                ++j;
                continue;
            }

            if (last_slot) {
                // thick restart: keep the lowest Ritz vectors plus the
                // residual direction; T restarts as diag(theta_kept) and the
                // coupling row reappears through reorthogonalization
                const Eigen::Index keep =
                    std::max<Eigen::Index>(2, std::min<Eigen::Index>(32, depth / 4));
                Eigen::MatrixXd kept = basis.leftCols(depth) * ri.evecs.leftCols(keep);
                for (Eigen::Index c = 0; c < keep; ++c) {
                    for (Eigen::Index b = 0; b < c; ++b)
                        kept.col(c) -= kept.col(b).dot(kept.col(c)) * kept.col(b);
                    kept.col(c) /= kept.col(c).norm();
                }
                basis.leftCols(keep) = kept;
                Eigen::VectorXd vnext = w / beta;
                Eigen::VectorXd c2(depth);
                reorthogonalize(basis, keep, vnext, c2);
                const double nn = vnext.norm();
                if (nn < 1e-13) break; // nothing new to add
                basis.col(keep) = vnext / nn;
                t.setZero();
                for (Eigen::Index i = 0; i < keep; ++i) t(i, i) = ri.evals(i);
                j = keep;
                continue;
            }
        }

        if (j + 1 < depth) {
            basis.col(j + 1) = w / beta;
            ++j;
        } else {
            break;
        }
    }

    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", best_res);
    throw numerical_error("ground_state: no convergence within " +
                          std::to_string(opts.max_iterations) +
                          " matrix applications; best residual " + buf);
}

} // namespace rydent
