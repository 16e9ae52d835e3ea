#include "rydent/hamiltonian.hpp"

#include <bit>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "rydent/errors.hpp"

namespace rydent {

HamiltonianSpec make_hamiltonian(LadderGeometry geometry, CouplingTable couplings,
                                 double delta_over_omega) {
    if (geometry.n_atoms < 2)
        throw validation_error("make_hamiltonian: need at least one rung");
    if (couplings.v.rows() != geometry.n_atoms)
        throw validation_error("make_hamiltonian: coupling table size does not match geometry");
    if (!std::isfinite(delta_over_omega))
        throw validation_error("make_hamiltonian: delta_over_omega must be finite");
    if (geometry.n_atoms > 46)
        throw capability_error("make_hamiltonian: 2^" + std::to_string(geometry.n_atoms) +
                               " basis states exceed addressable memory");
    HamiltonianSpec spec;
    spec.dimension = std::size_t{1} << geometry.n_atoms;
    spec.geometry = std::move(geometry);
    spec.couplings = std::move(couplings);
    spec.delta_over_omega = delta_over_omega;
    return spec;
}

std::vector<double> diagonal_energies(const HamiltonianSpec& spec) {
    const int n = spec.geometry.n_atoms;
    const std::size_t dim = spec.dimension;
    if (n > 30)
        throw capability_error("diagonal_energies: dimension 2^" + std::to_string(n) +
                               " too large to materialize");
    std::vector<double> diag(dim);
    const double delta = spec.delta_over_omega;
    const auto& v = spec.couplings.v;
    for (std::size_t s = 0; s < dim; ++s) {
        const auto bits = static_cast<std::uint64_t>(s);
        double e = -delta * std::popcount(bits);
        std::uint64_t rest = bits;
        while (rest != 0) {
            const int i = std::countr_zero(rest);
            rest &= rest - 1;
            std::uint64_t rest2 = rest;
            while (rest2 != 0) {
                const int j = std::countr_zero(rest2);
                rest2 &= rest2 - 1;
                e += v(i, j);
            }
        }
        diag[s] = e;
    }
    return diag;
}

HamiltonianOperator::HamiltonianOperator(const HamiltonianSpec& spec)
    : diag_(diagonal_energies(spec)), dim_(spec.dimension), n_atoms_(spec.geometry.n_atoms) {}

void HamiltonianOperator::apply(const double* in, double* out) const {
    const std::size_t dim = dim_;
    for (std::size_t s = 0; s < dim; ++s) out[s] = diag_[s] * in[s];
    // flip term: out[s] += 1/2 in[s ^ (1<<i)], processed per bit in blocks so
    // both sides of each pair stream linearly
    for (int i = 0; i < n_atoms_; ++i) {
        const std::size_t stride = std::size_t{1} << i;
        for (std::size_t base = 0; base < dim; base += 2 * stride) {
            const double* lo_in = in + base;
            const double* hi_in = in + base + stride;
            double* lo_out = out + base;
            double* hi_out = out + base + stride;
            for (std::size_t k = 0; k < stride; ++k) {
                lo_out[k] += 0.5 * hi_in[k];
                hi_out[k] += 0.5 * lo_in[k];
            }
        }
    }
}

std::vector<double> apply_h(const HamiltonianSpec& spec, const std::vector<double>& v) {
    if (v.size() != spec.dimension)
        throw validation_error("apply_h: vector length " + std::to_string(v.size()) +
                               " does not match dimension " + std::to_string(spec.dimension));
    for (double x : v)
        if (!std::isfinite(x)) throw validation_error("apply_h: non-finite input vector");
    HamiltonianOperator op(spec);
    std::vector<double> out(v.size());
    op.apply(v.data(), out.data());
    return out;
}

namespace {

void fix_sign(std::vector<double>& amps) {
    std::size_t imax = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double a = std::abs(amps[i]);
        if (a > best) {
            best = a;
            imax = i;
        }
    }
    if (amps[imax] < 0.0)
        for (double& a : amps) a = -a;
}

} // namespace

GroundState dense_ground_state(const HamiltonianSpec& spec) {
    if (spec.dimension > (std::size_t{1} << 12))
        throw capability_error("dense_ground_state: dimension " +
                               std::to_string(spec.dimension) + " exceeds dense limit 4096");
    const auto dim = static_cast<Eigen::Index>(spec.dimension);
    const std::vector<double> diag = diagonal_energies(spec);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index s = 0; s < dim; ++s) {
        h(s, s) = diag[static_cast<std::size_t>(s)];
        for (int i = 0; i < spec.geometry.n_atoms; ++i)
            h(s ^ (Eigen::Index{1} << i), s) = 0.5;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success)
        throw numerical_error("dense_ground_state: eigendecomposition failed");

    GroundState gs;
    gs.n_atoms = spec.geometry.n_atoms;
    gs.energy = es.eigenvalues()(0);
    gs.gap = es.eigenvalues()(1) - es.eigenvalues()(0);
    Eigen::VectorXd v = es.eigenvectors().col(0);
    v /= v.norm();
    gs.amplitudes.assign(v.data(), v.data() + v.size());
    fix_sign(gs.amplitudes);
    Eigen::Map<const Eigen::VectorXd> vm(gs.amplitudes.data(), dim);
    gs.residual_norm = (h.selfadjointView<Eigen::Lower>() * vm - gs.energy * vm).norm();
    gs.converged = true;
    gs.degenerate = gs.gap < 100.0 * 1e-10;
    return gs;
}

} // namespace rydent
