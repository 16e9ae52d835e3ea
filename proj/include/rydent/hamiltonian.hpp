#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rydent/lattice.hpp"

namespace rydent {

// H = (Omega/2) sum_i (|g><r| + |r><g|)_i - Delta sum_i n_i
//     + sum_{i<j} V_ij n_i n_j,   in units of Omega.
// Real symmetric in the computational basis; bit i of a basis index is the
// occupation n_i of atom i.
struct HamiltonianSpec {
    LadderGeometry geometry;
    CouplingTable couplings;
    double delta_over_omega = 0.0;
    std::size_t dimension = 0;
};

HamiltonianSpec make_hamiltonian(LadderGeometry geometry, CouplingTable couplings,
                                 double delta_over_omega);

std::vector<double> diagonal_energies(const HamiltonianSpec& spec);

std::vector<double> apply_h(const HamiltonianSpec& spec, const std::vector<double>& v);

// Reusable matrix-free applier; caches the diagonal.
class HamiltonianOperator {
  public:
    explicit HamiltonianOperator(const HamiltonianSpec& spec);
    void apply(const double* in, double* out) const;
    std::size_t dimension() const { return dim_; }
    int n_atoms() const { return n_atoms_; }
    const std::vector<double>& diagonal() const { return diag_; }

  private:
    std::vector<double> diag_;
    std::size_t dim_ = 0;
    int n_atoms_ = 0;
};

struct GroundState {
    int n_atoms = 0;
    std::vector<double> amplitudes; // unit norm, sign fixed: largest |amp| > 0
    double energy = 0.0;            // units of Omega
    double gap = 0.0;               // E1 - E0 estimate
    bool converged = false;
    double residual_norm = 0.0;     // ||H v - E v||
    bool degenerate = false;        // gap < 100 * tol at solve time
};

struct SolverOptions {
    double tol = 1e-10;        // absolute residual target
    int max_iterations = 500;  // matvec budget
    std::uint64_t seed = 12345;
    std::size_t max_basis_mb = 1536; // Krylov basis memory cap
};

// Thick-restart Lanczos with full reorthogonalization, matrix-free.
GroundState ground_state(const HamiltonianSpec& spec, const SolverOptions& opts = {});

// Dense symmetric eigendecomposition oracle, dimension <= 2^12.
GroundState dense_ground_state(const HamiltonianSpec& spec);

} // namespace rydent
