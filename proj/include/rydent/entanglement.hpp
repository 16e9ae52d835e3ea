#pragma once

#include <vector>

#include "rydent/bipartition.hpp"
#include "rydent/hamiltonian.hpp"

namespace rydent {

// Eigenvalues of rho_A, nonincreasing, summing to 1.
struct SchmidtSpectrum {
    std::vector<double> eigenvalues;
};

// Squared singular values of the 2^|A| x 2^|B| reshape of the amplitudes;
// rho_A is never materialized.
SchmidtSpectrum schmidt_spectrum(const GroundState& state, const Bipartition& part);

double von_neumann_entropy(const SchmidtSpectrum& spectrum); // nats

// P(p_min)|psi> / sqrt(<psi|P|psi>): zero out amplitudes with |c|^2 < p_min,
// renormalize. Equality keeps the state (the projector sums over p >= p_min).
GroundState project_filter_state(const GroundState& state, double p_min);

double filtered_vn_entropy(const GroundState& state, const Bipartition& part, double p_min);

} // namespace rydent
