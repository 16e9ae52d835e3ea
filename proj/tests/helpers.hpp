#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "rydent/hamiltonian.hpp"
#include "rydent/lattice.hpp"

namespace helpers {

inline rydent::HamiltonianSpec spec_for(int n_rungs, double rb_over_a, double delta_over_omega) {
    rydent::LadderGeometry geom = rydent::build_ladder(n_rungs);
    rydent::CouplingTable coup = rydent::couplings(geom, rb_over_a);
    return rydent::make_hamiltonian(std::move(geom), std::move(coup), delta_over_omega);
}

// The 6-rung, rb_over_a = 2.35, delta_over_omega = 3.5 working point; solved
// once per test binary.
inline const rydent::GroundState& reference_state() {
    static const rydent::GroundState state = rydent::ground_state(spec_for(6, 2.35, 3.5), {});
    return state;
}

inline rydent::GroundState state_from_amplitudes(int n_atoms, std::vector<double> amps) {
    double nrm2 = 0.0;
    for (double a : amps) nrm2 += a * a;
    const double scale = 1.0 / std::sqrt(nrm2);
    for (double& a : amps) a *= scale;
    rydent::GroundState gs;
    gs.n_atoms = n_atoms;
    gs.amplitudes = std::move(amps);
    gs.converged = true;
    return gs;
}

} // namespace helpers
