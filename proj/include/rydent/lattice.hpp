#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

namespace rydent {

// Two-leg ladder. Atom i sits on rung i/2, leg i%2, at (r, 2*l) in units of
// the inter-rung spacing a; the rung length a_y is twice a_x. Rung-major
// ordering makes "first k rungs" bipartitions contiguous bit prefixes.
struct LadderGeometry {
    int n_rungs = 0;
    int n_atoms = 0;
    std::vector<std::array<double, 2>> positions;
};

LadderGeometry build_ladder(int n_rungs);

double atom_distance(const LadderGeometry& geom, int i, int j);

// Pair couplings V_ij = (rb_over_a / d_ij)^6 in units of the Rabi frequency.
struct CouplingTable {
    double rb_over_a = 0.0;
    Eigen::MatrixXd v;
};

CouplingTable couplings(const LadderGeometry& geom, double rb_over_a);

} // namespace rydent
