#include "rydent/lattice.hpp"

#include <cmath>
#include <string>

#include "rydent/errors.hpp"

namespace rydent {

LadderGeometry build_ladder(int n_rungs) {
    if (n_rungs < 1)
        throw validation_error("build_ladder: n_rungs must be >= 1, got " +
                               std::to_string(n_rungs));
    LadderGeometry geom;
    geom.n_rungs = n_rungs;
    geom.n_atoms = 2 * n_rungs;
    geom.positions.reserve(static_cast<std::size_t>(geom.n_atoms));
    for (int i = 0; i < geom.n_atoms; ++i) {
        const int rung = i / 2;
        const int leg = i % 2;
        geom.positions.push_back({static_cast<double>(rung), 2.0 * leg});
    }
    return geom;
}

double atom_distance(const LadderGeometry& geom, int i, int j) {
    const auto& p = geom.positions[static_cast<std::size_t>(i)];
    const auto& q = geom.positions[static_cast<std::size_t>(j)];
    return std::hypot(p[0] - q[0], p[1] - q[1]);
}

CouplingTable couplings(const LadderGeometry& geom, double rb_over_a) {
    if (!(rb_over_a > 0.0) || !std::isfinite(rb_over_a))
        throw validation_error("couplings: rb_over_a must be positive and finite");
    CouplingTable table;
    table.rb_over_a = rb_over_a;
    const int n = geom.n_atoms;
    table.v = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double d = atom_distance(geom, i, j);
            const double vij = std::pow(rb_over_a / d, 6.0);
            table.v(i, j) = vij;
            table.v(j, i) = vij;
        }
    }
    return table;
}

} // namespace rydent
