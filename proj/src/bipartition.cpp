#include "rydent/bipartition.hpp"

#include <string>

#include "rydent/errors.hpp"

namespace rydent {

Bipartition make_bipartition(int n_atoms, int size_a) {
    if (n_atoms < 2)
        throw validation_error("make_bipartition: need at least 2 atoms");
    if (size_a < 1 || size_a > n_atoms - 1)
        throw validation_error("make_bipartition: size_a=" + std::to_string(size_a) +
                               " must lie in [1, " + std::to_string(n_atoms - 1) + "]");
    return Bipartition{n_atoms, size_a, n_atoms - size_a};
}

} // namespace rydent
