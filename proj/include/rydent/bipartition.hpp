#pragma once

#include <cstdint>

namespace rydent {

// Contiguous prefix bipartition: A = atoms 0..size_a-1 (low bits of the
// bitstring under rung-major ordering), B = the rest.
struct Bipartition {
    int n_atoms = 0;
    int size_a = 0;
    int size_b = 0;
};

Bipartition make_bipartition(int n_atoms, int size_a);

inline std::uint64_t a_substring(const Bipartition& part, std::uint64_t bits) {
    return bits & ((std::uint64_t{1} << part.size_a) - 1);
}

inline std::uint64_t b_substring(const Bipartition& part, std::uint64_t bits) {
    return bits >> part.size_a;
}

} // namespace rydent
