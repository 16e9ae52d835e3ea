#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "rydent/bipartition.hpp"
#include "rydent/hamiltonian.hpp"

namespace rydent {

enum class Source { exact, empirical };
enum class Side { A, B };

// Sparse probability map over bitstrings (bit i = atom i), kept sorted by
// bitstring; zero-probability states are simply absent.
struct BitstringDistribution {
    int n_atoms = 0;
    Source source = Source::exact;
    std::uint64_t n_shots = 0; // 0 for exact
    std::vector<std::pair<std::uint64_t, double>> entries;
};

struct EntropySummary {
    double s_ab = 0.0;
    double s_a = 0.0;
    double s_b = 0.0;
    double s_a_given_b = 0.0;
    double s_b_given_a = 0.0;
    double mutual_information = 0.0;
};

BitstringDistribution exact_distribution(const GroundState& state, double epsilon = 0.0);

BitstringDistribution empirical_distribution(const std::map<std::uint64_t, std::uint64_t>& counts,
                                             int n_atoms);

BitstringDistribution marginal(const BitstringDistribution& dist, const Bipartition& part,
                               Side side);

double shannon_entropy(const BitstringDistribution& dist); // nats

EntropySummary entropy_summary(const BitstringDistribution& dist, const Bipartition& part);

} // namespace rydent
