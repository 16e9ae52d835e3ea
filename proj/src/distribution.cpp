#include "rydent/distribution.hpp"

#include <cmath>
#include <string>

#include "rydent/errors.hpp"

namespace rydent {

BitstringDistribution exact_distribution(const GroundState& state, double epsilon) {
    if (state.n_atoms < 1 || state.amplitudes.size() != (std::size_t{1} << state.n_atoms))
        throw validation_error("exact_distribution: malformed state");
    if (epsilon < 0.0) throw validation_error("exact_distribution: epsilon must be >= 0");
    BitstringDistribution dist;
    dist.n_atoms = state.n_atoms;
    dist.source = Source::exact;
    double total = 0.0;
    for (std::size_t n = 0; n < state.amplitudes.size(); ++n) {
        const double p = state.amplitudes[n] * state.amplitudes[n];
        if (p > epsilon) {
            dist.entries.emplace_back(static_cast<std::uint64_t>(n), p);
            total += p;
        }
    }
    if (dist.entries.empty())
        throw empty_filter_error("exact_distribution: epsilon removed every state");
    for (auto& e : dist.entries) e.second /= total;
    return dist;
}

BitstringDistribution empirical_distribution(const std::map<std::uint64_t, std::uint64_t>& counts,
                                             int n_atoms) {
    if (n_atoms < 1 || n_atoms > 63)
        throw validation_error("empirical_distribution: bad n_atoms");
    std::uint64_t total = 0;
    const std::uint64_t limit = std::uint64_t{1} << n_atoms;
    for (const auto& [bits, c] : counts) {
        if (c < 1)
            throw validation_error("empirical_distribution: zero count for a listed bitstring");
        if (bits >= limit)
            throw validation_error("empirical_distribution: bitstring wider than n_atoms");
        total += c;
    }
    if (total == 0) throw validation_error("empirical_distribution: no shots");
    BitstringDistribution dist;
    dist.n_atoms = n_atoms;
    dist.source = Source::empirical;
    dist.n_shots = total;
    dist.entries.reserve(counts.size());
    const double tot = static_cast<double>(total);
    for (const auto& [bits, c] : counts)
        dist.entries.emplace_back(bits, static_cast<double>(c) / tot);
    return dist;
}

BitstringDistribution marginal(const BitstringDistribution& dist, const Bipartition& part,
                               Side side) {
    if (part.n_atoms != dist.n_atoms)
        throw validation_error("marginal: bipartition does not match distribution");
    const int out_bits = (side == Side::A) ? part.size_a : part.size_b;
    if (out_bits > 30) throw capability_error("marginal: side too wide to accumulate densely");
    std::vector<double> acc(std::size_t{1} << out_bits, 0.0);
    for (const auto& [bits, p] : dist.entries) {
        const std::uint64_t key =
            (side == Side::A) ? a_substring(part, bits) : b_substring(part, bits);
        acc[key] += p;
    }
    BitstringDistribution out;
    out.n_atoms = out_bits;
    out.source = dist.source;
    out.n_shots = dist.n_shots;
    for (std::size_t k = 0; k < acc.size(); ++k)
        if (acc[k] > 0.0) out.entries.emplace_back(static_cast<std::uint64_t>(k), acc[k]);
    return out;
}

double shannon_entropy(const BitstringDistribution& dist) {
    double s = 0.0;
    for (const auto& [bits, p] : dist.entries)
        if (p > 0.0) s -= p * std::log(p);
    return s < 0.0 ? 0.0 : s;
}

EntropySummary entropy_summary(const BitstringDistribution& dist, const Bipartition& part) {
    EntropySummary sm;
    sm.s_ab = shannon_entropy(dist);
    sm.s_a = shannon_entropy(marginal(dist, part, Side::A));
    sm.s_b = shannon_entropy(marginal(dist, part, Side::B));
    sm.s_a_given_b = sm.s_ab - sm.s_b;
    sm.s_b_given_a = sm.s_ab - sm.s_a;
    sm.mutual_information = sm.s_a + sm.s_b - sm.s_ab;
    return sm;
}

} // namespace rydent
