#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "rydent/distribution.hpp"
#include "rydent/entanglement.hpp"
#include "rydent/errors.hpp"
#include "rydent/filtering.hpp"

using namespace rydent;

namespace {

BitstringDistribution three_state() {
    BitstringDistribution d;
    d.n_atoms = 2;
    d.entries = {{0b00, 0.7}, {0b01, 0.2}, {0b10, 0.1}};
    return d;
}

} // namespace

TEST_CASE("zero threshold is the identity") {
    const BitstringDistribution d = three_state();
    const BitstringDistribution f = filter_distribution(d, 0.0);
    CHECK(f.entries == d.entries);
}

TEST_CASE("renormalization arithmetic") {
    const BitstringDistribution f = filter_distribution(three_state(), 0.15);
    REQUIRE(f.entries.size() == 2);
    CHECK(f.entries[0].second == doctest::Approx(0.7 / 0.9).epsilon(1e-14));
    CHECK(f.entries[1].second == doctest::Approx(0.2 / 0.9).epsilon(1e-14));
}

TEST_CASE("boundary probabilities survive the cut") {
    const BitstringDistribution f = filter_distribution(three_state(), 0.2);
    CHECK(f.entries.size() == 2);
}

TEST_CASE("out-of-range thresholds rejected") {
    CHECK_THROWS_AS(filter_distribution(three_state(), -0.1), validation_error);
    CHECK_THROWS_AS(filter_distribution(three_state(), 1.5), validation_error);
}

TEST_CASE("removing every state is an explicit, distinguishable failure") {
    CHECK_THROWS_AS(filter_distribution(three_state(), 0.8), empty_filter_error);
}

TEST_CASE("probability threshold matches the count threshold on empirical data") {
    std::map<std::uint64_t, std::uint64_t> counts;
    counts[0b00] = 700;
    counts[0b01] = 250;
    counts[0b10] = 40;
    counts[0b11] = 10;
    const BitstringDistribution d = empirical_distribution(counts, 2);
    const BitstringDistribution by_count = filter_by_min_count(d, 10);
    const BitstringDistribution by_p = filter_distribution(d, 0.01);
    CHECK(by_count.entries == by_p.entries);
    CHECK(by_count.n_shots == by_p.n_shots);

    const BitstringDistribution all = filter_by_min_count(d, 1);
    CHECK(all.entries == d.entries);

    CHECK_THROWS_AS(filter_by_min_count(d, 701), empty_filter_error);
}

TEST_CASE("count threshold needs empirical input") {
    const BitstringDistribution d = exact_distribution(helpers::reference_state());
    CHECK_THROWS_AS(filter_by_min_count(d, 2), validation_error);
}

TEST_CASE("filtering shrinks the empirical shot count with the kept mass") {
    const BitstringDistribution d = empirical_distribution({{0b00, 900}, {0b01, 100}}, 2);
    const BitstringDistribution f = filter_distribution(d, 0.5);
    CHECK(f.n_shots == 900);
}

TEST_CASE("filtering is idempotent") {
    const BitstringDistribution once = filter_distribution(three_state(), 0.15);
    const BitstringDistribution twice = filter_distribution(once, 0.0);
    CHECK(once.entries == twice.entries);
}

TEST_CASE("survivor sets shrink monotonically with the threshold") {
    const BitstringDistribution d = exact_distribution(helpers::reference_state());
    std::size_t prev = d.entries.size();
    for (double p : {1e-6, 1e-4, 1e-3, 1e-2}) {
        const BitstringDistribution f = filter_distribution(d, p);
        CHECK(f.entries.size() <= prev);
        // every survivor at the tighter threshold survived the looser one
        prev = f.entries.size();
    }
}

TEST_CASE("default threshold grid shape") {
    const std::vector<double> grid = default_pmin_grid();
    REQUIRE(grid.size() == 122);
    CHECK(grid.front() == 0.0);
    CHECK(grid[1] == doctest::Approx(1e-7).epsilon(1e-12));
    CHECK(grid.back() == doctest::Approx(std::pow(10.0, -0.5)).epsilon(1e-12));
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
}

TEST_CASE("grid construction rejects bad shapes") {
    CHECK_THROWS_AS(make_pmin_grid(-3.0, -3.0, 10), validation_error);
    CHECK_THROWS_AS(make_pmin_grid(-3.0, -1.0, 1), validation_error);
    CHECK_THROWS_AS(make_pmin_grid(-3.0, 0.5, 10), validation_error);
}

TEST_CASE("sweep validates its grid") {
    const BitstringDistribution d = three_state();
    const Bipartition part = make_bipartition(2, 1);
    CHECK_THROWS_AS(sweep(d, part, {}, nullptr), validation_error);
    CHECK_THROWS_AS(sweep(d, part, {0.1, 0.1}, nullptr), validation_error);
    CHECK_THROWS_AS(sweep(d, part, {0.2, 0.1}, nullptr), validation_error);
    CHECK_THROWS_AS(sweep(d, part, {-0.1, 0.1}, nullptr), validation_error);
}

TEST_CASE("first sweep point reproduces the unfiltered summary bit for bit") {
    const BitstringDistribution d = exact_distribution(helpers::reference_state());
    const Bipartition part = make_bipartition(12, 6);
    const FilterCurve curve = sweep(d, part, default_pmin_grid(), nullptr);
    const EntropySummary direct = entropy_summary(d, part);
    REQUIRE(!curve.points.empty());
    CHECK(curve.points[0].p_min == 0.0);
    CHECK(curve.points[0].summary.mutual_information == direct.mutual_information);
    CHECK(curve.points[0].summary.s_ab == direct.s_ab);
    CHECK(curve.points[0].kept_states == d.entries.size());
}

TEST_CASE("kept quantities are consistent along the curve") {
    const BitstringDistribution d = exact_distribution(helpers::reference_state());
    const Bipartition part = make_bipartition(12, 6);
    const FilterCurve curve = sweep(d, part, default_pmin_grid(), nullptr);
    std::uint64_t prev_kept = UINT64_MAX;
    for (const auto& pt : curve.points) {
        CHECK(pt.kept_states >= 1);
        CHECK(pt.kept_states <= prev_kept);
        prev_kept = pt.kept_states;
        double raw = 0.0;
        for (const auto& [bits, p] : d.entries)
            if (p >= pt.p_min || pt.p_min == 0.0) raw += p;
        CHECK(std::abs(pt.kept_mass - raw) < 1e-12);
    }
}

TEST_CASE("uniform distribution: the curve is flat below the common probability") {
    BitstringDistribution d;
    d.n_atoms = 2;
    for (std::uint64_t k = 0; k < 4; ++k) d.entries.emplace_back(k, 0.25);
    const Bipartition part = make_bipartition(2, 1);
    const FilterCurve curve = sweep(d, part, {0.0, 0.01, 0.1, 0.2}, nullptr);
    REQUIRE(curve.points.size() == 4);
    for (const auto& pt : curve.points) {
        CHECK(pt.kept_states == 4);
        CHECK(pt.summary.s_ab == curve.points[0].summary.s_ab);
    }
}

TEST_CASE("a threshold above the maximum probability ends the curve with a cutoff record") {
    const BitstringDistribution d = three_state();
    const Bipartition part = make_bipartition(2, 1);
    const FilterCurve curve = sweep(d, part, {0.0, 0.7 * 1.1}, nullptr);
    REQUIRE(curve.points.size() == 1);
    CHECK(curve.points[0].p_min == 0.0);
    REQUIRE(curve.cutoff_p_min.has_value());
    CHECK(*curve.cutoff_p_min == doctest::Approx(0.77).epsilon(1e-12));
}

TEST_CASE("a single-survivor point has zero entropies across the board") {
    BitstringDistribution d;
    d.n_atoms = 2;
    d.entries = {{0b00, 0.6}, {0b01, 0.3}, {0b10, 0.1}};
    const Bipartition part = make_bipartition(2, 1);
    const FilterCurve curve = sweep(d, part, {0.0, 0.5}, nullptr);
    REQUIRE(curve.points.size() == 2);
    const FilterPoint& last = curve.points.back();
    REQUIRE(last.kept_states == 1);
    CHECK(last.summary.s_ab == 0.0);
    CHECK(last.summary.s_a_given_b == 0.0);
    CHECK(last.summary.s_b_given_a == 0.0);
    CHECK(std::abs(last.summary.mutual_information) < 1e-15);
}

TEST_CASE("exact-state sweeps carry the filtered entanglement column") {
    const GroundState& gs = helpers::reference_state();
    const BitstringDistribution d = exact_distribution(gs);
    const Bipartition part = make_bipartition(12, 6);
    const FilterCurve with = sweep(d, part, {0.0, 1e-3}, &gs);
    REQUIRE(with.points.size() == 2);
    REQUIRE(with.points[0].filtered_svn.has_value());
    CHECK(*with.points[0].filtered_svn ==
          doctest::Approx(0.8440853177758036).epsilon(1e-10));
    CHECK(with.points[1].filtered_svn.has_value());

    const FilterCurve without = sweep(d, part, {0.0, 1e-3}, nullptr);
    CHECK(!without.points[0].filtered_svn.has_value());
}
