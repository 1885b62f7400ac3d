#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "shiftlab/counterexamples.hpp"
#include "shiftlab/density.hpp"
#include "shiftlab/family.hpp"

using namespace shiftlab;

namespace {

FiniteSubset evens(std::int64_t n) {
    return FiniteSubset::from_predicate(1, n, [](std::int64_t k) { return k % 2 == 0; });
}

FiniteSubset random_set(std::mt19937_64& rng, std::int64_t n, double p) {
    std::bernoulli_distribution coin(p);
    return FiniteSubset::from_predicate(1, n, [&](std::int64_t) { return coin(rng); });
}

std::int64_t brute_window_max(const FiniteSubset& a, std::int64_t s) {
    std::int64_t best = 0;
    for (std::int64_t k = 0; k + s <= a.horizon(); ++k) {
        std::int64_t c = 0;
        for (std::int64_t i = k + 1; i <= k + s; ++i) c += a.contains(i);
        best = std::max(best, c);
    }
    return best;
}

} // namespace

TEST_CASE("FiniteSubset validation and io") {
    CHECK_THROWS_AS(FiniteSubset({3, 2}, 10), std::invalid_argument);
    CHECK_THROWS_AS(FiniteSubset({11}, 10), std::invalid_argument);
    CHECK_THROWS_AS(FiniteSubset({}, 0), std::invalid_argument);

    std::istringstream in("#horizon=20\n# comment\n2\n5\n9\n");
    auto a = read_set(in);
    CHECK(a.horizon() == 20);
    CHECK(a.size() == 3);
    std::ostringstream out;
    write_set(out, a);
    std::istringstream back(out.str());
    CHECK(read_set(back) == a);
}

TEST_CASE("window estimator examples") {
    auto e = density_report(evens(100), {10});
    CHECK(e.window_max_counts[0] == 5);
    CHECK(e.upper_estimate(0) == doctest::Approx(0.5));

    auto full = density_report(FiniteSubset::interval(1, 100, 100), {7});
    CHECK(full.window_max_counts[0] == 7);
    CHECK(full.window_min_counts[0] == 7);
}

TEST_CASE("dyadic block set S at horizon 2^12 with burn-in") {
    auto ex = gen_example313({1, 2}, 12);
    const auto start = ex.burn_in(64);
    auto d = density_report(ex.s_set, {64}, start);
    CHECK(d.window_min_counts[0] >= 60);
    CHECK(family_membership(ex.s_set, BanachLowerProxy{1.0 - 4.0 / 64.0, 64, start}).member);
}

TEST_CASE("syndetic gap examples") {
    auto threes = FiniteSubset::from_predicate(1, 100, [](std::int64_t k) { return k % 3 == 0 && k <= 99; });
    CHECK(syndetic_gap(threes) == 3);
    CHECK(syndetic_gap(FiniteSubset({1}, 1000)) == 999);
    CHECK_FALSE(syndetic_gap(FiniteSubset({}, 10)).has_value());
}

TEST_CASE("difference set examples") {
    CHECK(difference_set(FiniteSubset({2, 5, 9}, 10), 10) == FiniteSubset({3, 4, 7}, 10));
    auto d = difference_set(evens(100), 50);
    CHECK(d == FiniteSubset::from_predicate(1, 50, [](std::int64_t k) { return k % 2 == 0; }));
}

TEST_CASE("difference set matches exhaustive pair enumeration") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_set(rng, 400, 0.3);
        std::set<std::int64_t> diffs;
        for (auto x : a.members())
            for (auto y : a.members())
                if (x > y && x - y <= 150) diffs.insert(x - y);
        CHECK(difference_set(a, 150) == FiniteSubset(std::vector<std::int64_t>(diffs.begin(), diffs.end()), 150));
    }
}

TEST_CASE("shift intersection examples and nesting") {
    auto a = FiniteSubset::interval(1, 10, 10);
    CHECK(shift_intersection(a, 2, 2) == FiniteSubset::interval(1, 6, 6));
    CHECK(shift_intersection(evens(100), 3, 1).empty());
    CHECK_THROWS_AS(shift_intersection(a, 5, 2), std::invalid_argument);

    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        auto b = random_set(rng, 300, 0.6);
        const std::int64_t k = 1 + static_cast<std::int64_t>(rng() % 20);
        for (std::int64_t r = 2; r <= 4; ++r) {
            auto hi = shift_intersection(b, k, r), lo = shift_intersection(b, k, r - 1);
            for (auto x : hi.members()) CHECK(lo.contains(x));
        }
    }
}

TEST_CASE("longest arithmetic progression examples") {
    auto p = longest_ap(FiniteSubset({1, 3, 5, 9}, 10), 100);
    CHECK(p == Progression{1, 2, 3});
    CHECK(longest_ap(FiniteSubset::interval(4, 30, 40), 100).length == 27);
    CHECK(longest_ap(FiniteSubset::interval(4, 30, 40), 10).length == 10);
}

TEST_CASE("dilation preimage examples and round trip") {
    CHECK(dilate_preimage(evens(100), 2) == FiniteSubset::interval(1, 50, 50));
    CHECK(dilate_preimage(FiniteSubset({17, 34, 51}, 60), 17) == FiniteSubset({1, 2, 3}, 3));

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_set(rng, 500, 0.5);
        const std::int64_t l = 1 + static_cast<std::int64_t>(rng() % 7);
        auto pre = dilate_preimage(a, l);
        for (auto n : pre.members()) CHECK(a.contains(l * n));
    }
}

TEST_CASE("window counts agree with brute force; subadditivity") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 25; ++trial) {
        auto a = random_set(rng, 300, 0.1 + 0.03 * trial);
        for (std::int64_t s : {1, 2, 7, 33, 150}) CHECK(window_counts(a, s).max_count == brute_window_max(a, s));
        for (std::int64_t s = 1; s <= 40; s += 3)
            for (std::int64_t t = 1; t <= 40; t += 5)
                CHECK(window_counts(a, s + t).max_count <= window_counts(a, s).max_count + window_counts(a, t).max_count);
    }
}

TEST_CASE("window size validation") {
    CHECK_THROWS_AS(density_report(evens(10), {0}), std::invalid_argument);
    CHECK_THROWS_AS(density_report(evens(10), {11}), std::invalid_argument);
    CHECK_THROWS_AS(density_report(evens(10), {5}, 6), std::invalid_argument);
}

TEST_CASE("family proxies") {
    CHECK(family_membership(FiniteSubset::interval(5, 100, 100), CofiniteProxy{5}).member);
    auto threes = FiniteSubset::from_predicate(1, 99, [](std::int64_t k) { return k % 3 == 0; });
    auto m = family_membership(threes, SyndeticGapProxy{2});
    CHECK_FALSE(m.member);
    REQUIRE(m.witness);
    CHECK(std::get<OversizedGap>(*m.witness).gap.length() == 3);

    auto miss = family_membership(FiniteSubset({5, 6, 8, 9, 10}, 10), CofiniteProxy{5});
    CHECK_FALSE(miss.member);
    CHECK(std::get<MissingPoint>(*miss.witness).n == 7);

    CHECK(std::holds_alternative<SyndeticGapProxy>(parse_proxy("syndetic:4")));
    auto b = std::get<BanachLowerProxy>(parse_proxy("banach:0.5:16:3"));
    CHECK(b.window == 16);
    CHECK(b.start == 3);
    CHECK_THROWS_AS(parse_proxy("nonsense:1"), std::invalid_argument);
    CHECK_THROWS_AS(family_membership(evens(10), CofiniteProxy{11}), std::invalid_argument);
}
