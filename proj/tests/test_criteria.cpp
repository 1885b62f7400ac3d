#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shiftlab/counterexamples.hpp"
#include "shiftlab/criteria.hpp"
#include "shiftlab/weight_spec.hpp"

using namespace shiftlab;

namespace {

LogProductTable table(const std::string& spec, std::int64_t n) { return LogProductTable(parse_weight_spec(spec), n); }

bool upward_closed_from(const FiniteSubset& a, std::int64_t from) {
    bool seen = false;
    for (std::int64_t n = from; n <= a.horizon(); ++n) {
        if (a.contains(n)) seen = true;
        else if (seen) return false;
    }
    return true;
}

} // namespace

TEST_CASE("criterion sets: worked examples") {
    auto two = table("rolewicz(2)", 100);
    CHECK(criterion_set(two, 4, 0).members == FiniteSubset::interval(3, 100, 100));

    auto menet = table("menet(2)", 20000);
    auto cs = criterion_set(menet, 10, 0);
    CHECK(cs.members == FiniteSubset::interval(10000, 20000, 20000));
    // L(9999) equals log2 10 exactly, so 9999 sits on the boundary
    CHECK(cs.borderline == std::vector<std::int64_t>{9999});

    auto p = gen_prop2_weights(4);
    LogProductTable pt(p.weights, p.horizon());
    auto a1 = criterion_set(pt, 1, 0);
    for (auto b : p.starred_positions()) CHECK(a1.members.contains(b));
    auto runs = complement_runs(a1.members, 1);
    REQUIRE(runs.size() == 4);
    for (std::size_t i = 0; i < runs.size(); ++i) CHECK(runs[i].length == static_cast<std::int64_t>(i) + 2);
}

TEST_CASE("criterion sets: offsets, mirroring and validation") {
    auto two = table("rolewicz(2)", 50);
    CHECK(criterion_set(two, 4, 10).members == FiniteSubset::interval(3, 40, 40));
    CHECK_THROWS_AS(criterion_set(two, 4, 50), std::invalid_argument);
    CHECK_THROWS_AS(criterion_set(two, 4, -1), std::invalid_argument);
    CHECK_THROWS_AS(criterion_set(two, 4, 0, true), std::invalid_argument);
    CHECK_THROWS_AS(criterion_set(two, -1, 0), std::invalid_argument);

    auto bi = table("bilateral(0.5, 2)", 20);
    // going left from j = 0 every weight is 1/2, so 1 / prod = 2^n
    CHECK(criterion_set(bi, 4, 0, true).members == FiniteSubset::interval(3, 21, 21));
    CHECK(criterion_set(bi, 4, 0, false).members == FiniteSubset::interval(3, 20, 20));
    CHECK(criterion_set(bi, 4, -5, false).members == FiniteSubset::interval(13, 25, 25));
}

TEST_CASE("zero sentinel gives the full range in rational mode") {
    auto p = gen_prop2_weights(3);
    LogProductTable t(p.weights, p.horizon());
    auto cs = criterion_set(t, 0, 0);
    CHECK(cs.members == FiniteSubset::interval(1, t.last_index(), t.last_index()));

    std::istringstream zero("1\n-inf\n1\n1\n");
    LogProductTable z(read_weight_file(zero, "z"), 4);
    CHECK(criterion_set(z, 0, 0).members == FiniteSubset({1}, 4));
    CHECK(criterion_set(z, 0, 2).members == FiniteSubset({1, 2}, 2));
}

TEST_CASE("monotone weights give upward closed criterion sets") {
    for (const char* spec : {"menet(1)", "menet(2)", "rolewicz(3)", "rolewicz(1.1)"}) {
        auto t = table(spec, 30000);
        for (double m : {1.0, 2.0, 10.0, 1000.0}) CHECK(upward_closed_from(criterion_set(t, m, 0).members, 1));
    }
}

TEST_CASE("perturbing M inside the error band never flips an unflagged verdict") {
    auto t = table("menet(2)", 50000);
    for (double m : {2.0, 5.0, 10.0, 12.5}) {
        auto base = criterion_set(t, m, 0);
        const double wiggle = t.max_error() / 4;
        for (double f : {-1.0, 1.0}) {
            auto moved = criterion_set(t, std::exp2(std::log2(m) + f * wiggle), 0);
            for (std::int64_t n = 1; n <= t.last_index(); ++n) {
                const bool flagged = std::binary_search(base.borderline.begin(), base.borderline.end(), n) ||
                                     std::binary_search(moved.borderline.begin(), moved.borderline.end(), n);
                if (!flagged) REQUIRE(base.members.contains(n) == moved.members.contains(n));
            }
        }
    }
    // exact table and exact threshold never produce borderline points
    auto two = table("rolewicz(2)", 64);
    CHECK(criterion_set(two, 8, 0).borderline.empty());
    CHECK_FALSE(criterion_set(two, 8, 0).members.contains(3));
}

TEST_CASE("syndetic operator check") {
    auto two = table("rolewicz(2)", 2000);
    auto rep = syndetic_operator_check(two, {2, 1024}, 11);
    for (const auto& row : rep.rows) CHECK(row.verdict == Verdict::holds);
    CHECK(rep.rows[1].max_gap == 11);

    auto menet = table("menet(2)", 5000);
    auto cs = criterion_set(menet, 2, 0);
    CHECK(cs.members == FiniteSubset::interval(16, 5000, 5000));

    auto p = gen_prop2_weights(6);
    LogProductTable pt(p.weights, p.horizon());
    for (std::int64_t g = 1; g <= 6; ++g) CHECK(syndetic_operator_check(pt, {1}, g).rows[0].verdict == Verdict::fails);
    CHECK(syndetic_operator_check(pt, {1}, 7).rows[0].verdict == Verdict::holds);
}

TEST_CASE("multiple recurrence check") {
    auto two = table("rolewicz(2)", 4000);
    auto rep = multiple_recurrence_check(two, 4, {1, 2, 16, 1024});
    for (const auto& row : rep.rows) {
        REQUIRE(row.witness_n);
        CHECK(*row.witness_n == static_cast<std::int64_t>(std::log2(row.threshold)) + 1);
        CHECK(row.verdict == Verdict::holds);
    }

    auto p3 = gen_prop2_weights(3);
    LogProductTable t3(p3.weights, p3.horizon());
    auto r3 = multiple_recurrence_check(t3, 3, {1});
    CHECK(r3.rows[1].witness_n == 4);   // m = 2: min(L(4), L(8)) = 1
    CHECK(*r3.rows[1].witness_min == 1.0);
    CHECK(r3.rows[2].witness_n == 4);
    CHECK(r3.rows[2].best_n == 17);     // m = 3: L(17), L(34), L(51) = 6, 23, 40
    CHECK(r3.rows[2].best_min == 6.0);

    auto p2 = gen_prop2_weights(2);
    LogProductTable t2(p2.weights, p2.horizon());
    CHECK(multiple_recurrence_check(t2, 2, {1}).rows[1].best_n == 4);

    // no witness at this horizon is inconclusive, never a failure
    auto r = multiple_recurrence_check(table("rolewicz(2)", 8), 2, {1 << 20});
    for (const auto& row : r.rows) CHECK(row.verdict == Verdict::inconclusive);
}

TEST_CASE("mixing check") {
    auto menet = table("menet(2)", 20000);
    auto rep = mixing_check(menet, {10});
    CHECK(rep.rows[0].cofinite_from == 10000);
    CHECK(rep.rows[0].verdict == Verdict::holds);

    auto two = table("rolewicz(2)", 100);
    CHECK(mixing_check(two, {1 << 20}).rows[0].cofinite_from == 21);

    auto p = gen_prop2_weights(4);
    LogProductTable pt(p.weights, p.horizon());
    auto pm = mixing_check(pt, {1});
    CHECK(pm.rows[0].verdict == Verdict::fails);
    CHECK_FALSE(pm.rows[0].cofinite_from.has_value());
    CHECK(pm.rows[0].last_missing == p.horizon());
}

TEST_CASE("scaled family check") {
    auto two = table("rolewicz(2)", 1000);
    auto rep = scaled_family_check(two, 3, {1, 4, 1024}, {0, 5}, CofiniteProxy{11});
    CHECK(rep.all_hold);
    CHECK(rep.rows.size() == 3 * 2 * 3);

    auto menet = table("menet(2)", 200000);
    CHECK(scaled_family_check(menet, 2, {10}, {0}, CofiniteProxy{20000}).all_hold);

    auto p = gen_prop2_weights(6);
    LogProductTable pt(p.weights, p.horizon());
    auto ps = scaled_family_check(pt, 2, {1}, {0}, SyndeticGapProxy{5});
    CHECK_FALSE(ps.all_hold);
    REQUIRE(ps.rows[0].membership.witness);
    CHECK(std::holds_alternative<OversizedGap>(*ps.rows[0].membership.witness));
}
