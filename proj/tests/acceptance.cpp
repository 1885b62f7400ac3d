// Acceptance runner: one PASS/FAIL line per criterion, each timed against its limit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "shiftlab/cli.hpp"
#include "shiftlab/counterexamples.hpp"
#include "shiftlab/criteria.hpp"
#include "shiftlab/density.hpp"
#include "shiftlab/family.hpp"
#include "shiftlab/recurrence.hpp"
#include "shiftlab/shift.hpp"
#include "shiftlab/simd/kernels.hpp"
#include "shiftlab/weight_spec.hpp"

using namespace shiftlab;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

const Space kL2 = Space::lp(2);

FiniteVector e(std::int64_t i, const Coefficient& c = Coefficient::exact(1)) {
    return FiniteVector::basis(kL2, Side::unilateral, i, c);
}

std::string join(const std::vector<std::int64_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

Outcome prop2_fixture() {
    Outcome o;
    auto p = gen_prop2_weights(4);
    const auto b = p.starred_positions();
    std::vector<std::int64_t> comp;
    for (const auto& s : p.stages) comp.push_back(s.compensator_exponent);
    o.require(b == std::vector<std::int64_t>{1, 4, 8, 17, 34, 51, 97, 194, 291, 388}, "b-list " + join(b));
    o.require(comp == std::vector<std::int64_t>{2, 7, 43, 337}, "compensators " + join(comp));
    if (o.ok) o.detail = "b-list (" + join(b) + "), compensators (" + join(comp) + ")";
    return o;
}

Outcome prop2_dynamics() {
    Outcome o;
    auto p = gen_prop2_weights(6);
    LogProductTable t(p.weights, p.horizon());
    std::vector<std::int64_t> lengths;
    for (const auto& r : complement_runs(criterion_set(t, 1, 0).members, 1)) lengths.push_back(r.length);
    o.require(lengths == std::vector<std::int64_t>{2, 3, 4, 5, 6, 7}, "complement runs " + join(lengths));

    auto rep = multiple_recurrence_check(t, 6, {1, 2, 1024});
    std::vector<std::int64_t> witnesses;
    for (const auto& row : rep.rows) {
        o.require(row.verdict == Verdict::holds && row.witness_n.has_value(),
                  "no witness for m=" + std::to_string(row.m) + " M=" + std::to_string(row.threshold));
        if (row.threshold == 1024 && row.witness_n) witnesses.push_back(*row.witness_n);
    }
    if (o.ok) o.detail = "runs (" + join(lengths) + "), M=1024 witnesses m=1..6: (" + join(witnesses) + ")";
    return o;
}

Outcome menet_closed_form() {
    Outcome o;
    double worst = 0;
    for (double p : {1.0, 2.0}) {
        LogProductTable t(gen_menet_weights(p), 1000000);
        for (std::int64_t n = 0; n <= 1000000; ++n) worst = std::max(worst, std::fabs(t.at(n) - std::log2(n + 1.0) / (2 * p)));
    }
    o.require(worst <= 1e-9, "closed-form deviation " + std::to_string(worst));

    LogProductTable p1(gen_menet_weights(1), 2000000);
    auto m1 = mixing_check(p1, {10, 1000});
    LogProductTable p2(gen_menet_weights(2), 1000000);
    auto m2 = mixing_check(p2, {10});
    std::vector<std::int64_t> from;
    for (const auto* rep : {&m1, &m2})
        for (const auto& row : rep->rows) {
            o.require(row.verdict == Verdict::holds, "mixing fails at M=" + std::to_string(row.threshold));
            from.push_back(row.cofinite_from.value_or(-1));
        }

    for (std::int64_t m = 1; m <= 8; ++m)
        for (std::int64_t l = 1; l < 10000; ++l) {
            const double a = l / std::sqrt(static_cast<double>(l * m + 1));
            const double b = (l + 1) / std::sqrt(static_cast<double>((l + 1) * m + 1));
            if (!(b > a)) o.require(false, "l/sqrt(lm+1) not increasing at m=" + std::to_string(m) + " l=" + std::to_string(l));
        }
    if (o.ok) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "max deviation %.3g; cofinite from (p=1: M=10,1000; p=2: M=10) = (%s)", worst,
                      join(from).c_str());
        o.detail = buf;
    }
    return o;
}

Outcome density_ordering() {
    Outcome o;
    const std::int64_t n = 100000;
    std::vector<std::int64_t> sizes;
    for (std::int64_t s = 1; s <= n / 2; s *= 2) sizes.push_back(s);
    sizes.push_back(n / 2);
    std::int64_t violations = 0, checks = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double p = 0.02 + 0.96 * unit(rng);
        auto a = FiniteSubset::from_predicate(1, n, [&](std::int64_t) { return unit(rng) < p; });
        std::vector<std::int64_t> s_list = sizes;
        for (int i = 0; i < 8; ++i) s_list.push_back(1 + static_cast<std::int64_t>(rng() % (n / 2)));
        auto rep = density_report(a, s_list);
        for (std::size_t i = 0; i < s_list.size(); ++i) {
            ++checks;
            if (!(rep.prefix_ratio_min <= rep.prefix_ratio_max && rep.prefix_ratio_max <= rep.upper_estimate(i))) {
                if (violations == 0)
                    o.require(false, "ordering violated: seed " + std::to_string(seed) + " s=" + std::to_string(s_list[i]));
                ++violations;
            }
        }
        const auto prefix = a.prefix_counts();
        for (std::size_t i = 0; i < s_list.size(); ++i)
            for (std::size_t j = i; j < s_list.size(); ++j) {
                const auto sum = s_list[i] + s_list[j];
                if (sum > n) continue;
                ++checks;
                const auto whole = simd::active_kernels()
                                       .window_extrema(prefix.data(), static_cast<std::size_t>(n - sum + 1),
                                                       static_cast<std::size_t>(sum))
                                       .max;
                if (whole > rep.window_max_counts[i] + rep.window_max_counts[j]) {
                    if (violations == 0) o.require(false, "subadditivity violated: seed " + std::to_string(seed));
                    ++violations;
                }
            }
    }
    if (!o.ok) o.detail += " (" + std::to_string(violations) + " violations of " + std::to_string(checks) + " checks)";
    else o.detail = std::to_string(checks) + " checks, 0 violations";
    return o;
}

Outcome exact_engine() {
    Outcome o;
    auto p = gen_prop2_weights(5);
    LogProductTable prop2(p.weights, p.horizon());
    LogProductTable two(parse_weight_spec("rolewicz(2)"), 4000);
    std::mt19937_64 rng(5);
    int cases = 0;
    for (const LogProductTable* t : {&prop2, &two}) {
        for (int trial = 0; trial < 250; ++trial, ++cases) {
            FiniteVector y(kL2, Side::unilateral);
            const int terms = 1 + static_cast<int>(rng() % 5);
            for (int k = 0; k < terms; ++k) {
                const long num = static_cast<long>(rng() % 31) - 15;
                if (num == 0) continue;
                y.add(static_cast<std::int64_t>(rng() % 1500),
                      Coefficient::exact(mpq_class(num, 1 + static_cast<long>(rng() % 9)), static_cast<std::int64_t>(rng() % 41) - 20));
            }
            const auto n = static_cast<std::int64_t>(rng() % 1500);
            auto x = pullback(*t, y, n);
            o.require(x.is_exact() && apply_power(*t, x, n) == y, "round trip failed at case " + std::to_string(cases));
            const auto a = static_cast<std::int64_t>(rng() % 700), b = static_cast<std::int64_t>(rng() % 700);
            o.require(apply_power(*t, apply_power(*t, x, a), b) == apply_power(*t, x, a + b),
                      "semigroup law failed at case " + std::to_string(cases));
        }
    }
    if (o.ok) o.detail = std::to_string(cases) + " round trips and semigroup checks exact";
    return o;
}

Outcome inclusion_self_test() {
    Outcome o;
    LogProductTable two(parse_weight_spec("rolewicz(2)"), 1000);
    auto u = BallQuery::parse("e0:1/2", kL2, Side::unilateral);
    std::int64_t pairs = 0, violations = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        std::mt19937_64 rng(100 + seed);
        std::vector<ScheduleBlock> blocks;
        for (std::int64_t t = 2 + static_cast<std::int64_t>(rng() % 6); t <= 300; t += 3 + static_cast<std::int64_t>(rng() % 20)) {
            FiniteVector y = e(0);
            if (rng() % 2) y.add(1, Coefficient::exact(mpq_class(1 + static_cast<long>(rng() % 7), 64)));
            blocks.push_back({t, y});
        }
        auto x = build_schedule(two, blocks, kL2);
        auto rep = inclusion_check(two, x.vector(), u, u, std::nullopt, 400);
        o.require(rep.status == "ok", "seed " + std::to_string(seed) + " status " + rep.status);
        pairs += rep.pairs_checked;
        violations += static_cast<std::int64_t>(rep.violations.size());
    }
    o.require(violations == 0, std::to_string(violations) + " violations");
    if (o.ok) o.detail = std::to_string(pairs) + " pairs over 10 schedules, 0 violations";
    return o;
}

Outcome example313() {
    Outcome o;
    auto ex = gen_example313({1, 2}, 14);
    std::int64_t ratios = 0;
    for (auto n : ex.s_set.members())
        for (std::int64_t k : {1, 2}) {
            ++ratios;
            if (ex.log2_lambda[static_cast<std::size_t>(n)] != ex.log2_lambda[static_cast<std::size_t>(n + k)])
                o.require(false, "ratio != 1 at n=" + std::to_string(n) + " k=" + std::to_string(k));
        }
    const std::int64_t start = ex.burn_in(64);
    auto d = density_report(ex.s_set, {64}, start);
    const double est = d.lower_estimate(0);
    o.require(est >= 1.0 - 4.0 / 64.0, "window-min estimate " + std::to_string(est));
    if (o.ok) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%lld exact unit ratios; window-min estimate %.4f >= %.4f (windows from k=%lld)",
                      static_cast<long long>(ratios), est, 1.0 - 4.0 / 64.0, static_cast<long long>(start));
        o.detail = buf;
    }
    return o;
}

Progression exhaustive_ap(const FiniteSubset& a) {
    const auto m = a.members();
    if (m.size() < 3) return {m.empty() ? 0 : m.front(), 0, static_cast<std::int64_t>(m.size())};
    Progression best{0, 0, 0};
    for (std::int64_t d = 1; d <= a.horizon(); ++d)
        for (std::int64_t start = 0; start <= a.horizon(); ++start) {
            std::int64_t len = 0;
            for (std::int64_t v = start; v <= a.horizon() && a.contains(v); v += d) ++len;
            if (len > best.length) best = {start, d, len};
        }
    return best;
}

Outcome ap_oracle() {
    Outcome o;
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const std::int64_t horizon = 1 + static_cast<std::int64_t>(rng() % 500);
        const double p = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
        std::bernoulli_distribution coin(p);
        auto a = FiniteSubset::from_predicate(1, horizon, [&](std::int64_t) { return coin(rng); });
        const auto got = longest_ap(a, horizon + 1), want = exhaustive_ap(a);
        o.require(got == want, "trial " + std::to_string(trial) + ": got (" + std::to_string(got.start) + "," +
                                   std::to_string(got.step) + "," + std::to_string(got.length) + ") want (" +
                                   std::to_string(want.start) + "," + std::to_string(want.step) + "," +
                                   std::to_string(want.length) + ")");
    }
    if (o.ok) o.detail = "100 random sets match the (start, step) enumeration";
    return o;
}

std::string run_suite() {
    const std::vector<std::vector<std::string>> commands{
        {"weights", "--spec", "prop2(6)", "--criteria", "syndetic,multrec,mixing,set", "--M", "1,2,1024", "--m-max", "6"},
        {"weights", "--spec", "menet(2)", "--N", "100000", "--criteria", "syndetic,multrec,mixing,scaled,set", "--M", "2,10"},
        {"weights", "--spec", "bilateral(0.5,2)", "--N", "1000", "--M", "1,4", "--j", "0,-5"},
        {"weights", "--spec", "example313(2)", "--criteria", "set", "--M", "4"},
        {"gen", "--spec", "prop2(3)"},
        {"recur", "--spec", "rolewicz(2)", "--schedule", "geometric(2,9)", "--N", "600", "--r", "2", "--K", "20", "--s", "32"},
        {"recur", "--spec", "menet(2)", "--schedule", "geometric(4,6)", "--N", "5000", "--r", "2", "--K", "50", "--s", "64"},
        {"audit", "--spec", "menet(2)", "--schedule", "geometric(4,5)", "--schedule", "geometric(3,6)", "--N", "3000",
         "--windows", "4,16,64,256"},
        {"inclusion", "--spec", "rolewicz(2)", "--schedule", "geometric(3,5)", "--N", "300"},
        {"weights", "--spec", "prop2(4)", "--criteria", "multrec", "--format", "csv", "--plot", "multrec"},
    };
    std::string all;
    for (const auto& c : commands) {
        std::vector<const char*> argv{"shiftlab"};
        for (const auto& a : c) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        all += "exit " + std::to_string(code) + "\n" + out.str() + err.str();
    }
    return all;
}

Outcome determinism() {
    Outcome o;
    const auto a = run_suite(), b = run_suite();
    o.require(a.find("exit 0") != std::string::npos, "suite produced no successful run");
    std::size_t runs = 0;
    for (std::size_t pos = 0; (pos = a.find("exit ", pos)) != std::string::npos; ++pos) {
        o.require(a.compare(pos, 6, "exit 0") == 0, "a suite command failed");
        ++runs;
    }
    o.require(a == b, "reports differ between runs");
    if (o.ok) o.detail = std::to_string(runs) + " reports, " + std::to_string(a.size()) + " bytes, identical";
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double limit_s;   ///< 0: no runtime limit
    std::function<Outcome()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "stage construction fixture", 1, prop2_fixture},
        {2, "stage construction dynamics", 5, prop2_dynamics},
        {3, "closed-form mixing weights", 10, menet_closed_form},
        {4, "density ordering and subadditivity", 30, density_ordering},
        {5, "exact shift engine", 5, exact_engine},
        {6, "difference-set inclusion self-test", 10, inclusion_self_test},
        {7, "dyadic block scaling", 2, example313},
        {8, "arithmetic progression oracle", 10, ap_oracle},
        {9, "byte-identical reports", 0, determinism},
    };
    std::printf("kernels: %s\n", std::string(simd::active_kernels().name).c_str());
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& ex) {
            o.ok = false;
            o.detail = std::string("exception: ") + ex.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.limit_s == 0 || secs < c.limit_s;
        const bool pass = o.ok && in_time;
        failed += !pass;
        char limit[32];
        if (c.limit_s == 0) std::snprintf(limit, sizeof limit, "no limit");
        else std::snprintf(limit, sizeof limit, "limit %.0fs", c.limit_s);
        std::printf("%s criterion %d: %s: %s [%.3fs, %s]%s\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                    limit, o.ok && !in_time ? " (over time limit)" : "");
    }
    std::fflush(stdout);
    return failed == 0 ? 0 : 1;
}
