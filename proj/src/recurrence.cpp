#include "shiftlab/recurrence.hpp"

#include <algorithm>
#include <stdexcept>

#include "shiftlab/density.hpp"
#include "shiftlab/weight_spec.hpp"

namespace shiftlab {

RecurrenceResult recurrence_scan(const FiniteSubset& returns, const RecurrenceParams& params) {
    const std::int64_t n = returns.horizon();
    if (params.r < 1 || params.k_max < 1 || params.window < 1)
        throw std::invalid_argument("r, K and s must be positive");
    if (params.r * params.k_max > n)
        throw std::invalid_argument("r*K = " + std::to_string(params.r * params.k_max) + " exceeds the horizon " +
                                    std::to_string(n));
    if (params.window > n - params.r * params.k_max)
        throw std::invalid_argument("window s must be <= N - r*K");

    RecurrenceResult res;
    res.horizon = n;
    res.params = params;
    res.delta = params.delta.value_or(2.0 / static_cast<double>(params.window));
    res.returns = returns;
    for (std::int64_t k = 1; k <= params.k_max; ++k) {
        FiniteSubset m = shift_intersection(returns, k, params.r);
        const auto best = window_counts(m, params.window).max_count;
        const double estimate = static_cast<double>(best) / static_cast<double>(params.window);
        res.witnesses.push_back(std::move(m));
        res.window_max.push_back(best);
        res.estimates.push_back(estimate);
        if (estimate >= res.delta) res.w_r.push_back(k);
    }
    return res;
}

RecurrenceResult recurrence_scan(const LogProductTable& w, const FiniteVector& x, const BallQuery& q, std::int64_t horizon,
                                 const RecurrenceParams& params, const Twist& twist) {
    if (params.r * params.k_max > horizon) throw std::invalid_argument("r*K exceeds the horizon");
    ReturnSet f = return_set(w, x, q, horizon, twist);
    RecurrenceResult res = recurrence_scan(f.set, params);
    res.borderline = std::move(f.borderline);
    return res;
}

RecurrenceExperiment run_experiment(RecurrenceExperiment exp) {
    const WeightSequence seq = parse_weight_spec(exp.weight_spec);
    std::int64_t need = exp.horizon;
    for (const auto& b : exp.schedule)
        if (!b.target.empty()) need = std::max(need, b.t + b.target.entries().rbegin()->first);
    if (seq.max_index()) need = std::min(need, *seq.max_index());
    const LogProductTable table(seq, need);
    const ScheduledVector x = build_schedule(table, exp.schedule, exp.space);
    const BallQuery q = BallQuery::parse(exp.ball, exp.space, seq.side());
    exp.result = recurrence_scan(table, x.vector(), q, exp.horizon, exp.params);
    return exp;
}

InclusionReport inclusion_check(const LogProductTable& w, const FiniteVector& x, const BallQuery& u, const BallQuery& v,
                                std::optional<std::int64_t> n, std::int64_t horizon) {
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    InclusionReport rep;
    if (n) {
        if (*n < 0) throw std::invalid_argument("n must be >= 0");
        rep.n = n;
    } else {
        for (std::int64_t t = 0; t <= horizon && !rep.n; ++t) {
            const FiniteVector target = v.center - apply_power(w, u.center, t);
            const std::int64_t top = target.empty() ? 0 : target.entries().rbegin()->first + t;
            if (top > w.last_index()) break;
            const FiniteVector cand = u.center + pullback(w, target, t);
            if (ball_test(cand, u).verdict == BallVerdict::in &&
                ball_test(apply_power(w, cand, t), v).verdict == BallVerdict::in) {
                rep.n = t;
                rep.n_discovered = true;
                rep.witness_vector = cand.str();
            }
        }
        if (!rep.n) {
            rep.status = "no_witness";
            return rep;
        }
    }
    const std::int64_t shift = *rep.n;
    const ReturnSet in_u = return_set(w, x, u, horizon);
    const ReturnSet in_v = return_set(w, x, v, horizon + shift);
    std::vector<std::int64_t> visits;
    for (auto s : in_u.set.members())
        if (in_v.set.contains(s + shift)) visits.push_back(s);
    rep.visits = FiniteSubset(visits, horizon, Origin::zero);
    if (visits.empty()) {
        rep.status = "vacuous";
        return rep;
    }

    for (std::size_t b = 0; b < visits.size(); ++b) {
        const std::int64_t s2 = visits[b];
        const FiniteVector z = apply_power(w, x, s2);
        const BallVerdict z_in_u = ball_test(z, u).verdict;
        for (std::size_t a = b; a < visits.size(); ++a) {
            const std::int64_t s1 = visits[a];
            ++rep.pairs_checked;
            const FiniteVector y = apply_power(w, z, s1 - s2 + shift);
            const BallVerdict y_in_v = ball_test(y, v).verdict;
            std::string problem;
            if (z_in_u == BallVerdict::out) problem = "B^s2 x left U";
            else if (y_in_v == BallVerdict::out) problem = "B^(s1-s2+n) B^s2 x not in V";
            else if (y.is_exact() && !(y == apply_power(w, x, s1 + shift))) problem = "semigroup law broken";
            if (!problem.empty()) rep.violations.push_back({s1, s2, problem});
            else if (z_in_u == BallVerdict::borderline || y_in_v == BallVerdict::borderline) ++rep.borderline_pairs;
        }
    }
    rep.status = rep.violations.empty() ? "ok" : "violations";
    return rep;
}

ScaledFamilyReport direct_sum_check(const LogProductTable& w, std::int64_t r, const std::vector<double>& thresholds,
                                    const std::vector<std::int64_t>& offsets, const FamilyProxy& proxy) {
    return scaled_family_check(w, r, thresholds, offsets, proxy);
}

AuditReport banach_return_audit(const LogProductTable& w, const std::vector<std::pair<std::string, FiniteVector>>& vectors,
                                const BallQuery& q, std::int64_t horizon, const std::vector<std::int64_t>& windows,
                                std::int64_t m) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    AuditReport rep{horizon, windows, m, {}};
    for (const auto& [label, x] : vectors) {
        ReturnSet f = return_set(w, x, q, horizon);
        const DensityReport d = density_report(f.set, windows);
        AuditRow row{label, f.set.size(), f.borderline.size(), d.window_max_counts, {}, false};
        for (std::size_t i = 0; i < windows.size(); ++i) {
            row.estimates.push_back(d.upper_estimate(i));
            if (d.upper_estimate(i) > 1.0 / static_cast<double>(m)) row.flagged = true;
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

} // namespace shiftlab
