#pragma once

// Finite-horizon recurrence experiments on orbit return sets.
//
// For a return set F = N(x, U) and k >= 1,
//   M_{k,r} = {a : a, a+k, ..., a+rk in F}
// and k enters W_r when the best s-window of M_{k,r} holds at least delta*s
// points. Every result here is an empirical finite-horizon fact.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shiftlab/criteria.hpp"
#include "shiftlab/family.hpp"
#include "shiftlab/finite_subset.hpp"
#include "shiftlab/shift.hpp"
#include "shiftlab/weights.hpp"

namespace shiftlab {

struct RecurrenceParams {
    std::int64_t r = 1;
    std::int64_t k_max = 1;        ///< K
    std::int64_t window = 1;       ///< s
    std::optional<double> delta;   ///< defaults to 2/s
};

struct RecurrenceResult {
    std::int64_t horizon = 0;
    RecurrenceParams params;
    double delta = 0.0;
    FiniteSubset returns{{}, 1, Origin::zero};
    std::vector<std::int64_t> borderline;          ///< orbit points excluded from F
    std::vector<FiniteSubset> witnesses;           ///< M_{k,r} for k = 1..K
    std::vector<std::int64_t> window_max;          ///< α̂^s(M_{k,r})
    std::vector<double> estimates;                 ///< α̂^s(M_{k,r}) / s
    std::vector<std::int64_t> w_r;                 ///< {k : estimate >= delta}
};

/// Scan from a given return set F (origin 0, horizon N). Requires rK <= N and s <= N - rK.
RecurrenceResult recurrence_scan(const FiniteSubset& returns, const RecurrenceParams& params);

/// Computes F = return_set(x, q, N) once, then scans.
RecurrenceResult recurrence_scan(const LogProductTable& w, const FiniteVector& x, const BallQuery& q, std::int64_t horizon,
                                 const RecurrenceParams& params, const Twist& twist = nullptr);

/// Configuration plus (once run) results of one experiment.
struct RecurrenceExperiment {
    std::string weight_spec;
    std::string schedule_label;
    std::vector<ScheduleBlock> schedule;
    std::string ball;
    Space space;
    std::int64_t horizon = 0;
    RecurrenceParams params;
    std::optional<RecurrenceResult> result;
};

/// Parses the weight spec, realizes the table, builds the schedule and scans.
RecurrenceExperiment run_experiment(RecurrenceExperiment exp);

struct InclusionPair {
    std::int64_t s1;
    std::int64_t s2;
    std::string problem;
};

struct InclusionReport {
    std::string status;                    ///< "ok", "violations", "vacuous" or "no_witness"
    std::optional<std::int64_t> n;         ///< element of N(U, V) in use
    bool n_discovered = false;
    std::string witness_vector;            ///< u in U with B^n u in V (discovery only)
    FiniteSubset visits{{}, 1, Origin::zero};   ///< N(x, U ∩ B^{-n} V) within [0, N]
    std::int64_t pairs_checked = 0;
    std::int64_t borderline_pairs = 0;
    std::vector<InclusionPair> violations;
};

/// Verifies N(x, U_n) - N(x, U_n) + n ⊆ N(U, V) pair by pair on the orbit,
/// U_n = U ∩ B^{-n}(V). Without n, the smallest n <= N admitting the witness
/// u = c_U + pullback(c_V - B^n c_U, n) is used.
InclusionReport inclusion_check(const LogProductTable& w, const FiniteVector& x, const BallQuery& u, const BallQuery& v,
                                std::optional<std::int64_t> n, std::int64_t horizon);

/// Computable side of "B_w ⊕ ... ⊕ B_w^r is an F-operator": the scaled family check.
ScaledFamilyReport direct_sum_check(const LogProductTable& w, std::int64_t r, const std::vector<double>& thresholds,
                                    const std::vector<std::int64_t>& offsets, const FamilyProxy& proxy);

struct AuditRow {
    std::string label;
    std::size_t returns = 0;
    std::size_t borderline = 0;
    std::vector<std::int64_t> window_max;
    std::vector<double> estimates;   ///< α̂^s / s per window size
    bool flagged = false;            ///< some estimate exceeds 1/m
};

struct AuditReport {
    std::int64_t horizon = 0;
    std::vector<std::int64_t> windows;
    std::int64_t m = 1;
    std::vector<AuditRow> rows;
};

AuditReport banach_return_audit(const LogProductTable& w, const std::vector<std::pair<std::string, FiniteVector>>& vectors,
                                const BallQuery& q, std::int64_t horizon, const std::vector<std::int64_t>& windows,
                                std::int64_t m);

} // namespace shiftlab
