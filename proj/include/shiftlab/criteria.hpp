#pragma once

// Product criteria for weighted shifts, evaluated on a LogProductTable.
//
//   A_{M;j}    = {n : prod_{i=j+1}^{j+n} |w_i| > M}
//   Abar_{M;j} = {n : 1 / prod_{i=j-n+1}^{j} |w_i| > M}      (bilateral)
//
// Strict inequalities are decided in log2 space. Within the table's error
// band a point is "borderline": listed separately, never counted as a member.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/density.hpp"
#include "shiftlab/family.hpp"
#include "shiftlab/finite_subset.hpp"
#include "shiftlab/weights.hpp"

namespace shiftlab {

/// Threshold M > 0; M == 0 stands for the 0+ sentinel (every finite product qualifies).
struct CriterionSet {
    double threshold = 0.0;
    std::int64_t offset = 0;       ///< j
    bool mirrored = false;         ///< Abar instead of A
    FiniteSubset members;          ///< n in [1, range], horizon = range
    std::vector<std::int64_t> borderline;
};

CriterionSet criterion_set(const LogProductTable& table, double threshold, std::int64_t offset, bool mirrored = false);

enum class Verdict { holds, fails, inconclusive };
const char* to_string(Verdict v);

struct SyndeticRow {
    double threshold;
    std::optional<std::int64_t> max_gap;   ///< empty when A is empty
    Verdict verdict;
    std::vector<Gap> oversized;            ///< gaps longer than the bound (witnesses)
    std::vector<std::int64_t> borderline;
};

struct SyndeticReport {
    std::int64_t horizon;
    std::int64_t gap_bound;
    std::vector<SyndeticRow> rows;
};

/// For each M: is max_gap(A_{M;0}) <= gap_bound? Unilateral tables only.
SyndeticReport syndetic_operator_check(const LogProductTable& table, const std::vector<double>& thresholds,
                                       std::int64_t gap_bound);

struct MultipleRecurrenceRow {
    std::int64_t m;
    double threshold;
    Verdict verdict;                        ///< holds or inconclusive, never fails
    std::optional<std::int64_t> witness_n;  ///< smallest n with min_l L(l n) > log2 M
    std::optional<double> witness_min;
    std::int64_t best_n;                    ///< maximizer of min_l L(l n), smallest on ties
    double best_min;
    std::int64_t searched;                  ///< n ranged over [1, searched]
};

struct MultipleRecurrenceReport {
    std::int64_t horizon;
    std::vector<MultipleRecurrenceRow> rows;
};

/// For each M and m <= m_max: search n <= N/m for min_{1<=l<=m} L(l n) > log2 M.
MultipleRecurrenceReport multiple_recurrence_check(const LogProductTable& table, std::int64_t m_max,
                                                   const std::vector<double>& thresholds);

struct MixingRow {
    double threshold;
    /// Smallest t with [t, N] inside A_{M;0}; empty when N itself is not in A.
    std::optional<std::int64_t> cofinite_from;
    Verdict verdict;
    std::optional<std::int64_t> last_missing;   ///< witness for fails
};

struct MixingReport {
    std::int64_t horizon;
    std::int64_t tail_start;
    std::vector<MixingRow> rows;
};

/// Cofinite proxy for mixing: holds iff A_{M;0} contains [tail_start, N].
/// tail_start defaults to N/2.
MixingReport mixing_check(const LogProductTable& table, const std::vector<double>& thresholds,
                          std::optional<std::int64_t> tail_start = std::nullopt);

struct ScaledRow {
    std::int64_t l;
    double threshold;
    std::int64_t offset;
    bool mirrored;
    Membership membership;
};

struct ScaledFamilyReport {
    std::int64_t horizon;
    std::int64_t r;
    std::string proxy;
    bool all_hold;
    std::vector<ScaledRow> rows;
};

/// For every l <= r, M, j: proxy membership of {n : l n in A_{M;j}} (and of
/// the Abar counterpart for bilateral tables). all_hold is the conjunction.
ScaledFamilyReport scaled_family_check(const LogProductTable& table, std::int64_t r, const std::vector<double>& thresholds,
                                       const std::vector<std::int64_t>& offsets, const FamilyProxy& proxy);

} // namespace shiftlab
