#pragma once

// Finite-horizon combinatorics of subsets of the naturals. Densities are
// limits; everything here is the exact finite analogue: max/min over full
// windows replace limsup/liminf, prefix ratios are taken on the back half
// [N/2, N] of the horizon.

#include <cstdint>
#include <optional>
#include <vector>

#include "shiftlab/finite_subset.hpp"

namespace shiftlab {

struct PrefixRatioSample {
    std::int64_t n;
    double ratio;
};

struct DensityReport {
    std::int64_t horizon = 0;
    Origin origin = Origin::one;
    std::size_t cardinality = 0;
    /// First admissible window offset k (windows are [k+1, k+s], k >= window_start).
    std::int64_t window_start = 0;
    std::vector<std::int64_t> window_sizes;
    /// max over admissible k of |A ∩ [k+1, k+s]|, per window size.
    std::vector<std::int64_t> window_max_counts;
    std::vector<std::int64_t> window_min_counts;
    /// Extremes of |A ∩ [1, n]| / n over n in [max(1, N/2), N].
    double prefix_ratio_min = 0.0;
    double prefix_ratio_max = 0.0;
    std::vector<PrefixRatioSample> prefix_ratios;
    /// Absent for the empty set.
    std::optional<std::int64_t> max_gap;

    double upper_estimate(std::size_t i) const {
        return static_cast<double>(window_max_counts[i]) / static_cast<double>(window_sizes[i]);
    }
    double lower_estimate(std::size_t i) const {
        return static_cast<double>(window_min_counts[i]) / static_cast<double>(window_sizes[i]);
    }
};

/// Throws std::invalid_argument when a window size is not in [1, N - window_start].
DensityReport density_report(const FiniteSubset& a, const std::vector<std::int64_t>& window_sizes,
                             std::int64_t window_start = 0);

struct WindowExtrema {
    std::int64_t max_count;
    std::int64_t min_count;
};
WindowExtrema window_counts(const FiniteSubset& a, std::int64_t s, std::int64_t window_start = 0);

/// Position of the first window [k+1, k+s] (k >= window_start) holding exactly `count` members.
std::int64_t find_window(const FiniteSubset& a, std::int64_t s, std::int64_t count, std::int64_t window_start = 0);

struct Gap {
    std::int64_t from;   ///< member (or virtual endpoint 0)
    std::int64_t to;     ///< next member (or virtual endpoint horizon)
    std::int64_t length() const { return to - from; }
};

/// Largest gap of the sequence 0, a_1, ..., a_k, horizon. nullopt for the empty set.
std::optional<std::int64_t> syndetic_gap(const FiniteSubset& a);
/// All gaps of the sequence above, in order.
std::vector<Gap> gaps(const FiniteSubset& a);

struct Run {
    std::int64_t start;
    std::int64_t length;
};
/// Maximal runs of non-members within [first, horizon].
std::vector<Run> complement_runs(const FiniteSubset& a, std::int64_t first);

/// {a - a' : a, a' in A, 0 < a - a' <= cap}, horizon cap.
FiniteSubset difference_set(const FiniteSubset& a, std::int64_t cap);

/// {a : a, a+k, ..., a+rk in A}, horizon N - rk.
FiniteSubset shift_intersection(const FiniteSubset& a, std::int64_t k, std::int64_t r);

struct Progression {
    std::int64_t start = 0;
    std::int64_t step = 0;
    std::int64_t length = 0;
    friend bool operator==(const Progression&, const Progression&) = default;
};

/// Longest arithmetic progression in A, length capped at max_len; ties go to
/// the smallest step, then the smallest start. For |A| < 3 the result has
/// step 0, start = min(A) (0 if empty) and length |A|.
Progression longest_ap(const FiniteSubset& a, std::int64_t max_len);

/// {n : l*n in A}, horizon floor(N / l).
FiniteSubset dilate_preimage(const FiniteSubset& a, std::int64_t l);

} // namespace shiftlab
