#pragma once

// Constructive generators for the three explicit sequences:
//  * a dyadic weight whose shift is multiply recurrent but has a
//    non-syndetic positive-product set (stage construction below),
//  * w_v = ((v+1)/v)^{1/(2p)}, mixing with prod_{v<=n} w_v = (n+1)^{1/(2p)},
//  * the dyadic-block scaling sequence lambda_n = 2^{2^r} on [2^{r-1}, 2^r).

#include <cstdint>
#include <vector>

#include "shiftlab/finite_subset.hpp"
#include "shiftlab/weights.hpp"

namespace shiftlab {

/// One stage m of the multiply-recurrent weight. Positions [block_start,
/// block_end] carry weight 2 (all starred: prefix product > 1), then one
/// compensator 2^-g at block_end + 1, then m trailing 2's. The prefix
/// product returns to exactly 1 at stage_end.
struct StageRecord {
    std::int64_t stage = 0;
    std::int64_t block_start = 0;
    std::int64_t n = 0;
    std::vector<std::int64_t> starred;   ///< l * n for 1 <= l <= m
    std::int64_t block_end = 0;          ///< m * n
    std::int64_t compensator_pos = 0;    ///< block_end + 1
    std::int64_t compensator_exponent = 0;
    std::int64_t trailing_twos = 0;
    std::int64_t stage_end = 0;
};

struct Prop2Weights {
    WeightSequence weights;
    std::vector<StageRecord> stages;
    /// log2 w_i for i in [1, last stage end]; index 0 unused.
    std::vector<std::int64_t> log2_weights;

    std::int64_t horizon() const { return stages.back().stage_end; }
    /// b-list: starred positions of every stage in order.
    std::vector<std::int64_t> starred_positions() const;
};

/// Stage 1 is the fixed seed (2, 1/4, 2). Stage 2 takes n = previous end + 1;
/// from stage 3 on, n is the smallest integer >= (previous end + 1) +
/// (previous block length), except stage 4 which uses 97.
Prop2Weights gen_prop2_weights(int stages);

/// The n chosen for stage m given the previous record (exposed for tests).
std::int64_t prop2_stage_n(std::int64_t stage, const StageRecord& previous);

/// Floating weights log2 w_v = log2(1 + 1/v) / (2p), p >= 1.
WeightSequence gen_menet_weights(double p);
/// Closed form log2 prod_{v<=n} w_v = log2(n + 1) / (2p).
double menet_log_product(double p, std::int64_t n);

struct Example313 {
    std::int64_t max_a = 0;   ///< M = max A
    int exponent = 0;         ///< R; horizon 2^R
    /// log2 lambda_n for n in [1, 2^R]; index 0 unused.
    std::vector<std::int64_t> log2_lambda;
    /// S = union over r in [M+1, R] of [2^{r-1}, 2^r - 2M], horizon 2^R.
    FiniteSubset s_set;
    WeightSequence lambda;

    std::int64_t horizon() const { return std::int64_t{1} << exponent; }
    /// Windows [k+1, k+s] with k >= this offset meet at most one gap of S.
    std::int64_t burn_in(std::int64_t window) const;
};

/// lambda_n = 2^{2^r} for n in [2^{r-1}, 2^r), i.e. the block value continued
/// over the unspecified tail (2^r - M, 2^r). Requires A non-empty, positive,
/// and M + 1 < R <= 26.
Example313 gen_example313(const std::vector<std::int64_t>& a, int exponent);

/// log2 lambda_n for any n >= 1 (the r with n in [2^{r-1}, 2^r) gives 2^r).
std::int64_t example313_log2_lambda(std::int64_t n);

} // namespace shiftlab
