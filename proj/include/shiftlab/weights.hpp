#pragma once

// Weight sequences for backward shifts B_w e_n = w_n e_{n-1}, held as base-2
// logarithms. Dyadic generators are exact (rational logs); the rest are
// floating with a stated error bound.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shiftlab/rational.hpp"

namespace shiftlab {

enum class Side { unilateral, bilateral };
const char* to_string(Side s);

/// Raised when a request exceeds the memory/horizon guard.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Largest horizon a table may realize.
inline constexpr std::int64_t kMaxHorizon = 100'000'000;

class WeightSequence {
public:
    using ExactFn = std::function<Rational(std::int64_t)>;
    using FloatFn = std::function<double(std::int64_t)>;
    using Params = std::vector<std::pair<std::string, std::string>>;

    static WeightSequence exact(std::string kind, Params params, Side side, ExactFn fn,
                                std::optional<std::int64_t> max_index = std::nullopt);
    static WeightSequence floating(std::string kind, Params params, Side side, FloatFn fn,
                                   std::optional<std::int64_t> max_index = std::nullopt);

    const std::string& kind() const { return kind_; }
    const Params& params() const { return params_; }
    /// Canonical DSL form, e.g. "prop2(4)".
    std::string spec() const;
    Side side() const { return side_; }
    bool is_exact() const { return static_cast<bool>(exact_); }
    /// Largest index the generator defines (unilateral), or |index| bound (bilateral).
    std::optional<std::int64_t> max_index() const { return max_index_; }

    /// log2|w_i|; -inf encodes a zero weight (floating generators only).
    double log2_weight(std::int64_t i) const;
    /// Throws std::logic_error for floating generators.
    Rational exact_log2_weight(std::int64_t i) const;

private:
    std::string kind_;
    Params params_;
    Side side_ = Side::unilateral;
    ExactFn exact_;
    FloatFn float_;
    std::optional<std::int64_t> max_index_;
};

/// Prefix sums of log2|w_i|. Positions run over [first_index - 1, last_index];
/// at(first_index - 1) = 0 and sum(a, b) = log2 prod_{i=a+1}^{b} |w_i|.
/// Unilateral tables cover weights [1, N] so at(n) is L(n) with L(0) = 0;
/// bilateral tables cover [-N, N].
class LogProductTable {
public:
    LogProductTable(const WeightSequence& w, std::int64_t horizon);

    const std::string& spec() const { return spec_; }
    Side side() const { return side_; }
    std::int64_t horizon() const { return horizon_; }
    std::int64_t first_index() const { return first_; }
    std::int64_t last_index() const { return last_; }
    std::int64_t first_position() const { return first_ - 1; }
    bool is_exact() const { return !exact_.empty(); }
    /// Exact and every log is an integer, so the double sums are exact too.
    bool is_dyadic() const { return dyadic_; }
    double sup_abs_log() const { return sup_abs_; }

    bool contains_position(std::int64_t k) const { return k >= first_ - 1 && k <= last_; }
    double at(std::int64_t k) const { return sums_[offset(k)]; }
    Rational exact_at(std::int64_t k) const;
    /// Pointer to at(k); contiguous up to last_index.
    const double* data_at(std::int64_t k) const { return sums_.data() + offset(k); }

    /// log2 prod_{i=a+1}^{b}|w_i| for a <= b; -inf if a zero weight lies in (a, b].
    double sum(std::int64_t a, std::int64_t b) const;
    Rational exact_sum(std::int64_t a, std::int64_t b) const;
    bool has_zero(std::int64_t a, std::int64_t b) const;

    /// Accumulated error bound of at(k) in log2 units (0 for exact tables).
    double error_at(std::int64_t k) const;
    /// Error bound of sum(a, b) including the subtraction's rounding.
    double sum_error(std::int64_t a, std::int64_t b) const;
    /// Error bound over the whole table: N * sup|log2 w| * 2^-50 (floating).
    double max_error() const { return error_at(last_); }

private:
    std::size_t offset(std::int64_t k) const {
        if (!contains_position(k))
            throw std::out_of_range("position " + std::to_string(k) + " outside weight table [" +
                                    std::to_string(first_ - 1) + ", " + std::to_string(last_) + "]");
        return static_cast<std::size_t>(k - (first_ - 1));
    }

    std::string spec_;
    Side side_;
    std::int64_t horizon_;
    std::int64_t first_;
    std::int64_t last_;
    bool dyadic_ = false;
    double sup_abs_ = 0.0;
    std::vector<double> sums_;
    std::vector<Rational> exact_;
    std::vector<std::int32_t> zeros_;   // prefix count of zero weights, empty when none
};

/// True when x = 2^k for an integer k; stores k.
bool exact_power_of_two(double x, std::int64_t* exponent = nullptr);

} // namespace shiftlab
