#pragma once

// Action of B_w and its powers on finitely supported vectors:
//   (B_w^n x)_j = (prod_{i=j+1}^{j+n} w_i) x_{j+n}.
// Dyadic weight tables keep every coefficient exact; other tables move
// coefficients to the log domain with an error bound.

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "shiftlab/coefficient.hpp"
#include "shiftlab/finite_subset.hpp"
#include "shiftlab/weights.hpp"

namespace shiftlab {

struct Space {
    enum class Kind { lp, c0 };
    Kind kind = Kind::lp;
    double p = 2.0;

    static Space lp(double p);
    static Space c0() { return {Kind::c0, 0.0}; }
    /// "lp:P" or "c0".
    static Space parse(const std::string& text);
    std::string str() const;
    /// c0 or an integer exponent: norms can be compared exactly.
    bool exact_powers() const;
    friend bool operator==(const Space&, const Space&) = default;
};

class FiniteVector {
public:
    using Entries = std::map<std::int64_t, Coefficient>;

    FiniteVector(Space space, Side side) : space_(space), side_(side) {}
    static FiniteVector basis(Space space, Side side, std::int64_t index, const Coefficient& c = Coefficient::exact(1));

    Space space() const { return space_; }
    Side side() const { return side_; }
    const Entries& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    bool is_exact() const;
    const Coefficient* find(std::int64_t index) const;

    /// Adds c at index; exact cancellation removes the entry.
    void add(std::int64_t index, const Coefficient& c);
    /// Replaces the entry at index.
    void set(std::int64_t index, const Coefficient& c);

    FiniteVector scaled(const mpq_class& q) const;
    /// Exact combination; throws std::logic_error when a coincident index is inexact.
    friend FiniteVector operator+(const FiniteVector& a, const FiniteVector& b);
    friend FiniteVector operator-(const FiniteVector& a, const FiniteVector& b);
    friend bool operator==(const FiniteVector& a, const FiniteVector& b);

    std::string str() const;

private:
    void check_index(std::int64_t index) const;

    Space space_;
    Side side_;
    Entries entries_;
};

/// ‖x‖ in the vector's space. `power` is Σ|x_k|^p (or max |x_k| for c0)
/// when every coefficient is exact and the space has exact powers.
struct NormValue {
    std::optional<mpq_class> power;
    double log2 = -std::numeric_limits<double>::infinity();   ///< log2 of the norm; -inf for 0
    double log2_error = 0.0;
};

NormValue norm(const FiniteVector& x);
/// Norm of the entries with index > k.
NormValue tail_norm(const FiniteVector& x, std::int64_t k);

struct IndexWindow {
    std::int64_t lo;
    std::int64_t hi;
};

/// B_w^n x, restricted to the window when given. Unilateral indices below 0
/// vanish. Throws std::out_of_range when a needed weight lies outside the table.
FiniteVector apply_power(const LogProductTable& w, const FiniteVector& x, std::int64_t n,
                         std::optional<IndexWindow> window = std::nullopt);

/// x with support supp(y) + n and B_w^n x = y. Rejects zero weights on the range.
FiniteVector pullback(const LogProductTable& w, const FiniteVector& y, std::int64_t n);

class ScheduleCollision : public std::invalid_argument {
public:
    ScheduleCollision(const std::string& what, std::vector<std::int64_t> indices)
        : std::invalid_argument(what), indices_(std::move(indices)) {}
    const std::vector<std::int64_t>& indices() const { return indices_; }

private:
    std::vector<std::int64_t> indices_;
};

struct ScheduleBlock {
    std::int64_t t;
    FiniteVector target;
};

/// x = Σ_s pullback(y_s, t_s) over pairwise disjoint supports.
class ScheduledVector {
public:
    const std::vector<ScheduleBlock>& blocks() const { return blocks_; }
    const FiniteVector& vector() const { return x_; }
    /// Support of pullback block s: supp(y_s) + t_s.
    std::vector<std::int64_t> block_support(std::size_t s) const;
    /// Σ_{k > K} |x_k|^p (sup for c0) as a norm; exact, since the schedule is finite.
    NormValue tail(std::int64_t k) const { return tail_norm(x_, k); }
    std::int64_t last_index() const { return x_.empty() ? 0 : x_.entries().rbegin()->first; }

private:
    friend ScheduledVector build_schedule(const LogProductTable&, std::vector<ScheduleBlock>, Space);
    ScheduledVector(std::vector<ScheduleBlock> blocks, FiniteVector x) : blocks_(std::move(blocks)), x_(std::move(x)) {}
    std::vector<ScheduleBlock> blocks_;
    FiniteVector x_;
};

/// Requires t strictly increasing and disjoint pullback supports (ScheduleCollision otherwise).
ScheduledVector build_schedule(const LogProductTable& w, std::vector<ScheduleBlock> blocks, Space space);

/// Open ball B(center, radius); radius > 0.
struct BallQuery {
    FiniteVector center;
    mpq_class radius;

    BallQuery(FiniteVector c, mpq_class r);
    /// "e0:0.5", "0:1/4", "e0+1/2*e3:0.25", "-e2:1e-3".
    static BallQuery parse(const std::string& text, Space space, Side side);
    std::string str() const;
};

enum class BallVerdict { in, out, borderline };
const char* to_string(BallVerdict v);

struct BallResult {
    BallVerdict verdict;
    double margin;          ///< radius - distance (approximate, may be ±inf)
    double log2_distance;   ///< -inf when the distance is 0
    bool exact;             ///< verdict decided in rational arithmetic
    NormValue window_part;  ///< norm of the difference on indices <= K
    NormValue tail_part;    ///< norm of the difference on indices > K
};

/// Optional scalar twist: the orbit point n is multiplied by 2^{twist(n)}.
using Twist = std::function<std::int64_t(std::int64_t)>;

/// Decides ‖λ_n B_w^n x − center‖ < radius. The verdict is strict outside the
/// floating error band; inside it the rational evaluation decides when every
/// coefficient is exact and the space has exact powers, else Borderline.
BallResult ball_membership(const LogProductTable& w, const FiniteVector& x, std::int64_t n, const BallQuery& q,
                           std::optional<std::int64_t> window_end = std::nullopt, const Twist& twist = nullptr);

/// Distance-only variant on an already computed orbit point.
BallResult ball_test(const FiniteVector& point, const BallQuery& q, std::optional<std::int64_t> window_end = std::nullopt);

struct ReturnSet {
    FiniteSubset set;                       ///< {n <= N : In}, origin 0
    std::vector<std::int64_t> borderline;   ///< excluded from set
};

ReturnSet return_set(const LogProductTable& w, const FiniteVector& x, const BallQuery& q, std::int64_t horizon,
                     const Twist& twist = nullptr);

} // namespace shiftlab
