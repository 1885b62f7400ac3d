#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace shiftlab {

/// Where the index set of a subset starts: orbit times start at 0,
/// weight indices at 1.
enum class Origin { zero = 0, one = 1 };

/// Finite-horizon stand-in for a subset of the naturals: strictly
/// increasing members in [0, horizon].
class FiniteSubset {
public:
    FiniteSubset(std::vector<std::int64_t> members, std::int64_t horizon, Origin origin = Origin::one);

    static FiniteSubset from_predicate(std::int64_t first, std::int64_t horizon,
                                       const std::function<bool(std::int64_t)>& pred,
                                       Origin origin = Origin::one);
    /// [first, last] at the given horizon.
    static FiniteSubset interval(std::int64_t first, std::int64_t last, std::int64_t horizon,
                                 Origin origin = Origin::one);

    std::span<const std::int64_t> members() const { return members_; }
    std::int64_t horizon() const { return horizon_; }
    Origin origin() const { return origin_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    bool contains(std::int64_t n) const;

    /// prefix[i] = |A ∩ [1, i]| for i in [0, horizon].
    std::vector<std::int32_t> prefix_counts() const;
    /// Bitmap over [0, horizon].
    std::vector<bool> indicator() const;

    friend bool operator==(const FiniteSubset&, const FiniteSubset&) = default;

private:
    std::vector<std::int64_t> members_;
    std::int64_t horizon_;
    Origin origin_;
};

const char* to_string(Origin o);

/// Set file: optional "#horizon=N" / "#origin=0|1" header lines, then one
/// decimal integer per line, strictly increasing. Without a horizon header
/// the horizon is the largest member.
FiniteSubset read_set(std::istream& in);
FiniteSubset read_set_file(const std::string& path);
void write_set(std::ostream& out, const FiniteSubset& set);

} // namespace shiftlab
