#pragma once

// Decidable finite-horizon stand-ins for family/filter membership.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "shiftlab/density.hpp"
#include "shiftlab/finite_subset.hpp"

namespace shiftlab {

/// Complement of A within [from, N] is empty.
struct CofiniteProxy {
    std::int64_t from = 1;
};

/// max_gap(A) <= bound.
struct SyndeticGapProxy {
    std::int64_t bound = 1;
};

/// min over windows [k+1, k+s], k >= start, of |A ∩ window| / s is at least delta.
struct BanachLowerProxy {
    double delta = 0.0;
    std::int64_t window = 1;
    std::int64_t start = 0;
};

using FamilyProxy = std::variant<CofiniteProxy, SyndeticGapProxy, BanachLowerProxy>;

std::string describe(const FamilyProxy& proxy);

/// Parses "cofinite:T", "syndetic:G", "banach:DELTA:S[:START]".
FamilyProxy parse_proxy(const std::string& text);

struct MissingPoint {
    std::int64_t n;
};
struct OversizedGap {
    Gap gap;
};
struct DeficientWindow {
    std::int64_t k;       ///< window is [k+1, k+s]
    std::int64_t count;
};
struct EmptySet {};

using MembershipWitness = std::variant<MissingPoint, OversizedGap, DeficientWindow, EmptySet>;

struct Membership {
    bool member = false;
    /// Set whenever member is false.
    std::optional<MembershipWitness> witness;
};

/// Throws std::invalid_argument when the proxy does not fit the horizon.
Membership family_membership(const FiniteSubset& a, const FamilyProxy& proxy);

} // namespace shiftlab
