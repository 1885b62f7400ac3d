#include "shiftlab/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "shiftlab/simd/kernels.hpp"

namespace shiftlab {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Threshold {
    double log2m;
    bool exact;
    std::int64_t exponent;   // valid when exact and finite
    double error;
};

Threshold make_threshold(double m) {
    if (std::isnan(m) || m < 0.0 || std::isinf(m)) throw std::invalid_argument("threshold M must be a finite value > 0 (0 = 0+ sentinel)");
    if (m == 0.0) return {kNegInf, true, 0, 0.0};
    std::int64_t e = 0;
    if (exact_power_of_two(m, &e)) return {static_cast<double>(e), true, e, 0.0};
    const double t = std::log2(m);
    return {t, false, 0, std::ldexp(std::fabs(t), -52)};
}

/// Linear error band A + B*n for comparing L(j +- n) - L(j) against the threshold.
struct Band {
    double a;
    double b;
};

Band difference_band(const LogProductTable& table, std::int64_t j, const Threshold& thr) {
    const double sup = table.sup_abs_log();
    const double lj = std::fabs(table.at(j));
    if (table.is_dyadic()) return {thr.error, 0.0};
    if (table.is_exact()) return {std::ldexp(lj, -51) + thr.error, std::ldexp(sup, -52)};
    const double span = static_cast<double>(j - table.first_index() + 1);
    return {std::ldexp(sup * 2.0 * span, -50) + std::ldexp(2.0 * lj, -53) + thr.error,
            std::ldexp(sup, -50) + std::ldexp(sup, -53)};
}

} // namespace

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

CriterionSet criterion_set(const LogProductTable& table, double threshold, std::int64_t offset, bool mirrored) {
    const Threshold thr = make_threshold(threshold);
    if (mirrored && table.side() != Side::bilateral)
        throw std::invalid_argument("the mirrored set Abar is defined for bilateral weights only");
    if (table.side() == Side::unilateral && offset < 0)
        throw std::invalid_argument("unilateral offset j must be >= 0");
    if (offset < table.first_position() || offset >= table.last_index())
        throw std::invalid_argument("offset j = " + std::to_string(offset) + " outside [" +
                                    std::to_string(table.first_position()) + ", " + std::to_string(table.last_index() - 1) + "]");

    const std::int64_t range = mirrored ? offset - table.first_position() : table.last_index() - offset;
    if (range < 1) throw std::invalid_argument("offset j leaves an empty range");

    std::vector<double> reversed;
    const double* values = nullptr;
    if (mirrored) {
        reversed.resize(static_cast<std::size_t>(range));
        for (std::int64_t n = 1; n <= range; ++n) reversed[static_cast<std::size_t>(n - 1)] = table.at(offset - n);
        values = reversed.data();
    } else {
        values = table.data_at(offset + 1);
    }

    const Band band = difference_band(table, offset, thr);
    std::vector<std::uint8_t> cls(static_cast<std::size_t>(range));
    simd::active_kernels().classify_above(values, cls.size(), table.at(offset), 1.0, thr.log2m, band.a + band.b, band.b,
                                          cls.data());

    auto segment = [&](std::int64_t n) { return mirrored ? std::pair{offset - n, offset} : std::pair{offset, offset + n}; };
    const bool resolve_exactly = table.is_exact() && thr.exact;

    CriterionSet out{threshold, offset, mirrored, FiniteSubset({}, range), {}};
    std::vector<std::int64_t> members;
    for (std::int64_t n = 1; n <= range; ++n) {
        auto c = cls[static_cast<std::size_t>(n - 1)];
        auto [a, b] = segment(n);
        if (c != simd::kBelow && table.has_zero(a, b)) c = simd::kBelow;
        if (c == simd::kBorderline && resolve_exactly) {
            Rational d = mirrored ? -table.exact_sum(a, b) : table.exact_sum(a, b);
            c = (std::isinf(thr.log2m) || d > Rational(thr.exponent)) ? simd::kAbove : simd::kBelow;
        }
        if (c == simd::kAbove) members.push_back(n);
        else if (c == simd::kBorderline) out.borderline.push_back(n);
    }
    out.members = FiniteSubset(std::move(members), range, Origin::one);
    return out;
}

SyndeticReport syndetic_operator_check(const LogProductTable& table, const std::vector<double>& thresholds,
                                       std::int64_t gap_bound) {
    if (table.side() != Side::unilateral) throw std::invalid_argument("syndetic check expects a unilateral weight");
    if (gap_bound < 1) throw std::invalid_argument("gap bound must be positive");
    SyndeticReport rep{table.last_index(), gap_bound, {}};
    for (double m : thresholds) {
        auto cs = criterion_set(table, m, 0);
        SyndeticRow row{m, syndetic_gap(cs.members), Verdict::holds, {}, cs.borderline};
        for (const auto& g : gaps(cs.members))
            if (g.length() > gap_bound) row.oversized.push_back(g);
        if (!row.max_gap || !row.oversized.empty()) {
            row.verdict = Verdict::fails;
            // A borderline point inside an oversized gap could close it.
            for (auto b : cs.borderline)
                for (const auto& g : row.oversized)
                    if (b > g.from && b < g.to) row.verdict = Verdict::inconclusive;
            if (!row.max_gap && !cs.borderline.empty()) row.verdict = Verdict::inconclusive;
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

MultipleRecurrenceReport multiple_recurrence_check(const LogProductTable& table, std::int64_t m_max,
                                                   const std::vector<double>& thresholds) {
    if (table.side() != Side::unilateral) throw std::invalid_argument("multiple recurrence check expects a unilateral weight");
    if (m_max < 1) throw std::invalid_argument("m_max must be >= 1");
    MultipleRecurrenceReport rep{table.last_index(), {}};
    const std::int64_t horizon = table.last_index();
    const double sup = table.sup_abs_log();

    for (std::int64_t m = 1; m <= m_max; ++m) {
        const std::int64_t n_max = horizon / m;
        std::vector<double> mins(static_cast<std::size_t>(std::max<std::int64_t>(n_max, 0)));
        if (n_max >= 1) {
            simd::active_kernels().strided_min(table.data_at(0), static_cast<std::size_t>(n_max), static_cast<std::size_t>(m),
                                               mins.data());
            for (std::int64_t n = 1; n <= n_max; ++n)
                if (table.has_zero(0, m * n)) mins[static_cast<std::size_t>(n - 1)] = kNegInf;
        }
        std::int64_t best_n = 0;
        double best = kNegInf;
        for (std::int64_t n = 1; n <= n_max; ++n)
            if (best_n == 0 || mins[static_cast<std::size_t>(n - 1)] > best) {
                best = mins[static_cast<std::size_t>(n - 1)];
                best_n = n;
            }

        for (double threshold : thresholds) {
            const Threshold thr = make_threshold(threshold);
            MultipleRecurrenceRow row{m, threshold, Verdict::inconclusive, std::nullopt, std::nullopt, best_n, best, n_max};
            if (n_max >= 1) {
                double a = thr.error, b = 0.0;
                if (!table.is_dyadic()) {
                    a += std::ldexp(sup * static_cast<double>(m), -50);
                    b = std::ldexp(sup * static_cast<double>(m), -49);
                }
                std::vector<std::uint8_t> cls(mins.size());
                simd::active_kernels().classify_above(mins.data(), mins.size(), 0.0, 1.0, thr.log2m, a + b, b, cls.data());
                const bool resolve_exactly = table.is_exact() && thr.exact;
                for (std::int64_t n = 1; n <= n_max && !row.witness_n; ++n) {
                    auto c = cls[static_cast<std::size_t>(n - 1)];
                    if (c == simd::kBorderline && resolve_exactly) {
                        Rational lo = table.exact_at(n);
                        for (std::int64_t l = 2; l <= m; ++l) lo = std::min(lo, table.exact_at(l * n));
                        c = (std::isinf(thr.log2m) || lo > Rational(thr.exponent)) ? simd::kAbove : simd::kBelow;
                    }
                    if (c == simd::kAbove) {
                        row.witness_n = n;
                        row.witness_min = mins[static_cast<std::size_t>(n - 1)];
                        row.verdict = Verdict::holds;
                    }
                }
            }
            rep.rows.push_back(row);
        }
    }
    return rep;
}

MixingReport mixing_check(const LogProductTable& table, const std::vector<double>& thresholds,
                          std::optional<std::int64_t> tail_start) {
    if (table.side() != Side::unilateral) throw std::invalid_argument("mixing check expects a unilateral weight");
    const std::int64_t horizon = table.last_index();
    const std::int64_t t0 = tail_start.value_or(std::max<std::int64_t>(1, horizon / 2));
    if (t0 < 1 || t0 > horizon) throw std::invalid_argument("tail start must lie in [1, N]");
    MixingReport rep{horizon, t0, {}};
    for (double m : thresholds) {
        auto cs = criterion_set(table, m, 0);
        MixingRow row{m, std::nullopt, Verdict::holds, std::nullopt};
        auto runs = complement_runs(cs.members, 1);
        if (runs.empty()) {
            row.cofinite_from = 1;
        } else {
            const auto& last = runs.back();
            const std::int64_t missing = last.start + last.length - 1;
            row.last_missing = missing;
            if (missing < horizon) row.cofinite_from = missing + 1;
        }
        if (row.last_missing && *row.last_missing >= t0) {
            row.verdict = Verdict::fails;
            const bool only_borderline = std::all_of(runs.begin(), runs.end(), [&](const Run& r) {
                if (r.start + r.length - 1 < t0) return true;
                for (std::int64_t n = std::max(r.start, t0); n < r.start + r.length; ++n)
                    if (!std::binary_search(cs.borderline.begin(), cs.borderline.end(), n)) return false;
                return true;
            });
            if (only_borderline) row.verdict = Verdict::inconclusive;
        }
        rep.rows.push_back(row);
    }
    return rep;
}

ScaledFamilyReport scaled_family_check(const LogProductTable& table, std::int64_t r, const std::vector<double>& thresholds,
                                       const std::vector<std::int64_t>& offsets, const FamilyProxy& proxy) {
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    ScaledFamilyReport rep{table.last_index(), r, describe(proxy), true, {}};
    const bool bilateral = table.side() == Side::bilateral;
    for (double m : thresholds) {
        for (auto j : offsets) {
            for (int mirrored = 0; mirrored <= (bilateral ? 1 : 0); ++mirrored) {
                auto cs = criterion_set(table, m, j, mirrored != 0);
                for (std::int64_t l = 1; l <= r; ++l) {
                    auto dilated = dilate_preimage(cs.members, l);
                    ScaledRow row{l, m, j, mirrored != 0, family_membership(dilated, proxy)};
                    rep.all_hold = rep.all_hold && row.membership.member;
                    rep.rows.push_back(std::move(row));
                }
            }
        }
    }
    return rep;
}

} // namespace shiftlab
