#include "shiftlab/density.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "shiftlab/simd/kernels.hpp"

namespace shiftlab {
namespace {

constexpr std::size_t kPrefixSamples = 33;

void check_window(const FiniteSubset& a, std::int64_t s, std::int64_t window_start) {
    if (window_start < 0) throw std::invalid_argument("window start must be non-negative");
    if (s < 1 || s > a.horizon() - window_start)
        throw std::invalid_argument("window size " + std::to_string(s) + " exceeds horizon " +
                                    std::to_string(a.horizon()) +
                                    (window_start > 0 ? " minus window start " + std::to_string(window_start) : ""));
}

WindowExtrema window_counts_prefix(const std::vector<std::int32_t>& prefix, std::int64_t horizon, std::int64_t s,
                                   std::int64_t window_start) {
    auto windows = static_cast<std::size_t>(horizon - s - window_start + 1);
    auto r = simd::active_kernels().window_extrema(prefix.data() + window_start, windows, static_cast<std::size_t>(s));
    return {r.max, r.min};
}

} // namespace

WindowExtrema window_counts(const FiniteSubset& a, std::int64_t s, std::int64_t window_start) {
    check_window(a, s, window_start);
    return window_counts_prefix(a.prefix_counts(), a.horizon(), s, window_start);
}

std::int64_t find_window(const FiniteSubset& a, std::int64_t s, std::int64_t count, std::int64_t window_start) {
    check_window(a, s, window_start);
    auto prefix = a.prefix_counts();
    for (std::int64_t k = window_start; k + s <= a.horizon(); ++k)
        if (prefix[static_cast<std::size_t>(k + s)] - prefix[static_cast<std::size_t>(k)] == count) return k;
    return -1;
}

DensityReport density_report(const FiniteSubset& a, const std::vector<std::int64_t>& window_sizes,
                             std::int64_t window_start) {
    for (auto s : window_sizes) check_window(a, s, window_start);

    DensityReport rep;
    rep.horizon = a.horizon();
    rep.origin = a.origin();
    rep.cardinality = a.size();
    rep.window_start = window_start;
    rep.window_sizes = window_sizes;

    const auto prefix = a.prefix_counts();
    for (auto s : window_sizes) {
        auto ex = window_counts_prefix(prefix, a.horizon(), s, window_start);
        rep.window_max_counts.push_back(ex.max_count);
        rep.window_min_counts.push_back(ex.min_count);
    }

    const std::int64_t first = std::max<std::int64_t>(1, a.horizon() / 2);
    const std::int64_t last = a.horizon();
    auto pr = simd::active_kernels().prefix_ratio_extrema(prefix.data(), static_cast<std::size_t>(first),
                                                          static_cast<std::size_t>(last));
    rep.prefix_ratio_min = pr.min;
    rep.prefix_ratio_max = pr.max;
    const std::int64_t span = last - first;
    const std::size_t samples = std::min<std::size_t>(kPrefixSamples, static_cast<std::size_t>(span) + 1);
    for (std::size_t i = 0; i < samples; ++i) {
        std::int64_t n = samples == 1 ? first : first + span * static_cast<std::int64_t>(i) / static_cast<std::int64_t>(samples - 1);
        rep.prefix_ratios.push_back({n, static_cast<double>(prefix[static_cast<std::size_t>(n)]) / static_cast<double>(n)});
    }
    rep.max_gap = syndetic_gap(a);
    return rep;
}

std::vector<Gap> gaps(const FiniteSubset& a) {
    std::vector<Gap> out;
    if (a.empty()) return out;
    std::int64_t prev = 0;
    for (auto m : a.members()) {
        if (m > prev) out.push_back({prev, m});
        prev = m;
    }
    if (a.horizon() > prev) out.push_back({prev, a.horizon()});
    return out;
}

std::optional<std::int64_t> syndetic_gap(const FiniteSubset& a) {
    if (a.empty()) return std::nullopt;
    std::int64_t best = 0;
    for (const auto& g : gaps(a)) best = std::max(best, g.length());
    return best;
}

std::vector<Run> complement_runs(const FiniteSubset& a, std::int64_t first) {
    std::vector<Run> runs;
    std::int64_t next = first;
    for (auto m : a.members()) {
        if (m < first) continue;
        if (m > next) runs.push_back({next, m - next});
        next = m + 1;
    }
    if (next <= a.horizon()) runs.push_back({next, a.horizon() - next + 1});
    return runs;
}

FiniteSubset difference_set(const FiniteSubset& a, std::int64_t cap) {
    if (cap < 1 || cap > a.horizon()) throw std::invalid_argument("difference cap must lie in [1, horizon]");
    std::vector<bool> hit(static_cast<std::size_t>(cap) + 1, false);
    auto m = a.members();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size() && m[j] - m[i] <= cap; ++j) hit[static_cast<std::size_t>(m[j] - m[i])] = true;
    std::vector<std::int64_t> out;
    for (std::int64_t d = 1; d <= cap; ++d)
        if (hit[static_cast<std::size_t>(d)]) out.push_back(d);
    return FiniteSubset(std::move(out), cap, Origin::one);
}

FiniteSubset shift_intersection(const FiniteSubset& a, std::int64_t k, std::int64_t r) {
    if (k < 1 || r < 1) throw std::invalid_argument("shift_intersection needs k >= 1 and r >= 1");
    if (r > a.horizon() / k || r * k >= a.horizon())
        throw std::invalid_argument("shift_intersection: r*k = " + std::to_string(r * k) + " exceeds horizon " +
                                    std::to_string(a.horizon()));
    const auto bits = a.indicator();
    const std::int64_t horizon = a.horizon() - r * k;
    std::vector<std::int64_t> out;
    for (auto m : a.members()) {
        if (m > horizon) break;
        bool all = true;
        for (std::int64_t i = 1; i <= r && all; ++i) all = bits[static_cast<std::size_t>(m + i * k)];
        if (all) out.push_back(m);
    }
    return FiniteSubset(std::move(out), horizon, a.origin());
}

Progression longest_ap(const FiniteSubset& a, std::int64_t max_len) {
    if (max_len < 3) throw std::invalid_argument("longest_ap needs max_len >= 3");
    auto m = a.members();
    if (m.size() < 3)
        return {m.empty() ? 0 : m.front(), 0, static_cast<std::int64_t>(m.size())};

    const auto bits = a.indicator();
    const std::int64_t horizon = a.horizon();
    auto in = [&](std::int64_t v) { return v >= 0 && v <= horizon && bits[static_cast<std::size_t>(v)]; };

    // Every pair (x, x+d) lies on exactly one maximal progression of step d;
    // walking only from maximal starts keeps the total work O(|A|^2).
    Progression best{m[0], m[1] - m[0], 2};
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            const std::int64_t d = m[j] - m[i];
            if (d > best.step && best.length >= max_len) break;
            if (in(m[i] - d)) continue;
            std::int64_t len = 2;
            for (std::int64_t v = m[j] + d; len < max_len && in(v); v += d) ++len;
            const bool better = len > best.length || (len == best.length && (d < best.step || (d == best.step && m[i] < best.start)));
            if (better) best = {m[i], d, len};
        }
    }
    return best;
}

FiniteSubset dilate_preimage(const FiniteSubset& a, std::int64_t l) {
    if (l < 1) throw std::invalid_argument("dilation factor must be >= 1");
    std::vector<std::int64_t> out;
    for (auto m : a.members())
        if (m % l == 0) out.push_back(m / l);
    return FiniteSubset(std::move(out), std::max<std::int64_t>(1, a.horizon() / l), a.origin());
}

} // namespace shiftlab
