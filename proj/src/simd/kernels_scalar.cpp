#include "shiftlab/simd/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace shiftlab::simd {
namespace {

Int32Extrema window_extrema_ref(const std::int32_t* prefix, std::size_t windows, std::size_t s) {
    Int32Extrema r{prefix[s] - prefix[0], prefix[s] - prefix[0]};
    for (std::size_t k = 1; k < windows; ++k) {
        std::int32_t c = prefix[k + s] - prefix[k];
        r.max = std::max(r.max, c);
        r.min = std::min(r.min, c);
    }
    return r;
}

DoubleExtrema prefix_ratio_extrema_ref(const std::int32_t* prefix, std::size_t first, std::size_t last) {
    double lo = static_cast<double>(prefix[first]) / static_cast<double>(first);
    double hi = lo;
    for (std::size_t n = first + 1; n <= last; ++n) {
        double q = static_cast<double>(prefix[n]) / static_cast<double>(n);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    return {lo, hi};
}

ClassifyCounts classify_above_ref(const double* values, std::size_t count, double base, double sign,
                                  double threshold, double band0, double band_step, std::uint8_t* out) {
    ClassifyCounts c;
    for (std::size_t i = 0; i < count; ++i) {
        double d = sign * (values[i] - base);
        double band = band0 + band_step * static_cast<double>(i);
        double diff = d - threshold;
        std::uint8_t cls;
        if (diff > band) {
            cls = kAbove;
            ++c.above;
        } else if (std::fabs(diff) <= band) {
            cls = kBorderline;
            ++c.borderline;
        } else {
            cls = kBelow;
        }
        out[i] = cls;
    }
    return c;
}

void strided_min_ref(const double* table, std::size_t n_max, std::size_t m, double* out) {
    for (std::size_t n = 1; n <= n_max; ++n) {
        double v = table[n];
        for (std::size_t l = 2; l <= m; ++l) v = std::min(v, table[l * n]);
        out[n - 1] = v;
    }
}

} // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{"scalar", window_extrema_ref, prefix_ratio_extrema_ref, classify_above_ref,
                                   strided_min_ref};
    return table;
}

} // namespace shiftlab::simd
