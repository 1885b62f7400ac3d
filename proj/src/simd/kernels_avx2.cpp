// Compiled with -mavx2; only reached after a runtime CPU check.

#include "shiftlab/simd/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace shiftlab::simd {
namespace {

Int32Extrema window_extrema_avx2(const std::int32_t* prefix, std::size_t windows, std::size_t s) {
    std::size_t k = 0;
    Int32Extrema r{prefix[s] - prefix[0], prefix[s] - prefix[0]};
    if (windows >= 8) {
        __m256i vmax = _mm256_set1_epi32(r.max);
        __m256i vmin = vmax;
        for (; k + 8 <= windows; k += 8) {
            __m256i hi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(prefix + k + s));
            __m256i lo = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(prefix + k));
            __m256i c = _mm256_sub_epi32(hi, lo);
            vmax = _mm256_max_epi32(vmax, c);
            vmin = _mm256_min_epi32(vmin, c);
        }
        alignas(32) std::int32_t mx[8], mn[8];
        _mm256_store_si256(reinterpret_cast<__m256i*>(mx), vmax);
        _mm256_store_si256(reinterpret_cast<__m256i*>(mn), vmin);
        r.max = *std::max_element(mx, mx + 8);
        r.min = *std::min_element(mn, mn + 8);
    }
    for (; k < windows; ++k) {
        std::int32_t c = prefix[k + s] - prefix[k];
        r.max = std::max(r.max, c);
        r.min = std::min(r.min, c);
    }
    return r;
}

DoubleExtrema prefix_ratio_extrema_avx2(const std::int32_t* prefix, std::size_t first, std::size_t last) {
    double lo = static_cast<double>(prefix[first]) / static_cast<double>(first);
    double hi = lo;
    std::size_t n = first + 1;
    if (last >= n + 3) {
        __m256d vlo = _mm256_set1_pd(lo);
        __m256d vhi = vlo;
        const __m256d step = _mm256_set1_pd(4.0);
        __m256d idx = _mm256_setr_pd(double(n), double(n + 1), double(n + 2), double(n + 3));
        for (; n + 3 <= last; n += 4) {
            __m128i c = _mm_loadu_si128(reinterpret_cast<const __m128i*>(prefix + n));
            __m256d q = _mm256_div_pd(_mm256_cvtepi32_pd(c), idx);
            vlo = _mm256_min_pd(q, vlo);
            vhi = _mm256_max_pd(q, vhi);
            idx = _mm256_add_pd(idx, step);
        }
        alignas(32) double a[4], b[4];
        _mm256_store_pd(a, vlo);
        _mm256_store_pd(b, vhi);
        lo = *std::min_element(a, a + 4);
        hi = *std::max_element(b, b + 4);
    }
    for (; n <= last; ++n) {
        double q = static_cast<double>(prefix[n]) / static_cast<double>(n);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    return {lo, hi};
}

ClassifyCounts classify_above_avx2(const double* values, std::size_t count, double base, double sign,
                                   double threshold, double band0, double band_step, std::uint8_t* out) {
    ClassifyCounts c;
    std::size_t i = 0;
    const __m256d vbase = _mm256_set1_pd(base);
    const __m256d vsign = _mm256_set1_pd(sign);
    const __m256d vthr = _mm256_set1_pd(threshold);
    const __m256d vband0 = _mm256_set1_pd(band0);
    const __m256d vstep = _mm256_set1_pd(band_step);
    const __m256d four = _mm256_set1_pd(4.0);
    const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
    for (; i + 4 <= count; i += 4) {
        __m256d v = _mm256_loadu_pd(values + i);
        __m256d d = _mm256_mul_pd(vsign, _mm256_sub_pd(v, vbase));
        __m256d band = _mm256_add_pd(vband0, _mm256_mul_pd(vstep, idx));
        __m256d diff = _mm256_sub_pd(d, vthr);
        int above = _mm256_movemask_pd(_mm256_cmp_pd(diff, band, _CMP_GT_OQ));
        int border = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_and_pd(diff, absmask), band, _CMP_LE_OQ));
        for (int lane = 0; lane < 4; ++lane) {
            std::uint8_t cls = kBelow;
            if (above & (1 << lane)) {
                cls = kAbove;
                ++c.above;
            } else if (border & (1 << lane)) {
                cls = kBorderline;
                ++c.borderline;
            }
            out[i + lane] = cls;
        }
        idx = _mm256_add_pd(idx, four);
    }
    for (; i < count; ++i) {
        double d = sign * (values[i] - base);
        double band = band0 + band_step * static_cast<double>(i);
        double diff = d - threshold;
        std::uint8_t cls = kBelow;
        if (diff > band) {
            cls = kAbove;
            ++c.above;
        } else if (std::fabs(diff) <= band) {
            cls = kBorderline;
            ++c.borderline;
        }
        out[i] = cls;
    }
    return c;
}

void strided_min_avx2(const double* table, std::size_t n_max, std::size_t m, double* out) {
    std::size_t n = 1;
    for (; n + 3 <= n_max; n += 4) {
        const __m256i base = _mm256_setr_epi64x(static_cast<long long>(n), static_cast<long long>(n + 1),
                                                static_cast<long long>(n + 2), static_cast<long long>(n + 3));
        __m256d v = _mm256_loadu_pd(table + n);
        __m256i offs = base;
        for (std::size_t l = 2; l <= m; ++l) {
            offs = _mm256_add_epi64(offs, base);
            __m256d t = _mm256_i64gather_pd(table, offs, 8);
            v = _mm256_min_pd(t, v);
        }
        _mm256_storeu_pd(out + n - 1, v);
    }
    for (; n <= n_max; ++n) {
        double v = table[n];
        for (std::size_t l = 2; l <= m; ++l) v = std::min(v, table[l * n]);
        out[n - 1] = v;
    }
}

} // namespace

const KernelTable& avx2_kernels() {
    static const KernelTable table{"avx2", window_extrema_avx2, prefix_ratio_extrema_avx2, classify_above_avx2,
                                   strided_min_avx2};
    return table;
}

} // namespace shiftlab::simd
