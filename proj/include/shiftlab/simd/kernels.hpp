#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference in
// kernels_scalar.cpp; kernels_avx2.cpp provides AVX2 variants that must
// produce bit-identical results (tests/test_kernels.cpp checks this).

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace shiftlab::simd {

struct Int32Extrema {
    std::int32_t max;
    std::int32_t min;
};

struct DoubleExtrema {
    double min;
    double max;
};

/// Membership classes written by classify_above.
enum : std::uint8_t { kBelow = 0, kAbove = 1, kBorderline = 2 };

struct ClassifyCounts {
    std::size_t above = 0;
    std::size_t borderline = 0;
};

struct KernelTable {
    std::string_view name;

    /// max/min over k in [0, windows) of prefix[k + s] - prefix[k].
    /// Requires windows >= 1 and prefix readable up to windows - 1 + s.
    Int32Extrema (*window_extrema)(const std::int32_t* prefix, std::size_t windows, std::size_t s);

    /// min/max over n in [first, last] of prefix[n] / n, first >= 1.
    DoubleExtrema (*prefix_ratio_extrema)(const std::int32_t* prefix, std::size_t first, std::size_t last);

    /// For i in [0, count): d = sign * (values[i] - base), band = band0 + band_step * i.
    /// out[i] = kAbove if d - threshold > band, kBorderline if |d - threshold| <= band,
    /// kBelow otherwise. threshold may be -inf.
    ClassifyCounts (*classify_above)(const double* values, std::size_t count, double base, double sign,
                                     double threshold, double band0, double band_step, std::uint8_t* out);

    /// out[n - 1] = min_{1 <= l <= m} table[l * n] for n in [1, n_max].
    /// Requires table readable up to m * n_max.
    void (*strided_min)(const double* table, std::size_t n_max, std::size_t m, double* out);
};

const KernelTable& scalar_kernels();
#if defined(SHIFTLAB_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

/// True when the running CPU supports the AVX2 table.
bool cpu_has_avx2();

/// Kernel table chosen once at first use: AVX2 when available, unless the
/// environment variable SHIFTLAB_SIMD=scalar forces the reference path.
const KernelTable& active_kernels();

} // namespace shiftlab::simd
