#include "shiftlab/simd/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace shiftlab::simd {

bool cpu_has_avx2() {
#if defined(SHIFTLAB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const KernelTable& active_kernels() {
    static const KernelTable& chosen = [&]() -> const KernelTable& {
        const char* force = std::getenv("SHIFTLAB_SIMD");
        if (force != nullptr && std::string_view(force) == "scalar") return scalar_kernels();
#if defined(SHIFTLAB_HAVE_AVX2)
        if (cpu_has_avx2()) return avx2_kernels();
#endif
        return scalar_kernels();
    }();
    return chosen;
}

} // namespace shiftlab::simd
