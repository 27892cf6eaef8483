#include "amgc/kernels.hpp"

#include <atomic>

#if defined(__x86_64__) || defined(_M_X64)
#define AMGC_HAVE_AVX2_BUILD 1
#include <immintrin.h>
#elif defined(__aarch64__)
#define AMGC_HAVE_NEON_BUILD 1
#include <arm_neon.h>
#endif

namespace amgc::kernels {

namespace {

std::size_t count_limit_scalar(const char* a, const char* b, std::size_t n, std::size_t limit) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        count += (a[i] != b[i]);
        if (count > limit) return count;
    }
    return count;
}

void scan_scalar(const char* a, const char* b, std::size_t n, std::vector<std::uint32_t>& out) {
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) out.push_back(static_cast<std::uint32_t>(i));
}

#ifdef AMGC_HAVE_AVX2_BUILD

__attribute__((target("avx2"))) std::size_t count_limit_avx2(const char* a, const char* b,
                                                             std::size_t n, std::size_t limit) {
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        std::uint32_t eq = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(va, vb)));
        count += static_cast<std::size_t>(__builtin_popcount(~eq));
        if (count > limit) return count;
    }
    for (; i < n; ++i) {
        count += (a[i] != b[i]);
        if (count > limit) return count;
    }
    return count;
}

__attribute__((target("avx2"))) void scan_avx2(const char* a, const char* b, std::size_t n,
                                               std::vector<std::uint32_t>& out) {
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        std::uint32_t ne = ~static_cast<std::uint32_t>(
            _mm256_movemask_epi8(_mm256_cmpeq_epi8(va, vb)));
        while (ne) {
            unsigned bit = static_cast<unsigned>(__builtin_ctz(ne));
            out.push_back(static_cast<std::uint32_t>(i + bit));
            ne &= ne - 1;
        }
    }
    for (; i < n; ++i)
        if (a[i] != b[i]) out.push_back(static_cast<std::uint32_t>(i));
}

#endif  // AMGC_HAVE_AVX2_BUILD

#ifdef AMGC_HAVE_NEON_BUILD

std::size_t count_limit_neon(const char* a, const char* b, std::size_t n, std::size_t limit) {
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        uint8x16_t va = vld1q_u8(reinterpret_cast<const std::uint8_t*>(a + i));
        uint8x16_t vb = vld1q_u8(reinterpret_cast<const std::uint8_t*>(b + i));
        // 0xFF per differing byte; addv of (diff & 1) gives the lane count
        uint8x16_t ne = vmvnq_u8(vceqq_u8(va, vb));
        count += vaddvq_u8(vandq_u8(ne, vdupq_n_u8(1)));
        if (count > limit) return count;
    }
    for (; i < n; ++i) {
        count += (a[i] != b[i]);
        if (count > limit) return count;
    }
    return count;
}

void scan_neon(const char* a, const char* b, std::size_t n, std::vector<std::uint32_t>& out) {
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        uint8x16_t va = vld1q_u8(reinterpret_cast<const std::uint8_t*>(a + i));
        uint8x16_t vb = vld1q_u8(reinterpret_cast<const std::uint8_t*>(b + i));
        uint8x16_t ne = vmvnq_u8(vceqq_u8(va, vb));
        if (vmaxvq_u8(ne) == 0) continue;
        for (std::size_t j = 0; j < 16; ++j)
            if (a[i + j] != b[i + j]) out.push_back(static_cast<std::uint32_t>(i + j));
    }
    for (; i < n; ++i)
        if (a[i] != b[i]) out.push_back(static_cast<std::uint32_t>(i));
}

#endif  // AMGC_HAVE_NEON_BUILD

constexpr KernelSet kScalar{count_limit_scalar, scan_scalar, "scalar"};

const KernelSet& detect() {
#ifdef AMGC_HAVE_AVX2_BUILD
    if (__builtin_cpu_supports("avx2")) {
        static constexpr KernelSet kAvx2{count_limit_avx2, scan_avx2, "avx2"};
        return kAvx2;
    }
#endif
#ifdef AMGC_HAVE_NEON_BUILD
    static constexpr KernelSet kNeon{count_limit_neon, scan_neon, "neon"};
    return kNeon;
#endif
    return kScalar;
}

std::atomic<bool> g_force_scalar{false};

}  // namespace

const KernelSet& scalar() { return kScalar; }

const KernelSet& active() {
    if (g_force_scalar.load(std::memory_order_relaxed)) return kScalar;
    static const KernelSet& selected = detect();
    return selected;
}

void force_scalar(bool on) { g_force_scalar.store(on, std::memory_order_relaxed); }

}  // namespace amgc::kernels
