#ifndef AMGC_KERNELS_HPP
#define AMGC_KERNELS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace amgc::kernels {

/// Count positions where a[i] != b[i], giving up early once the count
/// exceeds `limit`. Returns the exact count if it is <= limit, otherwise
/// some value > limit.
using MismatchCountFn = std::size_t (*)(const char* a, const char* b, std::size_t n,
                                        std::size_t limit);

/// Append every position i in [0, n) with a[i] != b[i] to `out`, ascending.
using MismatchScanFn = void (*)(const char* a, const char* b, std::size_t n,
                                std::vector<std::uint32_t>& out);

struct KernelSet {
    MismatchCountFn count_limit;
    MismatchScanFn scan;
    const char* name;
};

/// Portable reference implementation.
const KernelSet& scalar();

/// Best implementation available on this CPU (AVX2/NEON when present).
/// Selection happens once; all variants are bit-for-bit equivalent.
const KernelSet& active();

/// Test hook: when on, active() returns the scalar set.
void force_scalar(bool on);

}  // namespace amgc::kernels

#endif
