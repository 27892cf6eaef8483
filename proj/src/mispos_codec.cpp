#include "amgc/mispos_codec.hpp"

#include "amgc/coder.hpp"

namespace amgc {

namespace {
constexpr std::size_t kWindow = 10;
}

std::uint32_t mispos_context(const MisposVector& bits, std::size_t i) {
    std::uint32_t sum = 0;
    std::size_t lo = i > kWindow ? i - kWindow : 0;
    for (std::size_t k = lo; k < i; ++k) sum += bits[k];
    return sum;
}

std::vector<std::uint8_t> encode_mispos(std::span<const MisposVector> vectors) {
    RangeEncoder enc;
    BinaryContext ctx[kWindow + 1];
    for (const auto& v : vectors) {
        std::uint32_t window_sum = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            ctx[window_sum].encode(enc, v[i] != 0);
            window_sum += v[i];
            if (i >= kWindow) window_sum -= v[i - kWindow];
        }
    }
    return enc.finish();
}

std::vector<MisposVector> decode_mispos(std::span<const std::uint8_t> payload,
                                        std::span<const std::uint32_t> lengths) {
    std::vector<MisposVector> out;
    out.reserve(lengths.size());
    if (lengths.empty()) return out;
    RangeDecoder dec(payload);
    BinaryContext ctx[kWindow + 1];
    for (std::uint32_t len : lengths) {
        MisposVector v(len);
        std::uint32_t window_sum = 0;
        for (std::size_t i = 0; i < len; ++i) {
            v[i] = ctx[window_sum].decode(dec) ? 1 : 0;
            window_sum += v[i];
            if (i >= kWindow) window_sum -= v[i - kWindow];
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<std::uint8_t> encode_mispos_order0(std::span<const MisposVector> vectors) {
    RangeEncoder enc;
    BinaryContext ctx;
    for (const auto& v : vectors)
        for (std::uint8_t b : v) ctx.encode(enc, b != 0);
    return enc.finish();
}

}  // namespace amgc
