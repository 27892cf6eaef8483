#ifndef AMGC_REFPOS_CODEC_HPP
#define AMGC_REFPOS_CODEC_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "amgc/coder.hpp"

namespace amgc {

/// Sign/MSB/RestBit decomposition of a signed delta. A zero delta carries
/// only the dedicated ZERO msb symbol.
struct BitPlaneForm {
    bool zero = false;
    bool negative = false;        // coded only for nonzero values
    std::uint32_t msb = 0;        // index of the highest set bit of |d|, 0..31
    std::uint32_t rest_bits = 0;  // the msb low-order bits below the leading 1

    static BitPlaneForm split(std::int64_t d);
    std::int64_t join() const;
};

/// MSB alphabet: msb values 0..31 plus ZERO at symbol 32.
inline constexpr std::uint32_t kMsbAlphabet = 33;
inline constexpr std::uint32_t kZeroSymbol = 32;

/// Adaptive model bank for bit-plane coded signed values: a 33-ary msb
/// context, one sign context, and a binary context per (msb, plane) pair.
/// Rest bits are coded from the highest plane down, so each bit's context
/// is keyed by where it sits.
class BitPlaneValueCoder {
public:
    BitPlaneValueCoder();

    /// Encode into up to three independent coder/stream pairs. For single
    /// stream uses, pass the same encoder three times.
    void encode(RangeEncoder& msb_enc, RangeEncoder& sign_enc, RangeEncoder& rest_enc,
                std::int64_t d);
    std::int64_t decode(RangeDecoder& msb_dec, RangeDecoder& sign_dec, RangeDecoder& rest_dec);

private:
    SymbolContext msb_ctx_;
    BinaryContext sign_ctx_;
    std::vector<BinaryContext> rest_ctx_;  // [msb * 32 + plane]
};

/// Drop each refpos equal to its immediate predecessor. Bit x of the first
/// result is 1 iff p(x) == p(x-1); the first bit is always 0.
std::pair<std::vector<std::uint8_t>, std::vector<std::uint32_t>> dedup(
    std::span<const std::uint32_t> positions);

/// d(x) = p(x) - mid{p(x-1), p(x-2), p(x-3)}, with the three priors zero
/// before the sequence starts.
std::vector<std::int64_t> median_delta(std::span<const std::uint32_t> unique_sequence);

/// Exact inverse of median_delta.
std::vector<std::uint32_t> median_delta_inverse(std::span<const std::int64_t> deltas);

/// The four encoded substreams of the refpos pipeline, in container order.
struct RefposStreams {
    std::vector<std::uint8_t> pos_equal;
    std::vector<std::uint8_t> sign;
    std::vector<std::uint8_t> msb;
    std::vector<std::uint8_t> rest_bits;
};

RefposStreams encode_refpos(std::span<const std::uint32_t> positions);

/// Decode exactly n positions. Throws TruncatedError/CorruptArchiveError on
/// malformed streams.
std::vector<std::uint32_t> decode_refpos(const RefposStreams& streams, std::size_t n);

}  // namespace amgc

#endif
