#ifndef AMGC_MISPOS_CODEC_HPP
#define AMGC_MISPOS_CODEC_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace amgc {

/// Binary mismatch vector of one segment, one entry per oriented position.
using MisposVector = std::vector<std::uint8_t>;

/// Number of set bits among the previous min(i, 10) entries; the context id
/// for position i, in [0, 10]. The window never crosses vector boundaries.
std::uint32_t mispos_context(const MisposVector& bits, std::size_t i);

/// Encode vectors back to back with the error-count context model.
std::vector<std::uint8_t> encode_mispos(std::span<const MisposVector> vectors);

/// Decode; lengths must match the encoder's vector lengths in order.
std::vector<MisposVector> decode_mispos(std::span<const std::uint8_t> payload,
                                        std::span<const std::uint32_t> lengths);

/// Order-0 reference coder over the same input, used to quantify what the
/// context model buys.
std::vector<std::uint8_t> encode_mispos_order0(std::span<const MisposVector> vectors);

}  // namespace amgc

#endif
