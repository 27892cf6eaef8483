#include "amgc/refpos_codec.hpp"

#include <algorithm>
#include <bit>

#include "amgc/errors.hpp"

namespace amgc {

BitPlaneForm BitPlaneForm::split(std::int64_t d) {
    BitPlaneForm f;
    if (d == 0) {
        f.zero = true;
        return f;
    }
    f.negative = d < 0;
    std::uint64_t mag = f.negative ? static_cast<std::uint64_t>(-d) : static_cast<std::uint64_t>(d);
    f.msb = static_cast<std::uint32_t>(std::bit_width(mag)) - 1;
    f.rest_bits = static_cast<std::uint32_t>(mag ^ (1ull << f.msb));
    return f;
}

std::int64_t BitPlaneForm::join() const {
    if (zero) return 0;
    std::int64_t mag = static_cast<std::int64_t>((1ull << msb) | rest_bits);
    return negative ? -mag : mag;
}

BitPlaneValueCoder::BitPlaneValueCoder() : msb_ctx_(kMsbAlphabet), rest_ctx_(32 * 32) {}

void BitPlaneValueCoder::encode(RangeEncoder& msb_enc, RangeEncoder& sign_enc,
                                RangeEncoder& rest_enc, std::int64_t d) {
    BitPlaneForm f = BitPlaneForm::split(d);
    if (f.zero) {
        msb_ctx_.encode(msb_enc, kZeroSymbol);
        return;
    }
    msb_ctx_.encode(msb_enc, f.msb);
    sign_ctx_.encode(sign_enc, f.negative);
    for (std::uint32_t plane = f.msb; plane-- > 0;)
        rest_ctx_[f.msb * 32 + plane].encode(rest_enc, (f.rest_bits >> plane) & 1);
}

std::int64_t BitPlaneValueCoder::decode(RangeDecoder& msb_dec, RangeDecoder& sign_dec,
                                        RangeDecoder& rest_dec) {
    std::uint32_t sym = msb_ctx_.decode(msb_dec);
    if (sym == kZeroSymbol) return 0;
    BitPlaneForm f;
    f.msb = sym;
    f.negative = sign_ctx_.decode(sign_dec);
    f.rest_bits = 0;
    for (std::uint32_t plane = f.msb; plane-- > 0;)
        if (rest_ctx_[f.msb * 32 + plane].decode(rest_dec))
            f.rest_bits |= 1u << plane;
    return f.join();
}

std::pair<std::vector<std::uint8_t>, std::vector<std::uint32_t>> dedup(
    std::span<const std::uint32_t> positions) {
    std::vector<std::uint8_t> bits(positions.size());
    std::vector<std::uint32_t> unique;
    unique.reserve(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        bool same = i > 0 && positions[i] == positions[i - 1];
        bits[i] = same ? 1 : 0;
        if (!same) unique.push_back(positions[i]);
    }
    return {std::move(bits), std::move(unique)};
}

namespace {

std::int64_t median3(std::int64_t a, std::int64_t b, std::int64_t c) {
    return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

}  // namespace

std::vector<std::int64_t> median_delta(std::span<const std::uint32_t> unique_sequence) {
    std::vector<std::int64_t> deltas(unique_sequence.size());
    for (std::size_t i = 0; i < unique_sequence.size(); ++i) {
        std::int64_t p1 = i >= 1 ? unique_sequence[i - 1] : 0;
        std::int64_t p2 = i >= 2 ? unique_sequence[i - 2] : 0;
        std::int64_t p3 = i >= 3 ? unique_sequence[i - 3] : 0;
        deltas[i] = static_cast<std::int64_t>(unique_sequence[i]) - median3(p1, p2, p3);
    }
    return deltas;
}

std::vector<std::uint32_t> median_delta_inverse(std::span<const std::int64_t> deltas) {
    std::vector<std::uint32_t> out(deltas.size());
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        std::int64_t p1 = i >= 1 ? out[i - 1] : 0;
        std::int64_t p2 = i >= 2 ? out[i - 2] : 0;
        std::int64_t p3 = i >= 3 ? out[i - 3] : 0;
        std::int64_t v = deltas[i] + median3(p1, p2, p3);
        if (v < 0 || v > 0xFFFFFFFFll)
            throw CorruptArchiveError("refpos reconstruction left 32-bit range");
        out[i] = static_cast<std::uint32_t>(v);
    }
    return out;
}

RefposStreams encode_refpos(std::span<const std::uint32_t> positions) {
    auto [bits, unique] = dedup(positions);
    auto deltas = median_delta(unique);

    RangeEncoder eq_enc, sign_enc, msb_enc, rest_enc;
    // Duplicates arrive in runs, so the previous equality bit is the context.
    BinaryContext eq_ctx[2];
    std::uint8_t prev = 0;
    for (std::uint8_t b : bits) {
        eq_ctx[prev].encode(eq_enc, b);
        prev = b;
    }

    BitPlaneValueCoder values;
    for (std::int64_t d : deltas) values.encode(msb_enc, sign_enc, rest_enc, d);

    RefposStreams out;
    out.pos_equal = eq_enc.finish();
    out.sign = sign_enc.finish();
    out.msb = msb_enc.finish();
    out.rest_bits = rest_enc.finish();
    return out;
}

std::vector<std::uint32_t> decode_refpos(const RefposStreams& streams, std::size_t n) {
    if (n == 0) return {};
    RangeDecoder eq_dec(streams.pos_equal), sign_dec(streams.sign), msb_dec(streams.msb),
        rest_dec(streams.rest_bits);

    std::vector<std::uint8_t> bits(n);
    BinaryContext eq_ctx[2];
    std::uint8_t prev = 0;
    std::size_t uniques = 0;
    for (std::size_t i = 0; i < n; ++i) {
        bits[i] = eq_ctx[prev].decode(eq_dec) ? 1 : 0;
        prev = bits[i];
        if (!bits[i]) ++uniques;
    }
    if (bits[0] != 0) throw CorruptArchiveError("first PosEqual bit must be 0");

    BitPlaneValueCoder values;
    std::vector<std::int64_t> deltas(uniques);
    for (auto& d : deltas) d = values.decode(msb_dec, sign_dec, rest_dec);
    auto unique = median_delta_inverse(deltas);

    std::vector<std::uint32_t> positions(n);
    std::size_t u = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (bits[i]) {
            positions[i] = positions[i - 1];
        } else {
            positions[i] = unique[u++];
        }
    }
    return positions;
}

}  // namespace amgc
