#ifndef AMGC_CODER_HPP
#define AMGC_CODER_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "amgc/errors.hpp"

namespace amgc {

/// Counters halve once their sum reaches this bound, keeping the adaptive
/// models responsive and every total well below the coder's 2^24 renorm line.
inline constexpr std::uint32_t kRescaleBound = 1u << 13;

/// Byte-oriented range coder, 32-bit range with carry deferral through a
/// pending-byte cache. Encoder and decoder renormalize identically, so a
/// decode driven by the same context history is bit-exact.
class RangeEncoder {
public:
    /// cum/freq/tot describe the symbol's slot in the model: [cum, cum+freq) of tot.
    /// Requires 0 < freq, cum + freq <= tot, tot < 2^16.
    void encode(std::uint32_t cum, std::uint32_t freq, std::uint32_t tot) {
        std::uint32_t r = range_ / tot;
        low_ += static_cast<std::uint64_t>(r) * cum;
        range_ = r * freq;
        while (range_ < kTop) {
            range_ <<= 8;
            shift_low();
        }
    }

    /// Flush the coder and take the payload.
    std::vector<std::uint8_t> finish() {
        for (int i = 0; i < 5; ++i) shift_low();
        return std::move(out_);
    }

private:
    static constexpr std::uint32_t kTop = 1u << 24;

    void shift_low() {
        if (static_cast<std::uint32_t>(low_) < 0xFF000000u || (low_ >> 32) != 0) {
            std::uint8_t carry = static_cast<std::uint8_t>(low_ >> 32);
            out_.push_back(static_cast<std::uint8_t>(cache_ + carry));
            while (pending_ > 0) {
                out_.push_back(static_cast<std::uint8_t>(0xFF + carry));
                --pending_;
            }
            cache_ = static_cast<std::uint8_t>(low_ >> 24);
        } else {
            ++pending_;
        }
        low_ = (low_ & 0x00FFFFFFull) << 8;
    }

    std::vector<std::uint8_t> out_;
    std::uint64_t low_ = 0;
    std::uint32_t range_ = 0xFFFFFFFFu;
    // First emitted byte is this zero-seeded cache; the decoder's 5-byte
    // priming read absorbs it. pending_ counts 0xFF bytes withheld until a
    // carry can no longer reach them.
    std::uint8_t cache_ = 0;
    std::uint64_t pending_ = 0;
};

class RangeDecoder {
public:
    explicit RangeDecoder(std::span<const std::uint8_t> src) : src_(src) {
        for (int i = 0; i < 5; ++i) code_ = (code_ << 8) | next_byte();
    }

    /// First half of a decode: returns a value in [0, tot) locating the
    /// symbol in the model's cumulative layout.
    std::uint32_t decode_freq(std::uint32_t tot) {
        r_ = range_ / tot;
        std::uint32_t v = code_ / r_;
        return v >= tot ? tot - 1 : v;
    }

    /// Second half: consume the located symbol's slot.
    void decode_update(std::uint32_t cum, std::uint32_t freq) {
        code_ -= cum * r_;
        range_ = r_ * freq;
        while (range_ < kTop) {
            code_ = (code_ << 8) | next_byte();
            range_ <<= 8;
        }
    }

    std::size_t consumed() const { return pos_; }

private:
    static constexpr std::uint32_t kTop = 1u << 24;

    std::uint8_t next_byte() {
        if (pos_ >= src_.size()) throw TruncatedError("coded stream ends early");
        return src_[pos_++];
    }

    std::span<const std::uint8_t> src_;
    std::size_t pos_ = 0;
    std::uint32_t range_ = 0xFFFFFFFFu;
    std::uint32_t code_ = 0;
    std::uint32_t r_ = 1;
};

/// Adaptive binary model. p(1) = (n1+1)/(n0+n1+2), never 0 or 1.
struct BinaryContext {
    std::uint16_t n0 = 0;
    std::uint16_t n1 = 0;

    void encode(RangeEncoder& rc, bool bit) {
        std::uint32_t f0 = n0 + 1u, f1 = n1 + 1u;
        if (bit)
            rc.encode(f0, f1, f0 + f1);
        else
            rc.encode(0, f0, f0 + f1);
        update(bit);
    }

    bool decode(RangeDecoder& rc) {
        std::uint32_t f0 = n0 + 1u, f1 = n1 + 1u;
        bool bit = rc.decode_freq(f0 + f1) >= f0;
        if (bit)
            rc.decode_update(f0, f1);
        else
            rc.decode_update(0, f0);
        update(bit);
        return bit;
    }

    double p1() const { return (n1 + 1.0) / (n0 + n1 + 2.0); }

private:
    void update(bool bit) {
        if (bit)
            ++n1;
        else
            ++n0;
        if (static_cast<std::uint32_t>(n0) + n1 >= kRescaleBound) {
            n0 = static_cast<std::uint16_t>(n0 >> 1);
            n1 = static_cast<std::uint16_t>(n1 >> 1);
        }
    }
};

/// Adaptive m-ary model with add-1 smoothing and the shared rescale rule.
class SymbolContext {
public:
    explicit SymbolContext(std::uint32_t alphabet_size)
        : counts_(alphabet_size, 0) {}

    std::uint32_t alphabet_size() const { return static_cast<std::uint32_t>(counts_.size()); }

    void encode(RangeEncoder& rc, std::uint32_t s) {
        std::uint32_t cum = 0;
        for (std::uint32_t i = 0; i < s; ++i) cum += counts_[i] + 1u;
        rc.encode(cum, counts_[s] + 1u, total_ + alphabet_size());
        update(s);
    }

    std::uint32_t decode(RangeDecoder& rc) {
        std::uint32_t target = rc.decode_freq(total_ + alphabet_size());
        std::uint32_t cum = 0;
        std::uint32_t s = 0;
        for (;; ++s) {
            std::uint32_t f = counts_[s] + 1u;
            if (target < cum + f) break;
            cum += f;
        }
        rc.decode_update(cum, counts_[s] + 1u);
        update(s);
        return s;
    }

private:
    void update(std::uint32_t s) {
        ++counts_[s];
        ++total_;
        if (total_ >= kRescaleBound) {
            total_ = 0;
            for (auto& c : counts_) {
                c = static_cast<std::uint16_t>(c >> 1);
                total_ += c;
            }
        }
    }

    std::vector<std::uint16_t> counts_;
    std::uint32_t total_ = 0;
};

}  // namespace amgc

#endif
