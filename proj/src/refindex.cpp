#include "amgc/refindex.hpp"

#include <openssl/sha.h>

#include <cstring>
#include <sstream>

#include "amgc/dna.hpp"
#include "amgc/errors.hpp"

namespace amgc {

RefSequence RefSequence::from_bases(std::string_view raw) {
    RefSequence ref;
    ref.length_ = raw.size();
    ref.packed_.assign((raw.size() + 3) / 4, 0);
    ref.valid_.assign((raw.size() + 63) / 64, 0);
    ref.decoded_.resize(raw.size());
    for (std::uint64_t i = 0; i < raw.size(); ++i) {
        std::uint8_t c = dna::code(raw[i]);
        if (c < 4) {
            ref.packed_[i >> 2] |= static_cast<std::uint8_t>(c << ((i & 3) * 2));
            ref.valid_[i >> 6] |= 1ull << (i & 63);
            ref.decoded_[i] = dna::kBases[c];
        } else {
            ref.decoded_[i] = 'A';  // canonical placeholder, valid stays 0
        }
    }
    SHA256(ref.packed_.data(), ref.packed_.size(), ref.digest_.data());
    return ref;
}

RefSequence load_fasta(std::istream& in) {
    std::string raw;
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '>') {
            saw_header = true;
            continue;
        }
        for (char c : line) {
            if (dna::code(c) > 4 && c != '-' && c != '.') {
                // tolerate IUPAC ambiguity codes as invalid positions, but
                // reject bytes that cannot belong to sequence data
                if (!std::isalpha(static_cast<unsigned char>(c)))
                    throw ParseError("FASTA sequence line holds non-sequence byte");
            }
        }
        raw += line;
    }
    if (in.bad()) throw IoError("read failure in FASTA input");
    if (raw.empty())
        throw ParseError(saw_header ? "FASTA has headers but no sequence lines"
                                    : "empty FASTA input");
    return RefSequence::from_bases(raw);
}

RefSequence load_fasta_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return load_fasta(in);
}

std::optional<std::uint64_t> kmer_code(std::string_view window) {
    std::uint64_t code = 0;
    for (char c : window) {
        std::uint8_t d = dna::code(c);
        if (d >= 4) return std::nullopt;
        code = (code << 2) | d;
    }
    return code;
}

std::span<const std::uint32_t> KmerIndex::lookup(std::uint64_t code) const {
    if (dense_) {
        if (code + 1 >= offsets_.size()) return {};
        std::uint64_t begin = offsets_[code], end = offsets_[code + 1];
        return {positions_.data() + begin, positions_.data() + end};
    }
    auto it = sparse_.find(code);
    if (it == sparse_.end()) return {};
    return {positions_.data() + it->second.first, it->second.second};
}

KmerIndex build_index(const RefSequence& ref, std::uint32_t k, std::uint32_t max_hits) {
    if (k < 2 || k > 14) throw ConfigError("k must be in [2, 14]");
    if (max_hits < 1 || max_hits > 255) throw ConfigError("max hits per k-mer must be in [1, 255]");

    KmerIndex idx;
    idx.k_ = k;
    idx.max_hits_ = max_hits;
    idx.dense_ = k <= KmerIndex::kDenseMaxK;

    if (ref.size() < k) {
        if (idx.dense_) idx.offsets_.assign((1ull << (2 * k)) + 1, 0);
        return idx;
    }

    const std::uint64_t n_windows = ref.size() - k + 1;
    const std::uint64_t mask = (1ull << (2 * k)) - 1;

    // rolling code over valid stretches; run = valid bases accumulated
    auto scan = [&](auto&& emit) {
        std::uint64_t code = 0;
        std::uint32_t run = 0;
        for (std::uint64_t i = 0; i < ref.size(); ++i) {
            if (!ref.valid_at(i)) {
                run = 0;
                code = 0;
                continue;
            }
            code = ((code << 2) | ref.code_at(i)) & mask;
            if (++run >= k) emit(code, static_cast<std::uint32_t>(i - k + 1));
        }
    };

    if (idx.dense_) {
        std::vector<std::uint8_t> counts(mask + 2, 0);
        std::uint64_t total = 0;
        scan([&](std::uint64_t code, std::uint32_t) {
            if (counts[code] < max_hits) {
                ++counts[code];
                ++total;
            }
        });
        idx.offsets_.assign(mask + 2, 0);
        std::uint64_t acc = 0;
        for (std::uint64_t c = 0; c <= mask; ++c) {
            idx.offsets_[c] = acc;
            acc += counts[c];
        }
        idx.offsets_[mask + 1] = acc;
        idx.positions_.resize(total);
        std::vector<std::uint8_t> filled(mask + 1, 0);
        scan([&](std::uint64_t code, std::uint32_t pos) {
            if (filled[code] < counts[code])
                idx.positions_[idx.offsets_[code] + filled[code]++] = pos;
        });
    } else {
        // two passes so positions land contiguously; earliest positions win
        std::unordered_map<std::uint64_t, std::uint32_t> counts;
        counts.reserve(n_windows);
        scan([&](std::uint64_t code, std::uint32_t) {
            auto& c = counts[code];
            if (c < max_hits) ++c;
        });
        std::uint64_t total = 0;
        for (auto& [code, c] : counts) {
            idx.sparse_.emplace(code, std::make_pair(total, 0u));
            total += c;
        }
        idx.positions_.resize(total);
        scan([&](std::uint64_t code, std::uint32_t pos) {
            auto& slot = idx.sparse_[code];
            if (slot.second < counts[code])
                idx.positions_[slot.first + slot.second++] = pos;
        });
    }
    return idx;
}

namespace {
constexpr char kCacheMagic[4] = {'A', 'M', 'G', 'I'};
constexpr std::uint16_t kCacheVersion = 1;

template <typename T>
void put(std::ostream& out, T v) {
    std::uint8_t buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<std::uint8_t>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
bool get(std::istream& in, T& v) {
    std::uint8_t buf[sizeof(T)];
    if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) return false;
    v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(buf[i]) << (8 * i);
    return true;
}
}  // namespace

void KmerIndex::save(std::ostream& out, const RefSequence& ref) const {
    out.write(kCacheMagic, 4);
    put(out, kCacheVersion);
    out.write(reinterpret_cast<const char*>(ref.digest().data()), 32);
    put(out, k_);
    put(out, max_hits_);
    put(out, static_cast<std::uint8_t>(dense_ ? 1 : 0));
    put(out, static_cast<std::uint64_t>(positions_.size()));
    out.write(reinterpret_cast<const char*>(positions_.data()),
              static_cast<std::streamsize>(positions_.size() * sizeof(std::uint32_t)));
    if (dense_) {
        put(out, static_cast<std::uint64_t>(offsets_.size()));
        out.write(reinterpret_cast<const char*>(offsets_.data()),
                  static_cast<std::streamsize>(offsets_.size() * sizeof(std::uint64_t)));
    } else {
        put(out, static_cast<std::uint64_t>(sparse_.size()));
        for (const auto& [code, slot] : sparse_) {
            put(out, code);
            put(out, slot.first);
            put(out, slot.second);
        }
    }
    if (!out) throw IoError("failed writing index cache");
}

std::optional<KmerIndex> KmerIndex::load(std::istream& in, const RefSequence& ref,
                                         std::uint32_t k, std::uint32_t max_hits) {
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kCacheMagic, 4) != 0) return std::nullopt;
    std::uint16_t version;
    if (!get(in, version) || version != kCacheVersion) return std::nullopt;
    std::array<std::uint8_t, 32> digest;
    if (!in.read(reinterpret_cast<char*>(digest.data()), 32) || digest != ref.digest())
        return std::nullopt;

    KmerIndex idx;
    std::uint8_t dense;
    if (!get(in, idx.k_) || !get(in, idx.max_hits_) || !get(in, dense)) return std::nullopt;
    if (idx.k_ != k || idx.max_hits_ != max_hits) return std::nullopt;
    idx.dense_ = dense != 0;

    std::uint64_t n_pos;
    if (!get(in, n_pos)) return std::nullopt;
    idx.positions_.resize(n_pos);
    if (!in.read(reinterpret_cast<char*>(idx.positions_.data()),
                 static_cast<std::streamsize>(n_pos * sizeof(std::uint32_t))))
        return std::nullopt;
    if (idx.dense_) {
        std::uint64_t n_off;
        if (!get(in, n_off) || n_off != (1ull << (2 * idx.k_)) + 1) return std::nullopt;
        idx.offsets_.resize(n_off);
        if (!in.read(reinterpret_cast<char*>(idx.offsets_.data()),
                     static_cast<std::streamsize>(n_off * sizeof(std::uint64_t))))
            return std::nullopt;
    } else {
        std::uint64_t n_codes;
        if (!get(in, n_codes)) return std::nullopt;
        for (std::uint64_t i = 0; i < n_codes; ++i) {
            std::uint64_t code, first;
            std::uint32_t count;
            if (!get(in, code) || !get(in, first) || !get(in, count)) return std::nullopt;
            idx.sparse_.emplace(code, std::make_pair(first, count));
        }
    }
    return idx;
}

}  // namespace amgc
