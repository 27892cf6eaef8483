#ifndef AMGC_REFINDEX_HPP
#define AMGC_REFINDEX_HPP

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace amgc {

/// Concatenated reference sequences, 2-bit packed. Positions whose original
/// FASTA symbol was outside ACGT keep valid=false and read back as 'A'; they
/// never seed the index but may be spanned during extension, and the decoder
/// sees the same canonical bases, so reconstruction is unaffected.
class RefSequence {
public:
    std::uint64_t size() const { return length_; }

    std::uint8_t code_at(std::uint64_t i) const {
        return (packed_[i >> 2] >> ((i & 3) * 2)) & 3;
    }
    bool valid_at(std::uint64_t i) const {
        return (valid_[i >> 6] >> (i & 63)) & 1;
    }

    /// Canonical base view used by alignment and reconstruction ('A' at
    /// invalid positions). Contiguous, length size().
    const char* bases() const { return decoded_.data(); }

    std::span<const std::uint8_t> packed() const { return packed_; }

    /// SHA-256 over the packed canonical bases; binds archives to the
    /// reference they were coded against.
    const std::array<std::uint8_t, 32>& digest() const { return digest_; }

    static RefSequence from_bases(std::string_view raw);

private:
    std::vector<std::uint8_t> packed_;   // 4 bases per byte
    std::vector<std::uint64_t> valid_;   // 64 positions per word
    std::string decoded_;
    std::uint64_t length_ = 0;
    std::array<std::uint8_t, 32> digest_{};
};

/// Parse FASTA: sequences concatenated in file order, case-normalized,
/// non-ACGT marked invalid. Throws ParseError when no sequence data exists.
RefSequence load_fasta(std::istream& in);
RefSequence load_fasta_text(std::string_view text);

/// Integer code of a k-mer window: base-4 positional value with A=0, C=1,
/// G=2, T=3. Returns nullopt when the window holds anything but ACGT.
std::optional<std::uint64_t> kmer_code(std::string_view window);

/// Positions of every valid k-mer, keyed by integer code. Stores at most
/// max_hits positions per code, keeping the earliest.
class KmerIndex {
public:
    KmerIndex() = default;

    std::uint32_t k() const { return k_; }
    std::uint32_t max_hits_per_kmer() const { return max_hits_; }

    /// Ascending reference positions for a code; empty when absent.
    std::span<const std::uint32_t> lookup(std::uint64_t code) const;

    std::uint64_t total_entries() const { return positions_.size(); }

    /// Serialized cache blob, invalidated by reference digest or parameter
    /// mismatch on load.
    void save(std::ostream& out, const RefSequence& ref) const;
    static std::optional<KmerIndex> load(std::istream& in, const RefSequence& ref,
                                         std::uint32_t k, std::uint32_t max_hits);

    friend KmerIndex build_index(const RefSequence&, std::uint32_t, std::uint32_t);

private:
    std::uint32_t k_ = 0;
    std::uint32_t max_hits_ = 0;
    // Dense CSR layout for k <= kDenseMaxK, hash buckets above.
    static constexpr std::uint32_t kDenseMaxK = 12;
    bool dense_ = true;
    std::vector<std::uint64_t> offsets_;  // 4^k + 1 entries when dense
    std::vector<std::uint32_t> positions_;
    std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::uint32_t>> sparse_;
};

/// Scan every valid window of the reference into the index.
KmerIndex build_index(const RefSequence& ref, std::uint32_t k, std::uint32_t max_hits);

}  // namespace amgc

#endif
