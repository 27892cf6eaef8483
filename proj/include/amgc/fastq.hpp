#ifndef AMGC_FASTQ_HPP
#define AMGC_FASTQ_HPP

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace amgc {

/// One read's bases, uppercase over {A,C,G,T,N}.
struct ReadRecord {
    std::string bases;
    std::uint32_t ordinal = 0;  // 0-based index within its block

    std::uint32_t length() const { return static_cast<std::uint32_t>(bases.size()); }
};

/// A run of consecutive reads compressed as one independent unit.
struct ReadBlock {
    std::vector<ReadRecord> reads;
    std::uint64_t raw_byte_budget = 0;  // bases bytes covered by this block
    // id/plus/quality lines, verbatim, three lines per read; empty unless
    // pass-through capture was requested
    std::string passthrough;
};

/// One canonicalized FASTQ record.
struct FastqRecord {
    std::string bases;
    std::string id;
    std::string plus;
    std::string qual;
};

/// Streaming 4-line FASTQ reader. Validates structure as it goes and
/// uppercases bases; identifier/plus/quality lines are kept verbatim only
/// when `keep_passthrough` is set.
class FastqReader {
public:
    FastqReader(std::istream& in, bool keep_passthrough);

    /// Next record, or nullopt at clean EOF. Throws ParseError on malformed
    /// input, naming the record index.
    std::optional<FastqRecord> next();

    std::uint64_t records_read() const { return count_; }

private:
    std::istream& in_;
    bool keep_passthrough_;
    std::uint64_t count_ = 0;
};

/// Groups reads into blocks: a block closes at the first read that brings
/// its bases-byte total to >= block_size_bytes.
class BlockBuilder {
public:
    explicit BlockBuilder(std::uint64_t block_size_bytes);

    /// Add a read; returns a finished block when this read closed one.
    std::optional<ReadBlock> push(FastqRecord&& rec);

    /// Flush the trailing partial block, if any.
    std::optional<ReadBlock> finish();

private:
    std::uint64_t block_size_;
    ReadBlock current_;
};

/// Parse a whole FASTQ text into reads (file order, ordinal = file index).
std::vector<ReadRecord> parse_fastq(std::string_view text);

/// Partition reads into blocks by the greedy byte-budget rule. Concatenation
/// of the blocks' reads equals the input sequence.
std::vector<ReadBlock> split_blocks(std::vector<ReadRecord> reads,
                                    std::uint64_t block_size_bytes);

}  // namespace amgc

#endif
