#include "amgc/fastq.hpp"

#include <sstream>
#include <utility>

#include "amgc/dna.hpp"
#include "amgc/errors.hpp"

namespace amgc {

namespace {

bool read_line(std::istream& in, std::string& line) {
    return static_cast<bool>(std::getline(in, line));
}

}  // namespace

FastqReader::FastqReader(std::istream& in, bool keep_passthrough)
    : in_(in), keep_passthrough_(keep_passthrough) {}

std::optional<FastqRecord> FastqReader::next() {
    std::string id;
    if (!read_line(in_, id)) {
        if (in_.bad()) throw IoError("read failure in FASTQ input");
        return std::nullopt;
    }

    const std::uint64_t idx = count_;
    std::string bases, plus, qual;
    if (!read_line(in_, bases) || !read_line(in_, plus) || !read_line(in_, qual))
        throw ParseError("record " + std::to_string(idx) +
                         ": input ends mid-record (line count not a multiple of 4)");

    if (id.empty() || id[0] != '@')
        throw ParseError("record " + std::to_string(idx) + ": identifier line must start with '@'");
    if (plus.empty() || plus[0] != '+')
        throw ParseError("record " + std::to_string(idx) + ": separator line must start with '+'");
    if (bases.empty())
        throw ParseError("record " + std::to_string(idx) + ": empty bases line");
    if (bases.size() != qual.size())
        throw ParseError("record " + std::to_string(idx) + ": bases/quality length mismatch (" +
                         std::to_string(bases.size()) + " vs " + std::to_string(qual.size()) + ")");

    for (char& c : bases) {
        std::uint8_t code = dna::code(c);
        if (code > 4)
            throw ParseError("record " + std::to_string(idx) + ": illegal base symbol '" +
                             std::string(1, c) + "'");
        c = code == 4 ? 'N' : dna::kBases[code];
    }

    ++count_;
    FastqRecord rec;
    rec.bases = std::move(bases);
    if (keep_passthrough_) {
        rec.id = std::move(id);
        rec.plus = std::move(plus);
        rec.qual = std::move(qual);
    }
    return rec;
}

BlockBuilder::BlockBuilder(std::uint64_t block_size_bytes) : block_size_(block_size_bytes) {}

std::optional<ReadBlock> BlockBuilder::push(FastqRecord&& rec) {
    ReadRecord read;
    read.ordinal = static_cast<std::uint32_t>(current_.reads.size());
    read.bases = std::move(rec.bases);
    current_.raw_byte_budget += read.bases.size();
    current_.reads.push_back(std::move(read));
    if (!rec.id.empty() || !rec.qual.empty() || !rec.plus.empty()) {
        current_.passthrough += rec.id;
        current_.passthrough += '\n';
        current_.passthrough += rec.plus;
        current_.passthrough += '\n';
        current_.passthrough += rec.qual;
        current_.passthrough += '\n';
    }
    if (current_.raw_byte_budget >= block_size_) {
        ReadBlock done = std::move(current_);
        current_ = ReadBlock{};
        return done;
    }
    return std::nullopt;
}

std::optional<ReadBlock> BlockBuilder::finish() {
    if (current_.reads.empty()) return std::nullopt;
    ReadBlock done = std::move(current_);
    current_ = ReadBlock{};
    return done;
}

std::vector<ReadRecord> parse_fastq(std::string_view text) {
    std::istringstream in{std::string(text)};
    FastqReader reader(in, false);
    std::vector<ReadRecord> reads;
    while (auto rec = reader.next()) {
        ReadRecord r;
        r.ordinal = static_cast<std::uint32_t>(reads.size());
        r.bases = std::move(rec->bases);
        reads.push_back(std::move(r));
    }
    return reads;
}

std::vector<ReadBlock> split_blocks(std::vector<ReadRecord> reads,
                                    std::uint64_t block_size_bytes) {
    BlockBuilder builder(block_size_bytes);
    std::vector<ReadBlock> blocks;
    for (auto& r : reads) {
        FastqRecord rec;
        rec.bases = std::move(r.bases);
        if (auto blk = builder.push(std::move(rec))) blocks.push_back(std::move(*blk));
    }
    if (auto blk = builder.finish()) blocks.push_back(std::move(*blk));
    return blocks;
}

}  // namespace amgc
