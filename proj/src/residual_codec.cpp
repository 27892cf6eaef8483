#include "amgc/residual_codec.hpp"

#include "amgc/coder.hpp"
#include "amgc/dna.hpp"
#include "amgc/errors.hpp"
#include "amgc/refpos_codec.hpp"

namespace amgc {

namespace {

struct MetaModels {
    SymbolContext root_type{4};
    SymbolContext inner_type{4};
    BinaryContext strand;
    BinaryContext len_same;
    std::vector<SymbolContext> len_byte;

    MetaModels() : len_byte(4, SymbolContext(256)) {}
};

void encode_node(RangeEncoder& enc, MetaModels& m, const MatchNode& node, bool root) {
    (root ? m.root_type : m.inner_type).encode(enc, static_cast<std::uint32_t>(node.kind));
    if (node.is_match()) {
        m.strand.encode(enc, node.match.strand == Strand::reverse_complement);
    } else if (node.kind == NodeKind::split) {
        encode_node(enc, m, *node.left, false);
        encode_node(enc, m, *node.right, false);
    }
}

std::unique_ptr<MatchNode> decode_node(RangeDecoder& dec, MetaModels& m, std::uint32_t length,
                                       bool root) {
    auto node = std::make_unique<MatchNode>();
    node->length = length;
    std::uint32_t kind = (root ? m.root_type : m.inner_type).decode(dec);
    node->kind = static_cast<NodeKind>(kind);
    if (node->is_match()) {
        node->match.strand =
            m.strand.decode(dec) ? Strand::reverse_complement : Strand::forward;
    } else if (node->kind == NodeKind::split) {
        if (length < 2) throw CorruptArchiveError("split of a segment shorter than 2");
        node->left = decode_node(dec, m, length / 2, false);
        node->right = decode_node(dec, m, length - length / 2, false);
    }
    return node;
}

}  // namespace

std::vector<std::uint8_t> encode_meta(std::span<const MatchOutcome> outcomes) {
    RangeEncoder enc;
    MetaModels m;
    std::uint32_t prev_len = 0;
    for (const auto& o : outcomes) {
        bool same = o.read_length == prev_len;
        m.len_same.encode(enc, same);
        if (!same)
            for (int b = 3; b >= 0; --b)
                m.len_byte[b].encode(enc, (o.read_length >> (8 * b)) & 0xFF);
        prev_len = o.read_length;
        encode_node(enc, m, *o.root, true);
    }
    return enc.finish();
}

std::vector<MatchOutcome> decode_meta(std::span<const std::uint8_t> payload,
                                      std::size_t read_count) {
    std::vector<MatchOutcome> outcomes;
    outcomes.reserve(read_count);
    if (read_count == 0) return outcomes;
    RangeDecoder dec(payload);
    MetaModels m;
    std::uint32_t prev_len = 0;
    for (std::size_t r = 0; r < read_count; ++r) {
        std::uint32_t len = prev_len;
        if (!m.len_same.decode(dec)) {
            len = 0;
            for (int b = 3; b >= 0; --b) len |= m.len_byte[b].decode(dec) << (8 * b);
        }
        if (len == 0) throw CorruptArchiveError("zero read length in MatchMeta");
        prev_len = len;
        MatchOutcome o;
        o.read_length = len;
        o.root = decode_node(dec, m, len, true);
        outcomes.push_back(std::move(o));
    }
    return outcomes;
}

namespace {

/// Rank of the read base within {A,C,G,T} minus the reference base. The
/// oriented base N (always a mismatch) is carried as rank 0; the N mask
/// restores it after reconstruction.
std::uint32_t exclusion_rank(std::uint8_t ref_code, char read_base) {
    std::uint8_t rc = dna::code(read_base);
    if (rc >= 4) return 0;
    return rc < ref_code ? rc : rc - 1u;
}

char exclusion_base(std::uint8_t ref_code, std::uint32_t rank) {
    std::uint8_t rc = rank < ref_code ? static_cast<std::uint8_t>(rank)
                                      : static_cast<std::uint8_t>(rank + 1);
    return dna::kBases[rc];
}

}  // namespace

std::vector<std::uint8_t> encode_misvalues(std::span<const MatchOutcome> outcomes,
                                           const RefSequence& ref) {
    RangeEncoder enc;
    std::vector<SymbolContext> ctx(4, SymbolContext(3));
    for (const auto& o : outcomes) {
        for_each_leaf(*o.root, [&](const MatchNode& leaf) {
            if (leaf.kind != NodeKind::mismatched) return;
            for (std::size_t i = 0; i < leaf.match.mispos.size(); ++i) {
                std::uint8_t rcode = ref.code_at(leaf.match.refpos + leaf.match.mispos[i]);
                ctx[rcode].encode(enc, exclusion_rank(rcode, leaf.match.misvalues[i]));
            }
        });
    }
    return enc.finish();
}

void decode_misvalues(std::span<const std::uint8_t> payload, std::span<MatchOutcome> outcomes,
                      const RefSequence& ref) {
    bool any = false;
    for (const auto& o : outcomes)
        for_each_leaf(*o.root, [&](const MatchNode& leaf) {
            any = any || (leaf.kind == NodeKind::mismatched && !leaf.match.mispos.empty());
        });
    if (!any) return;

    RangeDecoder dec(payload);
    std::vector<SymbolContext> ctx(4, SymbolContext(3));
    for (auto& o : outcomes) {
        for_each_leaf(*o.root, [&](MatchNode& leaf) {
            if (leaf.kind != NodeKind::mismatched) return;
            leaf.match.misvalues.resize(leaf.match.mispos.size());
            for (std::size_t i = 0; i < leaf.match.mispos.size(); ++i) {
                std::uint8_t rcode = ref.code_at(leaf.match.refpos + leaf.match.mispos[i]);
                leaf.match.misvalues[i] = exclusion_base(rcode, ctx[rcode].decode(dec));
            }
        });
    }
}

std::vector<std::uint8_t> encode_unmapped(std::span<const MatchOutcome> outcomes) {
    RangeEncoder enc;
    std::vector<SymbolContext> ctx(16, SymbolContext(4));
    std::uint32_t state = 0;  // previous two base codes
    for (const auto& o : outcomes) {
        for_each_leaf(*o.root, [&](const MatchNode& leaf) {
            if (leaf.kind != NodeKind::unmapped) return;
            for (char c : leaf.unmapped_bases) {
                std::uint8_t code = dna::code(c);
                if (code >= 4) code = 0;  // N placeholder, restored by the mask
                ctx[state].encode(enc, code);
                state = ((state << 2) | code) & 0xF;
            }
        });
    }
    return enc.finish();
}

void decode_unmapped(std::span<const std::uint8_t> payload, std::span<MatchOutcome> outcomes) {
    std::uint64_t total = 0;
    for (const auto& o : outcomes)
        for_each_leaf(*o.root, [&](const MatchNode& leaf) {
            if (leaf.kind == NodeKind::unmapped) total += leaf.length;
        });
    if (total == 0) return;

    RangeDecoder dec(payload);
    std::vector<SymbolContext> ctx(16, SymbolContext(4));
    std::uint32_t state = 0;
    for (auto& o : outcomes) {
        for_each_leaf(*o.root, [&](MatchNode& leaf) {
            if (leaf.kind != NodeKind::unmapped) return;
            leaf.unmapped_bases.resize(leaf.length);
            for (std::uint32_t i = 0; i < leaf.length; ++i) {
                std::uint32_t code = ctx[state].decode(dec);
                leaf.unmapped_bases[i] = dna::kBases[code];
                state = ((state << 2) | code) & 0xF;
            }
        });
    }
}

std::vector<std::uint8_t> encode_nmask(std::span<const ReadRecord> reads) {
    RangeEncoder enc;
    BinaryContext flag_ctx[2];
    BitPlaneValueCoder values;
    std::uint8_t prev = 0;
    for (const auto& read : reads) {
        std::vector<std::uint32_t> npos;
        for (std::uint32_t i = 0; i < read.bases.size(); ++i)
            if (read.bases[i] == 'N') npos.push_back(i);
        std::uint8_t flag = npos.empty() ? 0 : 1;
        flag_ctx[prev].encode(enc, flag != 0);
        prev = flag;
        if (!flag) continue;
        values.encode(enc, enc, enc, static_cast<std::int64_t>(npos.size()));
        std::uint32_t last = 0;
        for (std::size_t i = 0; i < npos.size(); ++i) {
            values.encode(enc, enc, enc, static_cast<std::int64_t>(npos[i] - last));
            last = npos[i];
        }
    }
    return enc.finish();
}

void decode_nmask_apply(std::span<const std::uint8_t> payload, std::vector<std::string>& reads) {
    if (reads.empty()) return;
    RangeDecoder dec(payload);
    BinaryContext flag_ctx[2];
    BitPlaneValueCoder values;
    std::uint8_t prev = 0;
    for (auto& read : reads) {
        bool flag = flag_ctx[prev].decode(dec);
        prev = flag ? 1 : 0;
        if (!flag) continue;
        std::int64_t count = values.decode(dec, dec, dec);
        if (count < 1 || static_cast<std::uint64_t>(count) > read.size())
            throw CorruptArchiveError("N mask count out of range");
        std::uint64_t pos = 0;
        for (std::int64_t i = 0; i < count; ++i) {
            std::int64_t gap = values.decode(dec, dec, dec);
            if (gap < 0 || (i > 0 && gap == 0))
                throw CorruptArchiveError("N mask gaps must ascend");
            pos = i == 0 ? static_cast<std::uint64_t>(gap) : pos + static_cast<std::uint64_t>(gap);
            if (pos >= read.size()) throw CorruptArchiveError("N mask position out of range");
            read[pos] = 'N';
        }
    }
    return;
}

}  // namespace amgc
