#ifndef AMGC_RESIDUAL_CODEC_HPP
#define AMGC_RESIDUAL_CODEC_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "amgc/aligner.hpp"
#include "amgc/fastq.hpp"
#include "amgc/refindex.hpp"

namespace amgc {

/// Visit leaves in emission order (reads in block order, in-order within
/// each tree).
template <typename Node, typename Fn>
void for_each_leaf(Node& node, Fn&& fn) {
    if (node.kind == NodeKind::split) {
        for_each_leaf(*node.left, fn);
        for_each_leaf(*node.right, fn);
    } else {
        fn(node);
    }
}

/// MatchMeta: per-read lengths plus tree shape, leaf classification and
/// strands — everything the decoder needs before touching other streams.
std::vector<std::uint8_t> encode_meta(std::span<const MatchOutcome> outcomes);

/// Rebuild outcome skeletons: kinds, lengths, strands. Segment content
/// (refpos, mispos, misvalues, unmapped bases) is filled by later streams.
std::vector<MatchOutcome> decode_meta(std::span<const std::uint8_t> payload,
                                      std::size_t read_count);

/// Mismatch base values, 3-symbol exclusion-coded against the reference
/// base at each mismatch position. Requires refpos and mispos filled.
std::vector<std::uint8_t> encode_misvalues(std::span<const MatchOutcome> outcomes,
                                           const RefSequence& ref);
void decode_misvalues(std::span<const std::uint8_t> payload, std::span<MatchOutcome> outcomes,
                      const RefSequence& ref);

/// Unmapped leaf bases, order-2 base context; N is carried as 'A' here and
/// restored by the N mask.
std::vector<std::uint8_t> encode_unmapped(std::span<const MatchOutcome> outcomes);
void decode_unmapped(std::span<const std::uint8_t> payload, std::span<MatchOutcome> outcomes);

/// Per-read N positions: a has-N flag, then count and gaps through the
/// bit-plane value coder.
std::vector<std::uint8_t> encode_nmask(std::span<const ReadRecord> reads);

/// Restore 'N' into reconstructed reads.
void decode_nmask_apply(std::span<const std::uint8_t> payload, std::vector<std::string>& reads);

}  // namespace amgc

#endif
