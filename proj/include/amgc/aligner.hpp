#ifndef AMGC_ALIGNER_HPP
#define AMGC_ALIGNER_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "amgc/fastq.hpp"
#include "amgc/refindex.hpp"

namespace amgc {

enum class Strand : std::uint8_t { forward = 0, reverse_complement = 1 };

struct AlignerConfig {
    std::uint32_t k = 10;
    std::uint32_t num_seeds = 4;
    double mismatch_rate = 0.1;  // threshold(L) = ceil(L * mismatch_rate)
    std::uint32_t min_len = 25;
    std::uint32_t max_candidates_per_seed = 16;
    std::uint32_t max_hits_per_kmer = 16;
    bool enable_split = true;

    std::uint32_t threshold(std::uint32_t len) const;

    /// Split is permitted only when both halves stay seedable segments.
    bool split_permitted(std::uint32_t len) const {
        return enable_split && len >= 2 && len / 2 >= min_len;
    }

    void validate() const;
};

/// One aligned segment. mispos/misvalues are expressed in the oriented
/// segment (forward-reference direction); refpos is always the forward
/// coordinate of the leftmost matched base.
struct SegmentMatch {
    std::uint32_t refpos = 0;
    Strand strand = Strand::forward;
    std::vector<std::uint32_t> mispos;
    std::string misvalues;  // oriented read base at each mispos entry
};

enum class NodeKind : std::uint8_t { full = 0, mismatched = 1, split = 2, unmapped = 3 };

/// Node of the recursive split tree. A split node's children cover
/// floor(n/2) and ceil(n/2) bases, in read order.
struct MatchNode {
    NodeKind kind = NodeKind::unmapped;
    std::uint32_t length = 0;
    SegmentMatch match;          // kind == full | mismatched
    std::string unmapped_bases;  // kind == unmapped, read orientation, N intact
    std::unique_ptr<MatchNode> left, right;

    bool is_leaf() const { return kind != NodeKind::split; }
    bool is_match() const { return kind == NodeKind::full || kind == NodeKind::mismatched; }
};

struct MatchOutcome {
    std::unique_ptr<MatchNode> root;
    std::uint32_t read_length = 0;
};

/// Seed-and-extend over both orientations. Returns the candidate with the
/// fewest mismatches among every examined (seed, hit, orientation) triple
/// whose count stays within threshold(len); ties prefer the smaller refpos,
/// then the forward strand. N in the read never matches.
std::optional<SegmentMatch> align_segment(std::string_view bases, const KmerIndex& index,
                                          const RefSequence& ref, const AlignerConfig& config);

/// Whole-segment alignment with recursive halving on failure, stopping when
/// a half would drop below min_len.
MatchOutcome recursive_split_align(std::string_view bases, const KmerIndex& index,
                                   const RefSequence& ref, const AlignerConfig& config);

/// One outcome per read, block order.
std::vector<MatchOutcome> align_block(const ReadBlock& block, const KmerIndex& index,
                                      const RefSequence& ref, const AlignerConfig& config);

enum class MatchType : std::uint8_t { full = 0, mismatched = 1, split = 2, unmapped = 3 };

MatchType classify(const MatchOutcome& outcome);

/// Fraction of read bases covered by matched leaves.
double mapped_base_fraction(const std::vector<MatchOutcome>& outcomes);

/// Reassemble a read from its outcome against the reference; inverse of
/// alignment and the decoder's reconstruction path.
std::string replay_outcome(const MatchOutcome& outcome, const RefSequence& ref);

}  // namespace amgc

#endif
