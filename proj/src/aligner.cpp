#include "amgc/aligner.hpp"

#include <algorithm>
#include <cmath>

#include "amgc/dna.hpp"
#include "amgc/errors.hpp"
#include "amgc/kernels.hpp"

namespace amgc {

std::uint32_t AlignerConfig::threshold(std::uint32_t len) const {
    double t = std::ceil(static_cast<double>(len) * mismatch_rate - 1e-9);
    return t <= 0 ? 0 : static_cast<std::uint32_t>(t);
}

void AlignerConfig::validate() const {
    if (k < 2 || k > 14) throw ConfigError("k must be in [2, 14]");
    if (min_len < k) throw ConfigError("min-len must be >= k (segments below k cannot seed)");
    if (num_seeds < 1) throw ConfigError("need at least one seed offset");
    if (max_candidates_per_seed < 1) throw ConfigError("need at least one candidate per seed");
    if (mismatch_rate < 0.0 || mismatch_rate > 1.0)
        throw ConfigError("mismatch-rate must be in [0, 1]");
}

namespace {

struct Candidate {
    std::uint32_t count = 0;
    std::uint32_t refpos = 0;
    Strand strand = Strand::forward;
};

bool better(const Candidate& a, const Candidate& b) {
    if (a.count != b.count) return a.count < b.count;
    if (a.refpos != b.refpos) return a.refpos < b.refpos;
    return a.strand == Strand::forward && b.strand == Strand::reverse_complement;
}

void seed_offsets(std::uint32_t len, const AlignerConfig& cfg, std::vector<std::uint32_t>& out) {
    out.clear();
    const std::uint32_t span = len - cfg.k;
    if (cfg.num_seeds == 1 || span == 0) {
        out.push_back(0);
        return;
    }
    for (std::uint32_t i = 0; i < cfg.num_seeds; ++i) {
        std::uint32_t off = static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(i) * span) / (cfg.num_seeds - 1));
        if (out.empty() || out.back() != off) out.push_back(off);
    }
}

}  // namespace

std::optional<SegmentMatch> align_segment(std::string_view bases, const KmerIndex& index,
                                          const RefSequence& ref, const AlignerConfig& config) {
    const std::uint32_t len = static_cast<std::uint32_t>(bases.size());
    if (len < config.k || ref.size() < len) return std::nullopt;

    const std::uint32_t thr = config.threshold(len);
    const auto& kern = kernels::active();

    std::optional<Candidate> best;
    std::string oriented_buf;
    std::vector<std::uint32_t> offsets;
    std::vector<std::uint32_t> seen;
    std::string best_oriented;

    for (Strand strand : {Strand::forward, Strand::reverse_complement}) {
        std::string_view oriented;
        if (strand == Strand::forward) {
            oriented = bases;
        } else {
            oriented_buf = dna::reverse_complement(bases);
            oriented = oriented_buf;
        }

        seed_offsets(len, config, offsets);
        seen.clear();
        for (std::uint32_t off : offsets) {
            auto code = kmer_code(oriented.substr(off, config.k));
            if (!code) continue;  // N inside the seed window
            auto hits = index.lookup(*code);
            std::size_t examined = std::min<std::size_t>(hits.size(), config.max_candidates_per_seed);
            for (std::size_t h = 0; h < examined; ++h) {
                if (hits[h] < off) continue;
                std::uint32_t cand = hits[h] - off;
                if (static_cast<std::uint64_t>(cand) + len > ref.size()) continue;
                if (std::find(seen.begin(), seen.end(), cand) != seen.end()) continue;
                seen.push_back(cand);

                std::uint32_t limit = best ? std::min(thr, best->count) : thr;
                std::size_t count = kern.count_limit(oriented.data(), ref.bases() + cand, len, limit);
                if (count > limit) continue;

                Candidate c{static_cast<std::uint32_t>(count), cand, strand};
                if (!best || better(c, *best)) {
                    best = c;
                    best_oriented.assign(oriented);
                }
            }
        }
    }

    if (!best) return std::nullopt;

    SegmentMatch match;
    match.refpos = best->refpos;
    match.strand = best->strand;
    kernels::active().scan(best_oriented.data(), ref.bases() + best->refpos, len, match.mispos);
    match.misvalues.reserve(match.mispos.size());
    for (std::uint32_t p : match.mispos) match.misvalues.push_back(best_oriented[p]);
    return match;
}

namespace {

std::unique_ptr<MatchNode> align_node(std::string_view bases, const KmerIndex& index,
                                      const RefSequence& ref, const AlignerConfig& config) {
    auto node = std::make_unique<MatchNode>();
    node->length = static_cast<std::uint32_t>(bases.size());

    if (auto m = align_segment(bases, index, ref, config)) {
        node->kind = m->mispos.empty() ? NodeKind::full : NodeKind::mismatched;
        node->match = std::move(*m);
        return node;
    }
    if (config.split_permitted(node->length)) {
        node->kind = NodeKind::split;
        std::uint32_t half = node->length / 2;
        node->left = align_node(bases.substr(0, half), index, ref, config);
        node->right = align_node(bases.substr(half), index, ref, config);
        return node;
    }
    node->kind = NodeKind::unmapped;
    node->unmapped_bases.assign(bases);
    return node;
}

}  // namespace

MatchOutcome recursive_split_align(std::string_view bases, const KmerIndex& index,
                                   const RefSequence& ref, const AlignerConfig& config) {
    MatchOutcome outcome;
    outcome.read_length = static_cast<std::uint32_t>(bases.size());
    outcome.root = align_node(bases, index, ref, config);
    return outcome;
}

std::vector<MatchOutcome> align_block(const ReadBlock& block, const KmerIndex& index,
                                      const RefSequence& ref, const AlignerConfig& config) {
    std::vector<MatchOutcome> outcomes;
    outcomes.reserve(block.reads.size());
    for (const auto& read : block.reads)
        outcomes.push_back(recursive_split_align(read.bases, index, ref, config));
    return outcomes;
}

MatchType classify(const MatchOutcome& outcome) {
    switch (outcome.root->kind) {
        case NodeKind::full: return MatchType::full;
        case NodeKind::mismatched: return MatchType::mismatched;
        case NodeKind::split: return MatchType::split;
        default: return MatchType::unmapped;
    }
}

namespace {

void accumulate_mapped(const MatchNode& node, std::uint64_t& mapped) {
    if (node.is_match()) {
        mapped += node.length;
    } else if (node.kind == NodeKind::split) {
        accumulate_mapped(*node.left, mapped);
        accumulate_mapped(*node.right, mapped);
    }
}

void replay_node(const MatchNode& node, const RefSequence& ref, std::string& out) {
    switch (node.kind) {
        case NodeKind::full:
        case NodeKind::mismatched: {
            std::string oriented(ref.bases() + node.match.refpos, node.length);
            for (std::size_t i = 0; i < node.match.mispos.size(); ++i)
                oriented[node.match.mispos[i]] = node.match.misvalues[i];
            if (node.match.strand == Strand::reverse_complement)
                out += dna::reverse_complement(oriented);
            else
                out += oriented;
            break;
        }
        case NodeKind::split:
            replay_node(*node.left, ref, out);
            replay_node(*node.right, ref, out);
            break;
        case NodeKind::unmapped:
            out += node.unmapped_bases;
            break;
    }
}

}  // namespace

double mapped_base_fraction(const std::vector<MatchOutcome>& outcomes) {
    std::uint64_t mapped = 0, total = 0;
    for (const auto& o : outcomes) {
        total += o.read_length;
        accumulate_mapped(*o.root, mapped);
    }
    return total == 0 ? 0.0 : static_cast<double>(mapped) / static_cast<double>(total);
}

std::string replay_outcome(const MatchOutcome& outcome, const RefSequence& ref) {
    std::string out;
    out.reserve(outcome.read_length);
    replay_node(*outcome.root, ref, out);
    return out;
}

}  // namespace amgc
