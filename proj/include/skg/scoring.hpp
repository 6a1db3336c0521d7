#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "skg/docset.hpp"

namespace skg {

// Per-edge statistics bundle. `popularity` and `foreground_popularity` both
// carry the foreground overlap count; `background_popularity` is the
// candidate's count inside the background.
struct EdgeScore {
    double relatedness = 0.0;
    std::uint64_t popularity = 0;
    std::uint64_t foreground_popularity = 0;
    std::uint64_t background_popularity = 0;
    double raw_z = 0.0;
};

// Foreground/background sample for scoring. The foreground is clipped to
// the background on construction, so fg ⊆ bg always holds.
struct ScoringContext {
    DocSet fg;
    DocSet bg;

    static ScoringContext make(DocSet fg, DocSet bg);
};

// z statistic of observing `overlap` foreground hits for a candidate whose
// background probability is cand_bg / bg_size. Degenerate cases (empty
// foreground, candidate absent from or covering the whole background)
// return 0 by convention: chance-level, not an error.
double z_from_counts(std::uint64_t fg_size, std::uint64_t bg_size,
                     std::uint64_t overlap, std::uint64_t cand_bg);

// Maps z into [-1,1]: 2/(1+e^-z) - 1, i.e. tanh(z/2). Odd, strictly
// increasing, fixed point at 0.
double sigmoid_normalize(double z);

EdgeScore edge_from_counts(std::uint64_t fg_size, std::uint64_t bg_size,
                           std::uint64_t overlap, std::uint64_t cand_bg);

// Candidate sets are clipped to the background before any counting.
double z_score(const ScoringContext& ctx, const DocSet& candidate);
EdgeScore relatedness_score(const ScoringContext& ctx, const DocSet& candidate);
std::uint64_t popularity(const ScoringContext& ctx, const DocSet& candidate);

// Association-rule confidence of foreground -> candidate. Throws
// empty_foreground when |fg| = 0.
double consequent_confidence(const ScoringContext& ctx, const DocSet& candidate);
double consequent_from_counts(std::uint64_t fg_size, std::uint64_t overlap);

// Path bookkeeping for antecedent scoring: the starting node's documents
// (clipped to the background) and the running intersection of every
// intermediate node chosen since, also clipped. `running` is empty at the
// starting node itself.
struct PathState {
    DocSet start_fg;
    std::optional<DocSet> running;
    std::uint64_t bg_size = 0;
};

// Confidence of the rule {candidate, intermediates} -> start:
//   |candidate ∩ start_fg| / bg_size          at the starting node
//   |candidate ∩ start_fg| / |running|        deeper in the path
// Throws empty_denominator when the denominator is 0.
double antecedent_confidence(const PathState& state, const DocSet& candidate);

// Intersection of every doc set along a traversed path.
DocSet path_foreground(std::span<const DocSet> path);

enum class ScorerKind { relatedness, popularity, consequent, antecedent };

std::optional<ScorerKind> scorer_from_name(std::string_view name);
std::string_view scorer_name(ScorerKind kind);

} // namespace skg
