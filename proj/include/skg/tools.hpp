#pragma once

#include <span>
#include <string>
#include <vector>

#include "skg/query.hpp"
#include "skg/traversal.hpp"

namespace skg {

struct CoTermPair {
    std::string term_a;
    std::string term_b;
};

struct CoTermResult {
    std::string term_a;
    std::string term_b;
    double relatedness = 0.0;
    bool blacklisted = false;
    bool unknown = false; // either side matched no documents
};

// Scores each pair by the relatedness of term_b's documents against
// term_a's documents (whole corpus as background) and blacklists pairs
// below `threshold`. Terms are analyzed like queries; multi-word terms
// become phrases. Output order matches input order.
std::vector<CoTermResult> cleanse_pairs(const IndexSnapshot& snapshot,
                                        std::span<const CoTermPair> pairs,
                                        std::string_view field,
                                        double threshold);

struct SummaryEntry {
    std::string phrase;
    double relatedness = 0.0;
};

struct SummaryResult {
    std::vector<SummaryEntry> entries; // relatedness descending
    std::string foreground_label;      // query the foreground came from
    bool empty_foreground = false;     // all scores forced to 0
};

// Scores each phrase (resolved in `field`) against a foreground: the given
// query when nonempty, otherwise an Or of the top-k tf-idf terms drawn
// from the phrases themselves.
SummaryResult summarize_document(const IndexSnapshot& snapshot,
                                 std::span<const std::string> phrases,
                                 std::string_view field,
                                 const std::string& foreground_query,
                                 std::uint32_t tfidf_k);

// Or of the top-k corpus-wise interesting terms of a document: score
// tf * ln(|D| / df) with df floored at 1, ties broken by term ascending.
QueryExpr tfidf_foreground(const IndexSnapshot& snapshot, std::string_view field,
                           std::span<const std::string> doc_terms,
                           std::uint32_t k);

// Single-level traversal from `start_query` into `target_field` with an
// association-rule scorer. Antecedent runs exclude documents matching the
// start query at earlier recency (fields suffixed _2, _3, ... relative to
// the query's own suffixes).
TraversalResponse predict(const IndexSnapshot& snapshot,
                          const std::string& start_query,
                          const std::string& target_field, ScorerKind scorer,
                          std::uint32_t min_count, std::uint32_t limit,
                          const TraversalOptions& options = {});

} // namespace skg
