#include "skg/tools.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "skg/error.hpp"

namespace skg {

namespace {

// Query-style resolution of a bare term: exact fields take the folded
// value whole, analyzed fields go through term/phrase lookup.
DocSet resolve_term(const IndexSnapshot& snapshot, std::string_view field,
                    const std::string& raw) {
    return eval_query(QueryExpr::phrase(std::string(field), raw), snapshot);
}

} // namespace

std::vector<CoTermResult> cleanse_pairs(const IndexSnapshot& snapshot,
                                        std::span<const CoTermPair> pairs,
                                        std::string_view field,
                                        double threshold) {
    const DocSet all = snapshot.all_docs();
    std::vector<CoTermResult> out;
    out.reserve(pairs.size());
    for (const auto& pair : pairs) {
        CoTermResult r;
        r.term_a = pair.term_a;
        r.term_b = pair.term_b;
        const DocSet a = resolve_term(snapshot, field, pair.term_a);
        const DocSet b = resolve_term(snapshot, field, pair.term_b);
        r.unknown = a.empty() || b.empty();
        const auto ctx = ScoringContext::make(a, all);
        r.relatedness = relatedness_score(ctx, b).relatedness;
        r.blacklisted = r.relatedness < threshold;
        out.push_back(std::move(r));
    }
    return out;
}

QueryExpr tfidf_foreground(const IndexSnapshot& snapshot, std::string_view field,
                           std::span<const std::string> doc_terms,
                           std::uint32_t k) {
    const FieldIndex& fi = snapshot.field(field);
    if (k == 0) {
        throw Error(ErrorKind::validation, "tfidf_foreground needs k >= 1");
    }

    // Occurrence counts of analyzed terms across the document's inputs.
    std::map<std::string, std::uint32_t> tf;
    for (const auto& raw : doc_terms) {
        for (const auto& tok : analyze_text(raw, fi.schema().kind)) {
            ++tf[tok.term];
        }
    }
    if (tf.empty()) {
        throw Error(ErrorKind::validation, "no terms to score");
    }

    const double corpus = std::max<double>(1.0, snapshot.doc_count());
    std::vector<std::pair<double, std::string>> scored;
    scored.reserve(tf.size());
    for (const auto& [term, count] : tf) {
        const PostingsList* list = fi.postings(term);
        const double df = std::max<std::uint32_t>(
            1, list != nullptr ? list->doc_frequency() : 0);
        scored.emplace_back(count * std::log(corpus / df), term);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    if (scored.size() > k) scored.resize(k);

    std::vector<QueryExpr> leaves;
    leaves.reserve(scored.size());
    for (auto& [score, term] : scored) {
        leaves.push_back(QueryExpr::term(std::string(field), std::move(term)));
    }
    return QueryExpr::or_of(std::move(leaves));
}

SummaryResult summarize_document(const IndexSnapshot& snapshot,
                                 std::span<const std::string> phrases,
                                 std::string_view field,
                                 const std::string& foreground_query,
                                 std::uint32_t tfidf_k) {
    SummaryResult result;
    if (phrases.empty()) return result;

    QueryExpr fg_expr;
    if (!foreground_query.empty()) {
        fg_expr = parse_query(foreground_query);
    } else {
        fg_expr = tfidf_foreground(snapshot, field, phrases, tfidf_k);
    }
    result.foreground_label = print_query(fg_expr);

    const DocSet all = snapshot.all_docs();
    const DocSet fg = eval_query(fg_expr, snapshot);
    result.empty_foreground = fg.empty();
    const auto ctx = ScoringContext::make(fg, all);

    result.entries.reserve(phrases.size());
    for (const auto& phrase : phrases) {
        const DocSet candidate = resolve_term(snapshot, field, phrase);
        result.entries.push_back({phrase, relatedness_score(ctx, candidate).relatedness});
    }
    std::stable_sort(result.entries.begin(), result.entries.end(),
                     [](const SummaryEntry& a, const SummaryEntry& b) {
                         return a.relatedness > b.relatedness;
                     });
    return result;
}

namespace {

// Splits "skills_2" into ("skills_", 2). Returns false when the field has
// no numeric recency suffix.
bool split_recency(const std::string& field, std::string& stem, std::uint32_t& index) {
    const auto pos = field.rfind('_');
    if (pos == std::string::npos || pos + 1 >= field.size()) return false;
    std::uint32_t value = 0;
    for (std::size_t i = pos + 1; i < field.size(); ++i) {
        const char c = field[i];
        if (c < '0' || c > '9') return false;
        value = value * 10 + static_cast<std::uint32_t>(c - '0');
    }
    stem = field.substr(0, pos + 1);
    index = value;
    return true;
}

// Rewrites every recency-suffixed leaf field forward by `shift` entries.
// Returns false when any shifted field is missing from the schema.
bool shift_query(const QueryExpr& expr, const Schema& schema, std::uint32_t shift,
                 QueryExpr& out) {
    out = expr;
    if (expr.kind == QueryExpr::Kind::Term || expr.kind == QueryExpr::Kind::Phrase) {
        std::string stem;
        std::uint32_t index = 0;
        if (!split_recency(expr.field, stem, index)) return true; // untouched
        const std::string shifted = stem + std::to_string(index + shift);
        if (schema.find(shifted) == nullptr) return false;
        out.field = shifted;
        return true;
    }
    for (std::size_t i = 0; i < expr.children.size(); ++i) {
        if (!shift_query(expr.children[i], schema, shift, out.children[i])) {
            return false;
        }
    }
    return true;
}

bool has_recency_leaf(const QueryExpr& expr) {
    if (expr.kind == QueryExpr::Kind::Term || expr.kind == QueryExpr::Kind::Phrase) {
        std::string stem;
        std::uint32_t index = 0;
        return split_recency(expr.field, stem, index);
    }
    return std::any_of(expr.children.begin(), expr.children.end(), has_recency_leaf);
}

} // namespace

TraversalResponse predict(const IndexSnapshot& snapshot,
                          const std::string& start_query,
                          const std::string& target_field, ScorerKind scorer,
                          std::uint32_t min_count, std::uint32_t limit,
                          const TraversalOptions& options) {
    QueryExpr start = parse_query(start_query);

    if (scorer == ScorerKind::antecedent && has_recency_leaf(start)) {
        // Isolate progression: drop documents that already matched the
        // query in earlier (less recent) history entries.
        std::vector<QueryExpr> earlier;
        for (std::uint32_t shift = 1;; ++shift) {
            QueryExpr shifted;
            if (!shift_query(start, snapshot.schema(), shift, shifted)) break;
            earlier.push_back(std::move(shifted));
        }
        if (!earlier.empty()) {
            start = QueryExpr::and_of(
                {start, QueryExpr::not_of(QueryExpr::or_of(std::move(earlier)))});
        }
    }

    TraversalRequest request;
    request.starting_node.push_back(print_query(start));
    NodeSpec spec;
    spec.type = target_field;
    spec.limit = limit;
    spec.discover_values = true;
    spec.min_count = min_count;
    spec.scorer = scorer;
    request.nodes.push_back(std::move(spec));
    return traverse(snapshot, request, options);
}

} // namespace skg
