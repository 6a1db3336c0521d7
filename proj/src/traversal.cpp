#include "skg/traversal.hpp"

#include <algorithm>

#include "skg/query.hpp"

namespace skg {

namespace {

std::uint32_t spec_depth(const std::vector<NodeSpec>& specs) {
    std::uint32_t depth = 0;
    for (const auto& spec : specs) {
        depth = std::max(depth, 1 + spec_depth(spec.nodes));
    }
    return depth;
}

void validate_specs(const std::vector<NodeSpec>& specs) {
    for (const auto& spec : specs) {
        if (spec.type.empty()) {
            throw Error(ErrorKind::validation, "node type must be nonempty");
        }
        if (spec.min_count < 1) {
            throw Error(ErrorKind::validation, "min_count must be >= 1");
        }
        if (!spec.discover_values && spec.values.empty()) {
            throw Error(ErrorKind::validation,
                        "node needs discover_values or explicit values: " +
                            spec.type);
        }
        validate_specs(spec.nodes);
    }
}

struct Frame {
    DocSet fg;        // intersection of every doc set along the path
    PathState path;   // antecedent bookkeeping
};

class Traverser {
public:
    Traverser(const IndexSnapshot& snapshot, const DocSet& bg)
        : snapshot_(snapshot), bg_(bg), bg_is_all_(bg.size() == snapshot.doc_count()) {}

    std::vector<LevelResult> levels(const std::vector<NodeSpec>& specs,
                                    const Frame& frame) {
        std::vector<LevelResult> out;
        out.reserve(specs.size());
        for (const auto& spec : specs) out.push_back(level(spec, frame));
        return out;
    }

private:
    struct Candidate {
        std::string name;
        DocSet docs; // clipped to the background
        EdgeScore score;
        double rank = 0.0;
        std::optional<double> confidence;
    };

    // Background count for one term; the whole-corpus background answers
    // straight from the doc frequency.
    std::uint64_t bg_count(const FieldIndex& fi, std::uint32_t term_id,
                           DocSet* docs_out) {
        const PostingsList& list = fi.postings(term_id);
        if (bg_is_all_) {
            if (docs_out != nullptr) *docs_out = snapshot_.docset_of(list);
            return list.doc_frequency();
        }
        DocSet docs = set_intersect(snapshot_.docset_of(list), bg_);
        const std::uint64_t count = docs.size();
        if (docs_out != nullptr) *docs_out = std::move(docs);
        return count;
    }

    Candidate scored(const NodeSpec& spec, const Frame& frame, std::string name,
                     DocSet docs, std::uint64_t overlap) {
        Candidate c;
        c.name = std::move(name);
        c.score = edge_from_counts(frame.fg.size(), bg_.size(), overlap, docs.size());
        switch (spec.scorer) {
        case ScorerKind::relatedness:
            c.rank = c.score.relatedness;
            break;
        case ScorerKind::popularity:
            c.rank = static_cast<double>(c.score.popularity);
            break;
        case ScorerKind::consequent: {
            const std::uint64_t n = frame.fg.size();
            c.confidence = n == 0 ? 0.0
                                  : static_cast<double>(overlap) /
                                        static_cast<double>(n);
            c.rank = *c.confidence;
            break;
        }
        case ScorerKind::antecedent: {
            const std::uint64_t denom = frame.path.running
                                            ? frame.path.running->size()
                                            : frame.path.bg_size;
            c.confidence =
                denom == 0
                    ? 0.0
                    : static_cast<double>(
                          intersection_size(docs, frame.path.start_fg)) /
                          static_cast<double>(denom);
            c.rank = *c.confidence;
            break;
        }
        }
        c.docs = std::move(docs);
        return c;
    }

    LevelResult level(const NodeSpec& spec, const Frame& frame) {
        const FieldIndex& fi = snapshot_.field(spec.type);

        std::vector<Candidate> chosen;
        if (spec.discover_values) {
            auto counts = snapshot_.term_counts(spec.type, frame.fg);
            std::vector<Candidate> candidates;
            candidates.reserve(counts.size());
            for (const auto& tc : counts) {
                if (tc.count < spec.min_count) continue;
                DocSet docs;
                bg_count(fi, tc.term_id, &docs);
                candidates.push_back(scored(spec, frame, fi.term_name(tc.term_id),
                                            std::move(docs), tc.count));
            }
            std::sort(candidates.begin(), candidates.end(),
                      [](const Candidate& a, const Candidate& b) {
                          if (a.rank != b.rank) return a.rank > b.rank;
                          if (a.score.foreground_popularity !=
                              b.score.foreground_popularity) {
                              return a.score.foreground_popularity >
                                     b.score.foreground_popularity;
                          }
                          return a.name < b.name;
                      });
            if (candidates.size() > spec.limit) candidates.resize(spec.limit);
            chosen = std::move(candidates);
        }

        // Explicit values are scored and returned even when discovery would
        // have cut or missed them; duplicates of discovered values are not
        // repeated.
        for (const auto& raw : spec.values) {
            std::string name;
            DocSet docs = value_docset(fi, raw, name);
            const bool already =
                std::any_of(chosen.begin(), chosen.end(),
                            [&](const Candidate& c) { return c.name == name; });
            if (already) continue;
            docs = set_intersect(docs, bg_);
            const std::uint64_t overlap = intersection_size(frame.fg, docs);
            chosen.push_back(scored(spec, frame, std::move(name), std::move(docs),
                                    overlap));
        }

        LevelResult result;
        result.type = spec.type;
        result.values.reserve(chosen.size());
        for (auto& c : chosen) {
            ScoredValue value;
            value.name = std::move(c.name);
            value.score = c.score;
            value.confidence = c.confidence;
            if (!spec.nodes.empty()) {
                Frame child;
                child.fg = set_intersect(frame.fg, c.docs);
                child.path.start_fg = frame.path.start_fg;
                child.path.bg_size = frame.path.bg_size;
                child.path.running = frame.path.running
                                         ? set_intersect(*frame.path.running, c.docs)
                                         : c.docs;
                value.nodes = levels(spec.nodes, child);
            }
            result.values.push_back(std::move(value));
        }
        return result;
    }

    // Resolves one explicit value to its stored term + doc set. Analyzed
    // fields take multi-token values through phrase lookup.
    DocSet value_docset(const FieldIndex& fi, const std::string& raw,
                        std::string& name_out) {
        if (fi.schema().kind == FieldKind::exact_string) {
            name_out = fold_case(raw);
            return snapshot_.term_docset(fi.schema().name, name_out);
        }
        auto tokens = analyze_text(raw, FieldKind::analyzed_text);
        if (tokens.empty()) {
            name_out = fold_case(raw);
            return DocSet::empty_set(snapshot_.doc_count());
        }
        std::vector<std::string> terms;
        terms.reserve(tokens.size());
        for (auto& t : tokens) terms.push_back(std::move(t.term));
        name_out = terms.front();
        for (std::size_t i = 1; i < terms.size(); ++i) {
            name_out += ' ';
            name_out += terms[i];
        }
        if (terms.size() == 1) {
            return snapshot_.term_docset(fi.schema().name, terms.front());
        }
        return snapshot_.phrase_docset(fi.schema().name, terms);
    }

    const IndexSnapshot& snapshot_;
    const DocSet& bg_;
    bool bg_is_all_;
};

} // namespace

void validate_request(const TraversalRequest& request,
                      const TraversalOptions& options) {
    if (request.starting_node.empty()) {
        throw Error(ErrorKind::validation, "starting_node must be nonempty");
    }
    for (const auto& q : request.starting_node) {
        if (q.empty()) {
            throw Error(ErrorKind::validation, "starting_node entries must be nonempty");
        }
    }
    validate_specs(request.nodes);
    const std::uint32_t depth = spec_depth(request.nodes);
    if (depth > options.depth_cap) {
        throw Error(ErrorKind::depth_exceeded,
                    "request depth " + std::to_string(depth) +
                        " exceeds cap " + std::to_string(options.depth_cap));
    }
}

TraversalResponse traverse(const IndexSnapshot& snapshot,
                           const TraversalRequest& request,
                           const TraversalOptions& options) {
    validate_request(request, options);

    DocSet bg = request.background.empty()
                    ? snapshot.all_docs()
                    : eval_query(parse_query(request.background), snapshot);

    std::vector<QueryExpr> parts;
    parts.reserve(request.starting_node.size());
    for (const auto& q : request.starting_node) parts.push_back(parse_query(q));
    DocSet start = eval_query(QueryExpr::and_of(std::move(parts)), snapshot);
    start = set_intersect(start, bg);

    Frame frame;
    frame.fg = start;
    frame.path.start_fg = std::move(start);
    frame.path.bg_size = bg.size();

    Traverser traverser(snapshot, bg);
    TraversalResponse response;
    response.nodes = traverser.levels(request.nodes, frame);
    return response;
}

} // namespace skg
