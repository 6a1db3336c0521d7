#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "skg/docset.hpp"
#include "skg/index.hpp"

namespace skg {

// Query expression tree. Leaves hold the raw (unanalyzed) text; it is run
// through the target field's analyzer at evaluation time, so `skills:Java`
// matches the indexed term `java`.
struct QueryExpr {
    enum class Kind { Term, Phrase, And, Or, Not, All };

    Kind kind = Kind::All;
    std::string field;               // Term / Phrase
    std::string text;                // Term / Phrase, raw
    std::vector<QueryExpr> children; // And / Or / Not

    static QueryExpr term(std::string field, std::string text);
    static QueryExpr phrase(std::string field, std::string text);
    static QueryExpr all();
    // Single-element And/Or collapse to the element itself.
    static QueryExpr and_of(std::vector<QueryExpr> children);
    static QueryExpr or_of(std::vector<QueryExpr> children);
    static QueryExpr not_of(QueryExpr child);

    bool operator==(const QueryExpr&) const = default;
};

// Grammar: `field:term`, `field:"a phrase"`, `field:(...)` scoping bare
// terms to the field, infix AND / OR, prefix NOT, parentheses, and `*:*`
// for the whole corpus. Operators are uppercase keywords. Terms outside a
// field scope are rejected; there is no default field.
QueryExpr parse_query(std::string_view text);

// Canonical form; parse_query(print_query(e)) == e for parser output.
std::string print_query(const QueryExpr& expr);

DocSet eval_query(const QueryExpr& expr, const IndexSnapshot& snapshot);

struct MaterializedNode {
    QueryExpr expr;
    DocSet docs;
    std::string label;
};

MaterializedNode materialize(const QueryExpr& expr, const IndexSnapshot& snapshot);

} // namespace skg
