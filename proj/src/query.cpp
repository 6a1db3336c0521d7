#include "skg/query.hpp"

#include <algorithm>

#include "skg/error.hpp"

namespace skg {

QueryExpr QueryExpr::term(std::string field, std::string text) {
    QueryExpr e;
    e.kind = Kind::Term;
    e.field = std::move(field);
    e.text = std::move(text);
    return e;
}

QueryExpr QueryExpr::phrase(std::string field, std::string text) {
    QueryExpr e;
    e.kind = Kind::Phrase;
    e.field = std::move(field);
    e.text = std::move(text);
    return e;
}

QueryExpr QueryExpr::all() { return {}; }

QueryExpr QueryExpr::and_of(std::vector<QueryExpr> children) {
    if (children.empty()) {
        throw Error(ErrorKind::validation, "And requires at least one operand");
    }
    if (children.size() == 1) return std::move(children.front());
    QueryExpr e;
    e.kind = Kind::And;
    e.children = std::move(children);
    return e;
}

QueryExpr QueryExpr::or_of(std::vector<QueryExpr> children) {
    if (children.empty()) {
        throw Error(ErrorKind::validation, "Or requires at least one operand");
    }
    if (children.size() == 1) return std::move(children.front());
    QueryExpr e;
    e.kind = Kind::Or;
    e.children = std::move(children);
    return e;
}

QueryExpr QueryExpr::not_of(QueryExpr child) {
    QueryExpr e;
    e.kind = Kind::Not;
    e.children.push_back(std::move(child));
    return e;
}

namespace {

struct QueryToken {
    enum class Type { Word, Quoted, LParen, RParen, Colon, End };
    Type type = Type::End;
    std::string text;
    std::size_t position = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view input) : input_(input) { advance(); }

    const QueryToken& peek() const { return current_; }
    QueryToken take() {
        QueryToken t = current_;
        advance();
        return t;
    }

private:
    static bool is_word_char(char c) {
        return c != ' ' && c != '\t' && c != '\r' && c != '\n' && c != '(' &&
               c != ')' && c != ':' && c != '"';
    }

    void advance() {
        while (pos_ < input_.size() &&
               (input_[pos_] == ' ' || input_[pos_] == '\t' ||
                input_[pos_] == '\r' || input_[pos_] == '\n')) {
            ++pos_;
        }
        current_.position = pos_;
        if (pos_ >= input_.size()) {
            current_.type = QueryToken::Type::End;
            current_.text.clear();
            return;
        }
        const char c = input_[pos_];
        if (c == '(') {
            current_ = {QueryToken::Type::LParen, "(", pos_++};
        } else if (c == ')') {
            current_ = {QueryToken::Type::RParen, ")", pos_++};
        } else if (c == ':') {
            current_ = {QueryToken::Type::Colon, ":", pos_++};
        } else if (c == '"') {
            const std::size_t start = pos_++;
            std::size_t end = input_.find('"', pos_);
            if (end == std::string_view::npos) {
                throw ParseError(start, "unterminated quote");
            }
            current_ = {QueryToken::Type::Quoted,
                        std::string(input_.substr(pos_, end - pos_)), start};
            pos_ = end + 1;
        } else {
            const std::size_t start = pos_;
            while (pos_ < input_.size() && is_word_char(input_[pos_])) ++pos_;
            current_ = {QueryToken::Type::Word,
                        std::string(input_.substr(start, pos_ - start)), start};
        }
    }

    std::string_view input_;
    std::size_t pos_ = 0;
    QueryToken current_;
};

class Parser {
public:
    explicit Parser(std::string_view input) : lexer_(input) {}

    QueryExpr parse() {
        QueryExpr e = parse_or("");
        const auto& t = lexer_.peek();
        if (t.type != QueryToken::Type::End) {
            throw ParseError(t.position, "unexpected trailing input");
        }
        return e;
    }

private:
    static bool is_operator(const QueryToken& t, std::string_view name) {
        return t.type == QueryToken::Type::Word && t.text == name;
    }

    QueryExpr parse_or(const std::string& field_scope) {
        std::vector<QueryExpr> terms;
        terms.push_back(parse_and(field_scope));
        while (is_operator(lexer_.peek(), "OR")) {
            lexer_.take();
            terms.push_back(parse_and(field_scope));
        }
        return QueryExpr::or_of(std::move(terms));
    }

    QueryExpr parse_and(const std::string& field_scope) {
        std::vector<QueryExpr> terms;
        terms.push_back(parse_not(field_scope));
        while (is_operator(lexer_.peek(), "AND")) {
            lexer_.take();
            terms.push_back(parse_not(field_scope));
        }
        return QueryExpr::and_of(std::move(terms));
    }

    QueryExpr parse_not(const std::string& field_scope) {
        if (is_operator(lexer_.peek(), "NOT")) {
            lexer_.take();
            return QueryExpr::not_of(parse_not(field_scope));
        }
        return parse_primary(field_scope);
    }

    QueryExpr parse_primary(const std::string& field_scope) {
        const QueryToken t = lexer_.take();
        switch (t.type) {
        case QueryToken::Type::LParen: {
            QueryExpr e = parse_or(field_scope);
            expect_rparen();
            return e;
        }
        case QueryToken::Type::Quoted:
            if (field_scope.empty()) {
                throw ParseError(t.position, "phrase without a field");
            }
            return QueryExpr::phrase(field_scope, t.text);
        case QueryToken::Type::Word:
            if (t.text == "AND" || t.text == "OR" || t.text == "NOT") {
                throw ParseError(t.position, "operator needs an operand");
            }
            if (lexer_.peek().type == QueryToken::Type::Colon) {
                lexer_.take();
                return parse_field_rhs(t);
            }
            if (field_scope.empty()) {
                throw ParseError(t.position,
                                 "unfielded term (no default field): " + t.text);
            }
            return QueryExpr::term(field_scope, t.text);
        case QueryToken::Type::End:
            throw ParseError(t.position, "unexpected end of query");
        default:
            throw ParseError(t.position, "unexpected token: " + t.text);
        }
    }

    QueryExpr parse_field_rhs(const QueryToken& field) {
        const QueryToken t = lexer_.take();
        switch (t.type) {
        case QueryToken::Type::Word:
            if (field.text == "*" && t.text == "*") return QueryExpr::all();
            if (t.text == "AND" || t.text == "OR" || t.text == "NOT") {
                throw ParseError(t.position, "operator cannot be a term");
            }
            return QueryExpr::term(field.text, t.text);
        case QueryToken::Type::Quoted:
            return QueryExpr::phrase(field.text, t.text);
        case QueryToken::Type::LParen: {
            QueryExpr e = parse_or(field.text);
            expect_rparen();
            return e;
        }
        default:
            throw ParseError(t.position, "expected term, phrase, or group after ':'");
        }
    }

    void expect_rparen() {
        const QueryToken t = lexer_.take();
        if (t.type != QueryToken::Type::RParen) {
            throw ParseError(t.position, "expected ')'");
        }
    }

    Lexer lexer_;
};

void print_into(const QueryExpr& e, std::string& out) {
    switch (e.kind) {
    case QueryExpr::Kind::All:
        out += "*:*";
        return;
    case QueryExpr::Kind::Term:
        out += e.field;
        out += ':';
        out += e.text;
        return;
    case QueryExpr::Kind::Phrase:
        out += e.field;
        out += ":\"";
        out += e.text;
        out += '"';
        return;
    case QueryExpr::Kind::Not:
        out += "NOT ";
        print_into(e.children.front(), out);
        return;
    case QueryExpr::Kind::And:
    case QueryExpr::Kind::Or: {
        const char* op = e.kind == QueryExpr::Kind::And ? " AND " : " OR ";
        out += '(';
        for (std::size_t i = 0; i < e.children.size(); ++i) {
            if (i != 0) out += op;
            print_into(e.children[i], out);
        }
        out += ')';
        return;
    }
    }
}

DocSet eval_leaf(const QueryExpr& e, const IndexSnapshot& snapshot) {
    const FieldIndex& fi = snapshot.field(e.field);
    if (fi.schema().kind == FieldKind::exact_string) {
        // Whole value, lowercased, regardless of Term/Phrase spelling.
        return snapshot.term_docset(e.field, fold_case(e.text));
    }
    auto tokens = analyze_text(e.text, FieldKind::analyzed_text);
    if (tokens.empty()) return DocSet::empty_set(snapshot.doc_count());
    if (tokens.size() == 1) return snapshot.term_docset(e.field, tokens[0].term);
    std::vector<std::string> terms;
    terms.reserve(tokens.size());
    for (auto& t : tokens) terms.push_back(std::move(t.term));
    return snapshot.phrase_docset(e.field, terms);
}

} // namespace

QueryExpr parse_query(std::string_view text) { return Parser(text).parse(); }

std::string print_query(const QueryExpr& expr) {
    std::string out;
    print_into(expr, out);
    return out;
}

DocSet eval_query(const QueryExpr& expr, const IndexSnapshot& snapshot) {
    switch (expr.kind) {
    case QueryExpr::Kind::All:
        return snapshot.all_docs();
    case QueryExpr::Kind::Term:
    case QueryExpr::Kind::Phrase:
        return eval_leaf(expr, snapshot);
    case QueryExpr::Kind::Not:
        return eval_query(expr.children.front(), snapshot).complement();
    case QueryExpr::Kind::And: {
        if (expr.children.empty()) {
            throw Error(ErrorKind::validation, "And requires at least one operand");
        }
        std::vector<DocSet> sets;
        sets.reserve(expr.children.size());
        for (const auto& c : expr.children) sets.push_back(eval_query(c, snapshot));
        // Smallest first keeps intermediate results small.
        std::sort(sets.begin(), sets.end(),
                  [](const DocSet& a, const DocSet& b) { return a.size() < b.size(); });
        DocSet acc = std::move(sets.front());
        for (std::size_t i = 1; i < sets.size(); ++i) {
            acc = set_intersect(acc, sets[i]);
            if (acc.empty()) break;
        }
        return acc;
    }
    case QueryExpr::Kind::Or: {
        if (expr.children.empty()) {
            throw Error(ErrorKind::validation, "Or requires at least one operand");
        }
        DocSet acc = eval_query(expr.children.front(), snapshot);
        for (std::size_t i = 1; i < expr.children.size(); ++i) {
            acc = set_union(acc, eval_query(expr.children[i], snapshot));
        }
        return acc;
    }
    }
    throw Error(ErrorKind::validation, "unreachable query kind");
}

MaterializedNode materialize(const QueryExpr& expr, const IndexSnapshot& snapshot) {
    return {expr, eval_query(expr, snapshot), print_query(expr)};
}

} // namespace skg
