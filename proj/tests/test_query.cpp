#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "skg/query.hpp"

using namespace skg;

namespace {

// Brute-force per-document predicate evaluation.
bool brute_matches(const oracle::OracleCorpus& corpus, oracle::DocIdx d,
                   const QueryExpr& e) {
    switch (e.kind) {
    case QueryExpr::Kind::All:
        return true;
    case QueryExpr::Kind::Term:
    case QueryExpr::Kind::Phrase: {
        auto [name, docs] = oracle::brute_value_docs(corpus, e.field, e.text);
        return docs.count(d) != 0;
    }
    case QueryExpr::Kind::Not:
        return !brute_matches(corpus, d, e.children.front());
    case QueryExpr::Kind::And:
        for (const auto& c : e.children) {
            if (!brute_matches(corpus, d, c)) return false;
        }
        return true;
    case QueryExpr::Kind::Or:
        for (const auto& c : e.children) {
            if (brute_matches(corpus, d, c)) return true;
        }
        return false;
    }
    return false;
}

oracle::DocIdxSet brute_eval(const oracle::OracleCorpus& corpus, const QueryExpr& e) {
    oracle::DocIdxSet out;
    for (oracle::DocIdx d = 0; d < corpus.docs.size(); ++d) {
        if (brute_matches(corpus, d, e)) out.insert(d);
    }
    return out;
}

QueryExpr random_expr(std::mt19937& rng, int depth) {
    const char* skill_terms[] = {"s0", "s1", "s2", "s3", "s4"};
    const char* title_terms[] = {"t0", "t1", "t2", "t3"};
    const char* words[] = {"alpha", "beta", "gamma", "delta", "epsilon"};
    const int pick = depth <= 0 ? static_cast<int>(rng() % 2)
                                : static_cast<int>(rng() % 6);
    switch (pick) {
    case 0: { // term leaf
        const int f = static_cast<int>(rng() % 3);
        if (f == 0) return QueryExpr::term("skills", skill_terms[rng() % 5]);
        if (f == 1) return QueryExpr::term("title", title_terms[rng() % 4]);
        return QueryExpr::term("keywords", words[rng() % 5]);
    }
    case 1: { // phrase leaf over the text field
        std::string text = words[rng() % 5];
        const int extra = static_cast<int>(rng() % 2);
        for (int i = 0; i < extra; ++i) text += std::string(" ") + words[rng() % 5];
        return QueryExpr::phrase("keywords", text);
    }
    case 2:
        return QueryExpr::not_of(random_expr(rng, depth - 1));
    case 3:
        return QueryExpr::all();
    case 4: {
        std::vector<QueryExpr> kids;
        const int n = 2 + static_cast<int>(rng() % 2);
        for (int i = 0; i < n; ++i) kids.push_back(random_expr(rng, depth - 1));
        return QueryExpr::and_of(std::move(kids));
    }
    default: {
        std::vector<QueryExpr> kids;
        const int n = 2 + static_cast<int>(rng() % 2);
        for (int i = 0; i < n; ++i) kids.push_back(random_expr(rng, depth - 1));
        return QueryExpr::or_of(std::move(kids));
    }
    }
}

} // namespace

TEST_CASE("parsing the documented grammar") {
    QueryExpr e = parse_query("keywords:\"data science\"");
    CHECK(e.kind == QueryExpr::Kind::Phrase);
    CHECK(e.field == "keywords");
    CHECK(e.text == "data science");
    auto tokens = analyze_text(e.text, FieldKind::analyzed_text);
    REQUIRE(tokens.size() == 2);
    CHECK(tokens[0].term == "data");
    CHECK(tokens[1].term == "science");

    e = parse_query("skills:java AND skills:spark");
    REQUIRE(e.kind == QueryExpr::Kind::And);
    REQUIRE(e.children.size() == 2);
    CHECK(e.children[0] == QueryExpr::term("skills", "java"));
    CHECK(e.children[1] == QueryExpr::term("skills", "spark"));

    e = parse_query("NOT skills:java OR (title:nurse AND skills:trauma)");
    REQUIRE(e.kind == QueryExpr::Kind::Or);
    CHECK(e.children[0].kind == QueryExpr::Kind::Not);
    CHECK(e.children[1].kind == QueryExpr::Kind::And);

    // Field-scoped groups give bare terms a field.
    e = parse_query("skills:(java OR spark)");
    REQUIRE(e.kind == QueryExpr::Kind::Or);
    CHECK(e.children[0] == QueryExpr::term("skills", "java"));

    CHECK(parse_query("*:*") == QueryExpr::all());
}

TEST_CASE("syntax errors carry a position") {
    CHECK_THROWS_AS(parse_query("skills:(java OR"), ParseError);
    CHECK_THROWS_AS(parse_query(""), ParseError);
    CHECK_THROWS_AS(parse_query("java"), ParseError);          // unfielded
    CHECK_THROWS_AS(parse_query("skills:"), ParseError);
    CHECK_THROWS_AS(parse_query("skills:java extra:"), ParseError);
    CHECK_THROWS_AS(parse_query("skills:\"unterminated"), ParseError);
    CHECK_THROWS_AS(parse_query("AND skills:java"), ParseError);

    try {
        parse_query("skills:(java OR");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 15);
    }
}

TEST_CASE("print then parse is the identity on parser output") {
    std::mt19937 rng(5);
    for (int round = 0; round < 300; ++round) {
        QueryExpr e = random_expr(rng, 3);
        const std::string printed = print_query(e);
        QueryExpr reparsed = parse_query(printed);
        CHECK(reparsed == e);
        CHECK(print_query(reparsed) == printed);
    }
}

TEST_CASE("materialization on the toy corpus") {
    auto corpus = fixtures::toy10();
    auto snap = corpus.build_snapshot();

    CHECK(eval_query(parse_query("skills:java"), *snap).to_ids() ==
          std::vector<DocId>{0, 1, 2, 3});
    CHECK(eval_query(parse_query("skills:java AND skills:spark"), *snap).to_ids() ==
          std::vector<DocId>{1, 2});
    CHECK(eval_query(parse_query("skills:Java"), *snap).size() == 4); // analyzer folds
    CHECK(eval_query(QueryExpr::not_of(QueryExpr::all()), *snap).empty());
    CHECK(eval_query(parse_query("*:*"), *snap).size() == 10);
    CHECK(eval_query(parse_query("keywords:\"java engineer\""), *snap).to_ids() ==
          std::vector<DocId>{0});
    CHECK_THROWS_AS(eval_query(parse_query("bogus:x"), *snap), Error);

    MaterializedNode node = materialize(parse_query("skills:java"), *snap);
    CHECK(node.docs.size() == 4);
    CHECK(node.label == "skills:java");
}

TEST_CASE("evaluation matches per-document predicate checks") {
    std::mt19937 rng(17);
    for (int round = 0; round < 60; ++round) {
        auto corpus = fixtures::random_text_corpus(rng, 50);
        auto snap = corpus.build_snapshot();
        for (int k = 0; k < 10; ++k) {
            QueryExpr e = random_expr(rng, 3);
            CHECK(oracle::to_idx_set(eval_query(e, *snap)) == brute_eval(corpus, e));
        }
    }
}

TEST_CASE("De Morgan equivalences hold at the doc-set level") {
    std::mt19937 rng(19);
    for (int round = 0; round < 40; ++round) {
        auto corpus = fixtures::random_text_corpus(rng, 30);
        auto snap = corpus.build_snapshot();
        QueryExpr a = random_expr(rng, 2);
        QueryExpr b = random_expr(rng, 2);

        const DocSet lhs1 = eval_query(QueryExpr::not_of(QueryExpr::and_of({a, b})), *snap);
        const DocSet rhs1 = eval_query(
            QueryExpr::or_of({QueryExpr::not_of(a), QueryExpr::not_of(b)}), *snap);
        CHECK(lhs1 == rhs1);

        const DocSet lhs2 = eval_query(QueryExpr::not_of(QueryExpr::or_of({a, b})), *snap);
        const DocSet rhs2 = eval_query(
            QueryExpr::and_of({QueryExpr::not_of(a), QueryExpr::not_of(b)}), *snap);
        CHECK(lhs2 == rhs2);
    }
}
