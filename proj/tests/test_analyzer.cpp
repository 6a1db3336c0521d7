#include <doctest.h>

#include "skg/analyzer.hpp"

using namespace skg;

TEST_CASE("analyzed_text lowercases and splits on non-alphanumerics") {
    auto tokens = analyze_text("senior java engineer", FieldKind::analyzed_text);
    REQUIRE(tokens.size() == 3);
    CHECK(tokens[0] == Token{"senior", 0});
    CHECK(tokens[1] == Token{"java", 1});
    CHECK(tokens[2] == Token{"engineer", 2});

    tokens = analyze_text("C++/Java, SQL-92!", FieldKind::analyzed_text);
    REQUIRE(tokens.size() == 4);
    CHECK(tokens[0] == Token{"c", 0});
    CHECK(tokens[1] == Token{"java", 1});
    CHECK(tokens[2] == Token{"sql", 2});
    CHECK(tokens[3] == Token{"92", 3});
}

TEST_CASE("empty and separator-only input yields no tokens") {
    CHECK(analyze_text("", FieldKind::analyzed_text).empty());
    CHECK(analyze_text("  \t--  ", FieldKind::analyzed_text).empty());
    CHECK(analyze_text("", FieldKind::exact_string).empty());
}

TEST_CASE("exact_string keeps the whole value as one lowercased term") {
    auto tokens = analyze_text("Data Scientist", FieldKind::exact_string);
    REQUIRE(tokens.size() == 1);
    CHECK(tokens[0] == Token{"data scientist", 0});

    tokens = analyze_text("C++", FieldKind::exact_string);
    REQUIRE(tokens.size() == 1);
    CHECK(tokens[0].term == "c++");
}

TEST_CASE("multi-byte sequences survive tokenization") {
    auto tokens = analyze_text("caf\xc3\xa9 bar", FieldKind::analyzed_text);
    REQUIRE(tokens.size() == 2);
    CHECK(tokens[0].term == "caf\xc3\xa9");
}

TEST_CASE("schema lookups") {
    Schema closed(
        {{"skills", FieldKind::exact_string}, {"keywords", FieldKind::analyzed_text}});
    CHECK(closed.closed());
    CHECK(closed.find("skills") != nullptr);
    CHECK(closed.find("missing") == nullptr);
    CHECK(closed.require("keywords").kind == FieldKind::analyzed_text);
    CHECK_THROWS_AS(closed.require("missing"), Error);

    Schema open;
    CHECK_FALSE(open.closed());
    open.add_field({"a", FieldKind::exact_string});
    CHECK_THROWS_AS(open.add_field({"a", FieldKind::analyzed_text}), Error);
}
