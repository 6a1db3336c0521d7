#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "skg/index.hpp"

using namespace skg;

namespace {

std::vector<DocId> ids(const DocSet& s) { return s.to_ids(); }

} // namespace

TEST_CASE("toy corpus indexes with the fixture's statistics") {
    auto corpus = fixtures::toy10();
    auto snap = corpus.build_snapshot();

    CHECK(snap->doc_count() == 10);
    CHECK(snap->external_id(0) == "d1");
    CHECK(snap->internal_id("d10") == DocId{9});
    CHECK_FALSE(snap->internal_id("nope").has_value());

    const FieldIndex& skills = snap->field("skills");
    const PostingsList* java = skills.postings("java");
    REQUIRE(java != nullptr);
    CHECK(java->doc_frequency() == 4);

    CHECK(ids(snap->term_docset("skills", "java")) == std::vector<DocId>{0, 1, 2, 3});
    CHECK(ids(snap->term_docset("title", "nurse")) == std::vector<DocId>{5, 6, 7});
    CHECK(snap->term_docset("skills", "cobol").empty());
    CHECK_THROWS_AS(snap->term_docset("bogus", "java"), Error);
}

TEST_CASE("postings invariants hold on the toy corpus") {
    auto snap = fixtures::toy10().build_snapshot();
    for (const auto& fs : snap->schema().fields()) {
        const FieldIndex& fi = snap->field(fs.name);
        for (std::uint32_t t = 0; t < fi.term_count(); ++t) {
            if (t > 0) CHECK(fi.term_name(t - 1) < fi.term_name(t));
            const PostingsList& list = fi.postings(t);
            CHECK(list.doc_frequency() == list.entries.size());
            for (std::size_t e = 0; e < list.entries.size(); ++e) {
                if (e > 0) CHECK(list.entries[e - 1].doc < list.entries[e].doc);
                const auto& pos = list.entries[e].positions;
                for (std::size_t p = 1; p < pos.size(); ++p) {
                    CHECK(pos[p - 1] < pos[p]);
                }
                if (fs.kind == FieldKind::exact_string) CHECK(pos.empty());
            }
        }
    }
}

TEST_CASE("phrase lookup requires adjacency in order") {
    auto snap = fixtures::toy10().build_snapshot();
    using V = std::vector<std::string>;

    // d1 has java(1) engineer(2); d2 has java(0) ... engineer(2).
    CHECK(ids(snap->phrase_docset("keywords", V{"java", "engineer"})) ==
          std::vector<DocId>{0});
    CHECK(ids(snap->phrase_docset("keywords", V{"java"})) == std::vector<DocId>{0, 1});
    CHECK(snap->phrase_docset("keywords", V{"engineer", "java"}).empty());
    CHECK(snap->phrase_docset("keywords", V{"java", "missing"}).empty());

    CHECK_THROWS_AS(snap->phrase_docset("keywords", V{}), Error);
    CHECK_THROWS_AS(snap->phrase_docset("skills", V{"java", "hadoop"}), Error);
    CHECK_THROWS_AS(snap->phrase_docset("bogus", V{"java"}), Error);
}

TEST_CASE("phrases never match across values of a multi-valued field") {
    Schema schema({{"notes", FieldKind::analyzed_text}});
    IndexBuilder builder(schema);
    Document doc;
    doc.id = "m1";
    doc.set("notes", std::vector<std::string>{"alpha beta", "gamma delta"});
    builder.add_document(doc);
    auto snap = builder.commit();

    using V = std::vector<std::string>;
    CHECK(snap->phrase_docset("notes", V{"alpha", "beta"}).size() == 1);
    CHECK(snap->phrase_docset("notes", V{"gamma", "delta"}).size() == 1);
    CHECK(snap->phrase_docset("notes", V{"beta", "gamma"}).empty());
}

TEST_CASE("enumerate_field_terms is complete with in-set counts") {
    auto snap = fixtures::toy10().build_snapshot();
    const DocSet javadocs = snap->term_docset("skills", "java");

    auto titles = snap->enumerate_field_terms("title", javadocs);
    REQUIRE(titles.size() == 2);
    CHECK(titles[0] == std::pair<std::string, std::uint32_t>{"engineer", 3});
    CHECK(titles[1] == std::pair<std::string, std::uint32_t>{"analyst", 1});

    CHECK(snap->enumerate_field_terms("title", DocSet::empty_set(10)).empty());

    auto skills = snap->enumerate_field_terms("skills", snap->term_docset("skills", "nursing"));
    // d6 has only nursing; d7 adds trauma.
    REQUIRE(skills.size() == 2);
    CHECK(skills[0].first == "nursing");
    CHECK(skills[0].second == 2);

    CHECK_THROWS_AS(snap->enumerate_field_terms("bogus", javadocs), Error);
}

TEST_CASE("duplicate ids and closed-schema violations are rejected") {
    auto corpus = fixtures::toy10();
    IndexBuilder builder(corpus.to_schema());
    CHECK(builder.add_document(corpus.to_document(0)) == 0);
    CHECK_THROWS_AS(builder.add_document(corpus.to_document(0)), Error);

    Document unknown_field;
    unknown_field.id = "x1";
    unknown_field.set("salary", "100");
    CHECK_THROWS_AS(builder.add_document(unknown_field), Error);

    Document no_fields;
    no_fields.id = "x2";
    CHECK_THROWS_AS(builder.add_document(no_fields), Error);

    auto snap = builder.commit();
    CHECK(snap->doc_count() == 1);

    // Still duplicate after the commit.
    IndexBuilder next(snap);
    CHECK_THROWS_AS(next.add_document(corpus.to_document(0)), Error);
}

TEST_CASE("open schemas infer kinds from value shape") {
    IndexBuilder builder{Schema{}};
    Document doc;
    doc.id = "a";
    doc.set("tags", std::vector<std::string>{"Big Data"});
    doc.set("body", "Big Data");
    builder.add_document(doc);
    auto snap = builder.commit();

    CHECK(snap->schema().require("tags").kind == FieldKind::exact_string);
    CHECK(snap->schema().require("body").kind == FieldKind::analyzed_text);
    CHECK(snap->term_docset("tags", "big data").size() == 1);
    CHECK(snap->term_docset("body", "big").size() == 1);
}

TEST_CASE("commits are atomic batches and snapshots stay immutable") {
    auto corpus = fixtures::toy10();
    IndexBuilder builder(corpus.to_schema());
    for (int i = 0; i < 4; ++i) builder.add_document(corpus.to_document(i));
    auto first = builder.commit();
    CHECK(first->doc_count() == 4);
    const auto before = ids(first->term_docset("skills", "java"));

    // Empty commit publishes identical content.
    auto unchanged = builder.commit();
    CHECK(unchanged->doc_count() == 4);
    CHECK(ids(unchanged->term_docset("skills", "java")) == before);

    for (std::size_t i = 4; i < corpus.docs.size(); ++i) {
        builder.add_document(corpus.to_document(static_cast<oracle::DocIdx>(i)));
    }
    auto second = builder.commit();
    CHECK(second->doc_count() == 10);

    // The earlier snapshot still answers exactly as before.
    CHECK(ids(first->term_docset("skills", "java")) == before);
    CHECK(first->doc_count() == 4);
    CHECK(ids(second->term_docset("skills", "java")) ==
          std::vector<DocId>{0, 1, 2, 3});
}

TEST_CASE("forward and inverted indexes are mutually consistent") {
    std::mt19937 rng(42);
    for (int round = 0; round < 20; ++round) {
        auto corpus = fixtures::random_text_corpus(rng, 30);
        auto snap = corpus.build_snapshot();
        for (const auto& fs : snap->schema().fields()) {
            const FieldIndex& fi = snap->field(fs.name);
            for (std::uint32_t t = 0; t < fi.term_count(); ++t) {
                for (const auto& entry : fi.postings(t).entries) {
                    auto terms = fi.doc_terms(entry.doc);
                    CHECK(std::binary_search(terms.begin(), terms.end(), t));
                }
            }
            for (DocId d = 0; d < snap->doc_count(); ++d) {
                for (std::uint32_t t : fi.doc_terms(d)) {
                    CHECK(snap
                              ->term_docset(fs.name, fi.term_name(t))
                              .contains(d));
                }
            }
        }
    }
}

TEST_CASE("term and phrase doc sets match the brute-force oracle") {
    std::mt19937 rng(99);
    for (int round = 0; round < 25; ++round) {
        auto corpus = fixtures::random_text_corpus(rng, 25);
        auto snap = corpus.build_snapshot();
        for (const auto& [field, kind] : corpus.kinds) {
            for (const auto& term : corpus.vocabulary(field)) {
                CHECK(oracle::to_idx_set(snap->term_docset(field, term)) ==
                      corpus.term_docs(field, term));
            }
        }
        // Random two-term phrases over the text field.
        auto vocab = corpus.vocabulary("keywords");
        if (vocab.size() < 2) continue;
        for (int k = 0; k < 10; ++k) {
            std::vector<std::string> phrase{vocab[rng() % vocab.size()],
                                            vocab[rng() % vocab.size()]};
            CHECK(oracle::to_idx_set(snap->phrase_docset("keywords", phrase)) ==
                  corpus.phrase_docs("keywords", phrase));
        }
    }
}

TEST_CASE("phrase results are contained in the term intersection") {
    std::mt19937 rng(123);
    for (int round = 0; round < 10; ++round) {
        auto corpus = fixtures::random_text_corpus(rng, 20);
        auto snap = corpus.build_snapshot();
        auto vocab = corpus.vocabulary("keywords");
        if (vocab.empty()) continue;
        for (int k = 0; k < 10; ++k) {
            const std::size_t len = 2 + rng() % 2;
            std::vector<std::string> phrase;
            for (std::size_t i = 0; i < len; ++i) {
                phrase.push_back(vocab[rng() % vocab.size()]);
            }
            DocSet conj = snap->term_docset("keywords", phrase[0]);
            for (std::size_t i = 1; i < phrase.size(); ++i) {
                conj = set_intersect(conj, snap->term_docset("keywords", phrase[i]));
            }
            const DocSet hits = snap->phrase_docset("keywords", phrase);
            CHECK(set_difference(hits, conj).empty());
        }
    }
}
