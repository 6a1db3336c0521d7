// Shared corpora: the ten-document job fixture most tests lean on, plus
// random corpus generators for the property and oracle-equivalence tests.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "oracle.hpp"

namespace fixtures {

// d1..d10; internal ids 0..9 in this order.
inline oracle::OracleCorpus toy10() {
    oracle::OracleCorpus c;
    c.kinds = {{"skills", skg::FieldKind::exact_string},
               {"title", skg::FieldKind::exact_string},
               {"keywords", skg::FieldKind::analyzed_text}};
    auto add = [&](std::string id, std::vector<std::string> skills, std::string title,
                   std::vector<std::string> keywords = {}) {
        oracle::OracleDoc d;
        d.id = std::move(id);
        d.fields["skills"] = std::move(skills);
        d.fields["title"] = {std::move(title)};
        if (!keywords.empty()) d.fields["keywords"] = std::move(keywords);
        c.docs.push_back(std::move(d));
    };
    add("d1", {"java", "hadoop"}, "engineer", {"senior java engineer"});
    add("d2", {"java", "hadoop", "spark"}, "engineer", {"java software engineer"});
    add("d3", {"java", "spark"}, "engineer");
    add("d4", {"java"}, "analyst");
    add("d5", {"hadoop"}, "analyst");
    add("d6", {"nursing"}, "nurse");
    add("d7", {"nursing", "trauma"}, "nurse");
    add("d8", {"trauma"}, "nurse");
    add("d9", {"spark"}, "engineer");
    add("d10", {"excel"}, "analyst");
    return c;
}

// Small random corpus over two exact fields:
//   skills: 1..4 values from s0..s{vocab-1}
//   title:  one value from t0..t3
inline oracle::OracleCorpus random_corpus(std::mt19937& rng, int max_docs,
                                          int vocab = 10) {
    oracle::OracleCorpus c;
    c.kinds = {{"skills", skg::FieldKind::exact_string},
               {"title", skg::FieldKind::exact_string}};
    const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_docs));
    for (int i = 0; i < n; ++i) {
        oracle::OracleDoc d;
        d.id = "doc" + std::to_string(i);
        const int nskills = 1 + static_cast<int>(rng() % 4);
        std::set<std::string> skills;
        for (int s = 0; s < nskills; ++s) {
            skills.insert("s" + std::to_string(rng() % static_cast<unsigned>(vocab)));
        }
        d.fields["skills"] = {skills.begin(), skills.end()};
        d.fields["title"] = {"t" + std::to_string(rng() % 4)};
        c.docs.push_back(std::move(d));
    }
    return c;
}

// Adds an analyzed free-text field built from a tiny vocabulary, for
// phrase and query-evaluation tests.
inline oracle::OracleCorpus random_text_corpus(std::mt19937& rng, int max_docs) {
    oracle::OracleCorpus c = random_corpus(rng, max_docs);
    c.kinds["keywords"] = skg::FieldKind::analyzed_text;
    const char* words[] = {"alpha", "beta", "gamma", "delta", "epsilon"};
    for (auto& doc : c.docs) {
        const int nvalues = static_cast<int>(rng() % 3); // 0..2 values
        std::vector<std::string> values;
        for (int v = 0; v < nvalues; ++v) {
            const int len = 1 + static_cast<int>(rng() % 5);
            std::string text;
            for (int w = 0; w < len; ++w) {
                if (w != 0) text += ' ';
                text += words[rng() % 5];
            }
            values.push_back(std::move(text));
        }
        if (!values.empty()) doc.fields["keywords"] = std::move(values);
    }
    return c;
}

// Ten documents tagged with recency-suffixed fields: skills_2/title_2 hold
// the older entry, skills_1/title_1 the newer one. Eight docs had java in
// the older entry; five of those moved to an engineer title.
inline oracle::OracleCorpus recency10() {
    oracle::OracleCorpus c;
    c.kinds = {{"skills_1", skg::FieldKind::exact_string},
               {"skills_2", skg::FieldKind::exact_string},
               {"title_1", skg::FieldKind::exact_string},
               {"title_2", skg::FieldKind::exact_string}};
    auto add = [&](std::string id, std::vector<std::string> skills1,
                   std::string title1, std::vector<std::string> skills2,
                   std::string title2) {
        oracle::OracleDoc d;
        d.id = std::move(id);
        d.fields["skills_1"] = std::move(skills1);
        d.fields["title_1"] = {std::move(title1)};
        d.fields["skills_2"] = std::move(skills2);
        d.fields["title_2"] = {std::move(title2)};
        c.docs.push_back(std::move(d));
    };
    add("r1", {"java", "spark"}, "engineer", {"java"}, "developer");
    add("r2", {"java"}, "engineer", {"java"}, "developer");
    add("r3", {"spark"}, "engineer", {"java"}, "analyst");
    add("r4", {"java"}, "engineer", {"java"}, "developer");
    add("r5", {"excel"}, "engineer", {"java"}, "analyst");
    add("r6", {"java"}, "manager", {"java"}, "developer");
    add("r7", {"excel"}, "analyst", {"java"}, "analyst");
    add("r8", {"sql"}, "analyst", {"java"}, "developer");
    add("r9", {"nursing"}, "nurse", {"nursing"}, "nurse");
    add("r10", {"trauma"}, "nurse", {"nursing"}, "nurse");
    return c;
}

} // namespace fixtures
