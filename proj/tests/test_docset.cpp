#include <doctest.h>

#include <random>
#include <set>

#include "skg/docset.hpp"

using namespace skg;

namespace {

DocSet from_set(const std::set<DocId>& s, DocId universe) {
    return DocSet::of_sorted({s.begin(), s.end()}, universe);
}

std::set<DocId> random_set(std::mt19937& rng, DocId universe, double density) {
    std::set<DocId> s;
    std::bernoulli_distribution take(density);
    for (DocId d = 0; d < universe; ++d) {
        if (take(rng)) s.insert(d);
    }
    return s;
}

} // namespace

TEST_CASE("construction, membership, and enumeration") {
    DocSet s = DocSet::of_unsorted({5, 1, 3, 1, 5}, 10);
    CHECK(s.size() == 3);
    CHECK(s.to_ids() == std::vector<DocId>{1, 3, 5});
    CHECK(s.contains(3));
    CHECK_FALSE(s.contains(2));
    CHECK_FALSE(s.contains(99));

    CHECK(DocSet::empty_set(10).empty());
    CHECK(DocSet::full_set(10).size() == 10);
}

TEST_CASE("dense sets switch to the bitmap representation") {
    const DocId universe = 4096;
    DocSet dense = DocSet::full_set(universe);
    CHECK(dense.is_bitmap());
    DocSet sparse = DocSet::of_sorted({1, 7, 900}, universe);
    CHECK_FALSE(sparse.is_bitmap());

    // Same answers through both representations.
    DocSet both = set_intersect(dense, sparse);
    CHECK(both == sparse);
    CHECK(set_union(sparse, dense) == dense);
    CHECK(set_difference(sparse, dense).empty());
    CHECK(intersection_size(dense, sparse) == 3);
}

TEST_CASE("set algebra matches std::set on random inputs") {
    std::mt19937 rng(7);
    for (int round = 0; round < 200; ++round) {
        const DocId universe = 1 + rng() % 600;
        const double da = (rng() % 100) / 100.0;
        const double db = (rng() % 100) / 100.0;
        auto sa = random_set(rng, universe, da);
        auto sb = random_set(rng, universe, db);
        DocSet a = from_set(sa, universe);
        DocSet b = from_set(sb, universe);

        std::set<DocId> si, su, sd;
        std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                              std::inserter(si, si.begin()));
        std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(),
                       std::inserter(su, su.begin()));
        std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(),
                            std::inserter(sd, sd.begin()));

        CHECK(set_intersect(a, b) == from_set(si, universe));
        CHECK(set_union(a, b) == from_set(su, universe));
        CHECK(set_difference(a, b) == from_set(sd, universe));
        CHECK(intersection_size(a, b) == si.size());

        // Commutativity and the inclusion-exclusion identity.
        CHECK(set_intersect(a, b) == set_intersect(b, a));
        CHECK(set_union(a, b) == set_union(b, a));
        CHECK(intersection_size(a, b) + set_union(a, b).size() ==
              a.size() + b.size());

        // Complement round trip.
        CHECK(a.complement().complement() == a);
        CHECK(set_intersect(a, a.complement()).empty());
        CHECK(set_union(a, a.complement()).size() == universe);
    }
}

TEST_CASE("associativity on random triples") {
    std::mt19937 rng(11);
    for (int round = 0; round < 100; ++round) {
        const DocId universe = 1 + rng() % 300;
        DocSet a = from_set(random_set(rng, universe, 0.3), universe);
        DocSet b = from_set(random_set(rng, universe, 0.5), universe);
        DocSet c = from_set(random_set(rng, universe, 0.7), universe);
        CHECK(set_intersect(set_intersect(a, b), c) ==
              set_intersect(a, set_intersect(b, c)));
        CHECK(set_union(set_union(a, b), c) == set_union(a, set_union(b, c)));
    }
}

TEST_CASE("galloping path agrees with the merge path") {
    std::mt19937 rng(13);
    // Universe sparse enough that both sides stay arrays; the size ratio
    // triggers the gallop.
    const DocId universe = 10000000;
    std::set<DocId> big, small;
    for (int i = 0; i < 50000; ++i) big.insert(rng() % universe);
    for (int i = 0; i < 40; ++i) small.insert(rng() % universe);
    DocSet a = from_set(big, universe);
    DocSet b = from_set(small, universe);
    REQUIRE_FALSE(a.is_bitmap());
    REQUIRE_FALSE(b.is_bitmap());

    std::set<DocId> expected;
    std::set_intersection(big.begin(), big.end(), small.begin(), small.end(),
                          std::inserter(expected, expected.begin()));
    CHECK(set_intersect(a, b).to_ids() ==
          std::vector<DocId>(expected.begin(), expected.end()));
    CHECK(intersection_size(b, a) == expected.size());
}
