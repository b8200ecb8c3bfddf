#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "whcone/pair.hpp"
#include "whcone/whitehead.hpp"

#include <numeric>
#include <random>

using namespace whcone;

namespace {

GraphPair random_relabel(const GraphPair& p, std::mt19937& rng)
{
    auto perm = [&](int n) {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 0);
        std::shuffle(v.begin(), v.end(), rng);
        return v;
    };
    // Edge permutations must respect inverse pairs, so shuffle unoriented edges.
    auto edge_perm = [&](const Graph& g) {
        std::vector<int> u = perm(g.num_edges() / 2);
        std::vector<int> out(g.num_edges());
        for (int k = 0; k < g.num_edges() / 2; ++k) {
            bool flip = rng() & 1u;
            out[2 * k] = 2 * u[k] + (flip ? 1 : 0);
            out[2 * k + 1] = 2 * u[k] + (flip ? 0 : 1);
        }
        return out;
    };
    return relabel_pair(p, perm(p.base.num_vertices), edge_perm(p.base), perm(p.circles.num_vertices), edge_perm(p.circles));
}

} // namespace

TEST_CASE("parse_words builds circles over the rose")
{
    GraphPair p = parse_words(2, {"BabAA"});
    CHECK(validate_pair(p).empty());
    CHECK(circle_lengths(p) == std::vector<int>{5});
    CHECK(p.base == rose(2));

    GraphPair a = parse_words(1, {"a"});
    CHECK(validate_pair(a).empty());
    CHECK(a.circles.num_vertices == 1);
    CHECK(graphs_isomorphic(a.circles, a.base));

    GraphPair m = parse_words(3, {"abc", "CCa", "bAbA"});
    auto lens = circle_lengths(m);
    CHECK(std::accumulate(lens.begin(), lens.end(), 0) == 10);
    CHECK(circle_labels(m) == std::vector<int>{0, 0, 0, 1, 1, 1, 2, 2, 2, 2});
}

TEST_CASE("parse_words rejects bad words with a position")
{
    try {
        parse_words(2, {"abA"});
        FAIL("accepted abA");
    } catch (const RejectedInput& e) {
        CHECK(std::string(e.what()).find("cyclically reduced") != std::string::npos);
        CHECK(std::string(e.what()).find("position") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_words(2, {"aAb"}), RejectedInput);
    CHECK_THROWS_AS(parse_words(1, {"ab"}), RejectedInput);
    CHECK_THROWS_AS(parse_words(2, {""}), RejectedInput);
    CHECK_THROWS_AS(parse_words(2, {"a1"}), RejectedInput);
    CHECK_THROWS_AS(parse_words(0, {"a"}), RejectedInput);
    CHECK_THROWS_AS(parse_words(27, {"a"}), RejectedInput);
}

TEST_CASE("admissibility degree")
{
    CHECK(admissibility_degree(identity_pair_morphism(parse_words(2, {"abAB"}))) == 1);

    GraphPair target = parse_words(1, {"a"});
    GraphPair twice = parse_words(1, {"a", "a"});
    PairMorphism two{twice, target, {identity_morphism(rose(1)).map, {{0, 0}, {0, 1, 0, 1}}}};
    CHECK(validate_pair_morphism(two).empty());
    CHECK(admissibility_degree(two) == 2);

    GraphPair two_circles = parse_words(1, {"a", "a"});
    GraphPair square = parse_words(1, {"aa"});
    PairMorphism partial{square, two_circles, {identity_morphism(rose(1)).map, {{0, 0}, {0, 1, 0, 1}}}};
    CHECK(validate_pair_morphism(partial).empty());
    CHECK(!admissibility_degree(partial));
}

TEST_CASE("pair morphism validation catches a broken square")
{
    GraphPair p = parse_words(2, {"abAB"});
    PairMorphism m = identity_pair_morphism(p);
    CHECK(validate_pair_morphism(m).empty());
    m.map.base.emap = {2, 3, 0, 1};
    CHECK(!validate_pair_morphism(m).empty());
}

TEST_CASE("pair_fold rejects a fold that creates a backtrack")
{
    GraphPair p;
    Graph& g = p.base;
    g.num_vertices = 3;
    int e1 = g.add_edge(0, 1);
    int e2 = g.add_edge(0, 2);
    int l1 = g.add_edge(1, 1);
    int l2 = g.add_edge(2, 2);
    // l1, e1^-1, e2, l2, e2^-1, e1
    std::vector<int> walk{l1, g.inv[e1], e2, l2, g.inv[e2], e1};
    p.circles.num_vertices = 6;
    for (int j = 0; j < 6; ++j) {
        p.circles.add_edge(j, (j + 1) % 6);
        p.cycle.emap.push_back(walk[j]);
        p.cycle.emap.push_back(g.inv[walk[j]]);
        p.cycle.vmap.push_back(g.origin[walk[j]]);
    }
    REQUIRE(validate_pair(p).empty());
    CHECK(!pair_fold(p, e1, e2));
    CHECK_THROWS_AS(pair_fold(p, l1, l1), RejectedInput);
}

TEST_CASE("pair folds keep chi and components and give valid morphisms")
{
    std::mt19937 rng(21);
    int done = 0;
    for (int round = 0; round < 2000 && done < 60; ++round) {
        auto p = oracle::random_pair(rng, 4, 6, 3, 6);
        if (!p) continue;
        REQUIRE(validate_pair(*p).empty());
        auto st = p->base.stars();
        for (int v = 0; v < p->base.num_vertices; ++v)
            for (size_t i = 0; i < st[v].size(); ++i)
                for (size_t j = i + 1; j < st[v].size(); ++j) {
                    int a = st[v][i], b = st[v][j];
                    if (b == p->base.inv[a] || p->base.terminus(a) == p->base.terminus(b)) continue;
                    auto r = pair_fold(*p, a, b);
                    if (!r) continue;
                    CHECK(euler_characteristic(r->first.base) == euler_characteristic(p->base));
                    CHECK(component_count(r->first.base) == component_count(p->base));
                    CHECK(validate_pair(r->first).empty());
                    CHECK(validate_pair_morphism(r->second).empty());
                    CHECK(admissibility_degree(r->second) == 1);
                    ++done;
                }
    }
    CHECK(done >= 60);
}

TEST_CASE("pair isomorphism")
{
    GraphPair p = parse_words(2, {"abAB"});
    CHECK(pair_isomorphic(p, p));
    CHECK(!pair_isomorphic(parse_words(1, {"a"}), parse_words(1, {"aa"})));
    std::mt19937 rng(8);
    for (int i = 0; i < 20; ++i) {
        GraphPair q = random_relabel(p, rng);
        CHECK(validate_pair(q).empty());
        auto iso = find_pair_isomorphism(p, q);
        REQUIRE(iso);
        GraphPair r = random_relabel(parse_words(3, {"abcAB", "cc"}), rng);
        CHECK(pair_isomorphic(parse_words(3, {"abcAB", "cc"}), r));
        CHECK(!pair_isomorphic(p, r));
    }
    CHECK(!pair_isomorphic(parse_words(2, {"abAB"}), parse_words(2, {"aabb"})));
    CHECK(pair_isomorphic(parse_words(2, {"abAB"}), parse_words(2, {"baBA"})));
}

TEST_CASE("disjoint union and untraversed edges")
{
    GraphPair u = disjoint_union(parse_words(1, {"a"}), parse_words(2, {"ab"}));
    CHECK(validate_pair(u).empty());
    CHECK(u.base.num_vertices == 2);
    CHECK(component_count(u.base) == 2);
    CHECK(circle_lengths(u) == std::vector<int>{1, 2});
    CHECK(untraversed_edges(parse_words(2, {"aa"})) == std::vector<int>{2, 3});
    CHECK(untraversed_edges(parse_words(2, {"ab"})).empty());
}
