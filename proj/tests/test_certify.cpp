#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "whcone/certify.hpp"

#include <random>

using namespace whcone;

namespace {

GraphPair unfolded(int rank, std::vector<std::string> words)
{
    return unfold_to_locally_irreducible(parse_words(rank, words)).pair;
}

bool has_kind(const std::vector<DViolation>& v, DViolationKind k)
{
    for (const auto& x : v)
        if (x.kind == k) return true;
    return false;
}

int total(const std::vector<SurfaceComponent>& s, int SurfaceComponent::*field)
{
    int t = 0;
    for (const auto& c : s) t += c.*field;
    return t;
}

} // namespace

TEST_CASE("identity immersions verify")
{
    for (auto words : std::vector<std::vector<std::string>>{{"abAB"}, {"BabAA"}, {"aabb"}, {"abAB", "ab"}}) {
        GraphPair p = unfolded(2, words);
        CHECK(verify_dimmersion(identity_dimmersion(p), p).empty());
        CHECK(admissibility_degree(dimmersion_composite(identity_dimmersion(p))) == 1);
    }
}

TEST_CASE("verify_dimmersion names the broken property")
{
    GraphPair p = unfolded(2, {"abAB"});
    DImmersion d = identity_dimmersion(p);

    DImmersion wrong_target = d;
    wrong_target.target = unfolded(2, {"aabb"});
    CHECK(has_kind(verify_dimmersion(wrong_target, p), DViolationKind::Target));

    // Two copies of the circle over one: degree two, but f1 is then not bijective.
    GraphPair two = disjoint_union(p, p);
    DImmersion doubled;
    doubled.source = two;
    doubled.mid = two;
    doubled.target = p;
    doubled.f1 = identity_pair_morphism(two).map;
    doubled.f2.base.vmap = {0, 0};
    doubled.f2.base.emap = {0, 1, 2, 3, 0, 1, 2, 3};
    const int nv = p.circles.num_vertices, ne = p.circles.num_edges();
    for (int i = 0; i < 2; ++i) {
        for (int v = 0; v < nv; ++v) doubled.f2.cycle.vmap.push_back(v);
        for (int e = 0; e < ne; ++e) doubled.f2.cycle.emap.push_back(e);
    }
    CHECK(verify_dimmersion(doubled, p).empty());
    CHECK(admissibility_degree(dimmersion_composite(doubled)) == 2);

    DImmersion squashed;
    squashed.source = two;
    squashed.mid = p;
    squashed.target = p;
    squashed.f1 = doubled.f2;
    squashed.f2 = identity_pair_morphism(p).map;
    CHECK(has_kind(verify_dimmersion(squashed, p), DViolationKind::Bijectivity));

    // One circle over the first of two target circles leaves the second uncovered.
    GraphPair target2 = unfolded(2, {"abAB", "abAB"});
    DImmersion partial;
    partial.source = p;
    partial.mid = p;
    partial.target = target2;
    partial.f1 = identity_pair_morphism(p).map;
    partial.f2 = identity_pair_morphism(p).map;
    CHECK(has_kind(verify_dimmersion(partial, target2), DViolationKind::Admissibility));

    GraphPair red = parse_words(2, {"ab", "ab"});
    DImmersion reducible = identity_dimmersion(red);
    CHECK(has_kind(verify_dimmersion(reducible, red), DViolationKind::LocalIrreducibility));
}

TEST_CASE("surfaces of small fat pairs")
{
    auto one = [](int rank, std::string w) {
        auto s = fatform_surfaces(parse_words(rank, {w}));
        REQUIRE(s.size() == 1);
        return s[0];
    };
    SurfaceComponent mob = one(1, "aa");
    CHECK(!mob.orientable);
    CHECK(mob.euler == 0);
    CHECK(mob.boundary == 1);
    CHECK(mob.crosscaps == 1);

    SurfaceComponent torus = one(2, "abAB");
    CHECK(torus.orientable);
    CHECK(torus.euler == -1);
    CHECK(torus.boundary == 1);
    CHECK(torus.genus == 1);

    SurfaceComponent klein = one(2, "aabb");
    CHECK(!klein.orientable);
    CHECK(klein.euler == -1);
    CHECK(klein.crosscaps == 2);

    // Annulus: the circle covered by a and A.
    auto ann = fatform_surfaces(parse_words(1, {"a", "A"}));
    REQUIRE(ann.size() == 1);
    CHECK(ann[0].orientable);
    CHECK(ann[0].euler == 0);
    CHECK(ann[0].boundary == 2);
    CHECK(ann[0].genus == 0);
    CHECK(is_fat(parse_words(1, {"a", "A"})));
    CHECK(!is_fat(parse_words(2, {"BabAA"})));
}

TEST_CASE("a valence-three vertex without cut vertices has no fatform")
{
    GraphPair p = unfolded(2, {"BabAA"});
    CHECK(!certify_surface(identity_dimmersion(p)));
}

TEST_CASE("fatforms of folded fat pairs unfold and refold")
{
    std::mt19937 rng(13);
    int done = 0, with_folds = 0;
    for (int round = 0; round < 20000 && done < 25; ++round) {
        auto p = oracle::random_pair(rng, 3, 4, 2, 4);
        if (!p || !is_fat(*p)) continue;
        auto st = p->base.stars();
        for (int v = 0; v < p->base.num_vertices; ++v)
            for (size_t i = 0; i < st[v].size(); ++i)
                for (size_t j = i + 1; j < st[v].size(); ++j) {
                    int e1 = st[v][i], e2 = st[v][j];
                    if (e2 == p->base.inv[e1] || p->base.terminus(e1) == p->base.terminus(e2)) continue;
                    auto r = pair_fold(*p, e1, e2);
                    if (!r) continue;
                    DImmersion d = identity_dimmersion(r->first);
                    auto f = certify_surface(d);
                    REQUIRE(f);
                    CHECK(is_fat(f->pair));
                    CHECK(!f->unfold_steps.empty());
                    CHECK(f->fold_sequence.size() == f->unfold_steps.size());
                    // One disk per Wh component, one band per base edge.
                    int disks = 0;
                    for (const WhGraph& w : wh_graphs(whitehead_system(f->pair))) disks += oracle::components(w.graph);
                    CHECK(total(f->surfaces, &SurfaceComponent::euler) == disks - f->pair.base.num_edges() / 2);
                    CHECK(total(f->surfaces, &SurfaceComponent::boundary) ==
                          static_cast<int>(circle_lengths(f->pair).size()));
                    GraphPair folded;
                    PairMap to_mid;
                    auto seq = refold_sequence(f->pair, f->to_mid, &folded, &to_mid);
                    CHECK(seq == f->fold_sequence);
                    CHECK(validate_pair_morphism({folded, d.mid, to_mid}).empty());
                    ++done;
                    with_folds += f->fold_sequence.empty() ? 0 : 1;
                }
    }
    CHECK(done >= 25);
    CHECK(with_folds == done);
}

TEST_CASE("cone points round trip through reconstruction")
{
    for (auto words : std::vector<std::vector<std::string>>{{"BabAA"}, {"abAAB"}, {"aaabb"}}) {
        GraphPair ref = unfolded(2, words);
        ConeSystem cone = cone_for(whitehead_system(ref));
        LinearProgram lp = rank_program(cone, true);
        LPResult r = maximize_rank(cone);
        REQUIRE(r.status == LPStatus::Optimal);
        auto face = optimal_face_vertices(lp, r, 8);
        for (const auto& v : face.vertices) {
            IntegerPoint ip = integer_point(v);
            DImmersion d = reconstruct_dimmersion(ip.x, cone, ref);
            CHECK(verify_dimmersion(d, ref).empty());
            CHECK(project_vector(d, cone) == ip.x);
            CHECK(admissibility_degree(dimmersion_composite(d)) ==
                  static_cast<int>(ip.scale));
        }
    }
}

TEST_CASE("find_surface on the commutator")
{
    SurfaceSearch s = find_surface(parse_words(2, {"abAB"}));
    REQUIRE(s.status == SearchStatus::Found);
    REQUIRE(s.certificate);
    const SurfaceCertificate& c = *s.certificate;
    CHECK(c.euler == -1);
    CHECK(c.boundary_count == 1);
    CHECK(c.degree == 1);
    CHECK(c.rho == 1);
    CHECK(c.rho == c.rho_max);
    CHECK(c.chi2 == -2 * euler_characteristic(c.witness.mid.base));
    CHECK(is_weakly_irreducible_certificate(c.witness));
}

TEST_CASE("find_surface statuses")
{
    CHECK(find_surface(parse_words(1, {"a"})).status == SearchStatus::Reducible);
    SurfaceSearch bs = find_surface(parse_words(2, {"BabAA"}));
    CHECK(bs.status == SearchStatus::Found);
    REQUIRE(bs.certificate);
    CHECK(bs.certificate->degree == 2);
    CHECK(bs.certificate->euler == -2);

    SurfaceBudgets tight;
    tight.caps.max_stars = 3;
    CHECK_THROWS_AS(find_surface(parse_words(2, {"BabAA"}), tight), CapExceeded);
}

TEST_CASE("unfold budget exhaustion is a cap")
{
    // Folding two edges of a locally irreducible pair forces an unfold.
    std::mt19937 rng(2);
    for (int round = 0; round < 5000; ++round) {
        auto p = oracle::random_pair(rng, 3, 4, 2, 5);
        if (!p || !is_locally_irreducible(*p)) continue;
        auto st = p->base.stars();
        int e1 = -1, e2 = -1;
        for (int v = 0; v < p->base.num_vertices && e1 < 0; ++v)
            for (size_t i = 0; i < st[v].size() && e1 < 0; ++i)
                for (size_t j = i + 1; j < st[v].size() && e1 < 0; ++j)
                    if (st[v][j] != p->base.inv[st[v][i]] && p->base.terminus(st[v][i]) != p->base.terminus(st[v][j]) &&
                        pair_fold(*p, st[v][i], st[v][j])) {
                        e1 = st[v][i];
                        e2 = st[v][j];
                    }
        if (e1 < 0) continue;
        GraphPair q = pair_fold(*p, e1, e2)->first;
        SurfaceBudgets b;
        b.unfold_budget = 0;
        CHECK_THROWS_AS(find_surface(q, b), CapExceeded);
        UnfoldResult u = unfold_to_locally_irreducible(q);
        CHECK(u.locally_irreducible);
        CHECK(pair_isomorphic(u.pair, *p));
        return;
    }
    FAIL("no instance found");
}
