#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "whcone/lp.hpp"

#include <random>

using namespace whcone;

namespace {

LinearProgram random_lp(std::mt19937& rng, int vars, int rows)
{
    LinearProgram lp;
    lp.num_vars = vars;
    auto coef = [&] { return Rational(static_cast<int>(rng() % 7) - 3); };
    for (int r = 0; r < rows; ++r) {
        std::vector<Rational> row(vars);
        for (auto& c : row) c = coef();
        lp.rows.push_back(row);
        lp.rhs.push_back(Rational(static_cast<int>(rng() % 5)));
    }
    lp.objective.resize(vars);
    for (auto& c : lp.objective) c = coef();
    lp.maximize = rng() & 1u;
    return lp;
}

ConeSystem cone_of(int rank, std::vector<std::string> words)
{
    return cone_for(whitehead_system(unfold_to_locally_irreducible(parse_words(rank, words)).pair));
}

bool all_zero(const std::vector<Rational>& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

} // namespace

TEST_CASE("fractions")
{
    CHECK(to_fraction(Rational(0)) == "0/1");
    CHECK(to_fraction(Rational(3)) == "3/1");
    CHECK(to_fraction(Rational(-6, 4)) == "-3/2");
    CHECK(parse_rational("-3/2") == Rational(-3, 2));
    CHECK(parse_rational("-1.5") == Rational(-3, 2));
    CHECK(parse_rational("7") == Rational(7));
    CHECK_THROWS_AS(parse_rational("1/0"), RejectedInput);
    CHECK_THROWS_AS(parse_rational("x"), RejectedInput);
}

TEST_CASE("random LPs agree with basis enumeration")
{
    std::mt19937 rng(12);
    int optimal = 0, infeasible = 0, unbounded = 0;
    for (int round = 0; round < 400; ++round) {
        int vars = 2 + static_cast<int>(rng() % 5);
        int rows = 1 + static_cast<int>(rng() % 3);
        LinearProgram lp = random_lp(rng, vars, rows);
        LPResult r = solve_lp(lp);
        oracle::BruteLP b = oracle::brute_lp(lp);
        if (!b.feasible) {
            CHECK(r.status == LPStatus::Infeasible);
            ++infeasible;
        } else if (!b.bounded) {
            CHECK(r.status == LPStatus::Unbounded);
            ++unbounded;
        } else {
            REQUIRE(r.status == LPStatus::Optimal);
            CHECK(r.optimum == b.optimum);
            CHECK(all_zero(residuals(lp, r.vertex)));
            CHECK(is_feasible(lp, r.vertex));
            ++optimal;
        }
    }
    CHECK(optimal > 50);
    CHECK(infeasible > 10);
    CHECK(unbounded > 10);
}

TEST_CASE("Beale's cycling example terminates")
{
    LinearProgram lp;
    lp.num_vars = 7;
    lp.rows = {{1, 0, 0, Rational(1, 4), -8, -1, 9}, {0, 1, 0, Rational(1, 2), -12, Rational(-1, 2), 3}, {0, 0, 1, 0, 0, 1, 0}};
    lp.rhs = {0, 0, 1};
    lp.objective = {0, 0, 0, Rational(3, 4), -20, Rational(1, 2), -6};
    LPResult r = solve_lp(lp);
    REQUIRE(r.status == LPStatus::Optimal);
    CHECK(r.optimum == oracle::brute_lp(lp).optimum);
    CHECK(r.optimum == Rational(5, 4)); // x4 = x6 = 1
    CHECK(r.pivots < 50);
}

TEST_CASE("rank of aa over the circle is zero both ways")
{
    ConeSystem cone = cone_of(1, {"aa"});
    LPResult hi = maximize_rank(cone), lo = minimize_rank(cone);
    REQUIRE(hi.status == LPStatus::Optimal);
    REQUIRE(lo.status == LPStatus::Optimal);
    CHECK(to_fraction(hi.optimum) == "0/1");
    CHECK(to_fraction(lo.optimum) == "0/1");
}

TEST_CASE("rank programs agree with basis enumeration on small cones")
{
    const std::vector<std::pair<int, std::vector<std::string>>> cases = {
        {1, {"aa"}}, {1, {"aaa"}}, {2, {"abAB"}}, {2, {"aabb"}}, {2, {"abaB"}}, {2, {"aba", "b"}}, {3, {"aabbcc"}},
    };
    for (const auto& [rank, words] : cases) {
        ConeSystem cone = cone_of(rank, words);
        REQUIRE(cone.num_vars() <= 8);
        for (bool maximize : {true, false}) {
            LinearProgram lp = rank_program(cone, maximize);
            LPResult r = maximize ? maximize_rank(cone) : minimize_rank(cone);
            oracle::BruteLP b = oracle::brute_lp(lp);
            REQUIRE(b.feasible);
            REQUIRE(r.status == LPStatus::Optimal);
            CHECK(r.optimum == b.optimum);
            CHECK(all_zero(residuals(lp, r.vertex)));
        }
    }
    CHECK(maximize_rank(cone_of(2, {"abAB"})).optimum == 1);
    CHECK(maximize_rank(cone_of(3, {"aabbcc"})).optimum == 2);
}

TEST_CASE("empty cone is reported as ZeroCone")
{
    ConeSystem cone;
    CHECK(maximize_rank(cone).status == LPStatus::ZeroCone);
}

TEST_CASE("optimal face vertices are optimal, feasible and complete")
{
    std::mt19937 rng(44);
    int checked = 0;
    for (int round = 0; round < 300 && checked < 60; ++round) {
        LinearProgram lp = random_lp(rng, 5, 2);
        // Ties in the objective make faces larger than a point.
        for (auto& c : lp.objective) c = Rational(static_cast<int>(rng() % 2));
        LPResult r = solve_lp(lp);
        if (r.status != LPStatus::Optimal) continue;
        int calls = 0;
        FaceEnumeration f = optimal_face_vertices(lp, r, 100, 20000, [&](const std::vector<Rational>&) {
            ++calls;
            return false;
        });
        CHECK(f.exhaustive);
        CHECK(calls == static_cast<int>(f.vertices.size()));
        REQUIRE(!f.vertices.empty());
        CHECK(f.vertices[0] == r.vertex);
        std::set<std::vector<Rational>> mine(f.vertices.begin(), f.vertices.end());
        CHECK(mine.size() == f.vertices.size());
        for (const auto& v : f.vertices) {
            CHECK(all_zero(residuals(lp, v)));
            Rational obj = 0;
            for (int j = 0; j < lp.num_vars; ++j) obj += lp.objective[j] * v[j];
            CHECK(obj == r.optimum);
        }
        // Optimal vertices by brute force: the vertices of the polyhedron cut by objective = optimum.
        LinearProgram face = lp;
        face.rows.push_back(lp.objective);
        face.rhs.push_back(r.optimum);
        auto verts = oracle::polyhedron_vertices(face);
        std::set<std::vector<Rational>> all(verts.begin(), verts.end());
        CHECK(mine == all);
        ++checked;
    }
    CHECK(checked == 60);
}

TEST_CASE("face enumeration honours budget and early stop")
{
    ConeSystem cone = cone_of(2, {"BabAA"});
    LinearProgram lp = rank_program(cone, true);
    LPResult r = maximize_rank(cone);
    REQUIRE(r.status == LPStatus::Optimal);
    FaceEnumeration zero = optimal_face_vertices(lp, r, 0);
    CHECK(zero.vertices.size() == 1);
    FaceEnumeration three = optimal_face_vertices(lp, r, 3);
    CHECK(three.vertices.size() <= 3);
    int seen = 0;
    FaceEnumeration stop = optimal_face_vertices(lp, r, 100, 20000, [&](const std::vector<Rational>&) { return ++seen == 2; });
    CHECK(stop.vertices.size() == 2);
    CHECK(!stop.exhaustive);
}

TEST_CASE("integer points scale by the lcm of denominators")
{
    IntegerPoint p = integer_point({Rational(1, 2), Rational(0), Rational(2, 3)});
    CHECK(p.x == std::vector<long long>{3, 0, 4});
    CHECK(p.scale == 6);
    CHECK_THROWS_AS(integer_point({Rational(0)}), RejectedInput);
    CHECK_THROWS_AS(integer_point({Rational(-1)}), RejectedInput);
}

TEST_CASE("LP text round trip")
{
    std::mt19937 rng(5);
    for (int round = 0; round < 50; ++round) {
        LinearProgram lp = random_lp(rng, 4, 2);
        lp.rows[0][1] = Rational(5, 3);
        LinearProgram back = parse_lp_text(lp_to_text(lp));
        CHECK(lp_to_text(back) == lp_to_text(lp));
        LPResult a = solve_lp(lp), b = solve_lp(back);
        CHECK(a.status == b.status);
        if (a.status == LPStatus::Optimal) CHECK(a.optimum == b.optimum);
    }
    ConeSystem cone = cone_of(2, {"BabAA"});
    LinearProgram lp = rank_program(cone, true);
    CHECK(solve_lp(parse_lp_text(lp_to_text(lp))).optimum == maximize_rank(cone).optimum);
    CHECK_THROWS_AS(parse_lp_text("Maximize\n obj: x\nSubject To\n c: x + = 1\nEnd\n"), RejectedInput);
}
