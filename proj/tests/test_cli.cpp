#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cli.hpp"
#include "whcone/serialize.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace whcone;

namespace {

struct Run
{
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / "whcone_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::filesystem::path& p, const std::string& s)
{
    std::ofstream(p) << s;
}

} // namespace

TEST_CASE("exit codes")
{
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"analyze", "--rank", "2", "--words", "abA"}).code == 2);
    CHECK(run({"analyze", "--rank", "2"}).code == 2);
    CHECK(run({"analyze", "--rank", "2", "--words", "ab", "--format", "xml"}).code == 2);
    CHECK(run({"rank", "--rank", "2", "--words", "BabAA", "--star-cap", "3"}).code == 3);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"verify", scratch("missing.json").string()}).code == 2);
}

TEST_CASE("analyze verdicts")
{
    Run a = run({"analyze", "--rank", "1", "--words", "a"});
    CHECK(a.code == 0);
    CHECK(a.out == "Reducible (leaf at vertex 0)\n");
    Run b = run({"analyze", "--rank", "2", "--words", "abAB"});
    CHECK(b.out == "Irreducible (locally irreducible after 0 unfolds)\n");
    Run c = run({"analyze", "--rank", "2", "--words", "ab"});
    CHECK(c.out.rfind("Reducible (disconnected", 0) == 0);
}

TEST_CASE("rank prints exact fractions")
{
    Run hi = run({"rank", "--max", "--rank", "1", "--words", "aa"});
    CHECK(hi.code == 0);
    CHECK(hi.out.rfind("0/1\n", 0) == 0);
    Run lo = run({"rank", "--min", "--rank", "1", "--words", "aa"});
    CHECK(lo.out.rfind("0/1\n", 0) == 0);
    Run c = run({"rank", "--rank", "2", "--words", "abAB"});
    CHECK(c.out.rfind("1/1\n", 0) == 0);
    CHECK(c.out.find("vertex: s") != std::string::npos);

    auto lp = scratch("babaa.lp");
    Run exported = run({"cone", "--rank", "2", "--words", "BabAA", "--format", "lp", "--out", lp.string()});
    REQUIRE(exported.code == 0);
    Run solved = run({"rank", "--lp", lp.string()});
    CHECK(solved.code == 0);
    CHECK(solved.out.substr(0, 4) == run({"rank", "--rank", "2", "--words", "BabAA"}).out.substr(0, 4));
}

TEST_CASE("parse output feeds back through --pair")
{
    auto path = scratch("pair.json");
    Run p = run({"parse", "--rank", "2", "--words", "BabAA,ab", "--out", path.string()});
    REQUIRE(p.code == 0);
    GraphPair back = pair_from_json(parse_json_text(slurp(path)));
    CHECK(back == parse_words(2, {"BabAA", "ab"}));
    Run again = run({"parse", "--pair", path.string()});
    CHECK(again.out == slurp(path));
    Run a = run({"analyze", "--pair", path.string()});
    CHECK(a.code == 0);
}

TEST_CASE("cone header and whitehead dot")
{
    Run c = run({"cone", "--rank", "2", "--words", "BabAA"});
    CHECK(c.code == 0);
    CHECK(c.out.find("stars 24") != std::string::npos);
    Run w = run({"whitehead", "--rank", "2", "--words", "abAB"});
    CHECK(w.code == 0);
    CHECK(w.out.find("graph Wh_0") != std::string::npos);
}

TEST_CASE("surface certificates verify and broken ones do not")
{
    auto cert = scratch("abab.json");
    Run s = run({"surface", "--rank", "2", "--words", "abAB", "--out", cert.string()});
    REQUIRE(s.code == 0);
    Run v = run({"verify", cert.string()});
    CHECK(v.code == 0);
    CHECK(v.out == "ok\n");

    Json j = parse_json_text(slurp(cert));
    auto& edges = j["witness"]["source"]["base"]["edges"];
    REQUIRE(edges.size() >= 2);
    edges[0]["inv"] = edges[0]["id"];
    auto bad = scratch("abab_bad.json");
    spit(bad, dump(j));
    Run vb = run({"verify", bad.string()});
    CHECK(vb.code == 1);
    CHECK(vb.out.find("involution") != std::string::npos);

    auto junk = scratch("junk.json");
    spit(junk, "{\"not\": \"a certificate\"}");
    CHECK(run({"verify", junk.string()}).code == 2);

    CHECK(run({"surface", "--rank", "1", "--words", "a"}).code == 1);
}

TEST_CASE("surface JSON matches the golden file byte for byte")
{
    Run a = run({"surface", "--rank", "2", "--words", "abAB"});
    Run b = run({"surface", "--rank", "2", "--words", "abAB"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    std::string golden = slurp(std::filesystem::path(WHCONE_SOURCE_DIR) / "tests" / "golden" / "abAB_surface.json");
    REQUIRE(!golden.empty());
    CHECK(a.out == golden);
}
