#include "cli.hpp"

#include "whcone/checker.hpp"
#include "whcone/serialize.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace whcone {

namespace {

struct Options
{
    int rank = -1;
    std::string words;
    std::string pair_file;
    long long piece_cap = PieceCaps{}.max_pieces;
    long long star_cap = PieceCaps{}.max_stars;
    int component_cap = PieceCaps{}.max_component_edges;
    int face_budget = SurfaceBudgets{}.face_budget;
    int unfold_budget = -1;
    long long search_budget = SurfaceBudgets{}.search_budget;
    std::string out_path;
    std::string format;
    bool maximize = false;
    bool minimize = false;
    std::string lp_file;
    std::string cert_file;
    bool top_mode = false;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw RejectedInput("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_words(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    for (const auto& w : out)
        if (w.empty()) throw RejectedInput("empty word in --words");
    return out;
}

GraphPair input_pair(const Options& o)
{
    if (!o.pair_file.empty()) {
        if (o.rank >= 0 || !o.words.empty()) throw RejectedInput("give either --pair or --rank/--words");
        GraphPair p = pair_from_json(parse_json_text(read_file(o.pair_file)));
        auto problems = validate_pair(p);
        if (!problems.empty()) throw RejectedInput("invalid pair: " + problems.front());
        return p;
    }
    if (o.rank < 1 || o.words.empty()) throw RejectedInput("need --rank and --words, or --pair");
    return parse_words(o.rank, split_words(o.words));
}

PieceCaps caps_of(const Options& o)
{
    PieceCaps c;
    c.max_pieces = o.piece_cap;
    c.max_stars = o.star_cap;
    c.max_component_edges = o.component_cap;
    return c;
}

std::vector<std::string> names_for(const Options& o)
{
    if (o.pair_file.empty() && o.rank > 0) return rose_edge_names(o.rank);
    return {};
}

void emit(const Options& o, const std::string& text, std::ostream& out)
{
    if (o.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out_path);
    if (!f) throw RejectedInput("cannot write " + o.out_path);
    f << text;
}

std::string witness_text(const WhClassification& c, int vertex)
{
    switch (c.verdict) {
    case Verdict::HasLeaf: return "leaf at vertex " + std::to_string(vertex);
    case Verdict::Disconnected: return "disconnected Whitehead graph at vertex " + std::to_string(vertex);
    case Verdict::HasCutVertex: return "cut vertex at vertex " + std::to_string(vertex);
    case Verdict::Irreducible: break;
    }
    return "irreducible";
}

int cmd_parse(const Options& o, std::ostream& out)
{
    emit(o, dump(to_json(input_pair(o))), out);
    return 0;
}

int cmd_whitehead(const Options& o, std::ostream& out)
{
    GraphPair p = input_pair(o);
    WhiteheadSystem ws = whitehead_system(p);
    if (o.format == "json") {
        emit(o, dump({{"whitehead", to_json(ws)}, {"cells", classification_to_json(ws)}}), out);
        return 0;
    }
    std::ostringstream os;
    auto names = names_for(o);
    for (const WhGraph& w : wh_graphs(ws)) {
        WhClassification c = classify(w.graph);
        os << "// vertex " << w.cell << ": " << verdict_name(c.verdict) << "\n";
        os << wh_graph_to_dot(ws, w.cell, names);
    }
    emit(o, os.str(), out);
    return 0;
}

int cmd_analyze(const Options& o, std::ostream& out)
{
    GraphPair p = input_pair(o);
    UnfoldResult r = unfold_to_locally_irreducible(p, o.unfold_budget);
    if (r.budget_exhausted) throw CapExceeded("unfold budget exhausted after " + std::to_string(r.steps.size()) + " unfolds");
    std::ostringstream os;
    if (r.locally_irreducible)
        os << "Irreducible (locally irreducible after " << r.steps.size() << " unfolds)\n";
    else
        os << "Reducible (" << witness_text(r.witness, r.witness_vertex) << ")\n";
    emit(o, os.str(), out);
    return 0;
}

ConeSystem cone_of(const Options& o, UnfoldResult& r)
{
    r = unfold_to_locally_irreducible(input_pair(o), o.unfold_budget);
    if (r.budget_exhausted) throw CapExceeded("unfold budget exhausted");
    if (!r.locally_irreducible) throw RejectedInput("pair is reducible (" + witness_text(r.witness, r.witness_vertex) + ")");
    return cone_for(whitehead_system(r.pair), caps_of(o), o.top_mode ? ChiMode::Top : ChiMode::Middle);
}

int cmd_cone(const Options& o, std::ostream& out)
{
    UnfoldResult r;
    ConeSystem cone = cone_of(o, r);
    if (o.format == "json") {
        emit(o, dump(cone_to_json(cone)), out);
        return 0;
    }
    std::ostringstream os;
    if (o.format != "lp")
        os << "\\ pieces " << cone.pieces.size() << " stars " << cone.stars.size() << " gluing rows "
           << cone.gluing_rows.size() << " admissibility rows " << cone.admissibility_rows.size() << "\n";
    os << lp_to_text(rank_program(cone, true));
    emit(o, os.str(), out);
    return 0;
}

int cmd_rank(const Options& o, std::ostream& out)
{
    if (o.maximize && o.minimize) throw RejectedInput("give only one of --max and --min");
    LPResult res;
    if (!o.lp_file.empty()) {
        res = solve_lp(parse_lp_text(read_file(o.lp_file)));
    } else {
        UnfoldResult r;
        ConeSystem cone = cone_of(o, r);
        res = o.minimize ? minimize_rank(cone) : maximize_rank(cone);
    }
    if (o.format == "json") {
        emit(o, dump(to_json(res)), out);
        return res.status == LPStatus::Optimal ? 0 : 1;
    }
    std::ostringstream os;
    if (res.status != LPStatus::Optimal) {
        os << status_name(res.status) << "\n";
        emit(o, os.str(), out);
        return 1;
    }
    os << to_fraction(res.optimum) << "\n";
    os << "vertex:";
    for (size_t j = 0; j < res.vertex.size(); ++j)
        if (res.vertex[j] != 0) os << " s" << j << "=" << to_fraction(res.vertex[j]);
    os << "\n";
    emit(o, os.str(), out);
    return 0;
}

int cmd_surface(const Options& o, std::ostream& out, std::ostream& err)
{
    SurfaceBudgets b;
    b.caps = caps_of(o);
    b.face_budget = o.face_budget;
    b.unfold_budget = o.unfold_budget;
    b.search_budget = o.search_budget;
    SurfaceSearch s = find_surface(input_pair(o), b);
    if (s.status == SearchStatus::Reducible) {
        err << "Reducible (" << witness_text(s.unfold.witness, s.unfold.witness_vertex) << ")\n";
        return 1;
    }
    if (s.status == SearchStatus::ZeroCone) {
        err << "ZeroCone\n";
        return 1;
    }
    err << "rho+ " << to_fraction(s.lp.optimum) << ", " << s.face_vertices << " face vertices"
        << (s.face_exhaustive ? " (all)" : "") << ", " << s.points_tried << " points tried\n";
    if (!s.certificate) {
        err << "no fatform found within budget\n";
        return 0;
    }
    const SurfaceCertificate& c = *s.certificate;
    err << "fatform: euler " << c.euler << ", boundary " << c.boundary_count << ", degree " << c.degree << "\n";
    emit(o, dump(to_json(c)), out);
    return 0;
}

int cmd_verify(const Options& o, std::ostream& out)
{
    std::string text = read_file(o.cert_file);
    CheckReport r = check_certificate(text);
    if (r.ok()) {
        out << "ok\n";
        return 0;
    }
    for (const auto& i : r.issues) out << i.category << ": " << i.message << "\n";
    return r.categories() == std::set<std::string>{"format"} ? 2 : 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Whitehead graphs, P-star cones and surface certificates for graph pairs"};
    app.require_subcommand(1);
    Options o;

    auto input_flags = [&](CLI::App* c) {
        c->add_option("--rank", o.rank, "Rank of the rose");
        c->add_option("--words", o.words, "Comma-separated cyclic words, a..z with capitals as inverses");
        c->add_option("--pair", o.pair_file, "Pair JSON file");
        c->add_option("--out", o.out_path, "Write output here instead of stdout");
        c->add_option("--format", o.format, "json, dot or lp")->check(CLI::IsMember({"json", "dot", "lp"}));
        c->add_option("--unfold-budget", o.unfold_budget, "Maximum unfold steps");
    };
    auto cap_flags = [&](CLI::App* c) {
        c->add_option("--piece-cap", o.piece_cap, "Maximum number of pieces");
        c->add_option("--star-cap", o.star_cap, "Maximum number of P-stars");
        c->add_option("--component-cap", o.component_cap, "Maximum Wh edges per component");
        c->add_flag("--top", o.top_mode, "Evaluate chi_- on the top graph");
    };

    auto* parse = app.add_subcommand("parse", "Emit the pair as JSON");
    input_flags(parse);
    auto* wh = app.add_subcommand("whitehead", "Whitehead graphs as DOT with per-vertex classification");
    input_flags(wh);
    auto* analyze = app.add_subcommand("analyze", "Irreducibility verdict with witness");
    input_flags(analyze);
    auto* cone = app.add_subcommand("cone", "Cone dimensions and LP export");
    input_flags(cone);
    cap_flags(cone);
    auto* rank = app.add_subcommand("rank", "Maximal or minimal projective rank as an exact fraction");
    input_flags(rank);
    cap_flags(rank);
    rank->add_flag("--max", o.maximize, "Maximise (default)");
    rank->add_flag("--min", o.minimize, "Minimise");
    rank->add_option("--lp", o.lp_file, "Solve an LP text file instead");
    auto* surface = app.add_subcommand("surface", "Search the optimal face for a surface certificate");
    input_flags(surface);
    cap_flags(surface);
    surface->add_option("--face-budget", o.face_budget, "Maximum optimal-face vertices to try");
    surface->add_option("--search-budget", o.search_budget, "Maximum fatform search nodes per point");
    auto* verify = app.add_subcommand("verify", "Re-check a certificate file");
    verify->add_option("certificate", o.cert_file, "Certificate JSON")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (*parse) return cmd_parse(o, out);
        if (*wh) return cmd_whitehead(o, out);
        if (*analyze) return cmd_analyze(o, out);
        if (*cone) return cmd_cone(o, out);
        if (*rank) return cmd_rank(o, out);
        if (*surface) return cmd_surface(o, out, err);
        if (*verify) return cmd_verify(o, out);
    } catch (const CapExceeded& e) {
        err << "aborted: " << e.what() << "\n";
        return 3;
    } catch (const RejectedInput& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 2;
}

} // namespace whcone
