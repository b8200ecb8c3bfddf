#include "whcone/serialize.hpp"

namespace whcone {

Json to_json(const Graph& g)
{
    Json vertices = Json::array();
    for (int v = 0; v < g.num_vertices; ++v) vertices.push_back(v);
    Json edges = Json::array();
    for (int e = 0; e < g.num_edges(); ++e) edges.push_back({{"id", e}, {"inv", g.inv[e]}, {"origin", g.origin[e]}});
    return {{"vertices", vertices}, {"edges", edges}};
}

Json to_json(const GraphMap& m) { return {{"vmap", m.vmap}, {"emap", m.emap}}; }

Json to_json(const GraphPair& p)
{
    return {{"base", to_json(p.base)}, {"circles", to_json(p.circles)}, {"vmap", p.cycle.vmap}, {"emap", p.cycle.emap}};
}

Json to_json(const PairMap& m) { return {{"base", to_json(m.base)}, {"cycle", to_json(m.cycle)}}; }

Json to_json(const WhiteheadSystem& ws)
{
    Json crossings = Json::array();
    for (int c = 0; c < ws.num_ends(); ++c)
        if (c < ws.crossing[c]) crossings.push_back({c, ws.crossing[c]});
    return {{"cells", ws.num_cells},         {"vertex_cell", ws.vertex_cell}, {"vertex_partner", ws.vertex_partner},
            {"wh_edges", ws.num_wh_edges},   {"end_vertex", ws.end_vertex},   {"end_edge", ws.end_edge},
            {"crossings", crossings}};
}

Json to_json(const Piece& p)
{
    return {{"host", p.host}, {"cell", p.cell}, {"edges", p.edges}, {"vertices", p.vertices}, {"blocks", p.blocks}};
}

Json to_json(const PStar& s) { return {{"center", s.center}, {"assignment", s.assignment}}; }

Json to_json(const UnfoldStep& s) { return {{"vertex", s.vertex}, {"cut", s.cut}, {"side_one", s.side_one}}; }

Json to_json(const DImmersion& d)
{
    return {{"source", to_json(d.source)}, {"mid", to_json(d.mid)}, {"target", to_json(d.target)},
            {"f1", to_json(d.f1)},         {"f2", to_json(d.f2)}};
}

Json to_json(const SurfaceComponent& s)
{
    return {{"euler", s.euler}, {"boundary", s.boundary}, {"orientable", s.orientable}, {"genus", s.genus},
            {"crosscaps", s.crosscaps}};
}

Json to_json(const LPResult& r)
{
    return {{"status", status_name(r.status)}, {"optimum", to_fraction(r.optimum)}, {"vertex", to_fractions(r.vertex)},
            {"basis", r.basis}, {"pivots", r.pivots}};
}

namespace {

template <class T>
Json list(const std::vector<T>& v)
{
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_json(x));
    return out;
}

} // namespace

Json to_json(const SurfaceCertificate& c)
{
    Json stars = Json::array();
    for (size_t i = 0; i < c.stars.size(); ++i) {
        Json s = to_json(c.stars[i]);
        s["id"] = c.star_ids[i];
        stars.push_back(s);
    }
    Json vec = Json::array();
    for (auto [s, k] : c.vector) vec.push_back({{"star", s}, {"count", k}});
    Json folds = Json::array();
    for (auto [a, b] : c.fatform.fold_sequence) folds.push_back({a, b});
    Json gluing = Json::array();
    for (const auto& g : c.gluing) gluing.push_back({g[0], g[1]});
    Json fat = {{"pair", to_json(c.fatform.pair)},
                {"unfold_steps", list(c.fatform.unfold_steps)},
                {"to_mid", to_json(c.fatform.to_mid)},
                {"fold_sequence", folds},
                {"replay_iso", to_json(c.fatform.replay_iso)},
                {"surfaces", list(c.fatform.surfaces)}};
    return {{"format", "whcone-certificate"},
            {"version", 1},
            {"reference", to_json(c.reference)},
            {"unfolded", to_json(c.unfolded)},
            {"unfold_map", to_json(c.unfold_map)},
            {"unfold_steps", list(c.unfold_steps)},
            {"witness", to_json(c.witness)},
            {"pieces", list(c.pieces)},
            {"stars", stars},
            {"vertex_star", c.vertex_star},
            {"vector", vec},
            {"gluing", gluing},
            {"degree", c.degree},
            {"euler", c.euler},
            {"boundary_count", c.boundary_count},
            {"chi2", c.chi2},
            {"rho", to_fraction(c.rho)},
            {"rho_max", to_fraction(c.rho_max)},
            {"lp_basis", c.lp_basis},
            {"num_stars", c.num_stars},
            {"fatform", fat}};
}

Json cone_to_json(const ConeSystem& cone)
{
    auto sparse = [](const std::vector<SparseRow>& rows) {
        Json out = Json::array();
        for (const auto& r : rows) {
            Json row = Json::array();
            for (auto [v, c] : r) row.push_back({v, c});
            out.push_back(row);
        }
        return out;
    };
    Json keys = Json::array();
    for (const auto& k : cone.gluing_keys) keys.push_back({k.left, k.vertex, k.right});
    return {{"num_pieces", cone.pieces.size()},
            {"num_stars", cone.stars.size()},
            {"pieces", list(cone.pieces)},
            {"stars", list(cone.stars)},
            {"gluing_keys", keys},
            {"gluing_rows", sparse(cone.gluing_rows)},
            {"reference_edge", cone.reference_edge},
            {"admissibility_edges", cone.admissibility_edges},
            {"admissibility_rows", sparse(cone.admissibility_rows)},
            {"n", cone.n_functional},
            {"chi2", cone.chi2_functional},
            {"chi_mode", cone.mode == ChiMode::Middle ? "middle" : "top"}};
}

Json classification_to_json(const WhiteheadSystem& ws)
{
    Json out = Json::array();
    for (const WhGraph& w : wh_graphs(ws)) {
        WhClassification c = classify(w.graph);
        Json j = {{"cell", w.cell}, {"verdict", verdict_name(c.verdict)}, {"star", w.star}, {"edges", w.edges}};
        if (c.vertex >= 0) j["vertex"] = w.star[c.vertex];
        if (c.verdict == Verdict::Disconnected) j["component_labels"] = c.component_labels;
        if (c.verdict == Verdict::HasCutVertex) {
            std::vector<int> side;
            for (int k : c.side_one) side.push_back(w.edges[k / 2]);
            j["side_one"] = side;
        }
        out.push_back(j);
    }
    return out;
}

namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw RejectedInput(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::vector<int> ints(const Json& j, const char* key)
{
    const Json& v = field(j, key);
    if (!v.is_array()) throw RejectedInput(std::string("field \"") + key + "\" is not an array");
    std::vector<int> out;
    for (const auto& x : v) {
        if (!x.is_number_integer()) throw RejectedInput(std::string("field \"") + key + "\" has a non-integer entry");
        out.push_back(x.get<int>());
    }
    return out;
}

int integer(const Json& j, const char* key)
{
    const Json& v = field(j, key);
    if (!v.is_number_integer()) throw RejectedInput(std::string("field \"") + key + "\" is not an integer");
    return v.get<int>();
}

} // namespace

Graph graph_from_json(const Json& j)
{
    Graph g;
    std::vector<int> vertices = ints(j, "vertices");
    for (size_t v = 0; v < vertices.size(); ++v)
        if (vertices[v] != static_cast<int>(v)) throw RejectedInput("vertex ids must be 0..n-1 in order");
    g.num_vertices = static_cast<int>(vertices.size());
    const Json& edges = field(j, "edges");
    if (!edges.is_array()) throw RejectedInput("field \"edges\" is not an array");
    for (const auto& e : edges) {
        if (!e.is_object()) throw RejectedInput("edge entries must be objects");
        if (integer(e, "id") != g.num_edges()) throw RejectedInput("edge ids must be 0..m-1 in order");
        g.inv.push_back(integer(e, "inv"));
        g.origin.push_back(integer(e, "origin"));
    }
    return g;
}

GraphMap graph_map_from_json(const Json& j) { return {ints(j, "vmap"), ints(j, "emap")}; }

GraphPair pair_from_json(const Json& j)
{
    return {graph_from_json(field(j, "base")), graph_from_json(field(j, "circles")), graph_map_from_json(j)};
}

PairMap pair_map_from_json(const Json& j) { return {graph_map_from_json(field(j, "base")), graph_map_from_json(field(j, "cycle"))}; }

WhiteheadSystem whitehead_from_json(const Json& j)
{
    WhiteheadSystem ws;
    ws.num_cells = integer(j, "cells");
    ws.vertex_cell = ints(j, "vertex_cell");
    ws.vertex_partner = ints(j, "vertex_partner");
    ws.num_wh_edges = integer(j, "wh_edges");
    ws.end_vertex = ints(j, "end_vertex");
    ws.end_edge = ints(j, "end_edge");
    ws.crossing.assign(ws.end_vertex.size(), -1);
    const Json& cr = field(j, "crossings");
    if (!cr.is_array()) throw RejectedInput("field \"crossings\" is not an array");
    const int ne = static_cast<int>(ws.crossing.size());
    for (const auto& pr : cr) {
        if (!pr.is_array() || pr.size() != 2 || !pr[0].is_number_integer() || !pr[1].is_number_integer())
            throw RejectedInput("crossing entries must be integer pairs");
        int a = pr[0].get<int>(), b = pr[1].get<int>();
        if (a < 0 || b < 0 || a >= ne || b >= ne) throw RejectedInput("crossing end out of range");
        ws.crossing[a] = b;
        ws.crossing[b] = a;
    }
    return ws;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json_text(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw RejectedInput(std::string("malformed JSON: ") + e.what());
    }
}

} // namespace whcone
