#include "whcone/whitehead.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace whcone {

WhiteheadSystem whitehead_system(const GraphPair& p)
{
    WhiteheadSystem ws;
    ws.num_cells = p.base.num_vertices;
    ws.vertex_cell = p.base.origin;
    ws.vertex_partner = p.base.inv;
    ws.num_wh_edges = p.circles.num_vertices;
    ws.end_vertex = p.cycle.emap;
    ws.end_edge = p.circles.origin;
    ws.crossing = p.circles.inv;
    return ws;
}

std::vector<std::string> validate_whitehead_system(const WhiteheadSystem& ws)
{
    std::vector<std::string> out;
    const int nv = ws.num_wh_vertices();
    const int ne = ws.num_ends();
    if (static_cast<int>(ws.vertex_partner.size()) != nv) out.push_back("partner table size mismatch");
    if (static_cast<int>(ws.end_edge.size()) != ne || static_cast<int>(ws.crossing.size()) != ne)
        out.push_back("end table size mismatch");
    if (!out.empty()) return out;
    for (int v = 0; v < nv; ++v) {
        if (ws.vertex_cell[v] < 0 || ws.vertex_cell[v] >= ws.num_cells) out.push_back("Wh vertex " + std::to_string(v) + " has no cell");
        int u = ws.vertex_partner[v];
        if (u < 0 || u >= nv || u == v || ws.vertex_partner[u] != v)
            out.push_back("partner of Wh vertex " + std::to_string(v) + " is not a fixed-point free involution");
    }
    if (!out.empty()) return out;
    std::vector<int> count(ws.num_wh_edges, 0);
    for (int c = 0; c < ne; ++c) {
        if (ws.end_vertex[c] < 0 || ws.end_vertex[c] >= nv || ws.end_edge[c] < 0 || ws.end_edge[c] >= ws.num_wh_edges) {
            out.push_back("end " + std::to_string(c) + " out of range");
            continue;
        }
        ++count[ws.end_edge[c]];
        int d = ws.crossing[c];
        if (d < 0 || d >= ne || d == c || ws.crossing[d] != c) {
            out.push_back("crossing at end " + std::to_string(c) + " is not inverse to its reverse crossing");
            continue;
        }
        if (ws.end_vertex[d] < 0 || ws.end_vertex[d] >= nv) continue;
        if (ws.end_vertex[d] != ws.vertex_partner[ws.end_vertex[c]])
            out.push_back("crossing at end " + std::to_string(c) + " does not land on the partner vertex");
    }
    if (!out.empty()) return out;
    for (int k = 0; k < ws.num_wh_edges; ++k)
        if (count[k] != 2) out.push_back("Wh edge " + std::to_string(k) + " has " + std::to_string(count[k]) + " ends");
    if (!out.empty()) return out;
    for (const auto& ends : wh_edge_ends(ws)) {
        int a = ws.end_vertex[ends[0]], b = ws.end_vertex[ends[1]];
        if (a == b) out.push_back("Wh edge " + std::to_string(ws.end_edge[ends[0]]) + " is a loop");
        if (ws.vertex_cell[a] != ws.vertex_cell[b])
            out.push_back("Wh edge " + std::to_string(ws.end_edge[ends[0]]) + " joins two cells");
    }
    return out;
}

std::vector<std::array<int, 2>> wh_edge_ends(const WhiteheadSystem& ws)
{
    std::vector<std::array<int, 2>> out(ws.num_wh_edges, {-1, -1});
    for (int c = 0; c < ws.num_ends(); ++c) {
        auto& slot = out[ws.end_edge[c]];
        if (slot[0] < 0) slot[0] = c;
        else slot[1] = c;
    }
    return out;
}

GraphPair reconstruct_pair(const WhiteheadSystem& ws)
{
    auto problems = validate_whitehead_system(ws);
    if (!problems.empty()) throw RejectedInput("inconsistent Whitehead system: " + problems.front());
    GraphPair p;
    p.base.num_vertices = ws.num_cells;
    p.base.inv = ws.vertex_partner;
    p.base.origin = ws.vertex_cell;
    p.circles.num_vertices = ws.num_wh_edges;
    p.circles.inv = ws.crossing;
    p.circles.origin = ws.end_edge;
    p.cycle.emap = ws.end_vertex;
    p.cycle.vmap.assign(ws.num_wh_edges, -1);
    for (int c = 0; c < ws.num_ends(); ++c) p.cycle.vmap[ws.end_edge[c]] = ws.vertex_cell[ws.end_vertex[c]];
    return p;
}

WhGraph wh_graph(const WhiteheadSystem& ws, int cell)
{
    WhGraph w;
    w.cell = cell;
    std::vector<int> local(ws.num_wh_vertices(), -1);
    for (int v = 0; v < ws.num_wh_vertices(); ++v)
        if (ws.vertex_cell[v] == cell) {
            local[v] = static_cast<int>(w.star.size());
            w.star.push_back(v);
        }
    w.graph.num_vertices = static_cast<int>(w.star.size());
    auto ends = wh_edge_ends(ws);
    for (int k = 0; k < ws.num_wh_edges; ++k) {
        int a = ws.end_vertex[ends[k][0]];
        if (ws.vertex_cell[a] != cell) continue;
        int b = ws.end_vertex[ends[k][1]];
        w.edges.push_back(k);
        w.graph.add_edge(local[a], local[b]);
    }
    return w;
}

std::vector<WhGraph> wh_graphs(const WhiteheadSystem& ws)
{
    // Same result as wh_graph on every cell, in one pass.
    std::vector<WhGraph> out(ws.num_cells);
    for (int x = 0; x < ws.num_cells; ++x) out[x].cell = x;
    std::vector<int> local(ws.num_wh_vertices());
    for (int v = 0; v < ws.num_wh_vertices(); ++v) {
        WhGraph& w = out[ws.vertex_cell[v]];
        local[v] = static_cast<int>(w.star.size());
        w.star.push_back(v);
    }
    for (auto& w : out) w.graph.num_vertices = static_cast<int>(w.star.size());
    auto ends = wh_edge_ends(ws);
    for (int k = 0; k < ws.num_wh_edges; ++k) {
        int a = ws.end_vertex[ends[k][0]], b = ws.end_vertex[ends[k][1]];
        WhGraph& w = out[ws.vertex_cell[a]];
        w.edges.push_back(k);
        w.graph.add_edge(local[a], local[b]);
    }
    return out;
}

WhComponents wh_components(const WhiteheadSystem& ws)
{
    WhComponents out;
    out.vertex_component.assign(ws.num_wh_vertices(), -1);
    out.edge_component.assign(ws.num_wh_edges, -1);
    for (const WhGraph& w : wh_graphs(ws)) {
        auto lab = component_labels(w.graph);
        int base = out.count();
        int k = lab.empty() ? 0 : *std::max_element(lab.begin(), lab.end()) + 1;
        for (int i = 0; i < k; ++i) out.component_cell.push_back(w.cell);
        for (size_t i = 0; i < w.star.size(); ++i) out.vertex_component[w.star[i]] = base + lab[i];
        for (size_t j = 0; j < w.edges.size(); ++j)
            out.edge_component[w.edges[j]] = base + lab[w.graph.origin[2 * j]];
    }
    return out;
}

std::string verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Irreducible: return "Irreducible";
    case Verdict::Disconnected: return "Disconnected";
    case Verdict::HasLeaf: return "HasLeaf";
    case Verdict::HasCutVertex: return "HasCutVertex";
    }
    return "?";
}

namespace {

int canonical(const Graph& g, int e) { return std::min(e, g.inv[e]); }

/// Component labels of g with vertex `removed` deleted (label -1 there).
std::vector<int> labels_without(const Graph& g, int removed, int& count)
{
    std::vector<std::vector<int>> adj(g.num_vertices);
    for (int e = 0; e < g.num_edges(); ++e) adj[g.origin[e]].push_back(g.terminus(e));
    std::vector<int> lab(g.num_vertices, -1);
    count = 0;
    for (int s = 0; s < g.num_vertices; ++s) {
        if (s == removed || lab[s] != -1) continue;
        std::vector<int> stack{s};
        lab[s] = count;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u : adj[v])
                if (u != removed && lab[u] == -1) {
                    lab[u] = count;
                    stack.push_back(u);
                }
        }
        ++count;
    }
    return lab;
}

} // namespace

std::vector<int> cut_vertices(const Graph& g)
{
    int whole = component_count(g);
    std::vector<int> out;
    for (int v = 0; v < g.num_vertices; ++v) {
        int k = 0;
        labels_without(g, v, k);
        if (k > whole) out.push_back(v);
    }
    return out;
}

std::vector<std::vector<int>> blocks_at(const Graph& g, int v)
{
    int k = 0;
    auto lab = labels_without(g, v, k);
    std::vector<std::vector<int>> blocks(k);
    std::vector<char> touches(k, 0);
    for (int e = 0; e < g.num_edges(); ++e) {
        if (canonical(g, e) != e) continue;
        int a = g.origin[e], b = g.terminus(e);
        int side = a != v ? lab[a] : (b != v ? lab[b] : -1);
        if (side < 0) continue;
        blocks[side].push_back(e);
        if (a == v || b == v) touches[side] = 1;
    }
    std::vector<std::vector<int>> out;
    for (int i = 0; i < k; ++i)
        if (touches[i]) out.push_back(std::move(blocks[i]));
    return out;
}

WhClassification classify(const Graph& g)
{
    WhClassification c;
    if (component_count(g) != 1) {
        c.verdict = Verdict::Disconnected;
        c.component_labels = component_labels(g);
        return c;
    }
    auto val = g.valences();
    for (int v = 0; v < g.num_vertices; ++v)
        if (val[v] == 1) {
            c.verdict = Verdict::HasLeaf;
            c.vertex = v;
            return c;
        }
    auto cuts = cut_vertices(g);
    if (!cuts.empty()) {
        c.verdict = Verdict::HasCutVertex;
        c.vertex = cuts.front();
        c.side_one = blocks_at(g, c.vertex).front();
        return c;
    }
    return c;
}

bool witness_certifies(const Graph& g, const WhClassification& c)
{
    switch (c.verdict) {
    case Verdict::Disconnected: {
        if (static_cast<int>(c.component_labels.size()) != g.num_vertices) return false;
        for (int e = 0; e < g.num_edges(); ++e)
            if (c.component_labels[g.origin[e]] != c.component_labels[g.terminus(e)]) return false;
        std::set<int> labels(c.component_labels.begin(), c.component_labels.end());
        return labels.size() != 1;
    }
    case Verdict::HasLeaf:
        return c.vertex >= 0 && c.vertex < g.num_vertices && g.valences()[c.vertex] == 1;
    case Verdict::HasCutVertex: {
        if (c.vertex < 0 || c.vertex >= g.num_vertices || c.side_one.empty()) return false;
        std::set<int> side(c.side_one.begin(), c.side_one.end());
        // Every vertex other than the cut must see edges from one side only, and both sides must be used.
        std::vector<int> seen(g.num_vertices, 0);
        bool other_side = false;
        for (int e = 0; e < g.num_edges(); ++e) {
            int k = canonical(g, e);
            int s = side.count(k) ? 1 : 2;
            if (s == 2) other_side = true;
            int v = g.origin[e];
            if (v == c.vertex) continue;
            if (seen[v] && seen[v] != s) return false;
            seen[v] = s;
        }
        for (int k : c.side_one)
            if (k < 0 || k >= g.num_edges() || canonical(g, k) != k) return false;
        return other_side;
    }
    case Verdict::Irreducible: {
        auto d = g.valences();
        return component_count(g) == 1 && cut_vertices(g).empty() && std::find(d.begin(), d.end(), 1) == d.end();
    }
    }
    return false;
}

Graph wedge(const Graph& a, int va, const Graph& b, int vb)
{
    Graph out = a;
    std::vector<int> vmap(b.num_vertices, -1);
    for (int v = 0; v < b.num_vertices; ++v) vmap[v] = v == vb ? va : out.add_vertex();
    int off = out.num_edges();
    for (int e = 0; e < b.num_edges(); ++e) {
        out.inv.push_back(b.inv[e] + off);
        out.origin.push_back(vmap[b.origin[e]]);
    }
    return out;
}

Graph unwedge(const Graph& g, int v, const std::vector<int>& side_one)
{
    std::set<int> side(side_one.begin(), side_one.end());
    Graph out = g;
    int nv = out.add_vertex();
    for (int e = 0; e < g.num_edges(); ++e)
        if (g.origin[e] == v && !side.count(canonical(g, e))) out.origin[e] = nv;
    return out;
}

std::pair<GraphPair, PairMorphism> unfold_at(const GraphPair& p, int y, int cut, const std::vector<int>& side_one)
{
    WhiteheadSystem ws = whitehead_system(p);
    if (y < 0 || y >= ws.num_cells) throw RejectedInput("unfold_at: vertex out of range");
    if (cut < 0 || cut >= ws.num_wh_vertices() || ws.vertex_cell[cut] != y)
        throw RejectedInput("unfold_at: cut is not a star element at the vertex");

    std::vector<int> side(ws.num_wh_edges, 0);
    for (int k = 0; k < ws.num_wh_edges; ++k)
        if (p.cycle.vmap[k] == y) side[k] = 2;
    for (int k : side_one) {
        if (k < 0 || k >= ws.num_wh_edges || p.cycle.vmap[k] != y)
            throw RejectedInput("unfold_at: side lists a Wh edge not at the vertex");
        if (side[k] == 1) throw RejectedInput("unfold_at: side lists a Wh edge twice");
        side[k] = 1;
    }

    bool cut_meets[3] = {false, false, false};
    std::vector<int> vside(ws.num_wh_vertices(), 0);
    for (int c = 0; c < ws.num_ends(); ++c) {
        int v = ws.end_vertex[c];
        if (ws.vertex_cell[v] != y) continue;
        int s = side[ws.end_edge[c]];
        if (v == cut) {
            cut_meets[s] = true;
            continue;
        }
        if (vside[v] && vside[v] != s)
            throw RejectedInput("unfold_at: star element " + std::to_string(v) + " has Wh edges on both sides");
        vside[v] = s;
    }
    if (!cut_meets[1] || !cut_meets[2]) throw RejectedInput("unfold_at: both sides must meet the cut vertex");

    const int y2 = ws.num_cells;
    const int ne = ws.num_wh_vertices();
    const int partner = ws.vertex_partner[cut];
    const int new_cut = cut < partner ? ne : ne + 1;
    const int new_partner = cut < partner ? ne + 1 : ne;

    WhiteheadSystem out = ws;
    out.num_cells = ws.num_cells + 1;
    for (int v = 0; v < ne; ++v)
        if (v != cut && ws.vertex_cell[v] == y && vside[v] == 2) out.vertex_cell[v] = y2;
    out.vertex_cell.resize(ne + 2);
    out.vertex_partner.resize(ne + 2);
    out.vertex_cell[new_cut] = y2;
    out.vertex_cell[new_partner] = out.vertex_cell[partner];
    out.vertex_partner[new_cut] = new_partner;
    out.vertex_partner[new_partner] = new_cut;
    for (int c = 0; c < ws.num_ends(); ++c) {
        int v = ws.end_vertex[c];
        if (v == cut && side[ws.end_edge[c]] == 2) out.end_vertex[c] = new_cut;
        if (v == partner && side[ws.end_edge[ws.crossing[c]]] == 2) out.end_vertex[c] = new_partner;
    }

    GraphPair q = reconstruct_pair(out);
    PairMorphism m;
    m.source = q;
    m.target = p;
    m.map.base.vmap.resize(q.base.num_vertices);
    std::iota(m.map.base.vmap.begin(), m.map.base.vmap.end(), 0);
    m.map.base.vmap[y2] = y;
    m.map.base.emap.resize(q.base.num_edges());
    std::iota(m.map.base.emap.begin(), m.map.base.emap.end(), 0);
    m.map.base.emap[new_cut] = cut;
    m.map.base.emap[new_partner] = partner;
    m.map.cycle = identity_morphism(q.circles).map;
    return {q, m};
}

UnfoldResult unfold_to_locally_irreducible(const GraphPair& p, int budget)
{
    UnfoldResult r;
    r.pair = p;
    r.to_input = identity_pair_morphism(p);
    for (;;) {
        WhiteheadSystem ws = whitehead_system(r.pair);
        auto graphs = wh_graphs(ws);
        std::vector<WhClassification> cls;
        for (const auto& w : graphs) cls.push_back(classify(w.graph));
        for (size_t x = 0; x < cls.size(); ++x)
            if (cls[x].verdict == Verdict::Disconnected || cls[x].verdict == Verdict::HasLeaf) {
                r.witness_vertex = static_cast<int>(x);
                r.witness = cls[x];
                return r;
            }
        int y = -1;
        for (size_t x = 0; x < cls.size() && y < 0; ++x)
            if (cls[x].verdict == Verdict::HasCutVertex) y = static_cast<int>(x);
        if (y < 0) {
            r.locally_irreducible = true;
            return r;
        }
        if (budget >= 0 && static_cast<int>(r.steps.size()) >= budget) {
            r.budget_exhausted = true;
            return r;
        }
        const WhGraph& w = graphs[y];
        UnfoldStep step{y, w.star[cls[y].vertex], {}};
        for (int k : cls[y].side_one) step.side_one.push_back(w.edges[k / 2]);
        auto [q, m] = unfold_at(r.pair, y, step.cut, step.side_one);
        r.to_input = compose(m, r.to_input);
        r.pair = q;
        r.steps.push_back(step);
    }
}

bool is_locally_irreducible(const GraphPair& p)
{
    for (const auto& w : wh_graphs(whitehead_system(p)))
        if (classify(w.graph).verdict != Verdict::Irreducible) return false;
    return true;
}

bool fold_wedge_consistent(const PairMorphism& m, int e1, int e2)
{
    const GraphPair& p = m.source;
    const GraphPair& q = m.target;
    WhiteheadSystem a = whitehead_system(p);
    WhiteheadSystem b = whitehead_system(q);
    if (a.num_wh_edges != b.num_wh_edges || a.num_ends() != b.num_ends()) return false;
    const auto& em = m.map.base.emap;
    const auto& vm = m.map.base.vmap;
    // Edge-bijective: every Wh edge and end is kept, and ends land on the image star element.
    for (int c = 0; c < a.num_ends(); ++c) {
        if (m.map.cycle.emap[c] != c) return false;
        if (b.end_edge[c] != a.end_edge[c]) return false;
        if (b.end_vertex[c] != em[a.end_vertex[c]]) return false;
    }
    for (int v = 0; v < a.num_wh_vertices(); ++v)
        if (b.vertex_cell[em[v]] != vm[a.vertex_cell[v]]) return false;
    // The only identifications are e1~e2 and their reverses.
    std::map<int, std::vector<int>> fibres;
    for (int v = 0; v < a.num_wh_vertices(); ++v) fibres[em[v]].push_back(v);
    if (static_cast<int>(fibres.size()) != b.num_wh_vertices()) return false;
    std::set<std::vector<int>> merged;
    for (auto& [img, pre] : fibres)
        if (pre.size() > 1) merged.insert(pre);
    std::vector<int> f1{std::min(e1, e2), std::max(e1, e2)};
    int r1 = p.base.inv[e1], r2 = p.base.inv[e2];
    std::vector<int> f2{std::min(r1, r2), std::max(r1, r2)};
    if (merged != std::set<std::vector<int>>{f1, f2}) return false;
    // The image of inv(e1) cuts its Whitehead graph once both reverses are used.
    auto used = [&](int v) { return std::count(a.end_vertex.begin(), a.end_vertex.end(), v) > 0; };
    if (used(r1) && used(r2)) {
        int img = em[r1];
        WhGraph w = wh_graph(b, b.vertex_cell[img]);
        int local = static_cast<int>(std::find(w.star.begin(), w.star.end(), img) - w.star.begin());
        auto cuts = cut_vertices(w.graph);
        if (!std::binary_search(cuts.begin(), cuts.end(), local)) return false;
    }
    return true;
}

std::vector<std::string> rose_edge_names(int rank)
{
    std::vector<std::string> out;
    for (int i = 0; i < rank; ++i) {
        out.emplace_back(1, static_cast<char>('a' + i));
        out.emplace_back(1, static_cast<char>('A' + i));
    }
    return out;
}

std::string wh_graph_to_dot(const WhiteheadSystem& ws, int cell, const std::vector<std::string>& names)
{
    WhGraph w = wh_graph(ws, cell);
    std::ostringstream os;
    os << "graph Wh_" << cell << " {\n";
    for (int v : w.star) {
        os << "  e" << v << " [label=\"";
        if (v < static_cast<int>(names.size())) os << names[v];
        else os << v;
        os << "\"];\n";
    }
    for (size_t k = 0; k < w.edges.size(); ++k)
        os << "  e" << w.star[w.graph.origin[2 * k]] << " -- e" << w.star[w.graph.terminus(2 * k)] << " [label=\""
           << w.edges[k] << "\"];\n";
    os << "}\n";
    return os.str();
}

} // namespace whcone
