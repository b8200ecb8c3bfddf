#include "whcone/graph.hpp"

#include "isomorphism.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace whcone {

int Graph::add_edge(int from, int to)
{
    int e = num_edges();
    inv.push_back(e + 1);
    inv.push_back(e);
    origin.push_back(from);
    origin.push_back(to);
    return e;
}

std::vector<std::vector<int>> Graph::stars() const
{
    std::vector<std::vector<int>> st(num_vertices);
    for (int e = 0; e < num_edges(); ++e) st[origin[e]].push_back(e);
    return st;
}

std::vector<int> Graph::valences() const
{
    std::vector<int> val(num_vertices, 0);
    for (int e = 0; e < num_edges(); ++e) ++val[origin[e]];
    return val;
}

std::vector<GraphViolation> validate_graph(const Graph& g)
{
    std::vector<GraphViolation> out;
    auto add = [&](GraphViolationKind k, int e, const std::string& msg) { out.push_back({k, e, msg}); };
    if (g.num_vertices < 0) add(GraphViolationKind::SizeMismatch, -1, "negative vertex count");
    if (g.origin.size() < g.inv.size()) {
        for (size_t e = g.origin.size(); e < g.inv.size(); ++e)
            add(GraphViolationKind::OriginMissing, static_cast<int>(e), "edge " + std::to_string(e) + " has no origin");
    } else if (g.origin.size() > g.inv.size()) {
        add(GraphViolationKind::SizeMismatch, -1, "origin table longer than edge table");
    }
    const int n = g.num_edges();
    for (int e = 0; e < n; ++e) {
        int f = g.inv[e];
        if (f < 0 || f >= n) {
            add(GraphViolationKind::InvolutionOutOfRange, e, "inv(" + std::to_string(e) + ") out of range");
            continue;
        }
        if (f == e) add(GraphViolationKind::InvolutionFixedPoint, e, "inv fixes edge " + std::to_string(e));
        else if (g.inv[f] != e)
            add(GraphViolationKind::InvolutionNotInvolutive, e, "inv(inv(" + std::to_string(e) + ")) != " + std::to_string(e));
    }
    for (size_t e = 0; e < std::min(g.origin.size(), g.inv.size()); ++e) {
        int v = g.origin[e];
        if (v < 0 || v >= g.num_vertices)
            add(GraphViolationKind::OriginOutOfRange, static_cast<int>(e), "origin of edge " + std::to_string(e) + " out of range");
    }
    return out;
}

std::vector<MorphismViolation> validate_morphism(const GraphMorphism& m)
{
    std::vector<MorphismViolation> out;
    auto add = [&](MorphismViolationKind k, int i, const std::string& msg) { out.push_back({k, i, msg}); };
    if (!validate_graph(m.domain).empty()) add(MorphismViolationKind::BadDomainGraph, -1, "domain is not a valid graph");
    if (!validate_graph(m.codomain).empty()) add(MorphismViolationKind::BadCodomainGraph, -1, "codomain is not a valid graph");
    if (!out.empty()) return out;
    const Graph& a = m.domain;
    const Graph& b = m.codomain;
    if (static_cast<int>(m.map.vmap.size()) != a.num_vertices || static_cast<int>(m.map.emap.size()) != a.num_edges()) {
        add(MorphismViolationKind::MapSizeMismatch, -1, "map sizes do not match domain");
        return out;
    }
    bool ranges_ok = true;
    for (int v = 0; v < a.num_vertices; ++v)
        if (m.map.vmap[v] < 0 || m.map.vmap[v] >= b.num_vertices) {
            add(MorphismViolationKind::VertexOutOfRange, v, "vertex " + std::to_string(v) + " maps out of range");
            ranges_ok = false;
        }
    for (int e = 0; e < a.num_edges(); ++e)
        if (m.map.emap[e] < 0 || m.map.emap[e] >= b.num_edges()) {
            add(MorphismViolationKind::EdgeOutOfRange, e, "edge " + std::to_string(e) + " maps out of range");
            ranges_ok = false;
        }
    if (!ranges_ok) return out;
    for (int e = 0; e < a.num_edges(); ++e) {
        if (m.map.emap[a.inv[e]] != b.inv[m.map.emap[e]])
            add(MorphismViolationKind::InvolutionNotPreserved, e, "edge " + std::to_string(e) + " does not commute with inv");
        if (m.map.vmap[a.origin[e]] != b.origin[m.map.emap[e]])
            add(MorphismViolationKind::OriginNotPreserved, e, "edge " + std::to_string(e) + " does not commute with origin");
    }
    return out;
}

int euler_characteristic(const Graph& g) { return g.num_vertices - g.num_edges() / 2; }

std::vector<int> component_labels(const Graph& g)
{
    std::vector<int> parent(g.num_vertices);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (int e = 0; e < g.num_edges(); ++e) {
        int a = find(g.origin[e]);
        int b = find(g.terminus(e));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<int> label(g.num_vertices, -1);
    std::map<int, int> ids;
    for (int v = 0; v < g.num_vertices; ++v) {
        int r = find(v);
        auto it = ids.emplace(r, static_cast<int>(ids.size())).first;
        label[v] = it->second;
    }
    return label;
}

int component_count(const Graph& g)
{
    auto lab = component_labels(g);
    return lab.empty() ? 0 : *std::max_element(lab.begin(), lab.end()) + 1;
}

bool is_star_injective(const Graph& domain, const GraphMap& map)
{
    for (const auto& st : domain.stars()) {
        std::vector<int> img;
        img.reserve(st.size());
        for (int e : st) img.push_back(map.emap[e]);
        std::sort(img.begin(), img.end());
        if (std::adjacent_find(img.begin(), img.end()) != img.end()) return false;
    }
    return true;
}

bool is_immersion(const GraphMorphism& m) { return is_star_injective(m.domain, m.map); }

GraphMorphism identity_morphism(const Graph& g)
{
    GraphMorphism m{g, g, {}};
    m.map.vmap.resize(g.num_vertices);
    m.map.emap.resize(g.num_edges());
    std::iota(m.map.vmap.begin(), m.map.vmap.end(), 0);
    std::iota(m.map.emap.begin(), m.map.emap.end(), 0);
    return m;
}

GraphMap compose_maps(const GraphMap& first, const GraphMap& second)
{
    GraphMap out;
    out.vmap.reserve(first.vmap.size());
    out.emap.reserve(first.emap.size());
    for (int v : first.vmap) out.vmap.push_back(second.vmap.at(v));
    for (int e : first.emap) out.emap.push_back(second.emap.at(e));
    return out;
}

GraphMorphism compose(const GraphMorphism& first, const GraphMorphism& second)
{
    if (!(first.codomain == second.domain)) throw RejectedInput("compose: codomain of first is not domain of second");
    return {first.domain, second.codomain, compose_maps(first.map, second.map)};
}

std::pair<Graph, GraphMorphism> fold(const Graph& g, int e1, int e2)
{
    const int n = g.num_edges();
    if (e1 < 0 || e2 < 0 || e1 >= n || e2 >= n) throw RejectedInput("fold: edge out of range");
    if (e1 == e2) throw RejectedInput("fold: edges must be distinct");
    if (g.inv[e1] == e2) throw RejectedInput("fold: edges are reverses of each other");
    if (g.origin[e1] != g.origin[e2]) throw RejectedInput("fold: edges do not share an origin");

    // Edge classes: {e1,e2}, {inv e1, inv e2}; vertex classes: {t(e1), t(e2)}.
    std::vector<int> erep(n);
    std::iota(erep.begin(), erep.end(), 0);
    auto merge_e = [&](int a, int b) {
        int r = std::min(erep[a], erep[b]);
        erep[a] = erep[b] = r;
    };
    merge_e(e1, e2);
    merge_e(g.inv[e1], g.inv[e2]);
    std::vector<int> vrep(g.num_vertices);
    std::iota(vrep.begin(), vrep.end(), 0);
    {
        int a = g.terminus(e1), b = g.terminus(e2);
        int r = std::min(a, b);
        vrep[a] = vrep[b] = r;
    }

    GraphMap q;
    q.vmap.assign(g.num_vertices, -1);
    q.emap.assign(n, -1);
    Graph out;
    for (int v = 0; v < g.num_vertices; ++v)
        if (vrep[v] == v) q.vmap[v] = out.num_vertices++;
    for (int v = 0; v < g.num_vertices; ++v) q.vmap[v] = q.vmap[vrep[v]];
    int next = 0;
    for (int e = 0; e < n; ++e)
        if (erep[e] == e) q.emap[e] = next++;
    for (int e = 0; e < n; ++e) q.emap[e] = q.emap[erep[e]];
    out.inv.assign(next, -1);
    out.origin.assign(next, -1);
    for (int e = 0; e < n; ++e) {
        out.inv[q.emap[e]] = q.emap[g.inv[e]];
        out.origin[q.emap[e]] = q.vmap[g.origin[e]];
    }
    if (!validate_graph(out).empty()) throw InternalError("fold produced an invalid graph");
    GraphMorphism m{g, out, q};
    return {out, m};
}

ImmersionFactorization fold_to_immersion(const GraphMorphism& m)
{
    ImmersionFactorization r{identity_morphism(m.domain), m, {}};
    for (;;) {
        const Graph& cur = r.immersion.domain;
        const GraphMap& im = r.immersion.map;
        auto st = cur.stars();
        int best1 = -1, best2 = -1;
        for (const auto& s : st)
            for (size_t i = 0; i < s.size(); ++i)
                for (size_t j = i + 1; j < s.size(); ++j)
                    if (im.emap[s[i]] == im.emap[s[j]] && cur.inv[s[i]] != s[j]) {
                        std::pair<int, int> cand{s[i], s[j]};
                        if (best1 < 0 || cand < std::pair<int, int>{best1, best2}) {
                            best1 = cand.first;
                            best2 = cand.second;
                        }
                    }
        if (best1 < 0) break;
        auto [folded, q] = fold(cur, best1, best2);
        GraphMap down;
        down.vmap.assign(folded.num_vertices, -1);
        down.emap.assign(folded.num_edges(), -1);
        for (int v = 0; v < cur.num_vertices; ++v) down.vmap[q.map.vmap[v]] = im.vmap[v];
        for (int e = 0; e < cur.num_edges(); ++e) down.emap[q.map.emap[e]] = im.emap[e];
        r.steps.emplace_back(best1, best2);
        r.folds = {r.folds.domain, folded, compose_maps(r.folds.map, q.map)};
        r.immersion = {folded, m.codomain, down};
    }
    return r;
}

bool graphs_isomorphic(const Graph& a, const Graph& b)
{
    detail::IsoSide sa{&a, nullptr, nullptr, nullptr};
    detail::IsoSide sb{&b, nullptr, nullptr, nullptr};
    return detail::find_isomorphism(sa, sb).has_value();
}

bool morphisms_isomorphic(const GraphMorphism& a, const GraphMorphism& b)
{
    if (!(a.codomain == b.codomain)) return false;
    detail::IsoSide sa{&a.domain, nullptr, nullptr, &a.map.emap, &a.map.vmap};
    detail::IsoSide sb{&b.domain, nullptr, nullptr, &b.map.emap, &b.map.vmap};
    return detail::find_isomorphism(sa, sb).has_value();
}

std::string graph_to_dot(const Graph& g, const std::string& name)
{
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    for (int v = 0; v < g.num_vertices; ++v) os << "  v" << v << ";\n";
    for (int e = 0; e < g.num_edges(); ++e)
        if (e < g.inv[e])
            os << "  v" << g.origin[e] << " -> v" << g.terminus(e) << " [label=\"" << e << "\"];\n";
    os << "}\n";
    return os.str();
}

} // namespace whcone
