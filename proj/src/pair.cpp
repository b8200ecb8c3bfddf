#include "whcone/pair.hpp"

#include "isomorphism.hpp"

#include <algorithm>
#include <numeric>

namespace whcone {

std::vector<std::string> validate_pair(const GraphPair& p)
{
    std::vector<std::string> out;
    for (const auto& v : validate_graph(p.base)) out.push_back("base: " + v.message);
    for (const auto& v : validate_graph(p.circles)) out.push_back("circles: " + v.message);
    if (!out.empty()) return out;
    GraphMorphism m{p.circles, p.base, p.cycle};
    for (const auto& v : validate_morphism(m)) out.push_back("cycle map: " + v.message);
    if (!out.empty()) return out;
    auto val = p.circles.valences();
    for (int v = 0; v < p.circles.num_vertices; ++v)
        if (val[v] != 2) out.push_back("circle vertex " + std::to_string(v) + " has valence " + std::to_string(val[v]));
    if (!out.empty()) return out;
    if (!is_immersion(m)) out.push_back("multicycle is not immersed");
    auto bval = p.base.valences();
    for (int v = 0; v < p.base.num_vertices; ++v)
        if (bval[v] == 1) out.push_back("base vertex " + std::to_string(v) + " has valence one");
    return out;
}

std::vector<int> untraversed_edges(const GraphPair& p)
{
    std::vector<char> used(p.base.num_edges(), 0);
    for (int e : p.cycle.emap) used[e] = 1;
    std::vector<int> out;
    for (int e = 0; e < p.base.num_edges(); ++e)
        if (!used[e]) out.push_back(e);
    return out;
}

std::vector<std::string> validate_pair_morphism(const PairMorphism& m)
{
    std::vector<std::string> out;
    for (const auto& s : validate_pair(m.source)) out.push_back("source: " + s);
    for (const auto& s : validate_pair(m.target)) out.push_back("target: " + s);
    if (!out.empty()) return out;
    GraphMorphism b{m.source.base, m.target.base, m.map.base};
    GraphMorphism c{m.source.circles, m.target.circles, m.map.cycle};
    for (const auto& v : validate_morphism(b)) out.push_back("base map: " + v.message);
    for (const auto& v : validate_morphism(c)) out.push_back("cycle map: " + v.message);
    if (!out.empty()) return out;
    for (int e = 0; e < m.source.circles.num_edges(); ++e)
        if (m.target.cycle.emap[m.map.cycle.emap[e]] != m.map.base.emap[m.source.cycle.emap[e]])
            out.push_back("square does not commute at circle edge " + std::to_string(e));
    for (int v = 0; v < m.source.circles.num_vertices; ++v)
        if (m.target.cycle.vmap[m.map.cycle.vmap[v]] != m.map.base.vmap[m.source.cycle.vmap[v]])
            out.push_back("square does not commute at circle vertex " + std::to_string(v));
    if (!is_immersion(c)) out.push_back("cycle map is not an immersion");
    return out;
}

Graph rose(int rank)
{
    Graph g;
    g.add_vertex();
    for (int i = 0; i < rank; ++i) g.add_edge(0, 0);
    return g;
}

GraphPair parse_words(int rank, const std::vector<std::string>& words)
{
    if (rank < 1 || rank > 26) throw RejectedInput("rank must be between 1 and 26");
    GraphPair p;
    p.base = rose(rank);
    auto letter_edge = [&](char ch, size_t w, size_t j) {
        int gen;
        bool inverse;
        if (ch >= 'a' && ch <= 'z') {
            gen = ch - 'a';
            inverse = false;
        } else if (ch >= 'A' && ch <= 'Z') {
            gen = ch - 'A';
            inverse = true;
        } else {
            throw RejectedInput("word " + std::to_string(w) + ": invalid character '" + std::string(1, ch) +
                                "' at position " + std::to_string(j));
        }
        if (gen >= rank)
            throw RejectedInput("word " + std::to_string(w) + ": letter '" + std::string(1, ch) + "' at position " +
                                std::to_string(j) + " exceeds rank " + std::to_string(rank));
        return 2 * gen + (inverse ? 1 : 0);
    };
    for (size_t w = 0; w < words.size(); ++w) {
        const std::string& word = words[w];
        if (word.empty()) throw RejectedInput("word " + std::to_string(w) + " is empty");
        std::vector<int> letters;
        for (size_t j = 0; j < word.size(); ++j) letters.push_back(letter_edge(word[j], w, j));
        const size_t len = letters.size();
        for (size_t j = 0; j < len; ++j) {
            size_t k = (j + 1) % len;
            if (letters[k] == p.base.inv[letters[j]])
                throw RejectedInput("word " + std::to_string(w) + " \"" + word + "\" is not cyclically reduced: letters at positions " +
                                    std::to_string(j) + " and " + std::to_string(k) + " cancel");
        }
        const int off = p.circles.num_vertices;
        for (size_t j = 0; j < len; ++j) p.circles.add_vertex();
        for (size_t j = 0; j < len; ++j) {
            int from = off + static_cast<int>(j);
            int to = off + static_cast<int>((j + 1) % len);
            p.circles.add_edge(from, to);
            p.cycle.emap.push_back(letters[j]);
            p.cycle.emap.push_back(p.base.inv[letters[j]]);
            p.cycle.vmap.push_back(0);
        }
    }
    return p;
}

std::vector<int> circle_labels(const GraphPair& p) { return component_labels(p.circles); }

std::vector<int> circle_lengths(const GraphPair& p)
{
    auto lab = circle_labels(p);
    int k = lab.empty() ? 0 : *std::max_element(lab.begin(), lab.end()) + 1;
    std::vector<int> len(k, 0);
    for (int l : lab) ++len[l];
    return len;
}

std::optional<int> admissibility_degree(const PairMorphism& m)
{
    const Graph& t = m.target.circles;
    std::vector<int> vc(t.num_vertices, 0), ec(t.num_edges(), 0);
    for (int v : m.map.cycle.vmap) ++vc[v];
    for (int e : m.map.cycle.emap) ++ec[e];
    std::optional<int> n;
    auto check = [&](const std::vector<int>& counts) {
        for (int c : counts) {
            if (!n) n = c;
            if (*n != c) return false;
        }
        return true;
    };
    if (!check(vc) || !check(ec)) return std::nullopt;
    if (!n || *n <= 0) return std::nullopt;
    return n;
}

PairMorphism identity_pair_morphism(const GraphPair& p)
{
    return {p, p, {identity_morphism(p.base).map, identity_morphism(p.circles).map}};
}

PairMap compose_maps(const PairMap& first, const PairMap& second)
{
    return {compose_maps(first.base, second.base), compose_maps(first.cycle, second.cycle)};
}

PairMorphism compose(const PairMorphism& first, const PairMorphism& second)
{
    if (!(first.target == second.source)) throw RejectedInput("compose: target of first is not source of second");
    return {first.source, second.target, compose_maps(first.map, second.map)};
}

namespace {

void append_graph(Graph& dst, const Graph& src, int& voff, int& eoff)
{
    voff = dst.num_vertices;
    eoff = dst.num_edges();
    dst.num_vertices += src.num_vertices;
    for (int e = 0; e < src.num_edges(); ++e) {
        dst.inv.push_back(src.inv[e] + eoff);
        dst.origin.push_back(src.origin[e] + voff);
    }
}

} // namespace

GraphPair disjoint_union(const GraphPair& a, const GraphPair& b)
{
    GraphPair out;
    int bv0, be0, cv0, ce0, bv1, be1, cv1, ce1;
    append_graph(out.base, a.base, bv0, be0);
    append_graph(out.base, b.base, bv1, be1);
    append_graph(out.circles, a.circles, cv0, ce0);
    append_graph(out.circles, b.circles, cv1, ce1);
    out.cycle = a.cycle;
    for (int v : b.cycle.vmap) out.cycle.vmap.push_back(v + bv1);
    for (int e : b.cycle.emap) out.cycle.emap.push_back(e + be1);
    return out;
}

std::optional<std::pair<GraphPair, PairMorphism>> pair_fold(const GraphPair& p, int e1, int e2)
{
    const Graph& g = p.base;
    if (e1 < 0 || e2 < 0 || e1 >= g.num_edges() || e2 >= g.num_edges()) throw RejectedInput("pair_fold: edge out of range");
    if (g.terminus(e1) == g.terminus(e2)) throw RejectedInput("pair_fold: edges have the same terminus");
    auto [folded, q] = fold(g, e1, e2);
    GraphPair out{folded, p.circles, compose_maps(p.cycle, q.map)};
    if (!is_star_injective(out.circles, out.cycle)) return std::nullopt;
    PairMorphism m{p, out, {q.map, identity_morphism(p.circles).map}};
    return std::make_pair(out, m);
}

std::optional<PairMap> find_pair_isomorphism(const GraphPair& p, const GraphPair& q)
{
    detail::IsoSide a{&p.base, &p.circles, &p.cycle, nullptr};
    detail::IsoSide b{&q.base, &q.circles, &q.cycle, nullptr};
    auto r = detail::find_isomorphism(a, b);
    if (!r) return std::nullopt;
    return PairMap{r->base, r->cycle};
}

bool pair_isomorphic(const GraphPair& p, const GraphPair& q) { return find_pair_isomorphism(p, q).has_value(); }

namespace {

Graph relabel_graph(const Graph& g, const std::vector<int>& vperm, const std::vector<int>& eperm)
{
    Graph out;
    out.num_vertices = g.num_vertices;
    out.inv.assign(g.num_edges(), -1);
    out.origin.assign(g.num_edges(), -1);
    for (int e = 0; e < g.num_edges(); ++e) {
        out.inv[eperm[e]] = eperm[g.inv[e]];
        out.origin[eperm[e]] = vperm[g.origin[e]];
    }
    return out;
}

} // namespace

GraphPair relabel_pair(const GraphPair& p, const std::vector<int>& base_vperm, const std::vector<int>& base_eperm,
                       const std::vector<int>& circ_vperm, const std::vector<int>& circ_eperm)
{
    GraphPair out;
    out.base = relabel_graph(p.base, base_vperm, base_eperm);
    out.circles = relabel_graph(p.circles, circ_vperm, circ_eperm);
    out.cycle.vmap.assign(p.circles.num_vertices, -1);
    out.cycle.emap.assign(p.circles.num_edges(), -1);
    for (int v = 0; v < p.circles.num_vertices; ++v) out.cycle.vmap[circ_vperm[v]] = base_vperm[p.cycle.vmap[v]];
    for (int e = 0; e < p.circles.num_edges(); ++e) out.cycle.emap[circ_eperm[e]] = base_eperm[p.cycle.emap[e]];
    return out;
}

} // namespace whcone
