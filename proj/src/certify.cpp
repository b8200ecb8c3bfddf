#include "whcone/certify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace whcone {

DImmersion identity_dimmersion(const GraphPair& p)
{
    PairMap id = identity_pair_morphism(p).map;
    return {p, p, p, id, id};
}

PairMorphism dimmersion_composite(const DImmersion& d) { return {d.source, d.target, compose_maps(d.f1, d.f2)}; }

std::string violation_kind_name(DViolationKind k)
{
    switch (k) {
    case DViolationKind::Pair: return "pair";
    case DViolationKind::Morphism: return "morphism";
    case DViolationKind::Immersion: return "immersion";
    case DViolationKind::Bijectivity: return "bijectivity";
    case DViolationKind::Admissibility: return "admissibility";
    case DViolationKind::LocalIrreducibility: return "local-irreducibility";
    case DViolationKind::Target: return "target";
    }
    return "?";
}

namespace {

std::vector<std::string> map_problems(const GraphPair& s, const GraphPair& t, const PairMap& f)
{
    std::vector<std::string> out;
    for (const auto& v : validate_morphism({s.base, t.base, f.base})) out.push_back("base map: " + v.message);
    for (const auto& v : validate_morphism({s.circles, t.circles, f.cycle})) out.push_back("cycle map: " + v.message);
    if (!out.empty()) return out;
    for (int e = 0; e < s.circles.num_edges(); ++e)
        if (t.cycle.emap[f.cycle.emap[e]] != f.base.emap[s.cycle.emap[e]])
            out.push_back("square does not commute at circle edge " + std::to_string(e));
    return out;
}

bool bijective(const std::vector<int>& m, int n)
{
    if (static_cast<int>(m.size()) != n) return false;
    std::vector<char> hit(n, 0);
    for (int v : m) {
        if (v < 0 || v >= n || hit[v]) return false;
        hit[v] = 1;
    }
    return true;
}

} // namespace

std::vector<DViolation> verify_dimmersion(const DImmersion& d, const GraphPair& reference)
{
    std::vector<DViolation> out;
    auto add = [&](DViolationKind k, const std::string& m) { out.push_back({k, m}); };
    if (!(d.target == reference)) add(DViolationKind::Target, "target is not the reference pair");
    const std::pair<const char*, const GraphPair*> named[] = {{"source", &d.source}, {"mid", &d.mid}, {"target", &d.target}};
    for (auto [name, p] : named)
        for (const auto& s : validate_pair(*p)) add(DViolationKind::Pair, std::string(name) + ": " + s);
    if (!out.empty()) return out;

    for (const auto& s : map_problems(d.source, d.mid, d.f1)) add(DViolationKind::Morphism, "f1 " + s);
    for (const auto& s : map_problems(d.mid, d.target, d.f2)) add(DViolationKind::Morphism, "f2 " + s);
    const int nv = d.mid.circles.num_vertices;
    if (!bijective(d.f1.cycle.vmap, nv) || !bijective(d.f1.cycle.emap, d.mid.circles.num_edges()) ||
        d.source.circles.num_vertices != nv)
        add(DViolationKind::Bijectivity, "circle map of f1 is not bijective");
    if (!out.empty()) return out;

    if (!is_star_injective(d.mid.base, d.f2.base)) add(DViolationKind::Immersion, "base map of f2 is not an immersion");
    if (!is_star_injective(d.mid.circles, d.f2.cycle)) add(DViolationKind::Immersion, "cycle map of f2 is not an immersion");
    if (!admissibility_degree(dimmersion_composite(d)))
        add(DViolationKind::Admissibility, "composite circle map does not have a constant degree");
    if (!is_locally_irreducible(d.source)) add(DViolationKind::LocalIrreducibility, "source is not locally irreducible");
    return out;
}

std::vector<int> vertex_stars(const DImmersion& d, const ConeSystem& cone)
{
    const WhiteheadSystem ws = whitehead_system(d.target);
    const WhComponents comps = wh_components(ws);
    const GraphPair& mid = d.mid;
    const int nx = mid.base.num_vertices;

    std::vector<std::vector<int>> source_ends(d.source.base.num_edges());
    for (int c = 0; c < d.source.circles.num_edges(); ++c) source_ends[d.source.cycle.emap[c]].push_back(c);

    std::vector<Piece> pieces(nx);
    std::vector<std::map<int, std::vector<std::vector<int>>>> at(nx);
    for (int k = 0; k < mid.circles.num_vertices; ++k) pieces[mid.cycle.vmap[k]].edges.push_back(d.f2.cycle.vmap[k]);
    for (int e = 0; e < d.source.base.num_edges(); ++e) {
        int de = d.f1.base.emap[e];
        int x = mid.base.origin[de];
        std::vector<int> block;
        for (int c : source_ends[e]) block.push_back(d.f2.cycle.emap[d.f1.cycle.emap[c]]);
        if (block.empty()) throw InternalError("source edge " + std::to_string(e) + " is not traversed");
        std::sort(block.begin(), block.end());
        at[x][d.f2.base.emap[de]].push_back(std::move(block));
    }
    std::vector<int> piece_id(nx);
    for (int x = 0; x < nx; ++x) {
        Piece& P = pieces[x];
        std::sort(P.edges.begin(), P.edges.end());
        if (std::adjacent_find(P.edges.begin(), P.edges.end()) != P.edges.end())
            throw InternalError("Whitehead graph at mid vertex " + std::to_string(x) + " does not embed");
        for (auto& [v, blocks] : at[x]) {
            std::sort(blocks.begin(), blocks.end());
            P.vertices.push_back(v);
            P.blocks.push_back(std::move(blocks));
        }
        P.cell = d.f2.base.vmap[x];
        P.host = P.vertices.empty() ? -1 : comps.vertex_component[P.vertices[0]];
        piece_id[x] = find_piece(cone.pieces, P);
        if (piece_id[x] < 0) throw InternalError("piece at mid vertex " + std::to_string(x) + " is not enumerated");
    }

    std::vector<PStar> stars(nx);
    for (int x = 0; x < nx; ++x) {
        stars[x].center = piece_id[x];
        stars[x].assignment.assign(pieces[x].vertices.size(), -1);
    }
    for (int e = 0; e < mid.base.num_edges(); ++e) {
        int x = mid.base.origin[e];
        int slot = pieces[x].slot(d.f2.base.emap[e]);
        if (slot < 0 || stars[x].assignment[slot] >= 0)
            throw InternalError("mid edge " + std::to_string(e) + " does not match a piece vertex");
        stars[x].assignment[slot] = piece_id[mid.base.terminus(e)];
    }
    std::vector<int> out(nx);
    for (int x = 0; x < nx; ++x) {
        auto it = std::lower_bound(cone.stars.begin(), cone.stars.end(), stars[x]);
        if (it == cone.stars.end() || !(*it == stars[x]))
            throw InternalError("P-star at mid vertex " + std::to_string(x) + " is not enumerated");
        out[x] = static_cast<int>(it - cone.stars.begin());
    }
    return out;
}

std::vector<long long> project_vector(const DImmersion& d, const ConeSystem& cone)
{
    std::vector<long long> x(cone.num_vars(), 0);
    for (int s : vertex_stars(d, cone)) ++x[s];
    return x;
}

DImmersion reconstruct_dimmersion(const std::vector<long long>& x, const ConeSystem& cone, const GraphPair& reference)
{
    if (static_cast<int>(x.size()) != cone.num_vars()) throw RejectedInput("vector length does not match the cone");
    if (std::any_of(x.begin(), x.end(), [](long long v) { return v < 0; })) throw RejectedInput("vector has a negative entry");
    if (std::all_of(x.begin(), x.end(), [](long long v) { return v == 0; })) throw RejectedInput("vector is zero");
    auto bad = violated_rows(cone, x);
    if (!bad.empty()) throw RejectedInput("vector violates cone row " + std::to_string(bad.front()));

    const WhiteheadSystem ws = whitehead_system(reference);
    const auto wh_ends = wh_edge_ends(ws);

    std::vector<int> inst_star;
    for (int s = 0; s < cone.num_vars(); ++s)
        for (long long k = 0; k < x[s]; ++k) inst_star.push_back(s);
    const int ni = static_cast<int>(inst_star.size());
    auto center = [&](int I) -> const Piece& { return cone.pieces[cone.stars[inst_star[I]].center]; };

    // Mid Wh vertices (I, slot) and Wh edges (I, edge index).
    std::vector<int> dv0(ni + 1, 0), dk0(ni + 1, 0);
    for (int I = 0; I < ni; ++I) {
        dv0[I + 1] = dv0[I] + static_cast<int>(center(I).vertices.size());
        dk0[I + 1] = dk0[I] + static_cast<int>(center(I).edges.size());
    }
    const int ndv = dv0[ni];
    std::vector<int> dv_inst(ndv), dv_slot(ndv);
    for (int I = 0; I < ni; ++I)
        for (int i = dv0[I]; i < dv0[I + 1]; ++i) {
            dv_inst[i] = I;
            dv_slot[i] = i - dv0[I];
        }

    std::map<GluingKey, std::pair<std::vector<int>, std::vector<int>>> sides;
    for (int I = 0; I < ni; ++I) {
        const PStar& st = cone.stars[inst_star[I]];
        const Piece& P = center(I);
        for (size_t i = 0; i < P.vertices.size(); ++i) {
            int e = P.vertices[i], q = st.assignment[i], eb = ws.vertex_partner[e];
            if (std::pair{st.center, e} < std::pair{q, eb}) sides[{st.center, e, q}].first.push_back(dv0[I] + static_cast<int>(i));
            else sides[{q, eb, st.center}].second.push_back(dv0[I] + static_cast<int>(i));
        }
    }
    std::vector<int> dpartner(ndv, -1);
    for (const auto& [key, lr] : sides) {
        if (lr.first.size() != lr.second.size()) throw InternalError("gluing sides have different sizes");
        for (size_t k = 0; k < lr.first.size(); ++k) {
            dpartner[lr.first[k]] = lr.second[k];
            dpartner[lr.second[k]] = lr.first[k];
        }
    }

    // Ends (I, c) for every end c of the reference on an edge of the centre.
    std::vector<std::map<int, int>> end_id(ni);
    WhiteheadSystem mid;
    mid.num_cells = ni;
    mid.num_wh_edges = dk0[ni];
    mid.vertex_cell = dv_inst;
    mid.vertex_partner = dpartner;
    std::vector<int> end_inst, end_ref;
    for (int I = 0; I < ni; ++I) {
        const Piece& P = center(I);
        for (size_t k = 0; k < P.edges.size(); ++k)
            for (int c : wh_ends[P.edges[k]]) {
                end_id[I][c] = static_cast<int>(end_ref.size());
                end_inst.push_back(I);
                end_ref.push_back(c);
                mid.end_vertex.push_back(dv0[I] + P.slot(ws.end_vertex[c]));
                mid.end_edge.push_back(dk0[I] + static_cast<int>(k));
            }
    }
    for (size_t a = 0; a < end_ref.size(); ++a) {
        int J = dv_inst[dpartner[mid.end_vertex[a]]];
        auto it = end_id[J].find(ws.crossing[end_ref[a]]);
        if (it == end_id[J].end()) throw InternalError("crossing leaves the neighbouring piece");
        mid.crossing.push_back(it->second);
    }

    // Source: one Wh vertex per block, one cell per component of the top graph.
    std::vector<int> lv0(ni + 1, 0), lc0(ni + 1, 0);
    std::vector<std::vector<int>> top_label(ni);
    std::vector<std::map<int, int>> end_block(ni);
    for (int I = 0; I < ni; ++I) {
        const Piece& P = center(I);
        top_label[I] = component_labels(piece_top_graph(P, ws));
        int ncomp = top_label[I].empty() ? 0 : *std::max_element(top_label[I].begin(), top_label[I].end()) + 1;
        lv0[I + 1] = lv0[I] + P.num_top_vertices();
        lc0[I + 1] = lc0[I] + ncomp;
        int b = 0;
        for (const auto& at : P.blocks)
            for (const auto& block : at) {
                for (int c : block) end_block[I][c] = b;
                ++b;
            }
    }
    auto block_offset = [&](const Piece& P, int slot) {
        int off = 0;
        for (int i = 0; i < slot; ++i) off += static_cast<int>(P.blocks[i].size());
        return off;
    };
    WhiteheadSystem src;
    src.num_cells = lc0[ni];
    src.num_wh_edges = mid.num_wh_edges;
    src.vertex_cell.assign(lv0[ni], -1);
    src.vertex_partner.assign(lv0[ni], -1);
    std::vector<int> src_to_mid(lv0[ni], -1), src_cell_inst(lc0[ni], -1);
    for (int I = 0; I < ni; ++I) {
        const Piece& P = center(I);
        for (int b = 0; b < P.num_top_vertices(); ++b) src.vertex_cell[lv0[I] + b] = lc0[I] + top_label[I][b];
        for (int c = lc0[I]; c < lc0[I + 1]; ++c) src_cell_inst[c] = I;
        for (size_t i = 0; i < P.vertices.size(); ++i) {
            int v = dv0[I] + static_cast<int>(i);
            int J = dv_inst[dpartner[v]], j = dv_slot[dpartner[v]];
            const Piece& Q = center(J);
            auto rel = splice_compatible(P, P.vertices[i], Q, ws);
            if (!rel) throw InternalError("assigned neighbour is not splice compatible");
            int off = block_offset(P, static_cast<int>(i)), qoff = block_offset(Q, j);
            for (auto [a, b] : rel->matching) {
                src.vertex_partner[lv0[I] + off + a] = lv0[J] + qoff + b;
                src_to_mid[lv0[I] + off + a] = v;
            }
        }
    }
    for (size_t a = 0; a < end_ref.size(); ++a) {
        int I = end_inst[a];
        src.end_vertex.push_back(lv0[I] + end_block[I].at(end_ref[a]));
    }
    src.end_edge = mid.end_edge;
    src.crossing = mid.crossing;

    DImmersion d;
    d.source = reconstruct_pair(src);
    d.mid = reconstruct_pair(mid);
    d.target = reference;
    d.f1.base.vmap = src_cell_inst;
    d.f1.base.emap = src_to_mid;
    d.f1.cycle = identity_morphism(d.mid.circles).map;
    for (int I = 0; I < ni; ++I) d.f2.base.vmap.push_back(center(I).cell);
    for (int v = 0; v < ndv; ++v) d.f2.base.emap.push_back(center(dv_inst[v]).vertices[dv_slot[v]]);
    for (int I = 0; I < ni; ++I)
        for (int k : center(I).edges) d.f2.cycle.vmap.push_back(k);
    d.f2.cycle.emap = end_ref;
    return d;
}

namespace {

/// Lowest cell with a cut vertex, with the lowest cut and its first block as side one.
std::optional<UnfoldStep> next_cut(const GraphPair& p)
{
    WhiteheadSystem ws = whitehead_system(p);
    for (const WhGraph& w : wh_graphs(ws)) {
        auto cuts = cut_vertices(w.graph);
        if (cuts.empty()) continue;
        auto blocks = blocks_at(w.graph, cuts[0]);
        UnfoldStep step{w.cell, w.star[cuts[0]], {}};
        for (int k : blocks[0]) step.side_one.push_back(w.edges[k / 2]);
        return step;
    }
    return std::nullopt;
}

} // namespace

bool is_weakly_irreducible_certificate(const DImmersion& d)
{
    GraphPair cur = d.mid;
    const int limit = cur.circles.num_vertices + 1;
    for (int it = 0; it <= limit; ++it) {
        auto step = next_cut(cur);
        if (!step) break;
        cur = unfold_at(cur, step->vertex, step->cut, step->side_one).first;
    }
    if (next_cut(cur)) throw InternalError("cut-vertex unfolding did not terminate");
    WhiteheadSystem ws = whitehead_system(cur);
    WhComponents comps = wh_components(ws);
    std::vector<int> edges(comps.count(), 0);
    for (int c : comps.edge_component) ++edges[c];
    return std::all_of(edges.begin(), edges.end(), [](int n) { return n >= 2; });
}

bool is_fat(const GraphPair& p)
{
    std::vector<int> val(p.base.num_edges(), 0);
    for (int e : p.cycle.emap) ++val[e];
    return std::all_of(val.begin(), val.end(), [](int v) { return v == 2; });
}

std::vector<SurfaceComponent> fatform_surfaces(const GraphPair& fat)
{
    if (!is_fat(fat)) throw RejectedInput("fatform_surfaces: pair is not fat");
    WhiteheadSystem ws = whitehead_system(fat);
    WhComponents comps = wh_components(ws);
    auto ends = wh_edge_ends(ws);
    const int nv = ws.num_wh_vertices();
    std::vector<std::vector<int>> ends_at(nv);
    for (int c = 0; c < ws.num_ends(); ++c) ends_at[ws.end_vertex[c]].push_back(c);

    // Walk each disk boundary once to orient it.
    std::vector<int> pred(nv, -1), succ(nv, -1);
    for (int v0 = 0; v0 < nv; ++v0) {
        if (succ[v0] >= 0) continue;
        int v = v0, in = ends_at[v0][1];
        do {
            int out = ends_at[v][0] == in ? ends_at[v][1] : ends_at[v][0];
            pred[v] = in;
            succ[v] = out;
            const auto& pair = ends[ws.end_edge[out]];
            in = pair[0] == out ? pair[1] : pair[0];
            v = ws.end_vertex[in];
        } while (v != v0);
    }

    const int nd = comps.count();
    std::vector<std::vector<std::pair<int, int>>> adj(nd);
    for (int e = 0; e < nv; ++e) {
        int eb = ws.vertex_partner[e];
        if (eb < e) continue;
        int twisted = ws.crossing[pred[e]] == succ[eb] ? 0 : 1;
        int a = comps.vertex_component[e], b = comps.vertex_component[eb];
        adj[a].push_back({b, twisted});
        adj[b].push_back({a, twisted});
    }
    std::vector<int> surface(nd, -1), flip(nd, 0);
    std::vector<SurfaceComponent> out;
    for (int s = 0; s < nd; ++s) {
        if (surface[s] >= 0) continue;
        int id = static_cast<int>(out.size());
        out.push_back({});
        surface[s] = id;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            ++out[id].euler;
            for (auto [b, t] : adj[a]) {
                if (surface[b] < 0) {
                    surface[b] = id;
                    flip[b] = flip[a] ^ t;
                    stack.push_back(b);
                } else if (flip[b] != (flip[a] ^ t)) {
                    out[id].orientable = false;
                }
            }
        }
    }
    for (int e = 0; e < nv; ++e)
        if (e < ws.vertex_partner[e]) --out[surface[comps.vertex_component[e]]].euler;
    auto labels = circle_labels(fat);
    std::set<int> seen;
    for (int k = 0; k < fat.circles.num_vertices; ++k)
        if (seen.insert(labels[k]).second) ++out[surface[comps.edge_component[k]]].boundary;
    for (auto& s : out) {
        int deficit = 2 - s.euler - s.boundary;
        if (s.orientable) s.genus = deficit / 2;
        else s.crosscaps = deficit;
    }
    return out;
}

std::vector<std::pair<int, int>> refold_sequence(const GraphPair& fat, const PairMap& to_mid, GraphPair* folded,
                                                 PairMap* folded_to_mid)
{
    std::vector<std::pair<int, int>> seq;
    GraphPair cur = fat;
    PairMap map = to_mid;
    for (;;) {
        std::optional<std::pair<int, int>> pick;
        for (int e1 = 0; e1 < cur.base.num_edges() && !pick; ++e1)
            for (int e2 = e1 + 1; e2 < cur.base.num_edges(); ++e2)
                if (cur.base.origin[e1] == cur.base.origin[e2] && map.base.emap[e1] == map.base.emap[e2] &&
                    cur.base.terminus(e1) != cur.base.terminus(e2)) {
                    pick = std::pair{e1, e2};
                    break;
                }
        if (!pick) break;
        auto r = pair_fold(cur, pick->first, pick->second);
        if (!r) throw InternalError("refold produced a non-immersed multicycle");
        const GraphMap& q = r->second.map.base;
        PairMap next{{std::vector<int>(r->first.base.num_vertices, -1), std::vector<int>(r->first.base.num_edges(), -1)},
                     map.cycle};
        for (int v = 0; v < cur.base.num_vertices; ++v) next.base.vmap[q.vmap[v]] = map.base.vmap[v];
        for (int e = 0; e < cur.base.num_edges(); ++e) next.base.emap[q.emap[e]] = map.base.emap[e];
        seq.push_back(*pick);
        cur = r->first;
        map = next;
    }
    if (folded) *folded = cur;
    if (folded_to_mid) *folded_to_mid = map;
    return seq;
}

namespace {

struct SearchNode
{
    GraphPair pair;
    PairMap to_mid;
    std::vector<UnfoldStep> steps;
};

std::vector<int> invariant_key(const GraphPair& p)
{
    std::vector<int> val(p.base.num_edges(), 0);
    for (int e : p.cycle.emap) ++val[e];
    std::sort(val.begin(), val.end());
    val.push_back(p.base.num_vertices);
    return val;
}

/// Unfoldings that keep at least two Wh edges on each side at the cut, at the lowest cell offering one.
std::vector<UnfoldStep> candidate_steps(const GraphPair& p)
{
    WhiteheadSystem ws = whitehead_system(p);
    for (const WhGraph& w : wh_graphs(ws)) {
        std::vector<UnfoldStep> steps;
        for (int cv : cut_vertices(w.graph)) {
            auto blocks = blocks_at(w.graph, cv);
            const int k = static_cast<int>(blocks.size());
            if (k > 16) continue;
            std::vector<int> at_cut(k, 0);
            for (int b = 0; b < k; ++b)
                for (int e : blocks[b]) at_cut[b] += (w.graph.origin[e] == cv) + (w.graph.terminus(e) == cv);
            for (unsigned mask = 0; mask + 1 < (1u << (k - 1)); ++mask) {
                int one = at_cut[0], two = 0;
                UnfoldStep step{w.cell, w.star[cv], {}};
                for (int e : blocks[0]) step.side_one.push_back(w.edges[e / 2]);
                for (int b = 1; b < k; ++b) {
                    if (mask >> (b - 1) & 1u) {
                        one += at_cut[b];
                        for (int e : blocks[b]) step.side_one.push_back(w.edges[e / 2]);
                    } else {
                        two += at_cut[b];
                    }
                }
                if (one < 2 || two < 2) continue;
                std::sort(step.side_one.begin(), step.side_one.end());
                steps.push_back(std::move(step));
            }
        }
        if (!steps.empty()) return steps;
    }
    return {};
}

bool dead_end(const GraphPair& p)
{
    std::vector<int> val(p.base.num_edges(), 0);
    for (int e : p.cycle.emap) ++val[e];
    return std::any_of(val.begin(), val.end(), [](int v) { return v < 2 || v % 2 != 0; });
}

} // namespace

std::optional<Fatform> certify_surface(const DImmersion& d, long long budget)
{
    std::map<std::vector<int>, std::vector<GraphPair>> seen;
    auto fresh = [&](const GraphPair& p) {
        auto& bucket = seen[invariant_key(p)];
        for (const auto& q : bucket)
            if (pair_isomorphic(p, q)) return false;
        bucket.push_back(p);
        return true;
    };
    std::vector<SearchNode> stack;
    stack.push_back({d.mid, identity_pair_morphism(d.mid).map, {}});
    fresh(d.mid);
    long long nodes = 0;
    while (!stack.empty()) {
        if (nodes >= budget) return std::nullopt;
        SearchNode node = std::move(stack.back());
        stack.pop_back();
        ++nodes;
        if (is_fat(node.pair)) {
            Fatform f;
            f.pair = node.pair;
            f.unfold_steps = node.steps;
            f.to_mid = node.to_mid;
            GraphPair folded;
            f.fold_sequence = refold_sequence(f.pair, f.to_mid, &folded, &f.replay_iso);
            PairMorphism iso{folded, d.mid, f.replay_iso};
            if (!validate_pair_morphism(iso).empty() || !bijective(f.replay_iso.base.vmap, d.mid.base.num_vertices) ||
                !bijective(f.replay_iso.base.emap, d.mid.base.num_edges()))
                throw InternalError("fatform does not refold onto the mid pair");
            f.surfaces = fatform_surfaces(f.pair);
            f.nodes = nodes;
            return f;
        }
        if (dead_end(node.pair)) continue;
        auto steps = candidate_steps(node.pair);
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
            auto [q, m] = unfold_at(node.pair, it->vertex, it->cut, it->side_one);
            if (!fresh(q)) continue;
            SearchNode child{q, compose_maps(m.map, node.to_mid), node.steps};
            child.steps.push_back(*it);
            stack.push_back(std::move(child));
        }
    }
    return std::nullopt;
}

std::string search_status_name(SearchStatus s)
{
    switch (s) {
    case SearchStatus::Found: return "Found";
    case SearchStatus::Reducible: return "Reducible";
    case SearchStatus::ZeroCone: return "ZeroCone";
    case SearchStatus::NotFound: return "NotFound";
    }
    return "?";
}

SurfaceCertificate make_certificate(const GraphPair& reference, const UnfoldResult& unfold, const ConeSystem& cone,
                                    const LPResult& lp, const DImmersion& d, const std::vector<long long>& x,
                                    const Fatform& fat)
{
    SurfaceCertificate c;
    c.reference = reference;
    c.unfolded = unfold.pair;
    c.unfold_map = unfold.to_input.map;
    c.unfold_steps = unfold.steps;
    c.witness = d;
    c.num_stars = cone.num_vars();

    auto per_vertex = vertex_stars(d, cone);
    std::set<int> star_set(per_vertex.begin(), per_vertex.end()), piece_set;
    for (int s : star_set) {
        piece_set.insert(cone.stars[s].center);
        for (int q : cone.stars[s].assignment) piece_set.insert(q);
    }
    std::map<int, int> local_piece, local_star;
    for (int p : piece_set) {
        local_piece[p] = static_cast<int>(c.pieces.size());
        c.pieces.push_back(cone.pieces[p]);
    }
    for (int s : star_set) {
        local_star[s] = static_cast<int>(c.stars.size());
        PStar st{local_piece[cone.stars[s].center], {}};
        for (int q : cone.stars[s].assignment) st.assignment.push_back(local_piece[q]);
        c.stars.push_back(st);
        c.star_ids.push_back(s);
    }
    for (int s : per_vertex) c.vertex_star.push_back(local_star[s]);
    long long n = 0, chi2 = 0;
    for (int s = 0; s < cone.num_vars(); ++s)
        if (x[s] != 0) {
            c.vector.push_back({s, x[s]});
            n += x[s] * cone.n_functional[s];
            chi2 += x[s] * cone.chi2_functional[s];
        }
    for (int e = 0; e < d.mid.base.num_edges(); ++e)
        if (e < d.mid.base.inv[e]) c.gluing.push_back({e, d.mid.base.inv[e]});
    c.degree = admissibility_degree(dimmersion_composite(d)).value_or(0);
    c.euler = euler_characteristic(d.mid.base);
    c.boundary_count = static_cast<int>(circle_lengths(d.mid).size());
    c.chi2 = static_cast<int>(chi2);
    c.rho = n > 0 ? Rational(chi2, 2 * n) : Rational(0);
    c.rho_max = lp.optimum;
    c.lp_basis = lp.basis;
    c.fatform = fat;
    return c;
}

SurfaceSearch find_surface(const GraphPair& reference, const SurfaceBudgets& budgets)
{
    SurfaceSearch out;
    out.unfold = unfold_to_locally_irreducible(reference, budgets.unfold_budget);
    if (out.unfold.budget_exhausted) throw CapExceeded("unfold budget exhausted");
    if (!out.unfold.locally_irreducible) {
        out.status = SearchStatus::Reducible;
        return out;
    }
    const GraphPair& base = out.unfold.pair;
    ConeSystem cone = cone_for(whitehead_system(base), budgets.caps);
    out.num_stars = cone.num_vars();
    out.lp = maximize_rank(cone);
    if (out.lp.status != LPStatus::Optimal) {
        out.status = SearchStatus::ZeroCone;
        return out;
    }
    auto try_vertex = [&](const std::vector<Rational>& v) {
        IntegerPoint ip = integer_point(v);
        for (int mult = 1; mult <= budgets.max_multiplier; ++mult) {
            std::vector<long long> x = ip.x;
            for (auto& e : x) e *= mult;
            ++out.points_tried;
            DImmersion d = reconstruct_dimmersion(x, cone, base);
            auto problems = verify_dimmersion(d, base);
            if (!problems.empty()) throw InternalError("reconstructed witness fails verification: " + problems.front().message);
            auto fat = certify_surface(d, budgets.search_budget);
            if (fat) {
                out.certificate = make_certificate(reference, out.unfold, cone, out.lp, d, x, *fat);
                return true;
            }
        }
        return false;
    };
    FaceEnumeration face = optimal_face_vertices(rank_program(cone, true), out.lp, budgets.face_budget,
                                                 budgets.max_bases, try_vertex);
    out.face_vertices = static_cast<int>(face.vertices.size());
    out.face_exhaustive = face.exhaustive;
    if (out.certificate) {
        out.status = SearchStatus::Found;
        return out;
    }
    out.status = SearchStatus::NotFound;
    return out;
}

} // namespace whcone
