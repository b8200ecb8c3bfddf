#pragma once

// Brute-force reference implementations used only by the tests.  They read
// the raw data structures and share no code paths with the library beyond
// the plain structs.

#include "whcone/certify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using whcone::Graph;
using whcone::GraphPair;
using whcone::Rational;
using whcone::WhiteheadSystem;

inline int letter_edge(char c)
{
    return c >= 'a' && c <= 'z' ? 2 * (c - 'a') : 2 * (c - 'A') + 1;
}

inline char invert_letter(char c) { return c >= 'a' && c <= 'z' ? static_cast<char>(c - 'a' + 'A') : static_cast<char>(c - 'A' + 'a'); }

/// Wh edges of a rose pair straight from the words: a turn x|y gives the edge {x^-1, y}.
inline std::multiset<std::pair<int, int>> rose_wh_edges(const std::vector<std::string>& words)
{
    std::multiset<std::pair<int, int>> out;
    for (const auto& w : words)
        for (size_t i = 0; i < w.size(); ++i) {
            int a = letter_edge(invert_letter(w[(i + w.size() - 1) % w.size()]));
            int b = letter_edge(w[i]);
            out.insert({std::min(a, b), std::max(a, b)});
        }
    return out;
}

/// Wh edges of any pair by definition: each circle vertex joins the images of its two outgoing edges.
inline std::vector<std::pair<int, int>> pair_wh_edges(const GraphPair& p)
{
    std::vector<std::vector<int>> out_edges(p.circles.num_vertices);
    for (int c = 0; c < p.circles.num_edges(); ++c) out_edges[p.circles.origin[c]].push_back(c);
    std::vector<std::pair<int, int>> out;
    for (const auto& oe : out_edges) {
        int a = p.cycle.emap[oe.at(0)], b = p.cycle.emap[oe.at(1)];
        out.push_back({std::min(a, b), std::max(a, b)});
    }
    return out;
}

/// Components by repeated relaxation, skipping vertex `removed`.
inline int components_without(const Graph& g, int removed)
{
    std::vector<int> label(g.num_vertices);
    for (int v = 0; v < g.num_vertices; ++v) label[v] = v;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int e = 0; e < g.num_edges(); ++e) {
            int a = g.origin[e], b = g.origin[g.inv[e]];
            if (a == removed || b == removed) continue;
            int m = std::min(label[a], label[b]);
            if (label[a] != m || label[b] != m) {
                label[a] = label[b] = m;
                changed = true;
            }
        }
    }
    std::set<int> s;
    for (int v = 0; v < g.num_vertices; ++v)
        if (v != removed) s.insert(label[v]);
    return static_cast<int>(s.size());
}

inline int components(const Graph& g) { return components_without(g, -1); }

inline std::vector<int> valences(const Graph& g)
{
    std::vector<int> d(g.num_vertices, 0);
    for (int e = 0; e < g.num_edges(); ++e) ++d[g.origin[e]];
    return d;
}

inline bool has_leaf(const Graph& g)
{
    for (int d : valences(g))
        if (d == 1) return true;
    return false;
}

inline bool has_cut_vertex(const Graph& g)
{
    const int base = components(g);
    for (int v = 0; v < g.num_vertices; ++v)
        if (components_without(g, v) > base) return true;
    return false;
}

/// Every component has two or more vertices, no leaf and no cut vertex.
inline bool components_irreducible(const Graph& g)
{
    for (int d : valences(g))
        if (d < 2) return false;
    return !has_cut_vertex(g);
}

inline bool irreducible(const Graph& g)
{
    return g.num_vertices >= 2 && components(g) == 1 && !has_leaf(g) && !has_cut_vertex(g);
}

/// Every set partition of `items`, generated from restricted growth strings.
inline std::vector<std::vector<std::vector<int>>> set_partitions(const std::vector<int>& items)
{
    std::vector<std::vector<std::vector<int>>> out;
    const int n = static_cast<int>(items.size());
    std::vector<int> a(n, 0);
    for (;;) {
        int k = n ? *std::max_element(a.begin(), a.end()) + 1 : 0;
        std::vector<std::vector<int>> blocks(k);
        for (int i = 0; i < n; ++i) blocks[a[i]].push_back(items[i]);
        for (auto& b : blocks) std::sort(b.begin(), b.end());
        std::sort(blocks.begin(), blocks.end());
        out.push_back(blocks);
        int i = n - 1;
        while (i > 0) {
            int mx = *std::max_element(a.begin(), a.begin() + i);
            if (a[i] <= mx) break;
            a[i] = 0;
            --i;
        }
        if (i <= 0) break;
        ++a[i];
        for (int j = i + 1; j < n; ++j) a[j] = 0;
    }
    return out;
}

/// Connected components of the whole Wh system as sets of Wh edges.
inline std::vector<std::vector<int>> wh_edge_components(const WhiteheadSystem& ws)
{
    std::vector<int> label(ws.num_wh_vertices());
    for (int v = 0; v < ws.num_wh_vertices(); ++v) label[v] = v;
    std::vector<std::vector<int>> ends(ws.num_wh_edges);
    for (int c = 0; c < ws.num_ends(); ++c) ends[ws.end_edge[c]].push_back(c);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& e : ends) {
            int a = ws.end_vertex[e[0]], b = ws.end_vertex[e[1]];
            int m = std::min(label[a], label[b]);
            if (label[a] != m || label[b] != m) {
                label[a] = label[b] = m;
                changed = true;
            }
        }
    }
    std::map<int, std::vector<int>> by;
    for (int k = 0; k < ws.num_wh_edges; ++k) by[label[ws.end_vertex[ends[k][0]]]].push_back(k);
    std::vector<std::vector<int>> out;
    for (auto& [l, ks] : by) out.push_back(ks);
    return out;
}

struct BrutePiece
{
    std::vector<int> edges;
    std::map<int, std::vector<std::vector<int>>> blocks; ///< Wh vertex -> partition of its ends

    bool operator<(const BrutePiece& o) const { return std::tie(edges, blocks) < std::tie(o.edges, o.blocks); }
    bool operator==(const BrutePiece& o) const { return edges == o.edges && blocks == o.blocks; }
};

inline Graph brute_top_graph(const BrutePiece& p, const WhiteheadSystem& ws)
{
    std::map<int, int> block_of;
    Graph g;
    for (const auto& [v, parts] : p.blocks)
        for (const auto& b : parts) {
            for (int c : b) block_of[c] = g.num_vertices;
            ++g.num_vertices;
        }
    std::vector<std::vector<int>> ends(ws.num_wh_edges);
    for (int c = 0; c < ws.num_ends(); ++c) ends[ws.end_edge[c]].push_back(c);
    for (int k : p.edges) g.add_edge(block_of.at(ends[k][0]), block_of.at(ends[k][1]));
    return g;
}

/// All pieces by exhaustion over edge subsets and every partition of the ends at each vertex.
inline std::vector<BrutePiece> brute_pieces(const WhiteheadSystem& ws)
{
    std::vector<BrutePiece> out;
    std::vector<std::vector<int>> ends(ws.num_wh_edges);
    for (int c = 0; c < ws.num_ends(); ++c) ends[ws.end_edge[c]].push_back(c);
    for (const auto& comp : wh_edge_components(ws)) {
        const int m = static_cast<int>(comp.size());
        for (int mask = 1; mask < (1 << m); ++mask) {
            std::map<int, std::vector<int>> at;
            std::vector<int> edges;
            for (int i = 0; i < m; ++i)
                if (mask >> i & 1) {
                    edges.push_back(comp[i]);
                    for (int c : ends[comp[i]]) at[ws.end_vertex[c]].push_back(c);
                }
            std::vector<int> verts;
            std::vector<std::vector<std::vector<std::vector<int>>>> opts;
            for (auto& [v, list] : at) {
                verts.push_back(v);
                opts.push_back(set_partitions(list));
            }
            std::vector<size_t> idx(opts.size(), 0);
            for (;;) {
                BrutePiece p;
                p.edges = edges;
                std::sort(p.edges.begin(), p.edges.end());
                for (size_t i = 0; i < verts.size(); ++i) p.blocks[verts[i]] = opts[i][idx[i]];
                if (components_irreducible(brute_top_graph(p, ws))) out.push_back(p);
                size_t i = 0;
                while (i < idx.size() && ++idx[i] == opts[i].size()) idx[i++] = 0;
                if (i == idx.size()) break;
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline BrutePiece from_piece(const whcone::Piece& p)
{
    BrutePiece b;
    b.edges = p.edges;
    for (size_t i = 0; i < p.vertices.size(); ++i) b.blocks[p.vertices[i]] = p.blocks[i];
    return b;
}

/// P at e and Q at partner(e) carry the same partition through the crossing.
inline bool brute_splices(const BrutePiece& p, int e, const BrutePiece& q, const WhiteheadSystem& ws)
{
    auto a = p.blocks.find(e);
    auto b = q.blocks.find(ws.vertex_partner[e]);
    if (a == p.blocks.end() || b == q.blocks.end()) return false;
    std::set<std::set<int>> image, target;
    for (const auto& blk : a->second) {
        std::set<int> s;
        for (int c : blk) s.insert(ws.crossing[c]);
        image.insert(s);
    }
    for (const auto& blk : b->second) target.insert(std::set<int>(blk.begin(), blk.end()));
    return image == target;
}

/// Number of P-stars: for each piece, the product over its vertices of the compatible neighbours.
inline long long brute_star_count(const std::vector<BrutePiece>& pieces, const WhiteheadSystem& ws)
{
    long long total = 0;
    for (const auto& p : pieces) {
        long long prod = 1;
        for (const auto& [v, parts] : p.blocks) {
            long long n = 0;
            for (const auto& q : pieces) n += brute_splices(p, v, q, ws) ? 1 : 0;
            prod *= n;
        }
        total += prod;
    }
    return total;
}

/// Solves a square system exactly; absent when singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b)
{
    const size_t n = b.size();
    for (size_t c = 0; c < n; ++c) {
        size_t r = c;
        while (r < n && a[r][c] == 0) ++r;
        if (r == n) return std::nullopt;
        std::swap(a[r], a[c]);
        std::swap(b[r], b[c]);
        for (size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rational f = a[i][c] / a[c][c];
            for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
            b[i] -= f * b[c];
        }
    }
    std::vector<Rational> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

/// Drops dependent rows of [A | b]; false when the system is inconsistent.
inline bool independent_rows(const whcone::LinearProgram& lp, std::vector<std::vector<Rational>>& rows,
                             std::vector<Rational>& rhs)
{
    const int n = lp.num_vars;
    for (size_t r = 0; r < lp.rows.size(); ++r) {
        std::vector<Rational> row = lp.rows[r];
        Rational b = lp.rhs[r];
        for (size_t k = 0; k < rows.size(); ++k) {
            int piv = 0;
            while (rows[k][piv] == 0) ++piv;
            if (row[piv] == 0) continue;
            Rational f = row[piv] / rows[k][piv];
            for (int j = 0; j < n; ++j) row[j] -= f * rows[k][j];
            b -= f * rhs[k];
        }
        bool zero = std::all_of(row.begin(), row.end(), [](const Rational& q) { return q == 0; });
        if (zero) {
            if (b != 0) return false;
            continue;
        }
        rows.push_back(row);
        rhs.push_back(b);
    }
    return true;
}

/// Every nonnegative solution of an independent system supported on a nonsingular column set.
inline std::vector<std::vector<Rational>> basic_solutions(const std::vector<std::vector<Rational>>& a,
                                                          const std::vector<Rational>& b, int n)
{
    std::set<std::vector<Rational>> out;
    const int k = static_cast<int>(b.size());
    if (k == 0) return {std::vector<Rational>(n, 0)};
    if (k > n) return {};
    std::vector<int> cols(k);
    for (int i = 0; i < k; ++i) cols[i] = i;
    for (;;) {
        std::vector<std::vector<Rational>> sq(k, std::vector<Rational>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sq[i][j] = a[i][cols[j]];
        if (auto x = solve_square(sq, b)) {
            if (std::all_of(x->begin(), x->end(), [](const Rational& q) { return q >= 0; })) {
                std::vector<Rational> full(n, 0);
                for (int j = 0; j < k; ++j) full[cols[j]] = (*x)[j];
                out.insert(full);
            }
        }
        int i = k - 1;
        while (i >= 0 && cols[i] == n - k + i) --i;
        if (i < 0) break;
        ++cols[i];
        for (int j = i + 1; j < k; ++j) cols[j] = cols[j - 1] + 1;
    }
    return {out.begin(), out.end()};
}

/// Vertices of {x >= 0 : A x = b}.
inline std::vector<std::vector<Rational>> polyhedron_vertices(const whcone::LinearProgram& lp)
{
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    if (!independent_rows(lp, rows, rhs)) return {};
    return basic_solutions(rows, rhs, lp.num_vars);
}

struct BruteLP
{
    bool feasible = false;
    bool bounded = true;
    Rational optimum;
};

/**
 * Optimum of an equality-form LP by trying every basis.  Boundedness is
 * checked on the extreme rays, the vertices of {A d = 0, d >= 0, sum d = 1}.
 */
inline BruteLP brute_lp(const whcone::LinearProgram& lp)
{
    const int n = lp.num_vars;
    auto objective = [&](const std::vector<Rational>& x) {
        Rational s = 0;
        for (int j = 0; j < n; ++j) s += lp.objective[j] * x[j];
        return s;
    };
    BruteLP out;
    for (const auto& x : polyhedron_vertices(lp)) {
        Rational v = objective(x);
        if (!out.feasible || (lp.maximize ? v > out.optimum : v < out.optimum)) out.optimum = v;
        out.feasible = true;
    }
    if (!out.feasible) return out;
    whcone::LinearProgram rays = lp;
    for (auto& b : rays.rhs) b = 0;
    rays.rows.push_back(std::vector<Rational>(n, 1));
    rays.rhs.push_back(1);
    for (const auto& d : polyhedron_vertices(rays)) {
        Rational v = objective(d);
        if (lp.maximize ? v > 0 : v < 0) out.bounded = false;
    }
    return out;
}

/// Cyclically reduced words reachable from "a" by elementary Nielsen moves, shortest first.
inline std::vector<std::string> primitive_orbit(int rank, size_t max_len, size_t limit)
{
    auto reduce = [](std::string w) {
        std::string s;
        for (char c : w) {
            if (!s.empty() && s.back() == invert_letter(c)) s.pop_back();
            else s.push_back(c);
        }
        while (s.size() >= 2 && s.front() == invert_letter(s.back())) s = s.substr(1, s.size() - 2);
        return s;
    };
    auto canonical = [](const std::string& w) {
        std::string best = w;
        for (size_t i = 1; i < w.size(); ++i) best = std::min(best, w.substr(i) + w.substr(0, i));
        return best;
    };
    auto substitute = [&](const std::string& w, char x, const std::string& image) {
        std::string inv_image;
        for (auto it = image.rbegin(); it != image.rend(); ++it) inv_image.push_back(invert_letter(*it));
        std::string out;
        for (char c : w) {
            if (c == x) out += image;
            else if (c == invert_letter(x)) out += inv_image;
            else out.push_back(c);
        }
        return reduce(out);
    };
    std::set<std::string> seen{"a"};
    std::vector<std::string> order{"a"};
    for (size_t head = 0; head < order.size() && order.size() < limit; ++head) {
        const std::string w = order[head];
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) {
                if (i == j) continue;
                char x = static_cast<char>('a' + i);
                for (char y : {static_cast<char>('a' + j), static_cast<char>('A' + j)})
                    for (bool right : {true, false}) {
                        std::string image = right ? std::string{x, y} : std::string{y, x};
                        std::string v = canonical(substitute(w, x, image));
                        if (v.empty() || v.size() > max_len || seen.count(v)) continue;
                        seen.insert(v);
                        order.push_back(v);
                    }
            }
    }
    return order;
}

/// A connected random base graph and random cyclically reduced closed walks; every base edge is traversed.
inline std::optional<GraphPair> random_pair(std::mt19937& rng, int vertices, int edges, int walks, int walk_len)
{
    Graph g;
    g.num_vertices = vertices;
    for (int v = 1; v < vertices; ++v) g.add_edge(std::uniform_int_distribution<int>(0, v - 1)(rng), v);
    while (g.num_edges() / 2 < edges) {
        int a = std::uniform_int_distribution<int>(0, vertices - 1)(rng);
        int b = std::uniform_int_distribution<int>(0, vertices - 1)(rng);
        g.add_edge(a, b);
    }
    auto stars = g.stars();
    GraphPair p;
    p.base = g;
    for (int w = 0; w < walks; ++w) {
        std::vector<int> walk;
        for (int attempt = 0; attempt < 200 && walk.empty(); ++attempt) {
            std::vector<int> cur;
            int v = std::uniform_int_distribution<int>(0, vertices - 1)(rng);
            int start = v;
            int prev = -1;
            for (int step = 0; step < walk_len; ++step) {
                std::vector<int> choices;
                for (int e : stars[v])
                    if (prev < 0 || e != g.inv[prev]) choices.push_back(e);
                if (choices.empty()) break;
                int e = choices[std::uniform_int_distribution<size_t>(0, choices.size() - 1)(rng)];
                cur.push_back(e);
                prev = e;
                v = g.terminus(e);
            }
            if (static_cast<int>(cur.size()) == walk_len && v == start && cur.front() != g.inv[cur.back()]) walk = cur;
        }
        if (walk.empty()) return std::nullopt;
        const int off = p.circles.num_vertices;
        const int len = static_cast<int>(walk.size());
        p.circles.num_vertices += len;
        for (int j = 0; j < len; ++j) {
            p.circles.add_edge(off + j, off + (j + 1) % len);
            p.cycle.emap.push_back(walk[j]);
            p.cycle.emap.push_back(g.inv[walk[j]]);
        }
        for (int j = 0; j < len; ++j) p.cycle.vmap.push_back(g.origin[walk[j]]);
    }
    std::vector<bool> used(g.num_edges(), false);
    for (int e : p.cycle.emap) used[e] = true;
    if (std::find(used.begin(), used.end(), false) != used.end()) return std::nullopt;
    return p;
}

} // namespace oracle
