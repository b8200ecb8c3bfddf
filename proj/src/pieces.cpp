#include "whcone/pieces.hpp"

#include <algorithm>
#include <map>

namespace whcone {

int Piece::slot(int wh_vertex) const
{
    auto it = std::lower_bound(vertices.begin(), vertices.end(), wh_vertex);
    if (it == vertices.end() || *it != wh_vertex) return -1;
    return static_cast<int>(it - vertices.begin());
}

int Piece::num_top_vertices() const
{
    int n = 0;
    for (const auto& b : blocks) n += static_cast<int>(b.size());
    return n;
}

Graph piece_top_graph(const Piece& piece, const WhiteheadSystem& ws)
{
    std::map<int, int> end_block;
    Graph g;
    for (const auto& at_vertex : piece.blocks)
        for (const auto& block : at_vertex) {
            int id = g.add_vertex();
            for (int c : block) end_block[c] = id;
        }
    auto ends = wh_edge_ends(ws);
    for (int k : piece.edges) {
        auto a = end_block.find(ends[k][0]);
        auto b = end_block.find(ends[k][1]);
        if (a == end_block.end() || b == end_block.end()) throw RejectedInput("piece edge end is not in any block");
        g.add_edge(a->second, b->second);
    }
    return g;
}

Graph piece_mid_graph(const Piece& piece, const WhiteheadSystem& ws)
{
    Graph g;
    g.num_vertices = static_cast<int>(piece.vertices.size());
    auto ends = wh_edge_ends(ws);
    for (int k : piece.edges)
        g.add_edge(piece.slot(ws.end_vertex[ends[k][0]]), piece.slot(ws.end_vertex[ends[k][1]]));
    return g;
}

bool is_irreducible_graph(const Graph& g)
{
    if (g.num_vertices < 2 || component_count(g) != 1) return false;
    for (int d : g.valences())
        if (d == 1) return false;
    return cut_vertices(g).empty();
}

bool piece_is_valid(const Piece& piece, const WhiteheadSystem& ws)
{
    if (piece.edges.empty() || piece.blocks.size() != piece.vertices.size()) return false;
    if (!std::is_sorted(piece.edges.begin(), piece.edges.end())) return false;
    auto ends = wh_edge_ends(ws);
    // The blocks at each vertex must partition exactly the ends of V's edges there.
    std::map<int, std::vector<int>> expected;
    for (int k : piece.edges) {
        if (k < 0 || k >= ws.num_wh_edges) return false;
        for (int c : ends[k]) expected[ws.end_vertex[c]].push_back(c);
    }
    if (expected.size() != piece.vertices.size()) return false;
    size_t i = 0;
    for (auto& [v, list] : expected) {
        if (piece.vertices[i] != v) return false;
        std::vector<int> got;
        for (const auto& b : piece.blocks[i]) {
            if (b.size() < 2) return false;
            got.insert(got.end(), b.begin(), b.end());
        }
        std::sort(got.begin(), got.end());
        std::sort(list.begin(), list.end());
        if (got != list) return false;
        ++i;
    }
    Graph top = piece_top_graph(piece, ws);
    for (int d : top.valences())
        if (d < 2) return false;
    return cut_vertices(top).empty();
}

namespace {

/// All set partitions of `items` into blocks of size at least two, canonically sorted.
void partitions_min2(std::vector<int> items, std::vector<std::vector<int>>& current,
                     std::vector<std::vector<std::vector<int>>>& out)
{
    if (items.empty()) {
        auto p = current;
        std::sort(p.begin(), p.end());
        out.push_back(p);
        return;
    }
    int first = items[0];
    std::vector<int> rest(items.begin() + 1, items.end());
    const int r = static_cast<int>(rest.size());
    for (unsigned mask = 1; mask < (1u << r); ++mask) {
        std::vector<int> block{first}, remaining;
        for (int i = 0; i < r; ++i) (mask >> i & 1u ? block : remaining).push_back(rest[i]);
        if (remaining.size() == 1) continue;
        current.push_back(block);
        partitions_min2(remaining, current, out);
        current.pop_back();
    }
}

} // namespace

PieceEnumeration enumerate_pieces(const WhiteheadSystem& ws, const PieceCaps& caps)
{
    PieceEnumeration out;
    WhComponents comps = wh_components(ws);
    auto ends = wh_edge_ends(ws);
    for (int h = 0; h < comps.count() && !out.truncated; ++h) {
        std::vector<int> edges;
        for (int k = 0; k < ws.num_wh_edges; ++k)
            if (comps.edge_component[k] == h) edges.push_back(k);
        const int m = static_cast<int>(edges.size());
        if (m == 0) continue;
        if (m > caps.max_component_edges) {
            out.truncated = true;
            out.notes.push_back("component " + std::to_string(h) + " has " + std::to_string(m) +
                                " Wh edges, above the cap of " + std::to_string(caps.max_component_edges));
            break;
        }
        for (unsigned long mask = 1; mask < (1ul << m) && !out.truncated; ++mask) {
            Piece base;
            base.host = h;
            base.cell = comps.component_cell[h];
            std::map<int, std::vector<int>> at;
            for (int i = 0; i < m; ++i)
                if (mask >> i & 1ul) {
                    base.edges.push_back(edges[i]);
                    for (int c : ends[edges[i]]) at[ws.end_vertex[c]].push_back(c);
                }
            bool leaf = false;
            for (auto& [v, list] : at) {
                if (list.size() < 2) leaf = true;
                std::sort(list.begin(), list.end());
                base.vertices.push_back(v);
            }
            if (leaf) continue;
            std::vector<std::vector<std::vector<std::vector<int>>>> options;
            for (auto& [v, list] : at) {
                std::vector<std::vector<std::vector<int>>> parts;
                std::vector<std::vector<int>> cur;
                partitions_min2(list, cur, parts);
                std::sort(parts.begin(), parts.end());
                options.push_back(std::move(parts));
            }
            std::vector<size_t> idx(options.size(), 0);
            for (;;) {
                Piece p = base;
                for (size_t i = 0; i < options.size(); ++i) p.blocks.push_back(options[i][idx[i]]);
                Graph top = piece_top_graph(p, ws);
                if (cut_vertices(top).empty()) {
                    out.pieces.push_back(std::move(p));
                    if (static_cast<long long>(out.pieces.size()) > caps.max_pieces) {
                        out.truncated = true;
                        out.notes.push_back("piece count exceeds the cap of " + std::to_string(caps.max_pieces));
                        break;
                    }
                }
                size_t i = 0;
                while (i < idx.size() && ++idx[i] == options[i].size()) idx[i++] = 0;
                if (i == idx.size()) break;
            }
        }
    }
    std::sort(out.pieces.begin(), out.pieces.end());
    return out;
}

int find_piece(const std::vector<Piece>& pieces, const Piece& piece)
{
    auto it = std::lower_bound(pieces.begin(), pieces.end(), piece);
    if (it == pieces.end() || !(*it == piece)) return -1;
    return static_cast<int>(it - pieces.begin());
}

std::optional<SpliceRelation> splice_compatible(const Piece& left, int e, const Piece& right, const WhiteheadSystem& ws)
{
    if (e < 0 || e >= ws.num_wh_vertices()) return std::nullopt;
    int eb = ws.vertex_partner[e];
    int i = left.slot(e), j = right.slot(eb);
    if (i < 0 || j < 0) return std::nullopt;
    const auto& lb = left.blocks[i];
    const auto& rb = right.blocks[j];
    if (lb.size() != rb.size()) return std::nullopt;
    SpliceRelation rel{e, eb, {}};
    for (size_t a = 0; a < lb.size(); ++a) {
        std::vector<int> image;
        for (int c : lb[a]) image.push_back(ws.crossing[c]);
        std::sort(image.begin(), image.end());
        auto it = std::lower_bound(rb.begin(), rb.end(), image);
        if (it == rb.end() || *it != image) return std::nullopt;
        rel.matching.emplace_back(static_cast<int>(a), static_cast<int>(it - rb.begin()));
    }
    return rel;
}

std::vector<std::vector<std::vector<int>>> splice_table(const std::vector<Piece>& pieces, const WhiteheadSystem& ws)
{
    std::vector<std::vector<int>> containing(ws.num_wh_vertices());
    for (size_t q = 0; q < pieces.size(); ++q)
        for (int v : pieces[q].vertices) containing[v].push_back(static_cast<int>(q));
    std::vector<std::vector<std::vector<int>>> table(pieces.size());
    for (size_t p = 0; p < pieces.size(); ++p) {
        const Piece& P = pieces[p];
        table[p].resize(P.vertices.size());
        for (size_t i = 0; i < P.vertices.size(); ++i) {
            int e = P.vertices[i];
            for (int q : containing[ws.vertex_partner[e]])
                if (splice_compatible(P, e, pieces[q], ws)) table[p][i].push_back(q);
        }
    }
    return table;
}

StarEnumeration enumerate_pstars(const std::vector<Piece>& pieces, const WhiteheadSystem& ws, const PieceCaps& caps)
{
    StarEnumeration out;
    auto table = splice_table(pieces, ws);
    long long total = 0;
    for (size_t p = 0; p < pieces.size(); ++p) {
        long long count = 1;
        for (const auto& choices : table[p]) {
            count *= static_cast<long long>(choices.size());
            if (count > caps.max_stars) break;
        }
        if (count == 0) continue;
        if (total + count > caps.max_stars) {
            out.truncated = true;
            return out;
        }
        total += count;
        std::vector<size_t> idx(table[p].size(), 0);
        for (;;) {
            PStar s{static_cast<int>(p), {}};
            for (size_t i = 0; i < idx.size(); ++i) s.assignment.push_back(table[p][i][idx[i]]);
            out.stars.push_back(std::move(s));
            // Odometer with the last slot varying fastest keeps the list sorted.
            int i = static_cast<int>(idx.size()) - 1;
            while (i >= 0 && ++idx[i] == table[p][i].size()) idx[i--] = 0;
            if (i < 0) break;
        }
    }
    return out;
}

namespace {

SparseRow to_sparse(const std::map<int, int>& acc)
{
    SparseRow row;
    for (auto [v, c] : acc)
        if (c != 0) row.emplace_back(v, c);
    return row;
}

} // namespace

ConeSystem build_cone(const std::vector<Piece>& pieces, const std::vector<PStar>& stars, const WhiteheadSystem& ws,
                      ChiMode mode)
{
    ConeSystem cone;
    cone.pieces = pieces;
    cone.stars = stars;
    cone.mode = mode;
    auto table = splice_table(pieces, ws);

    auto normalise = [&](int p, int e, int q) -> std::pair<GluingKey, int> {
        int eb = ws.vertex_partner[e];
        if (std::pair{p, e} < std::pair{q, eb}) return {GluingKey{p, e, q}, 1};
        return {GluingKey{q, eb, p}, -1};
    };
    std::map<GluingKey, std::map<int, int>> rows;
    for (size_t p = 0; p < pieces.size(); ++p)
        for (size_t i = 0; i < table[p].size(); ++i)
            for (int q : table[p][i]) rows[normalise(static_cast<int>(p), pieces[p].vertices[i], q).first];
    for (size_t s = 0; s < stars.size(); ++s) {
        const PStar& star = stars[s];
        const Piece& P = pieces[star.center];
        for (size_t i = 0; i < star.assignment.size(); ++i) {
            auto [key, sign] = normalise(star.center, P.vertices[i], star.assignment[i]);
            auto it = rows.find(key);
            if (it == rows.end()) throw InternalError("star assignment is not a splice relation");
            it->second[static_cast<int>(s)] += sign;
        }
    }
    for (const auto& [key, acc] : rows) {
        cone.gluing_keys.push_back(key);
        cone.gluing_rows.push_back(to_sparse(acc));
    }

    auto delta = [&](int piece, int eps) {
        const auto& ed = pieces[piece].edges;
        return std::binary_search(ed.begin(), ed.end(), eps) ? 1 : 0;
    };
    cone.reference_edge = 0;
    for (int eps = 1; eps < ws.num_wh_edges; ++eps) {
        std::map<int, int> acc;
        for (size_t s = 0; s < stars.size(); ++s)
            acc[static_cast<int>(s)] = delta(stars[s].center, eps) - delta(stars[s].center, 0);
        cone.admissibility_edges.push_back(eps);
        cone.admissibility_rows.push_back(to_sparse(acc));
    }
    for (const PStar& s : stars) {
        cone.n_functional.push_back(ws.num_wh_edges > 0 ? delta(s.center, 0) : 0);
        const Piece& P = pieces[s.center];
        if (mode == ChiMode::Middle) {
            Graph mid = piece_mid_graph(P, ws);
            cone.chi2_functional.push_back(mid.num_vertices - 2 * component_count(mid));
        } else {
            Graph top = piece_top_graph(P, ws);
            cone.chi2_functional.push_back(top.num_vertices - 2 * component_count(top));
        }
    }
    return cone;
}

ConeSystem cone_for(const WhiteheadSystem& ws, const PieceCaps& caps, ChiMode mode)
{
    PieceEnumeration pe = enumerate_pieces(ws, caps);
    if (pe.truncated) {
        std::string why = "piece enumeration truncated";
        for (const auto& n : pe.notes) why += "; " + n;
        throw CapExceeded(why);
    }
    StarEnumeration se = enumerate_pstars(pe.pieces, ws, caps);
    if (se.truncated) throw CapExceeded("P-star count exceeds the cap of " + std::to_string(caps.max_stars));
    return build_cone(pe.pieces, se.stars, ws, mode);
}

std::vector<int> violated_rows(const ConeSystem& cone, const std::vector<long long>& x)
{
    std::vector<int> out;
    auto eval = [&](const SparseRow& row) {
        long long sum = 0;
        for (auto [v, c] : row) sum += c * x.at(v);
        return sum;
    };
    for (size_t r = 0; r < cone.gluing_rows.size(); ++r)
        if (eval(cone.gluing_rows[r]) != 0) out.push_back(static_cast<int>(r));
    for (size_t r = 0; r < cone.admissibility_rows.size(); ++r)
        if (eval(cone.admissibility_rows[r]) != 0) out.push_back(static_cast<int>(cone.gluing_rows.size() + r));
    return out;
}

} // namespace whcone
