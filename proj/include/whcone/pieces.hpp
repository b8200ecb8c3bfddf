#pragma once

#include "whcone/whitehead.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace whcone {

/// Raised when an enumeration cap binds and an exhaustive result is required.
class CapExceeded : public std::runtime_error
{
public:
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/**
 * A piece P -> V -> W over a fixed Whitehead system.
 *
 * V is the subgraph of the host component W spanned by `edges`; `vertices`
 * are its Wh vertices in increasing order.  P is recorded by splitting the
 * ends at each V vertex into blocks: blocks[i] partitions the ends at
 * vertices[i] that lie on edges of V, and each block is one vertex of P.
 * Blocks are sorted internally and among themselves, which makes the
 * representation canonical.
 */
struct Piece
{
    int host = -1;
    int cell = -1;
    std::vector<int> edges;
    std::vector<int> vertices;
    std::vector<std::vector<std::vector<int>>> blocks;

    int slot(int wh_vertex) const; ///< index into vertices, or -1
    int num_top_vertices() const;

    bool operator==(const Piece&) const = default;
    auto operator<=>(const Piece&) const = default;
};

/// The top graph P: vertices are blocks (in vertex-then-block order), edges are V's edges (2k for edges[k]).
Graph piece_top_graph(const Piece& piece, const WhiteheadSystem& ws);

/// V as a graph on `vertices` with the edges of V.
Graph piece_mid_graph(const Piece& piece, const WhiteheadSystem& ws);

/// Connected, at least two vertices, no leaf, no cut vertex.
bool is_irreducible_graph(const Graph& g);

/// Every component of the top graph is irreducible.
bool piece_is_valid(const Piece& piece, const WhiteheadSystem& ws);

struct PieceCaps
{
    int max_component_edges = 12;
    long long max_stars = 100000;
    long long max_pieces = 200000;
};

struct PieceEnumeration
{
    std::vector<Piece> pieces; ///< sorted
    bool truncated = false;
    std::vector<std::string> notes;
};

PieceEnumeration enumerate_pieces(const WhiteheadSystem& ws, const PieceCaps& caps = {});

/// Index of `piece` in a sorted piece list, or -1.
int find_piece(const std::vector<Piece>& pieces, const Piece& piece);

struct SpliceRelation
{
    int left_vertex = -1;  ///< Wh vertex e
    int right_vertex = -1; ///< its partner
    std::vector<std::pair<int, int>> matching; ///< block at e in left -> block at partner in right
};

/// The relation left <->_e right; absent unless the crossing at e carries P's blocks onto Q's blocks.
std::optional<SpliceRelation> splice_compatible(const Piece& left, int e, const Piece& right, const WhiteheadSystem& ws);

/// A piece (by index) with a neighbouring piece chosen at each vertex of its middle graph.
struct PStar
{
    int center = -1;
    std::vector<int> assignment; ///< parallel to pieces[center].vertices

    bool operator==(const PStar&) const = default;
    auto operator<=>(const PStar&) const = default;
};

struct StarEnumeration
{
    std::vector<PStar> stars; ///< sorted
    bool truncated = false;
};

/// compat[p][i] lists the pieces q with pieces[p] <->_{vertices[i]} q.
std::vector<std::vector<std::vector<int>>> splice_table(const std::vector<Piece>& pieces, const WhiteheadSystem& ws);

StarEnumeration enumerate_pstars(const std::vector<Piece>& pieces, const WhiteheadSystem& ws, const PieceCaps& caps = {});

/// How μ and ν are evaluated for the χ_- functional.
enum class ChiMode { Middle, Top };

using SparseRow = std::vector<std::pair<int, int>>; ///< (variable, coefficient), sorted, no zeros

struct GluingKey
{
    int left;
    int vertex;
    int right;

    bool operator==(const GluingKey&) const = default;
    auto operator<=>(const GluingKey&) const = default;
};

/**
 * The linear data of the cone over the P-stars.
 *
 * Gluing rows are indexed by relation instances (left, e, right) normalised
 * so that (left, e) < (right, partner(e)); rows that vanish are kept.
 * Admissibility rows are n_eps - n_ref for every Wh edge eps != ref.
 * chi2 holds twice the χ_- coefficients.
 */
struct ConeSystem
{
    std::vector<Piece> pieces;
    std::vector<PStar> stars;
    std::vector<GluingKey> gluing_keys;
    std::vector<SparseRow> gluing_rows;
    int reference_edge = 0;
    std::vector<int> admissibility_edges;
    std::vector<SparseRow> admissibility_rows;
    std::vector<int> n_functional;
    std::vector<int> chi2_functional;
    ChiMode mode = ChiMode::Middle;

    int num_vars() const { return static_cast<int>(stars.size()); }
};

ConeSystem build_cone(const std::vector<Piece>& pieces, const std::vector<PStar>& stars, const WhiteheadSystem& ws,
                      ChiMode mode = ChiMode::Middle);

/// Enumerates pieces and stars and builds the cone; throws CapExceeded on truncation.
ConeSystem cone_for(const WhiteheadSystem& ws, const PieceCaps& caps = {}, ChiMode mode = ChiMode::Middle);

/// Indices of violated rows: gluing rows first, then admissibility rows offset by the gluing count.
std::vector<int> violated_rows(const ConeSystem& cone, const std::vector<long long>& x);

} // namespace whcone
