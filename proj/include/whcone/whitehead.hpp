#pragma once

#include "whcone/pair.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace whcone {

/**
 * Whitehead data of a pair, stored flat.
 *
 * Wh vertices are base edges (star elements), Wh edges are circle vertices
 * and edge-ends are circle edges: the end contributed by circle edge c sits
 * at Wh vertex end_vertex[c] on Wh edge end_edge[c].  Crossing an end over
 * its base edge lands on crossing[c].  Cells are base vertices.
 *
 * whitehead_system() and reconstruct_pair() are mutually inverse and keep
 * every id.
 */
struct WhiteheadSystem
{
    int num_cells = 0;
    std::vector<int> vertex_cell;
    std::vector<int> vertex_partner;
    int num_wh_edges = 0;
    std::vector<int> end_vertex;
    std::vector<int> end_edge;
    std::vector<int> crossing;

    int num_wh_vertices() const { return static_cast<int>(vertex_cell.size()); }
    int num_ends() const { return static_cast<int>(end_vertex.size()); }

    bool operator==(const WhiteheadSystem&) const = default;
};

WhiteheadSystem whitehead_system(const GraphPair& p);

/// Empty iff the crossings and cells are mutually consistent.
std::vector<std::string> validate_whitehead_system(const WhiteheadSystem& ws);

/// Inverse of whitehead_system(); throws RejectedInput on inconsistent data.
GraphPair reconstruct_pair(const WhiteheadSystem& ws);

/// Both ends of every Wh edge, in increasing order.
std::vector<std::array<int, 2>> wh_edge_ends(const WhiteheadSystem& ws);

/**
 * The Whitehead graph at one cell as a local Serre graph.
 *
 * Local vertex i is star[i]; local edge 2k (reverse 2k+1) is Wh edge
 * edges[k] running from the Wh vertex of its lower end to that of its higher end.
 */
struct WhGraph
{
    int cell = -1;
    std::vector<int> star;
    std::vector<int> edges;
    Graph graph;
};

WhGraph wh_graph(const WhiteheadSystem& ws, int cell);
std::vector<WhGraph> wh_graphs(const WhiteheadSystem& ws);

/// Connected components of Wh, numbered by cell then lowest Wh vertex.
struct WhComponents
{
    std::vector<int> vertex_component;
    std::vector<int> edge_component;
    std::vector<int> component_cell;

    int count() const { return static_cast<int>(component_cell.size()); }
};

WhComponents wh_components(const WhiteheadSystem& ws);

enum class Verdict { Irreducible, Disconnected, HasLeaf, HasCutVertex };

std::string verdict_name(Verdict v);

/**
 * Classification with witness, in local ids of the classified graph.
 *
 * Disconnected: component_labels.  HasLeaf: vertex is the lowest leaf.
 * HasCutVertex: vertex is the lowest cut vertex and side_one lists the
 * unoriented edges (by canonical id) of the component of G - vertex holding
 * its lowest other vertex, together with their edges to the cut.
 */
struct WhClassification
{
    Verdict verdict = Verdict::Irreducible;
    int vertex = -1;
    std::vector<int> component_labels;
    std::vector<int> side_one;
};

WhClassification classify(const Graph& g);

/// Re-checks a witness against the graph without re-running classify.
bool witness_certifies(const Graph& g, const WhClassification& c);

/// Cut vertices of g in increasing order (removal increases the component count).
std::vector<int> cut_vertices(const Graph& g);

/// Canonical edge ids grouped by the components of g - v adjacent to v, each with its edges to v; loops at v are dropped.
std::vector<std::vector<int>> blocks_at(const Graph& g, int v);

/// Disjoint union of a and b with vb glued to va.  b's vertices follow a's, skipping vb.
Graph wedge(const Graph& a, int va, const Graph& b, int vb);

/// Splits v: edges whose canonical id is in side_one stay at v, the rest move to a new last vertex.
Graph unwedge(const Graph& g, int v, const std::vector<int>& side_one);

/**
 * Unfolds p at base vertex y along the cut star element `cut`.
 *
 * side_one lists Wh edges (circle vertices) at y that stay with y; the rest
 * move to a new vertex.  Requires every other star element at y to have all
 * its Wh edges on one side and both sides to meet `cut`.  The returned
 * morphism p' -> p is the fold of the two copies of inv(cut).
 */
std::pair<GraphPair, PairMorphism> unfold_at(const GraphPair& p, int y, int cut, const std::vector<int>& side_one);

struct UnfoldStep
{
    int vertex;
    int cut;
    std::vector<int> side_one;
};

struct UnfoldResult
{
    bool locally_irreducible = false;
    GraphPair pair;         ///< final pair, or the pair at which reducibility was seen
    PairMorphism to_input;  ///< composite fold morphism pair -> input
    std::vector<UnfoldStep> steps;
    int witness_vertex = -1;
    WhClassification witness;
    bool budget_exhausted = false;
};

/// Unfolds at the lowest vertex with a cut vertex until locally irreducible.  budget < 0 means unbounded.
UnfoldResult unfold_to_locally_irreducible(const GraphPair& p, int budget = -1);

bool is_locally_irreducible(const GraphPair& p);

/**
 * Checks the Whitehead picture of a pair fold p -> q produced by
 * pair_fold(p, e1, e2): Wh(q) is obtained from Wh(p) by identifying
 * exactly e1~e2 and inv(e1)~inv(e2), bijectively on Wh edges, and the
 * image of inv(e1) is a cut vertex of its Whitehead graph.
 */
bool fold_wedge_consistent(const PairMorphism& fold_morphism, int e1, int e2);

/// Graphviz text for the Whitehead graph at one cell; names label base edges when given.
std::string wh_graph_to_dot(const WhiteheadSystem& ws, int cell, const std::vector<std::string>& names = {});

/// Letter names for rose edges: a, A, b, B, ...
std::vector<std::string> rose_edge_names(int rank);

} // namespace whcone
