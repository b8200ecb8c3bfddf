#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace whcone {

/// Thrown when an operation's precondition is violated by caller-supplied data.
class RejectedInput : public std::invalid_argument
{
public:
    explicit RejectedInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown when data produced inside the library contradicts an invariant.
class InternalError : public std::logic_error
{
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

/**
 * A finite graph in Serre's convention.
 *
 * Vertices are 0..num_vertices-1 and oriented edges are 0..num_edges()-1.
 * inv is a fixed-point free involution on edges and origin maps each edge to
 * the vertex it leaves.  An unoriented edge is the orbit {e, inv[e]}; its
 * canonical representative is the smaller id.
 *
 * The struct can hold invalid data (for example straight from JSON); use
 * validate_graph() before relying on the invariants.
 */
struct Graph
{
    int num_vertices = 0;
    std::vector<int> inv;
    std::vector<int> origin;

    int num_edges() const { return static_cast<int>(inv.size()); }
    int terminus(int e) const { return origin[inv[e]]; }

    /// Appends an unoriented edge from `from` to `to`; returns the id of the edge leaving `from`.
    int add_edge(int from, int to);
    int add_vertex() { return num_vertices++; }

    /// Edges leaving each vertex, in increasing id order.
    std::vector<std::vector<int>> stars() const;
    std::vector<int> valences() const;

    bool operator==(const Graph&) const = default;
};

/// Vertex and edge maps of a morphism, indexed by domain ids.
struct GraphMap
{
    std::vector<int> vmap;
    std::vector<int> emap;

    bool operator==(const GraphMap&) const = default;
};

struct GraphMorphism
{
    Graph domain;
    Graph codomain;
    GraphMap map;
};

enum class GraphViolationKind {
    InvolutionOutOfRange,
    InvolutionNotInvolutive,
    InvolutionFixedPoint,
    OriginMissing,
    OriginOutOfRange,
    SizeMismatch,
};

struct GraphViolation
{
    GraphViolationKind kind;
    int edge;
    std::string message;
};

std::vector<GraphViolation> validate_graph(const Graph& g);

enum class MorphismViolationKind {
    BadDomainGraph,
    BadCodomainGraph,
    MapSizeMismatch,
    VertexOutOfRange,
    EdgeOutOfRange,
    InvolutionNotPreserved,
    OriginNotPreserved,
};

struct MorphismViolation
{
    MorphismViolationKind kind;
    int item;
    std::string message;
};

std::vector<MorphismViolation> validate_morphism(const GraphMorphism& m);

/// |V| - |E|/2 with E counting oriented edges.
int euler_characteristic(const Graph& g);

/// Number of connected components, isolated vertices included.
int component_count(const Graph& g);

/// Component id of every vertex, numbered in order of the lowest vertex.
std::vector<int> component_labels(const Graph& g);

/// True iff emap is injective on every star.
bool is_immersion(const GraphMorphism& m);
bool is_star_injective(const Graph& domain, const GraphMap& map);

GraphMorphism identity_morphism(const Graph& g);

/// `second ∘ first`.  The codomain of first must be the domain of second.
GraphMorphism compose(const GraphMorphism& first, const GraphMorphism& second);
GraphMap compose_maps(const GraphMap& first, const GraphMap& second);

/**
 * Stallings fold identifying e1 with e2 (and their reverses, and their
 * termini).  Requires origin(e1) == origin(e2), e1 != e2 and e2 != inv(e1).
 *
 * The quotient keeps the surviving classes in increasing order of their
 * smallest member, so ids shift down but relative order is preserved.
 */
std::pair<Graph, GraphMorphism> fold(const Graph& g, int e1, int e2);

struct ImmersionFactorization
{
    GraphMorphism folds;     ///< composition of folds, domain -> folded graph
    GraphMorphism immersion; ///< folded graph -> original codomain
    std::vector<std::pair<int, int>> steps; ///< fold performed at each step, in the graph current at that step
};

/// Factor m as immersion ∘ folds.  Folds the lexicographically least eligible pair first.
ImmersionFactorization fold_to_immersion(const GraphMorphism& m);

/// Exact isomorphism test by backtracking with propagation.
bool graphs_isomorphic(const Graph& a, const Graph& b);

/// Isomorphism over a common codomain: a bijection phi with label_b ∘ phi = label_a.
bool morphisms_isomorphic(const GraphMorphism& a, const GraphMorphism& b);

/// Graphviz text, one arrow per unoriented edge (from the canonical representative).
std::string graph_to_dot(const Graph& g, const std::string& name = "G");

} // namespace whcone
