#pragma once

#include "whcone/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace whcone {

/**
 * A graph pair: a base graph with an immersed multicycle.
 *
 * `circles` is a disjoint union of cycle graphs and `cycle` maps it into
 * `base`.  Every circle vertex has exactly two outgoing edges.
 */
struct GraphPair
{
    Graph base;
    Graph circles;
    GraphMap cycle;

    bool operator==(const GraphPair&) const = default;
};

struct PairMap
{
    GraphMap base;
    GraphMap cycle;

    bool operator==(const PairMap&) const = default;
};

struct PairMorphism
{
    GraphPair source;
    GraphPair target;
    PairMap map;
};

/// Structural problems; empty iff `p` satisfies every pair invariant.
std::vector<std::string> validate_pair(const GraphPair& p);

/// Base edges never traversed by the multicycle (allowed, but force reducibility).
std::vector<int> untraversed_edges(const GraphPair& p);

/// Problems with `m`: invalid maps, non-commuting square, non-immersive cycle map.
std::vector<std::string> validate_pair_morphism(const PairMorphism& m);

Graph rose(int rank);

/**
 * Pair on the rose of the given rank, one circle per word.
 *
 * Generator i is base edge 2i (letter 'a'+i) and its inverse is 2i+1
 * ('A'+i).  For word k starting at letter offset off, circle vertex off+j
 * sits before letter j and circle edge 2(off+j) reads letter j forwards.
 */
GraphPair parse_words(int rank, const std::vector<std::string>& words);

/// Number of circles and their lengths in circle-id order.
std::vector<int> circle_lengths(const GraphPair& p);

/// Circle component of every circle vertex.
std::vector<int> circle_labels(const GraphPair& p);

/// n if every target circle vertex and edge has exactly n preimages.
std::optional<int> admissibility_degree(const PairMorphism& m);

PairMorphism identity_pair_morphism(const GraphPair& p);
PairMorphism compose(const PairMorphism& first, const PairMorphism& second);
PairMap compose_maps(const PairMap& first, const PairMap& second);

/// Disjoint union, ids of `b` shifted past those of `a`.
GraphPair disjoint_union(const GraphPair& a, const GraphPair& b);

/**
 * Folds base edges e1, e2 (distinct termini required) and pushes the
 * multicycle forward.  Absent when the pushed multicycle is not immersed.
 */
std::optional<std::pair<GraphPair, PairMorphism>> pair_fold(const GraphPair& p, int e1, int e2);

std::optional<PairMap> find_pair_isomorphism(const GraphPair& p, const GraphPair& q);
bool pair_isomorphic(const GraphPair& p, const GraphPair& q);

/// Apply a vertex/edge relabeling to both graphs of `p` (new id = perm[old id]).
GraphPair relabel_pair(const GraphPair& p, const std::vector<int>& base_vperm, const std::vector<int>& base_eperm,
                       const std::vector<int>& circ_vperm, const std::vector<int>& circ_eperm);

} // namespace whcone
