#pragma once

// Backtracking isomorphism search shared by graphs and graph pairs.

#include "whcone/graph.hpp"

#include <optional>

namespace whcone::detail {

struct IsoSide
{
    const Graph* base = nullptr;
    const Graph* circles = nullptr;        ///< optional multicycle domain
    const GraphMap* cycle = nullptr;       ///< circles -> base, required with circles
    const std::vector<int>* edge_label = nullptr; ///< optional colour per base edge
    const std::vector<int>* vertex_label = nullptr; ///< optional colour per base vertex
};

struct IsoMaps
{
    GraphMap base;
    GraphMap cycle;
};

/// Returns maps a -> b if the structures are isomorphic.
std::optional<IsoMaps> find_isomorphism(const IsoSide& a, const IsoSide& b);

} // namespace whcone::detail
