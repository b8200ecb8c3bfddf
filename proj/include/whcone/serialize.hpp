#pragma once

#include "whcone/certify.hpp"

#include <json.hpp>

#include <string>

namespace whcone {

using Json = nlohmann::json;

Json to_json(const Graph& g);
Json to_json(const GraphMap& m);
Json to_json(const GraphPair& p);
Json to_json(const PairMap& m);
Json to_json(const WhiteheadSystem& ws);
Json to_json(const Piece& p);
Json to_json(const PStar& s);
Json to_json(const UnfoldStep& s);
Json to_json(const DImmersion& d);
Json to_json(const SurfaceComponent& s);
Json to_json(const LPResult& r);
Json to_json(const SurfaceCertificate& c);

/// Dimensions and rows of a cone; stars and pieces are listed in full.
Json cone_to_json(const ConeSystem& cone);

/// Per-cell classification with witnesses.
Json classification_to_json(const WhiteheadSystem& ws);

// Decoders throw RejectedInput on malformed input.
Graph graph_from_json(const Json& j);
GraphMap graph_map_from_json(const Json& j);
GraphPair pair_from_json(const Json& j);
PairMap pair_map_from_json(const Json& j);
WhiteheadSystem whitehead_from_json(const Json& j);

/// Sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

Json parse_json_text(const std::string& text);

} // namespace whcone
