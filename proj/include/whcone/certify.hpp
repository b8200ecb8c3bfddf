#pragma once

#include "whcone/lp.hpp"
#include "whcone/pieces.hpp"
#include "whcone/whitehead.hpp"

#include <optional>
#include <string>
#include <vector>

namespace whcone {

/**
 * A ∂-immersion source -> mid -> target.
 *
 * f1 maps source to mid and must be bijective on circles; f2 maps mid into
 * the target pair (the locally irreducible reference) and must be an
 * immersion on both graphs.
 */
struct DImmersion
{
    GraphPair source;
    GraphPair mid;
    GraphPair target;
    PairMap f1;
    PairMap f2;
};

/// The identity ∂-immersion p -> p -> p.
DImmersion identity_dimmersion(const GraphPair& p);

/// The composite source -> target as a morphism.
PairMorphism dimmersion_composite(const DImmersion& d);

enum class DViolationKind { Pair, Morphism, Immersion, Bijectivity, Admissibility, LocalIrreducibility, Target };

std::string violation_kind_name(DViolationKind k);

struct DViolation
{
    DViolationKind kind;
    std::string message;
};

/// Empty iff d is a ∂-immersion into `reference` with a locally irreducible source.
std::vector<DViolation> verify_dimmersion(const DImmersion& d, const GraphPair& reference);

/// The P-star realised at every mid vertex, as indices into cone.stars.
std::vector<int> vertex_stars(const DImmersion& d, const ConeSystem& cone);

/// Counts of vertex_stars(); throws InternalError when a piece or star is not enumerated.
std::vector<long long> project_vector(const DImmersion& d, const ConeSystem& cone);

/**
 * Builds a ∂-immersion realising x.
 *
 * Star instances are ordered by (star, copy) and zipped across every gluing
 * relation in that order.  `reference` is the pair the cone was built over.
 */
DImmersion reconstruct_dimmersion(const std::vector<long long>& x, const ConeSystem& cone, const GraphPair& reference);

/// After unfolding every cut vertex of mid, every Whitehead component has at least two edges.
bool is_weakly_irreducible_certificate(const DImmersion& d);

/// One component of the surface assembled from a fatform.
struct SurfaceComponent
{
    int euler = 0;
    int boundary = 0;
    bool orientable = true;
    int genus = 0;     ///< orientable only
    int crosscaps = 0; ///< non-orientable only
};

struct Fatform
{
    GraphPair pair;
    std::vector<UnfoldStep> unfold_steps;
    PairMap to_mid;
    std::vector<std::pair<int, int>> fold_sequence; ///< from pair, each fold applied to the previous result
    PairMap replay_iso;                              ///< folded pair -> mid
    std::vector<SurfaceComponent> surfaces;
    long long nodes = 0;
};

/// Every Wh vertex of p has valence exactly 2.
bool is_fat(const GraphPair& p);

/**
 * Searches cut-vertex unfoldings of mid for a fatform.  Depth-first over
 * cut vertices and side choices at the lowest cell that still has one,
 * skipping pair-isomorphism classes already seen.  Absence means nothing
 * was found within `budget` expanded nodes.
 */
std::optional<Fatform> certify_surface(const DImmersion& d, long long budget = 2000);

/// Disks are Wh cycles, bands are base edges; one entry per connected surface.
std::vector<SurfaceComponent> fatform_surfaces(const GraphPair& fat);

/// Lowest foldable pair under `to_mid`, repeatedly, until nothing folds.
std::vector<std::pair<int, int>> refold_sequence(const GraphPair& fat, const PairMap& to_mid, GraphPair* folded,
                                                 PairMap* folded_to_mid);

struct SurfaceCertificate
{
    GraphPair reference;
    GraphPair unfolded; ///< locally irreducible form of reference
    PairMap unfold_map; ///< unfolded -> reference
    std::vector<UnfoldStep> unfold_steps;
    DImmersion witness;
    std::vector<Piece> pieces;      ///< pieces used by the witness
    std::vector<PStar> stars;       ///< stars used, with indices into `pieces`
    std::vector<int> star_ids;      ///< global index of each entry of `stars`
    std::vector<int> vertex_star;   ///< per mid vertex, index into `stars`
    std::vector<std::pair<int, long long>> vector; ///< (global star, count), nonzero only
    std::vector<std::array<int, 2>> gluing;        ///< paired mid edges, lower first
    int degree = 0;
    int euler = 0;
    int boundary_count = 0;
    int chi2 = 0; ///< 2·χ_- of the vector
    Rational rho;
    Rational rho_max;
    std::vector<int> lp_basis;
    int num_stars = 0;
    Fatform fatform;
};

struct SurfaceBudgets
{
    PieceCaps caps;
    int face_budget = 64;
    long long max_bases = 20000;
    long long search_budget = 2000;
    int unfold_budget = -1;
    int max_multiplier = 2;
};

enum class SearchStatus { Found, Reducible, ZeroCone, NotFound };

std::string search_status_name(SearchStatus s);

struct SurfaceSearch
{
    SearchStatus status = SearchStatus::NotFound;
    UnfoldResult unfold;
    LPResult lp;
    int num_stars = 0;
    int face_vertices = 0;
    bool face_exhaustive = false;
    int points_tried = 0;
    std::optional<SurfaceCertificate> certificate;
};

SurfaceCertificate make_certificate(const GraphPair& reference, const UnfoldResult& unfold, const ConeSystem& cone,
                                    const LPResult& lp, const DImmersion& d, const std::vector<long long>& x,
                                    const Fatform& fat);

/// Unfold, build the cone, maximise, then try integer points of the optimal face.  Throws CapExceeded on truncation.
SurfaceSearch find_surface(const GraphPair& reference, const SurfaceBudgets& budgets = {});

} // namespace whcone
