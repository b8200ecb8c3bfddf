#pragma once

#include "whcone/pieces.hpp"
#include "whcone/rational.hpp"

#include <functional>
#include <string>
#include <vector>

namespace whcone {

/// Equality-form LP over exact rationals: optimise objective.x subject to rows.x = rhs, x >= 0.
struct LinearProgram
{
    int num_vars = 0;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    std::vector<Rational> objective;
    bool maximize = true;
    std::string objective_name = "obj";
    std::vector<std::string> var_names;
    std::vector<std::string> row_names;
};

enum class LPStatus { Optimal, Infeasible, Unbounded, ZeroCone };

std::string status_name(LPStatus s);

struct LPResult
{
    LPStatus status = LPStatus::Infeasible;
    Rational optimum;
    std::vector<Rational> vertex;
    std::vector<int> basis; ///< basic structural columns, increasing
    long long pivots = 0;
};

struct SolverOptions
{
    long long max_pivots = 5'000'000;
};

/// Two-phase primal simplex with Bland's rule.
LPResult solve_lp(const LinearProgram& lp, const SolverOptions& opt = {});

/// rows.x - rhs for every row.
std::vector<Rational> residuals(const LinearProgram& lp, const std::vector<Rational>& x);
bool is_feasible(const LinearProgram& lp, const std::vector<Rational>& x);

/// χ_-/2-scaled objective over the cone slice n(x) = 1.  Empty rows are omitted.
LinearProgram rank_program(const ConeSystem& cone, bool maximize);

/// ZeroCone when the cone has no nonzero point; otherwise the optimum is ρ.
LPResult maximize_rank(const ConeSystem& cone, const SolverOptions& opt = {});
LPResult minimize_rank(const ConeSystem& cone, const SolverOptions& opt = {});

struct FaceEnumeration
{
    std::vector<std::vector<Rational>> vertices; ///< first entry is the LP vertex
    bool exhaustive = false;
    long long bases_visited = 0;
};

/**
 * Vertices of the optimal face, depth-first over feasible bases that use
 * only zero-reduced-cost columns, with pivots that move the vertex tried
 * before degenerate ones.  Stops after `budget` vertices, after `max_bases`
 * bases, or when on_vertex returns true.  Budget 0 returns the LP vertex alone.
 */
FaceEnumeration optimal_face_vertices(const LinearProgram& lp, const LPResult& result, int budget,
                                      long long max_bases = 20000,
                                      const std::function<bool(const std::vector<Rational>&)>& on_vertex = {});

struct IntegerPoint
{
    std::vector<long long> x;
    BigInt scale;
};

/// Scales by the lcm of the denominators.  Rejects zero or negative input.
IntegerPoint integer_point(const std::vector<Rational>& v);

/// Human-readable LP text (Maximize/Minimize, Subject To, Bounds, End).
std::string lp_to_text(const LinearProgram& lp);
LinearProgram parse_lp_text(const std::string& text);

} // namespace whcone
