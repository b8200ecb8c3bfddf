#include "whcone/lp.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace whcone {

std::string status_name(LPStatus s)
{
    switch (s) {
    case LPStatus::Optimal: return "Optimal";
    case LPStatus::Infeasible: return "Infeasible";
    case LPStatus::Unbounded: return "Unbounded";
    case LPStatus::ZeroCone: return "ZeroCone";
    }
    return "?";
}

namespace {

struct Tableau
{
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    std::vector<int> basis;
    std::vector<Rational> d; ///< reduced costs c_j - c_B B^-1 A_j
    long long pivots = 0;

    int rows() const { return static_cast<int>(a.size()); }
    int cols() const { return a.empty() ? static_cast<int>(d.size()) : static_cast<int>(a[0].size()); }

    void pivot(int r, int j)
    {
        const Rational p = a[r][j];
        std::vector<int> nz;
        for (int k = 0; k < cols(); ++k)
            if (!a[r][k].is_zero()) {
                a[r][k] /= p;
                nz.push_back(k);
            }
        b[r] /= p;
        for (int i = 0; i < rows(); ++i) {
            if (i == r || a[i][j].is_zero()) continue;
            const Rational f = a[i][j];
            for (int k : nz) a[i][k] -= f * a[r][k];
            b[i] -= f * b[r];
        }
        if (!d.empty() && !d[j].is_zero()) {
            const Rational f = d[j];
            for (int k : nz) d[k] -= f * a[r][k];
        }
        basis[r] = j;
        ++pivots;
    }

    void price(const std::vector<Rational>& cost)
    {
        d = cost;
        for (int r = 0; r < rows(); ++r) {
            const Rational& cb = cost[basis[r]];
            if (cb.is_zero()) continue;
            for (int k = 0; k < cols(); ++k)
                if (!a[r][k].is_zero()) d[k] -= cb * a[r][k];
        }
    }

    /// Maximises cost over the current feasible basis; false when unbounded.
    bool run(const std::vector<char>& allowed, long long max_pivots)
    {
        for (;;) {
            int j = -1;
            for (int k = 0; k < cols(); ++k)
                if (allowed[k] && d[k] > 0) {
                    j = k;
                    break;
                }
            if (j < 0) return true;
            int r = -1;
            Rational best;
            for (int i = 0; i < rows(); ++i) {
                if (a[i][j] <= 0) continue;
                Rational ratio = b[i] / a[i][j];
                if (r < 0 || ratio < best || (ratio == best && basis[i] < basis[r])) {
                    r = i;
                    best = ratio;
                }
            }
            if (r < 0) return false;
            if (pivots >= max_pivots) throw InternalError("simplex pivot limit reached");
            pivot(r, j);
        }
    }
};

std::vector<Rational> full_cost(const LinearProgram& lp, int ncols)
{
    std::vector<Rational> c(ncols);
    for (int j = 0; j < lp.num_vars; ++j) c[j] = lp.maximize ? lp.objective[j] : Rational(-lp.objective[j]);
    return c;
}

void check_shape(const LinearProgram& lp)
{
    if (static_cast<int>(lp.objective.size()) != lp.num_vars) throw RejectedInput("LP objective size mismatch");
    if (lp.rows.size() != lp.rhs.size()) throw RejectedInput("LP rhs size mismatch");
    for (const auto& row : lp.rows)
        if (static_cast<int>(row.size()) != lp.num_vars) throw RejectedInput("LP row size mismatch");
}

} // namespace

LPResult solve_lp(const LinearProgram& lp, const SolverOptions& opt)
{
    check_shape(lp);
    const int n = lp.num_vars;
    const int m = static_cast<int>(lp.rows.size());
    Tableau t;
    t.a.assign(m, std::vector<Rational>(n + m));
    t.b.resize(m);
    t.basis.resize(m);
    for (int r = 0; r < m; ++r) {
        bool neg = lp.rhs[r] < 0;
        for (int j = 0; j < n; ++j) t.a[r][j] = neg ? Rational(-lp.rows[r][j]) : lp.rows[r][j];
        t.b[r] = neg ? Rational(-lp.rhs[r]) : lp.rhs[r];
        t.a[r][n + r] = 1;
        t.basis[r] = n + r;
    }

    LPResult res;
    std::vector<Rational> phase1(n + m);
    for (int r = 0; r < m; ++r) phase1[n + r] = -1;
    t.price(phase1);
    std::vector<char> all(n + m, 1);
    t.run(all, opt.max_pivots);
    Rational infeas;
    for (int r = 0; r < m; ++r)
        if (t.basis[r] >= n) infeas += t.b[r];
    if (infeas > 0) {
        res.status = LPStatus::Infeasible;
        res.pivots = t.pivots;
        return res;
    }
    // Drive artificials out of the basis; rows where that is impossible are redundant.
    for (int r = 0; r < t.rows();) {
        if (t.basis[r] < n) {
            ++r;
            continue;
        }
        int j = -1;
        for (int k = 0; k < n; ++k)
            if (!t.a[r][k].is_zero()) {
                j = k;
                break;
            }
        if (j >= 0) {
            t.pivot(r, j);
            ++r;
        } else {
            t.a.erase(t.a.begin() + r);
            t.b.erase(t.b.begin() + r);
            t.basis.erase(t.basis.begin() + r);
        }
    }
    std::vector<char> structural(n + m, 0);
    std::fill(structural.begin(), structural.begin() + n, 1);
    t.price(full_cost(lp, n + m));
    if (!t.run(structural, opt.max_pivots)) {
        res.status = LPStatus::Unbounded;
        res.pivots = t.pivots;
        return res;
    }
    res.status = LPStatus::Optimal;
    res.vertex.assign(n, Rational(0));
    for (int r = 0; r < t.rows(); ++r) res.vertex[t.basis[r]] = t.b[r];
    for (int j = 0; j < n; ++j) res.optimum += lp.objective[j] * res.vertex[j];
    res.basis = t.basis;
    std::sort(res.basis.begin(), res.basis.end());
    res.pivots = t.pivots;
    return res;
}

std::vector<Rational> residuals(const LinearProgram& lp, const std::vector<Rational>& x)
{
    std::vector<Rational> out;
    for (size_t r = 0; r < lp.rows.size(); ++r) {
        Rational s = -lp.rhs[r];
        for (int j = 0; j < lp.num_vars; ++j)
            if (!lp.rows[r][j].is_zero()) s += lp.rows[r][j] * x.at(j);
        out.push_back(s);
    }
    return out;
}

bool is_feasible(const LinearProgram& lp, const std::vector<Rational>& x)
{
    if (static_cast<int>(x.size()) != lp.num_vars) return false;
    for (const auto& v : x)
        if (v < 0) return false;
    for (const auto& r : residuals(lp, x))
        if (!r.is_zero()) return false;
    return true;
}

LinearProgram rank_program(const ConeSystem& cone, bool maximize)
{
    LinearProgram lp;
    lp.num_vars = cone.num_vars();
    lp.maximize = maximize;
    lp.objective_name = "chi";
    for (int j = 0; j < lp.num_vars; ++j) {
        lp.var_names.push_back("s" + std::to_string(j));
        lp.objective.push_back(Rational(cone.chi2_functional[j], 2));
    }
    auto add = [&](const SparseRow& row, const std::string& name, const Rational& rhs) {
        if (row.empty()) return;
        std::vector<Rational> dense(lp.num_vars);
        for (auto [v, c] : row) dense[v] = c;
        lp.rows.push_back(std::move(dense));
        lp.rhs.push_back(rhs);
        lp.row_names.push_back(name);
    };
    for (size_t r = 0; r < cone.gluing_rows.size(); ++r) add(cone.gluing_rows[r], "g" + std::to_string(r), 0);
    for (size_t r = 0; r < cone.admissibility_rows.size(); ++r)
        add(cone.admissibility_rows[r], "a" + std::to_string(cone.admissibility_edges[r]), 0);
    SparseRow nrow;
    for (int j = 0; j < lp.num_vars; ++j)
        if (cone.n_functional[j]) nrow.emplace_back(j, cone.n_functional[j]);
    if (nrow.empty() && lp.num_vars > 0) {
        // n vanishes identically: the slice n = 1 is empty.
        lp.rows.push_back(std::vector<Rational>(lp.num_vars));
        lp.rhs.push_back(1);
        lp.row_names.push_back("n");
    } else {
        add(nrow, "n", 1);
    }
    return lp;
}

namespace {

LPResult optimise_rank(const ConeSystem& cone, bool maximize, const SolverOptions& opt)
{
    LPResult res;
    if (cone.num_vars() == 0) {
        res.status = LPStatus::ZeroCone;
        return res;
    }
    res = solve_lp(rank_program(cone, maximize), opt);
    if (res.status == LPStatus::Infeasible) res.status = LPStatus::ZeroCone;
    if (res.status == LPStatus::Unbounded) throw InternalError("rank program is unbounded");
    return res;
}

/// Gauss-Jordan on the rows, keeping only independent ones.
void full_rank_rows(std::vector<std::vector<Rational>>& a, std::vector<Rational>& b)
{
    const int n = a.empty() ? 0 : static_cast<int>(a[0].size());
    int r = 0;
    for (int j = 0; j < n && r < static_cast<int>(a.size()); ++j) {
        int piv = -1;
        for (int i = r; i < static_cast<int>(a.size()); ++i)
            if (!a[i][j].is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[r], a[piv]);
        std::swap(b[r], b[piv]);
        Rational p = a[r][j];
        for (auto& v : a[r]) v /= p;
        b[r] /= p;
        for (int i = 0; i < static_cast<int>(a.size()); ++i) {
            if (i == r || a[i][j].is_zero()) continue;
            Rational f = a[i][j];
            for (int k = 0; k < n; ++k)
                if (!a[r][k].is_zero()) a[i][k] -= f * a[r][k];
            b[i] -= f * b[r];
        }
        ++r;
    }
    for (int i = r; i < static_cast<int>(b.size()); ++i)
        if (!b[i].is_zero()) throw InternalError("inconsistent equality system");
    a.resize(r);
    b.resize(r);
}

/// Tableau of the basis, or false if the basis columns are singular.
bool tableau_for(const std::vector<std::vector<Rational>>& a0, const std::vector<Rational>& b0,
                 const std::vector<int>& basis, Tableau& t)
{
    t.a = a0;
    t.b = b0;
    t.basis.assign(basis.size(), -1);
    t.d.clear();
    const int m = static_cast<int>(a0.size());
    std::vector<char> used(m, 0);
    for (int j : basis) {
        int piv = -1;
        for (int i = 0; i < m; ++i)
            if (!used[i] && !t.a[i][j].is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) return false;
        used[piv] = 1;
        t.pivot(piv, j);
    }
    return true;
}

} // namespace

LPResult maximize_rank(const ConeSystem& cone, const SolverOptions& opt) { return optimise_rank(cone, true, opt); }
LPResult minimize_rank(const ConeSystem& cone, const SolverOptions& opt) { return optimise_rank(cone, false, opt); }

FaceEnumeration optimal_face_vertices(const LinearProgram& lp, const LPResult& result, int budget, long long max_bases,
                                      const std::function<bool(const std::vector<Rational>&)>& on_vertex)
{
    if (result.status != LPStatus::Optimal) throw RejectedInput("optimal_face_vertices needs an optimal result");
    FaceEnumeration out;
    out.vertices.push_back(result.vertex);
    if (budget <= 0) {
        if (on_vertex) on_vertex(result.vertex);
        return out;
    }
    const int n = lp.num_vars;
    auto a = lp.rows;
    auto b = lp.rhs;
    full_rank_rows(a, b);
    if (a.size() != result.basis.size()) {
        // Degenerate basis bookkeeping from phase one; the start vertex is still valid.
        if (on_vertex) on_vertex(result.vertex);
        return out;
    }
    Tableau t;
    if (!tableau_for(a, b, result.basis, t)) throw InternalError("optimal basis is singular");
    t.price(full_cost(lp, n));

    // Columns with nonzero reduced cost vanish on the face; drop them.
    std::vector<int> cols, local(n, -1);
    for (int j = 0; j < n; ++j)
        if (t.d[j].is_zero()) {
            local[j] = static_cast<int>(cols.size());
            cols.push_back(j);
        }
    const int nf = static_cast<int>(cols.size());
    std::vector<std::vector<Rational>> fa(a.size(), std::vector<Rational>(nf));
    for (size_t i = 0; i < a.size(); ++i)
        for (int k = 0; k < nf; ++k) fa[i][k] = a[i][cols[k]];
    std::vector<int> start;
    for (int j : result.basis) start.push_back(local[j]);
    auto global_vertex = [&](const Tableau& tab) {
        std::vector<Rational> x(n);
        for (int r = 0; r < tab.rows(); ++r) x[cols[tab.basis[r]]] = tab.b[r];
        return x;
    };

    if (!tableau_for(fa, b, start, t)) throw InternalError("optimal basis is singular on the face");

    std::set<std::vector<Rational>> seen_vertices{result.vertex};
    auto sorted_basis = [](std::vector<int> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    std::set<std::vector<int>> seen_bases{start};
    if (on_vertex && on_vertex(result.vertex)) return out;

    // Depth-first with reversible pivots; moves that change the vertex go first.
    struct Frame
    {
        std::vector<std::pair<int, int>> moves; ///< (entering column, pivot row)
        size_t next = 0;
        int back_row = -1;
        int back_col = -1;
    };
    auto moves_of = [&](const Tableau& tab) {
        std::vector<std::pair<int, int>> strict, degenerate;
        std::vector<char> basic(nf, 0);
        for (int j : tab.basis) basic[j] = 1;
        for (int j = 0; j < nf; ++j) {
            if (basic[j]) continue;
            Rational best;
            std::vector<int> rows;
            for (int i = 0; i < tab.rows(); ++i) {
                if (tab.a[i][j] <= 0) continue;
                Rational ratio = tab.b[i] / tab.a[i][j];
                if (rows.empty() || ratio < best) {
                    rows = {i};
                    best = ratio;
                } else if (ratio == best) {
                    rows.push_back(i);
                }
            }
            for (int i : rows) (best.is_zero() ? degenerate : strict).push_back({j, i});
        }
        strict.insert(strict.end(), degenerate.begin(), degenerate.end());
        return strict;
    };
    std::vector<Frame> stack;
    stack.push_back({moves_of(t), 0, -1, -1});
    out.bases_visited = 1;
    bool complete = true;
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next == f.moves.size()) {
            if (f.back_row >= 0) t.pivot(f.back_row, f.back_col);
            stack.pop_back();
            continue;
        }
        auto [j, i] = f.moves[f.next++];
        std::vector<int> next = t.basis;
        const int leaving = next[i];
        next[i] = j;
        next = sorted_basis(next);
        if (seen_bases.count(next)) continue;
        if (static_cast<long long>(seen_bases.size()) >= max_bases) {
            complete = false;
            continue;
        }
        seen_bases.insert(next);
        t.pivot(i, j);
        ++out.bases_visited;
        std::vector<Rational> x = global_vertex(t);
        if (seen_vertices.insert(x).second) {
            if (static_cast<int>(out.vertices.size()) >= budget) return out;
            out.vertices.push_back(x);
            if (on_vertex && on_vertex(x)) return out;
        }
        stack.push_back({moves_of(t), 0, i, leaving});
    }
    out.exhaustive = complete;
    return out;
}

IntegerPoint integer_point(const std::vector<Rational>& v)
{
    BigInt scale = 1;
    bool nonzero = false;
    for (const auto& q : v) {
        if (q < 0) throw RejectedInput("integer_point: negative coordinate");
        if (!q.is_zero()) nonzero = true;
        BigInt den = boost::multiprecision::denominator(q);
        scale = scale / boost::multiprecision::gcd(scale, den) * den;
    }
    if (!nonzero) throw RejectedInput("integer_point: zero vector");
    IntegerPoint out;
    out.scale = scale;
    for (const auto& q : v) {
        BigInt k = boost::multiprecision::numerator(q) * (scale / boost::multiprecision::denominator(q));
        if (k > BigInt(std::numeric_limits<long long>::max())) throw RejectedInput("integer_point: coordinate overflow");
        out.x.push_back(k.convert_to<long long>());
    }
    return out;
}

namespace {

bool terminating_decimal(BigInt den)
{
    while (den % 2 == 0) den /= 2;
    while (den % 5 == 0) den /= 5;
    return den == 1;
}

std::string coefficient_text(const Rational& q)
{
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    if (!terminating_decimal(den)) return to_fraction(q);
    // Exact decimal expansion.
    std::string sign = num < 0 ? "-" : "";
    if (num < 0) num = -num;
    BigInt whole = num / den;
    BigInt rem = num % den;
    std::string digits;
    while (rem != 0) {
        rem *= 10;
        digits += static_cast<char>('0' + (rem / den).convert_to<int>());
        rem %= den;
    }
    return sign + whole.str() + "." + digits;
}

void write_linear(std::ostringstream& os, const std::vector<Rational>& coeffs, const std::vector<std::string>& names)
{
    bool first = true;
    for (size_t j = 0; j < coeffs.size(); ++j) {
        const Rational& c = coeffs[j];
        if (c.is_zero()) continue;
        Rational mag = c < 0 ? Rational(-c) : c;
        if (first) os << (c < 0 ? "- " : "");
        else os << (c < 0 ? " - " : " + ");
        os << coefficient_text(mag) << " " << names[j];
        first = false;
    }
    if (first) os << "0";
}

std::vector<std::string> names_or_default(const LinearProgram& lp)
{
    std::vector<std::string> names = lp.var_names;
    for (int j = static_cast<int>(names.size()); j < lp.num_vars; ++j) names.push_back("x" + std::to_string(j));
    return names;
}

} // namespace

std::string lp_to_text(const LinearProgram& lp)
{
    check_shape(lp);
    auto names = names_or_default(lp);
    std::ostringstream os;
    os << (lp.maximize ? "Maximize" : "Minimize") << "\n " << lp.objective_name << ": ";
    write_linear(os, lp.objective, names);
    os << "\nSubject To\n";
    for (size_t r = 0; r < lp.rows.size(); ++r) {
        std::string name = r < lp.row_names.size() ? lp.row_names[r] : "r" + std::to_string(r);
        os << " " << name << ": ";
        write_linear(os, lp.rows[r], names);
        os << " = " << coefficient_text(lp.rhs[r]) << "\n";
    }
    os << "Bounds\n";
    for (const auto& nm : names) os << " " << nm << " >= 0\n";
    os << "End\n";
    return os.str();
}

namespace {

/// Parses "[-] c name [+|- c name]..." into coefficients keyed by variable name.
std::map<std::string, Rational> parse_linear(const std::string& text, std::vector<std::string>& order)
{
    std::istringstream is(text);
    std::vector<std::string> tok;
    for (std::string s; is >> s;) tok.push_back(s);
    std::map<std::string, Rational> out;
    Rational sign = 1;
    Rational coeff = 1;
    bool have_coeff = false;
    bool have_sign = false;
    for (const std::string& s : tok) {
        if (s == "+" || s == "-") {
            if (have_sign || have_coeff) throw RejectedInput("LP text: misplaced sign in \"" + text + "\"");
            sign = s == "+" ? 1 : -1;
            have_sign = true;
            continue;
        }
        char c = s[0];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            coeff = parse_rational(s);
            have_coeff = true;
            continue;
        }
        if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_'))
            throw RejectedInput("LP text: unexpected token \"" + s + "\"");
        if (!out.count(s) && std::find(order.begin(), order.end(), s) == order.end()) order.push_back(s);
        out[s] += sign * (have_coeff ? coeff : Rational(1));
        sign = 1;
        coeff = 1;
        have_coeff = false;
        have_sign = false;
    }
    if (have_sign) throw RejectedInput("LP text: dangling sign in \"" + text + "\"");
    if (have_coeff) {
        // A bare constant: only "0" is meaningful here.
        if (!coeff.is_zero()) throw RejectedInput("LP text: constant term in linear expression");
    }
    return out;
}

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

LinearProgram parse_lp_text(const std::string& text)
{
    LinearProgram lp;
    std::istringstream is(text);
    enum { None, Objective, Constraints, Bounds, Done } section = None;
    std::vector<std::string> order, bounded;
    std::map<std::string, Rational> objective;
    std::vector<std::map<std::string, Rational>> rows;
    std::string objective_expr;
    for (std::string line; std::getline(is, line);) {
        auto bs = line.find('\\');
        if (bs != std::string::npos) line = line.substr(0, bs);
        std::string t = trim(line);
        if (t.empty()) continue;
        std::string lower = t;
        std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
        if (lower == "maximize" || lower == "minimize") {
            lp.maximize = lower == "maximize";
            section = Objective;
            continue;
        }
        if (lower == "subject to") {
            section = Constraints;
            continue;
        }
        if (lower == "bounds") {
            section = Bounds;
            continue;
        }
        if (lower == "end") {
            section = Done;
            continue;
        }
        std::string name, body = t;
        auto colon = t.find(':');
        if (colon != std::string::npos) {
            name = trim(t.substr(0, colon));
            body = trim(t.substr(colon + 1));
        }
        switch (section) {
        case Objective:
            if (!name.empty()) lp.objective_name = name;
            objective_expr += " " + body;
            break;
        case Constraints: {
            auto eq = body.find('=');
            if (eq == std::string::npos || body.find("<") != std::string::npos || body.find(">") != std::string::npos)
                throw RejectedInput("LP text: only equality rows are supported: \"" + t + "\"");
            rows.push_back(parse_linear(body.substr(0, eq), order));
            lp.rhs.push_back(parse_rational(trim(body.substr(eq + 1))));
            lp.row_names.push_back(name.empty() ? "r" + std::to_string(rows.size() - 1) : name);
            break;
        }
        case Bounds: {
            std::istringstream bsml(body);
            std::string var, op, val;
            bsml >> var >> op >> val;
            if (op != ">=" || parse_rational(val) != 0)
                throw RejectedInput("LP text: only x >= 0 bounds are supported: \"" + t + "\"");
            if (std::find(bounded.begin(), bounded.end(), var) == bounded.end()) bounded.push_back(var);
            break;
        }
        default:
            throw RejectedInput("LP text: line outside any section: \"" + t + "\"");
        }
    }
    objective = parse_linear(objective_expr, order);
    // Variables listed under Bounds keep that order; others follow in order of appearance.
    for (const auto& v : order)
        if (std::find(bounded.begin(), bounded.end(), v) == bounded.end()) bounded.push_back(v);
    order = bounded;
    lp.num_vars = static_cast<int>(order.size());
    lp.var_names = order;
    std::map<std::string, int> index;
    for (int j = 0; j < lp.num_vars; ++j) index[order[j]] = j;
    lp.objective.assign(lp.num_vars, Rational(0));
    for (auto& [nm, c] : objective) lp.objective[index[nm]] = c;
    for (const auto& row : rows) {
        std::vector<Rational> dense(lp.num_vars);
        for (auto& [nm, c] : row) dense[index[nm]] = c;
        lp.rows.push_back(std::move(dense));
    }
    return lp;
}

} // namespace whcone
