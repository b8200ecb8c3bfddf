#include "whcone/checker.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace whcone {

std::set<std::string> CheckReport::categories() const
{
    std::set<std::string> out;
    for (const auto& i : issues) out.insert(i.category);
    return out;
}

namespace {

using nlohmann::json;

struct Abort : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct G
{
    int nv = 0;
    std::vector<int> inv, org;
    int ne() const { return static_cast<int>(inv.size()); }
    int term(int e) const { return org[inv[e]]; }
};

struct M
{
    std::vector<int> v, e;
};

struct P
{
    G base, circ;
    M cyc;
};

struct PM
{
    M base, cyc;
};

struct PieceData
{
    int cell = -1;
    std::vector<int> edges, vertices;
    std::vector<std::vector<std::vector<int>>> blocks;
};

struct StarData
{
    int center = -1, id = -1;
    std::vector<int> assignment;
};

struct Surface
{
    int euler = 0, boundary = 0, genus = 0, crosscaps = 0;
    bool orientable = true;
    bool operator==(const Surface&) const = default;
};

// ---- decoding ----

const json& at(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw Abort(std::string("missing field ") + key);
    return j.at(key);
}

long long num(const json& j)
{
    if (!j.is_number_integer()) throw Abort("expected an integer");
    return j.get<long long>();
}

int small(const json& j)
{
    long long v = num(j);
    if (v < -1000000000 || v > 1000000000) throw Abort("integer out of range");
    return static_cast<int>(v);
}

std::vector<int> vec(const json& j)
{
    if (!j.is_array()) throw Abort("expected an array");
    std::vector<int> out;
    for (const auto& x : j) out.push_back(small(x));
    return out;
}

G graph_of(const json& j)
{
    G g;
    std::vector<int> ids = vec(at(j, "vertices"));
    for (size_t v = 0; v < ids.size(); ++v)
        if (ids[v] != static_cast<int>(v)) throw Abort("vertex ids are not 0..n-1");
    g.nv = static_cast<int>(ids.size());
    const json& edges = at(j, "edges");
    if (!edges.is_array()) throw Abort("expected an edge array");
    for (const auto& e : edges) {
        if (small(at(e, "id")) != static_cast<int>(g.inv.size())) throw Abort("edge ids are not 0..m-1");
        g.inv.push_back(small(at(e, "inv")));
        g.org.push_back(small(at(e, "origin")));
    }
    return g;
}
M map_of(const json& j) { return {vec(at(j, "vmap")), vec(at(j, "emap"))}; }
P pair_of(const json& j) { return {graph_of(at(j, "base")), graph_of(at(j, "circles")), map_of(j)}; }
PM pmap_of(const json& j) { return {map_of(at(j, "base")), map_of(at(j, "cycle"))}; }

std::vector<std::pair<int, int>> pairs_of(const json& j)
{
    if (!j.is_array()) throw Abort("expected an array of pairs");
    std::vector<std::pair<int, int>> out;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2) throw Abort("expected a pair");
        out.push_back({small(p[0]), small(p[1])});
    }
    return out;
}

/// "p/q" with q > 0.
std::pair<long long, long long> fraction_of(const json& j)
{
    if (!j.is_string()) throw Abort("expected a fraction string");
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos) throw Abort("fraction without a slash");
    try {
        size_t used = 0;
        long long p = std::stoll(s.substr(0, slash), &used);
        if (used != slash) throw Abort("bad numerator");
        long long q = std::stoll(s.substr(slash + 1), &used);
        if (used != s.size() - slash - 1 || q <= 0) throw Abort("bad denominator");
        return {p, q};
    } catch (const std::logic_error&) {
        throw Abort("bad fraction " + s);
    }
}

// ---- primitive predicates ----

bool in(int v, int n) { return v >= 0 && v < n; }

std::vector<std::string> involution_problems(const G& g)
{
    std::vector<std::string> out;
    if (g.nv < 0) out.push_back("negative vertex count");
    if (g.inv.size() != g.org.size()) {
        out.push_back("inv and origin differ in length");
        return out;
    }
    for (int e = 0; e < g.ne(); ++e) {
        int f = g.inv[e];
        if (!in(f, g.ne())) out.push_back("inv of edge " + std::to_string(e) + " out of range");
        else if (f == e) out.push_back("edge " + std::to_string(e) + " is its own reverse");
        else if (g.inv[f] != e) out.push_back("inv is not an involution at edge " + std::to_string(e));
        if (!in(g.org[e], g.nv)) out.push_back("origin of edge " + std::to_string(e) + " out of range");
    }
    return out;
}

std::vector<int> valence(const G& g)
{
    std::vector<int> d(g.nv, 0);
    for (int o : g.org) ++d[o];
    return d;
}

/// Range, inv and origin compatibility of m : a -> b.
std::vector<std::string> map_problems(const G& a, const G& b, const M& m)
{
    std::vector<std::string> out;
    if (static_cast<int>(m.v.size()) != a.nv || static_cast<int>(m.e.size()) != a.ne()) {
        out.push_back("map sizes do not match the domain");
        return out;
    }
    for (int x : m.v)
        if (!in(x, b.nv)) {
            out.push_back("vertex image out of range");
            return out;
        }
    for (int x : m.e)
        if (!in(x, b.ne())) {
            out.push_back("edge image out of range");
            return out;
        }
    for (int e = 0; e < a.ne(); ++e) {
        if (m.e[a.inv[e]] != b.inv[m.e[e]]) out.push_back("edge " + std::to_string(e) + " does not commute with inv");
        if (m.v[a.org[e]] != b.org[m.e[e]]) out.push_back("edge " + std::to_string(e) + " does not commute with origin");
    }
    return out;
}

bool star_injective(const G& a, const M& m)
{
    std::map<std::pair<int, int>, int> seen;
    for (int e = 0; e < a.ne(); ++e)
        if (!seen.emplace(std::pair{a.org[e], m.e[e]}, e).second) return false;
    return true;
}

bool bijection(const std::vector<int>& m, int n)
{
    if (static_cast<int>(m.size()) != n) return false;
    std::vector<char> hit(n, 0);
    for (int x : m) {
        if (!in(x, n) || hit[x]) return false;
        hit[x] = 1;
    }
    return true;
}

int components(int n, const std::vector<std::pair<int, int>>& edges)
{
    std::vector<int> up(n);
    std::iota(up.begin(), up.end(), 0);
    auto find = [&](int x) {
        while (up[x] != x) x = up[x] = up[up[x]];
        return x;
    };
    int k = n;
    for (auto [a, b] : edges) {
        int ra = find(a), rb = find(b);
        if (ra != rb) {
            up[ra] = rb;
            --k;
        }
    }
    return k;
}

int graph_components(const G& g)
{
    std::vector<std::pair<int, int>> ed;
    for (int e = 0; e < g.ne(); ++e) ed.push_back({g.org[e], g.term(e)});
    return components(g.nv, ed);
}

/// Whitehead graph at x: vertices are base edges at x, edges join the two turns of each circle vertex over x.
struct Wh
{
    std::vector<int> star;
    std::vector<std::pair<int, int>> edges; ///< local endpoints
};

Wh wh_at(const P& p, int x)
{
    Wh w;
    std::vector<int> local(p.base.ne(), -1);
    for (int e = 0; e < p.base.ne(); ++e)
        if (p.base.org[e] == x) {
            local[e] = static_cast<int>(w.star.size());
            w.star.push_back(e);
        }
    std::vector<std::vector<int>> out_of(p.circ.nv);
    for (int c = 0; c < p.circ.ne(); ++c) out_of[p.circ.org[c]].push_back(c);
    for (int k = 0; k < p.circ.nv; ++k) {
        if (p.cyc.v[k] != x || out_of[k].size() != 2) continue;
        w.edges.push_back({local[p.cyc.e[out_of[k][0]]], local[p.cyc.e[out_of[k][1]]]});
    }
    return w;
}

bool wh_irreducible(const Wh& w)
{
    const int n = static_cast<int>(w.star.size());
    if (n < 2) return false;
    std::vector<int> d(n, 0);
    for (auto [a, b] : w.edges) {
        if (a < 0 || b < 0) return false;
        ++d[a];
        ++d[b];
    }
    for (int v : d)
        if (v < 2) return false;
    if (components(n, w.edges) != 1) return false;
    for (int cut = 0; cut < n; ++cut) {
        std::vector<int> re(n, -1);
        int m = 0;
        for (int v = 0; v < n; ++v)
            if (v != cut) re[v] = m++;
        std::vector<std::pair<int, int>> rest;
        for (auto [a, b] : w.edges)
            if (a != cut && b != cut) rest.push_back({re[a], re[b]});
        if (components(m, rest) != 1) return false;
    }
    return true;
}

/// Fold e1 ~ e2 with classes numbered by their smallest member.
P fold_pair(const P& p, int e1, int e2, M& q)
{
    const G& g = p.base;
    std::vector<int> erep(g.ne()), vrep(g.nv);
    std::iota(erep.begin(), erep.end(), 0);
    std::iota(vrep.begin(), vrep.end(), 0);
    auto join = [](std::vector<int>& rep, int a, int b) { rep[a] = rep[b] = std::min(a, b); };
    join(erep, e1, e2);
    join(erep, g.inv[e1], g.inv[e2]);
    join(vrep, g.term(e1), g.term(e2));
    q.v.assign(g.nv, -1);
    q.e.assign(g.ne(), -1);
    P out;
    for (int v = 0; v < g.nv; ++v)
        if (vrep[v] == v) q.v[v] = out.base.nv++;
    for (int v = 0; v < g.nv; ++v) q.v[v] = q.v[vrep[v]];
    int ne = 0;
    for (int e = 0; e < g.ne(); ++e)
        if (erep[e] == e) q.e[e] = ne++;
    for (int e = 0; e < g.ne(); ++e) q.e[e] = q.e[erep[e]];
    out.base.inv.assign(ne, -1);
    out.base.org.assign(ne, -1);
    for (int e = 0; e < g.ne(); ++e) {
        out.base.inv[q.e[e]] = q.e[g.inv[e]];
        out.base.org[q.e[e]] = q.v[g.org[e]];
    }
    out.circ = p.circ;
    for (int v : p.cyc.v) out.cyc.v.push_back(q.v[v]);
    for (int e : p.cyc.e) out.cyc.e.push_back(q.e[e]);
    return out;
}

std::vector<Surface> surfaces_of(const P& p)
{
    const int nv = p.base.ne();
    std::vector<std::vector<int>> ends_at(nv), ends_of(p.circ.nv);
    for (int c = 0; c < p.circ.ne(); ++c) {
        ends_at[p.cyc.e[c]].push_back(c);
        ends_of[p.circ.org[c]].push_back(c);
    }
    std::vector<int> disk(nv, -1), pred(nv, -1), succ(nv, -1);
    int nd = 0;
    for (int v0 = 0; v0 < nv; ++v0) {
        if (disk[v0] >= 0) continue;
        int v = v0, in_end = ends_at[v0][1];
        do {
            disk[v] = nd;
            int out_end = ends_at[v][0] == in_end ? ends_at[v][1] : ends_at[v][0];
            pred[v] = in_end;
            succ[v] = out_end;
            const auto& two = ends_of[p.circ.org[out_end]];
            in_end = two[0] == out_end ? two[1] : two[0];
            v = p.cyc.e[in_end];
        } while (v != v0);
        ++nd;
    }
    std::vector<std::vector<std::pair<int, int>>> adj(nd);
    int bands = 0;
    std::vector<int> band_disk;
    for (int e = 0; e < nv; ++e) {
        int f = p.base.inv[e];
        if (f < e) continue;
        int twist = p.circ.inv[pred[e]] == succ[f] ? 0 : 1;
        adj[disk[e]].push_back({disk[f], twist});
        adj[disk[f]].push_back({disk[e], twist});
        band_disk.push_back(disk[e]);
        ++bands;
    }
    std::vector<int> comp(nd, -1), side(nd, 0);
    std::vector<Surface> out;
    for (int s = 0; s < nd; ++s) {
        if (comp[s] >= 0) continue;
        const int id = static_cast<int>(out.size());
        out.push_back({});
        std::vector<int> todo{s};
        comp[s] = id;
        while (!todo.empty()) {
            int a = todo.back();
            todo.pop_back();
            ++out[id].euler;
            for (auto [b, t] : adj[a]) {
                if (comp[b] < 0) {
                    comp[b] = id;
                    side[b] = side[a] ^ t;
                    todo.push_back(b);
                } else if (side[b] != (side[a] ^ t)) {
                    out[id].orientable = false;
                }
            }
        }
    }
    for (int d : band_disk) --out[comp[d]].euler;
    std::vector<int> lab(p.circ.nv, -1);
    int nl = 0;
    for (int s = 0; s < p.circ.nv; ++s) {
        if (lab[s] >= 0) continue;
        std::vector<int> todo{s};
        lab[s] = nl;
        while (!todo.empty()) {
            int k = todo.back();
            todo.pop_back();
            for (int c : ends_of[k]) {
                int t = p.circ.term(c);
                if (lab[t] < 0) {
                    lab[t] = nl;
                    todo.push_back(t);
                }
            }
        }
        ++nl;
    }
    std::vector<char> counted(nl, 0);
    for (int k = 0; k < p.circ.nv; ++k) {
        if (counted[lab[k]]) continue;
        counted[lab[k]] = 1;
        ++out[comp[disk[p.cyc.e[ends_of[k][0]]]]].boundary;
    }
    for (auto& s : out) {
        int deficit = 2 - s.euler - s.boundary;
        if (s.orientable) s.genus = deficit / 2;
        else s.crosscaps = deficit;
    }
    return out;
}

// ---- the checker ----

class Checker
{
public:
    CheckReport report;

    void run(const json& doc);

private:
    void add(const std::string& cat, const std::string& msg) { report.issues.push_back({cat, msg}); }

    bool pair_structure(const P& p, const std::string& name);
    bool morphism(const P& a, const P& b, const PM& m, const std::string& name, const char* cat, bool circle_inv_cat);
};

bool Checker::pair_structure(const P& p, const std::string& name)
{
    bool ok = true;
    for (const auto& s : involution_problems(p.base)) {
        add("involution", name + " base: " + s);
        ok = false;
    }
    for (const auto& s : involution_problems(p.circ)) {
        add("involution", name + " circles: " + s);
        ok = false;
    }
    if (!ok) return false;
    for (int d : valence(p.circ))
        if (d != 2) {
            add("involution", name + ": a circle vertex does not have valence 2");
            return false;
        }
    for (const auto& s : map_problems(p.circ, p.base, p.cyc)) {
        add("morphism", name + " cycle map: " + s);
        ok = false;
    }
    if (ok && !star_injective(p.circ, p.cyc)) {
        add("immersion", name + ": multicycle is not immersed");
        ok = false;
    }
    return ok;
}

bool Checker::morphism(const P& a, const P& b, const PM& m, const std::string& name, const char* cat, bool circle_inv_cat)
{
    bool ok = true;
    for (const auto& s : map_problems(a.base, b.base, m.base)) {
        add(cat, name + " base: " + s);
        ok = false;
    }
    for (const auto& s : map_problems(a.circ, b.circ, m.cyc)) {
        bool inv_issue = s.find("inv") != std::string::npos;
        add(circle_inv_cat && inv_issue ? "star-bijection" : cat, name + " circles: " + s);
        ok = false;
    }
    if (!ok) return false;
    for (int c = 0; c < a.circ.ne(); ++c)
        if (b.cyc.e[m.cyc.e[c]] != m.base.e[a.cyc.e[c]]) {
            add(cat, name + ": square does not commute at circle edge " + std::to_string(c));
            return false;
        }
    return true;
}

void Checker::run(const json& doc)
{
    if (!doc.is_object() || doc.value("format", std::string()) != "whcone-certificate" || doc.value("version", 0) != 1) {
        add("format", "not a version 1 certificate");
        return;
    }
    const P reference = pair_of(at(doc, "reference"));
    const P unfolded = pair_of(at(doc, "unfolded"));
    const PM unfold_map = pmap_of(at(doc, "unfold_map"));
    const json& w = at(doc, "witness");
    const P src = pair_of(at(w, "source")), mid = pair_of(at(w, "mid")), tgt = pair_of(at(w, "target"));
    const PM f1 = pmap_of(at(w, "f1")), f2 = pmap_of(at(w, "f2"));
    const json& fj = at(doc, "fatform");
    const P fat = pair_of(at(fj, "pair"));
    const PM to_mid = pmap_of(at(fj, "to_mid")), replay_iso = pmap_of(at(fj, "replay_iso"));
    const auto folds = pairs_of(at(fj, "fold_sequence"));

    bool structure = true;
    const std::pair<const char*, const P*> all[] = {{"reference", &reference}, {"unfolded", &unfolded}, {"source", &src},
                                                    {"mid", &mid},             {"target", &tgt},         {"fatform", &fat}};
    for (auto [name, p] : all) structure = pair_structure(*p, name) && structure;
    if (!structure) return;

    // Maps.
    bool maps = true;
    maps = morphism(unfolded, reference, unfold_map, "unfold map", "morphism", false) && maps;
    maps = morphism(src, mid, f1, "f1", "morphism", true) && maps;
    maps = morphism(mid, tgt, f2, "f2", "morphism", true) && maps;
    maps = morphism(fat, mid, to_mid, "fatform map", "morphism", false) && maps;
    if (!(tgt.base.inv == unfolded.base.inv && tgt.base.org == unfolded.base.org && tgt.base.nv == unfolded.base.nv &&
          tgt.circ.inv == unfolded.circ.inv && tgt.circ.org == unfolded.circ.org && tgt.cyc.v == unfolded.cyc.v &&
          tgt.cyc.e == unfolded.cyc.e))
        add("summary", "witness target is not the unfolded reference");

    if (!bijection(f1.cyc.v, mid.circ.nv) || !bijection(f1.cyc.e, mid.circ.ne()) || src.circ.nv != mid.circ.nv)
        add("bijectivity", "S_u -> S_v is not bijective");
    if (!maps) return;

    if (!star_injective(mid.base, f2.base)) add("immersion", "f2 is not locally injective on the base");
    if (!star_injective(mid.circ, f2.cyc)) add("immersion", "f2 is not locally injective on circles");

    // Admissibility of the composite.
    int degree = -1;
    {
        std::vector<int> vc(tgt.circ.nv, 0), ec(tgt.circ.ne(), 0);
        for (int k = 0; k < src.circ.nv; ++k) ++vc[f2.cyc.v[f1.cyc.v[k]]];
        for (int c = 0; c < src.circ.ne(); ++c) ++ec[f2.cyc.e[f1.cyc.e[c]]];
        std::set<int> values(vc.begin(), vc.end());
        values.insert(ec.begin(), ec.end());
        if (values.size() != 1 || *values.begin() <= 0) add("admissibility", "composite is not admissible");
        else degree = *values.begin();
    }

    for (int x = 0; x < src.base.nv; ++x)
        if (!wh_irreducible(wh_at(src, x))) add("local-irreducibility", "source Whitehead graph at " + std::to_string(x) + " is reducible");
    for (int x = 0; x < unfolded.base.nv; ++x)
        if (!wh_irreducible(wh_at(unfolded, x)))
            add("local-irreducibility", "unfolded Whitehead graph at " + std::to_string(x) + " is reducible");

    // Gluing: the pairing of mid edges and the P-star picture at each mid vertex.
    const auto gluing = pairs_of(at(doc, "gluing"));
    {
        std::vector<int> hit(mid.base.ne(), 0);
        for (auto [a, b] : gluing) {
            if (!in(a, mid.base.ne()) || !in(b, mid.base.ne()) || mid.base.inv[a] != b || a > b) {
                add("gluing", "gluing entry is not a reverse pair of mid edges");
                continue;
            }
            ++hit[a];
            ++hit[b];
        }
        for (int e = 0; e < mid.base.ne(); ++e)
            if (hit[e] != 1) {
                add("gluing", "mid edge " + std::to_string(e) + " is glued " + std::to_string(hit[e]) + " times");
                break;
            }
    }

    std::vector<PieceData> pieces;
    for (const auto& pj : at(doc, "pieces")) {
        PieceData pd;
        pd.cell = small(at(pj, "cell"));
        pd.edges = vec(at(pj, "edges"));
        pd.vertices = vec(at(pj, "vertices"));
        const json& bj = at(pj, "blocks");
        if (!bj.is_array()) throw Abort("blocks must be an array");
        for (const auto& per : bj) {
            std::vector<std::vector<int>> bl;
            if (!per.is_array()) throw Abort("blocks must be nested arrays");
            for (const auto& b : per) bl.push_back(vec(b));
            pd.blocks.push_back(bl);
        }
        if (pd.blocks.size() != pd.vertices.size()) throw Abort("piece blocks do not match its vertices");
        pieces.push_back(pd);
    }
    std::vector<StarData> stars;
    for (const auto& sj : at(doc, "stars")) {
        StarData sd{small(at(sj, "center")), small(at(sj, "id")), vec(at(sj, "assignment"))};
        if (!in(sd.center, static_cast<int>(pieces.size()))) throw Abort("star centre out of range");
        if (sd.assignment.size() != pieces[sd.center].vertices.size()) {
            add("gluing", "star " + std::to_string(sd.id) + " does not assign a neighbour to every vertex");
            sd.assignment.resize(pieces[sd.center].vertices.size(), -1);
        }
        stars.push_back(sd);
    }
    const auto vertex_star = vec(at(doc, "vertex_star"));
    bool star_map_ok = static_cast<int>(vertex_star.size()) == mid.base.nv;
    for (int s : vertex_star) star_map_ok = star_map_ok && in(s, static_cast<int>(stars.size()));
    if (!star_map_ok) {
        add("gluing", "vertex_star does not assign a listed star to every mid vertex");
    } else {
        std::vector<std::vector<int>> src_ends(src.base.ne());
        for (int c = 0; c < src.circ.ne(); ++c) src_ends[src.cyc.e[c]].push_back(c);
        for (int x = 0; x < mid.base.nv; ++x) {
            PieceData here;
            here.cell = f2.base.v[x];
            for (int k = 0; k < mid.circ.nv; ++k)
                if (mid.cyc.v[k] == x) here.edges.push_back(f2.cyc.v[k]);
            std::sort(here.edges.begin(), here.edges.end());
            std::map<int, std::vector<std::vector<int>>> blocks;
            for (int e = 0; e < src.base.ne(); ++e) {
                if (mid.base.org[f1.base.e[e]] != x) continue;
                std::vector<int> b;
                for (int c : src_ends[e]) b.push_back(f2.cyc.e[f1.cyc.e[c]]);
                std::sort(b.begin(), b.end());
                blocks[f2.base.e[f1.base.e[e]]].push_back(b);
            }
            for (auto& [v, bl] : blocks) {
                std::sort(bl.begin(), bl.end());
                here.vertices.push_back(v);
                here.blocks.push_back(bl);
            }
            const PieceData& listed = pieces[stars[vertex_star[x]].center];
            if (here.cell != listed.cell || here.edges != listed.edges || here.vertices != listed.vertices ||
                here.blocks != listed.blocks)
                add("gluing", "piece listed at mid vertex " + std::to_string(x) + " is not the one realised there");
        }
        for (int e = 0; e < mid.base.ne(); ++e) {
            const StarData& s = stars[vertex_star[mid.base.org[e]]];
            const auto& verts = pieces[s.center].vertices;
            auto it = std::find(verts.begin(), verts.end(), f2.base.e[e]);
            if (it == verts.end()) {
                add("gluing", "mid edge " + std::to_string(e) + " has no vertex in its star's piece");
                continue;
            }
            if (s.assignment[it - verts.begin()] != stars[vertex_star[mid.base.term(e)]].center)
                add("gluing", "star at the origin of mid edge " + std::to_string(e) + " assigns the wrong neighbour");
        }
    }
    for (const StarData& s : stars) {
        const PieceData& p = pieces[s.center];
        for (size_t i = 0; i < p.vertices.size(); ++i) {
            int q = s.assignment[i];
            if (!in(q, static_cast<int>(pieces.size()))) continue;
            int e = p.vertices[i];
            if (!in(e, tgt.base.ne())) continue;
            const auto& qv = pieces[q].vertices;
            auto it = std::find(qv.begin(), qv.end(), tgt.base.inv[e]);
            bool ok = it != qv.end();
            if (ok) {
                auto mine = p.blocks[i];
                for (auto& b : mine) {
                    for (auto& c : b) c = in(c, tgt.circ.ne()) ? tgt.circ.inv[c] : -1;
                    std::sort(b.begin(), b.end());
                }
                std::sort(mine.begin(), mine.end());
                ok = mine == pieces[q].blocks[it - qv.begin()];
            }
            if (!ok) add("gluing", "star " + std::to_string(s.id) + " pairs incompatible pieces across edge " + std::to_string(e));
        }
    }

    // Counts.
    {
        std::map<int, long long> tally, listed;
        if (star_map_ok)
            for (int s : vertex_star) ++tally[stars[s].id];
        for (const auto& vj : at(doc, "vector")) listed[small(at(vj, "star"))] += num(at(vj, "count"));
        if (tally != listed) add("count", "vector does not count the stars at mid vertices");
        if (degree >= 0 && num(at(doc, "degree")) != degree) add("count", "stated degree differs from the admissibility degree");
        if (num(at(doc, "euler")) != mid.base.nv - mid.base.ne() / 2) add("count", "stated euler characteristic is wrong");
        if (num(at(doc, "boundary_count")) != graph_components(mid.circ)) add("count", "stated boundary count is wrong");
        long long chi2 = 0;
        if (star_map_ok)
            for (int s : vertex_star) {
                const PieceData& p = pieces[stars[s].center];
                std::vector<std::pair<int, int>> ed;
                std::map<int, int> slot;
                for (size_t i = 0; i < p.vertices.size(); ++i) slot[p.vertices[i]] = static_cast<int>(i);
                bool fine = true;
                for (int k : p.edges) {
                    std::vector<int> ends;
                    for (int c = 0; c < tgt.circ.ne(); ++c)
                        if (tgt.circ.org[c] == k) ends.push_back(c);
                    if (ends.size() != 2 || !slot.count(tgt.cyc.e[ends[0]]) || !slot.count(tgt.cyc.e[ends[1]])) {
                        fine = false;
                        break;
                    }
                    ed.push_back({slot[tgt.cyc.e[ends[0]]], slot[tgt.cyc.e[ends[1]]]});
                }
                if (!fine) {
                    add("gluing", "piece edges do not lie on its vertices");
                    continue;
                }
                int n = static_cast<int>(p.vertices.size());
                chi2 += n - 2 * components(n, ed);
            }
        if (num(at(doc, "chi2")) != chi2) add("count", "stated 2 chi_- differs from the pieces");
    }

    // Fatform.
    {
        std::vector<int> traversed(fat.base.ne(), 0);
        for (int e : fat.cyc.e) ++traversed[e];
        bool fatok = std::all_of(traversed.begin(), traversed.end(), [](int v) { return v == 2; });
        if (!fatok) add("fatform", "a fatform Whitehead vertex does not have valence 2");
        if (fat.circ.inv != mid.circ.inv || fat.circ.org != mid.circ.org) add("fatform", "fatform circles differ from the mid circles");
        if (fatok) {
            std::vector<Surface> listed;
            for (const auto& sj : at(fj, "surfaces")) {
                Surface s;
                s.euler = small(at(sj, "euler"));
                s.boundary = small(at(sj, "boundary"));
                s.orientable = at(sj, "orientable").get<bool>();
                s.genus = small(at(sj, "genus"));
                s.crosscaps = small(at(sj, "crosscaps"));
                listed.push_back(s);
            }
            if (listed != surfaces_of(fat)) add("fatform", "listed surfaces do not match the fatform");
        }
    }

    // Replay the folds.
    {
        P cur = fat;
        M down = to_mid.base;
        bool ok = true;
        for (auto [e1, e2] : folds) {
            const G& g = cur.base;
            if (!in(e1, g.ne()) || !in(e2, g.ne()) || e1 == e2 || g.inv[e1] == e2 || g.org[e1] != g.org[e2] ||
                g.term(e1) == g.term(e2) || down.e[e1] != down.e[e2]) {
                add("replay", "fold (" + std::to_string(e1) + ", " + std::to_string(e2) + ") is not admissible");
                ok = false;
                break;
            }
            M q;
            P next = fold_pair(cur, e1, e2, q);
            M nd{std::vector<int>(next.base.nv, -1), std::vector<int>(next.base.ne(), -1)};
            for (int v = 0; v < g.nv; ++v) nd.v[q.v[v]] = down.v[v];
            for (int e = 0; e < g.ne(); ++e) nd.e[q.e[e]] = down.e[e];
            cur = next;
            down = nd;
        }
        if (ok) {
            if (!(down.v == replay_iso.base.v && down.e == replay_iso.base.e)) add("replay", "replay map differs from the stored one");
            if (!bijection(replay_iso.base.v, mid.base.nv) || !bijection(replay_iso.base.e, mid.base.ne()) ||
                !bijection(replay_iso.cyc.v, mid.circ.nv) || !bijection(replay_iso.cyc.e, mid.circ.ne()))
                add("replay", "refolded fatform is not isomorphic to mid");
            else
                morphism(cur, mid, replay_iso, "replay", "replay", false);
        }
    }

    // Summary.
    {
        auto [rp, rq] = fraction_of(at(doc, "rho"));
        auto [mp, mq] = fraction_of(at(doc, "rho_max"));
        long long chi2 = num(at(doc, "chi2")), n = num(at(doc, "degree"));
        if (n <= 0) add("summary", "degree must be positive");
        else if (static_cast<__int128>(rp) * 2 * n != static_cast<__int128>(chi2) * rq)
            add("summary", "rho is not chi_- over the degree");
        if (static_cast<__int128>(rp) * mq != static_cast<__int128>(mp) * rq) add("summary", "rho is not the maximum");
    }
}

} // namespace

CheckReport check_certificate(const std::string& json_text)
{
    Checker c;
    try {
        json doc = json::parse(json_text);
        c.run(doc);
    } catch (const json::exception& e) {
        c.report.issues.push_back({"format", std::string("malformed document: ") + e.what()});
    } catch (const Abort& e) {
        c.report.issues.push_back({"format", e.what()});
    }
    return c.report;
}

} // namespace whcone
