#include "isomorphism.hpp"

#include <algorithm>
#include <deque>

namespace whcone::detail {

namespace {

struct Prepared
{
    IsoSide side;
    std::vector<int> valence;
    std::vector<int> next_circle; // circle edge -> following circle edge
    std::vector<int> circle_len;  // circle edge -> length of its circle
};

Prepared prepare(const IsoSide& s)
{
    Prepared p{s, s.base->valences(), {}, {}};
    if (s.circles) {
        const Graph& c = *s.circles;
        auto st = c.stars();
        p.next_circle.assign(c.num_edges(), -1);
        for (int e = 0; e < c.num_edges(); ++e) {
            int t = c.terminus(e);
            for (int f : st[t])
                if (f != c.inv[e]) p.next_circle[e] = f;
        }
        p.circle_len.assign(c.num_edges(), 0);
        for (int e = 0; e < c.num_edges(); ++e) {
            if (p.circle_len[e]) continue;
            std::vector<int> orbit;
            int f = e;
            do {
                orbit.push_back(f);
                f = p.next_circle[f];
            } while (f != e && f >= 0 && orbit.size() <= static_cast<size_t>(c.num_edges()));
            for (int g : orbit) p.circle_len[g] = static_cast<int>(orbit.size());
        }
    }
    return p;
}

struct State
{
    std::vector<int> bv, be, cv, ce;
    std::vector<int> rbv, rbe, rcv, rce;
};

class Search
{
public:
    Search(const Prepared& a, const Prepared& b) : a_(a), b_(b) {}

    std::optional<IsoMaps> run()
    {
        State s;
        s.bv.assign(a_.side.base->num_vertices, -1);
        s.be.assign(a_.side.base->num_edges(), -1);
        s.rbv.assign(b_.side.base->num_vertices, -1);
        s.rbe.assign(b_.side.base->num_edges(), -1);
        if (a_.side.circles) {
            s.cv.assign(a_.side.circles->num_vertices, -1);
            s.ce.assign(a_.side.circles->num_edges(), -1);
            s.rcv.assign(b_.side.circles->num_vertices, -1);
            s.rce.assign(b_.side.circles->num_edges(), -1);
        }
        if (!recurse(s)) return std::nullopt;
        IsoMaps out;
        out.base.vmap = result_.bv;
        out.base.emap = result_.be;
        out.cycle.vmap = result_.cv;
        out.cycle.emap = result_.ce;
        return out;
    }

private:
    enum Kind { BV, BE, CV, CE };

    bool assign(State& s, std::deque<std::pair<Kind, std::pair<int, int>>>& work, Kind k, int x, int y)
    {
        std::vector<int>* fwd = nullptr;
        std::vector<int>* rev = nullptr;
        switch (k) {
        case BV: fwd = &s.bv; rev = &s.rbv; break;
        case BE: fwd = &s.be; rev = &s.rbe; break;
        case CV: fwd = &s.cv; rev = &s.rcv; break;
        case CE: fwd = &s.ce; rev = &s.rce; break;
        }
        if ((*fwd)[x] == y) return true;
        if ((*fwd)[x] != -1 || (*rev)[y] != -1) return false;
        (*fwd)[x] = y;
        (*rev)[y] = x;
        work.push_back({k, {x, y}});
        return true;
    }

    bool propagate(State& s, std::deque<std::pair<Kind, std::pair<int, int>>>& work)
    {
        const Graph& ga = *a_.side.base;
        const Graph& gb = *b_.side.base;
        while (!work.empty()) {
            auto [k, xy] = work.front();
            work.pop_front();
            auto [x, y] = xy;
            switch (k) {
            case BV:
                if (a_.valence[x] != b_.valence[y]) return false;
                if (a_.side.vertex_label && (*a_.side.vertex_label)[x] != (*b_.side.vertex_label)[y]) return false;
                break;
            case BE:
                if (a_.side.edge_label && (*a_.side.edge_label)[x] != (*b_.side.edge_label)[y]) return false;
                if (!assign(s, work, BE, ga.inv[x], gb.inv[y])) return false;
                if (!assign(s, work, BV, ga.origin[x], gb.origin[y])) return false;
                break;
            case CV:
                if (!assign(s, work, BV, a_.side.cycle->vmap[x], b_.side.cycle->vmap[y])) return false;
                break;
            case CE: {
                const Graph& ca = *a_.side.circles;
                const Graph& cb = *b_.side.circles;
                if (a_.circle_len[x] != b_.circle_len[y]) return false;
                if (!assign(s, work, CE, ca.inv[x], cb.inv[y])) return false;
                if (!assign(s, work, CV, ca.origin[x], cb.origin[y])) return false;
                if (!assign(s, work, BE, a_.side.cycle->emap[x], b_.side.cycle->emap[y])) return false;
                if (!assign(s, work, CE, a_.next_circle[x], b_.next_circle[y])) return false;
                break;
            }
            }
        }
        return true;
    }

    bool try_branch(const State& s, Kind k, int x, int y)
    {
        State t = s;
        std::deque<std::pair<Kind, std::pair<int, int>>> work;
        if (!assign(t, work, k, x, y)) return false;
        if (!propagate(t, work)) return false;
        return recurse(t);
    }

    bool recurse(const State& s)
    {
        for (size_t c = 0; c < s.ce.size(); ++c) {
            if (s.ce[c] != -1) continue;
            for (size_t d = 0; d < s.rce.size(); ++d)
                if (s.rce[d] == -1 && try_branch(s, CE, static_cast<int>(c), static_cast<int>(d))) return true;
            return false;
        }
        const Graph& ga = *a_.side.base;
        const Graph& gb = *b_.side.base;
        for (int e = 0; e < ga.num_edges(); ++e) {
            if (s.be[e] != -1) continue;
            for (int f = 0; f < gb.num_edges(); ++f) {
                if (s.rbe[f] != -1) continue;
                if (a_.valence[ga.origin[e]] != b_.valence[gb.origin[f]]) continue;
                if (a_.valence[ga.terminus(e)] != b_.valence[gb.terminus(f)]) continue;
                if (try_branch(s, BE, e, f)) return true;
            }
            return false;
        }
        for (int v = 0; v < ga.num_vertices; ++v) {
            if (s.bv[v] != -1) continue;
            for (int u = 0; u < gb.num_vertices; ++u)
                if (s.rbv[u] == -1 && try_branch(s, BV, v, u)) return true;
            return false;
        }
        result_ = s;
        return true;
    }

    const Prepared& a_;
    const Prepared& b_;
    State result_;
};

std::vector<int> sorted(std::vector<int> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

std::optional<IsoMaps> find_isomorphism(const IsoSide& a, const IsoSide& b)
{
    if (a.base->num_vertices != b.base->num_vertices || a.base->num_edges() != b.base->num_edges())
        return std::nullopt;
    if ((a.circles == nullptr) != (b.circles == nullptr)) return std::nullopt;
    if (a.circles && (a.circles->num_vertices != b.circles->num_vertices ||
                      a.circles->num_edges() != b.circles->num_edges()))
        return std::nullopt;
    if ((a.edge_label == nullptr) != (b.edge_label == nullptr)) return std::nullopt;
    if ((a.vertex_label == nullptr) != (b.vertex_label == nullptr)) return std::nullopt;

    Prepared pa = prepare(a);
    Prepared pb = prepare(b);
    if (sorted(pa.valence) != sorted(pb.valence)) return std::nullopt;
    if (a.circles && sorted(pa.circle_len) != sorted(pb.circle_len)) return std::nullopt;
    if (a.edge_label && sorted(*a.edge_label) != sorted(*b.edge_label)) return std::nullopt;

    Search search(pa, pb);
    return search.run();
}

} // namespace whcone::detail
