#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arith.hpp"
#include "curve.hpp"
#include "graph.hpp"
#include "resolve.hpp"

namespace hironaka {

struct CoverSpec {
    int degree = 2;
    std::vector<TaggedBranch> h_branches;  // role ignored, mult used
    bool f_is_x = true;                    // f = x and g = y, or the reverse
    int truncation = kDefaultTruncation;
};

// Normalized local model z^d = x^m1 y^m2 at one point above a double point.
struct LatticeModel {
    std::int64_t d = 0, m1 = 0, m2 = 0;
    std::int64_t points = 1;  // gcd(d, m1, m2) points above the double point
    std::int64_t n = 1, q = 0;
    std::int64_t n1 = 1, n2 = 1;  // v1 = (n1, 0), v2 = (0, n2)
    std::int64_t k0 = 0, g1 = 1;  // w = (k0, g1); {v1, w} is a basis
    HJString chain;               // empty when smooth
    std::vector<std::pair<std::int64_t, std::int64_t>> vectors;  // chain vertices in Z^2, b1 side first
};

struct HJPoint {
    int base_i = -1;     // the exceptional component on the v1 side
    int base_j = -1;     // the other component, or -1 at an arrow
    int arrow = -1;      // base arrow index when base_j == -1
    std::int64_t index = 0;  // which of the sheet_count points
    std::int64_t n = 1, q = 0;
    std::int64_t sheet_count = 1;
};

namespace detail {

inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    if (m == 1) return 0;
    std::int64_t t = 0, nt = 1, r = m, nr = mod_pos(a, m);
    while (nr != 0) {
        std::int64_t qq = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - qq * nt);
        std::tie(r, nr) = std::make_pair(nr, r - qq * nr);
    }
    if (r != 1) throw InternalError("no modular inverse");
    return mod_pos(t, m);
}

}  // namespace detail

inline LatticeModel lattice_model(std::int64_t d, std::int64_t m1, std::int64_t m2) {
    if (d < 2) throw InputError("cover degree must be at least 2");
    if (m1 < 0 || m2 < 0) throw InputError("negative multiplicity");
    LatticeModel L;
    L.d = d;
    L.m1 = m1;
    L.m2 = m2;
    std::int64_t g = std::gcd(d, std::gcd(m1, m2));
    L.points = g;
    std::int64_t dd = d / g, a1 = (m1 / g) % dd, a2 = (m2 / g) % dd;
    L.n1 = dd / std::gcd(dd, a1);
    L.n2 = dd / std::gcd(dd, a2);
    L.g1 = std::gcd(a1, dd);
    // a1 k0 = -a2 g1 (mod dd)
    std::int64_t mod = dd / L.g1;
    L.k0 = mod == 1 ? 0 : mod_pos(-a2 * detail::inverse_mod(a1 / L.g1, mod), mod);
    if (L.n2 % L.g1 != 0) throw InternalError("lattice: g1 does not divide n2");
    L.n = L.n2 / L.g1;
    if ((L.n * L.k0) % L.n1 != 0) throw InternalError("lattice: v2 not in the span");
    std::int64_t a = -(L.n * L.k0) / L.n1;
    L.q = L.n == 1 ? 0 : mod_pos(-a, L.n);
    if (L.n > 1) {
        L.chain = hj_expand(L.n, L.q);
        std::pair<std::int64_t, std::int64_t> prev{1, 0}, cur{0, 1};
        for (std::int64_t b : L.chain) {
            L.vectors.emplace_back(cur.first * L.n1 + cur.second * L.k0, cur.second * L.g1);
            std::pair<std::int64_t, std::int64_t> next{b * cur.first - prev.first, b * cur.second - prev.second};
            prev = cur;
            cur = next;
        }
        std::pair<std::int64_t, std::int64_t> end{cur.first * L.n1 + cur.second * L.k0, cur.second * L.g1};
        if (end != std::make_pair(std::int64_t(0), L.n2)) throw InternalError("lattice: chain does not end at v2");
    }
    return L;
}

inline std::vector<HJPoint> local_model_at_double_point(std::int64_t d, std::int64_t m1, std::int64_t m2) {
    LatticeModel L = lattice_model(d, m1, m2);
    std::vector<HJPoint> out;
    for (std::int64_t b = 0; b < L.points; ++b) {
        HJPoint p;
        p.index = b;
        p.n = L.n;
        p.q = L.q;
        p.sheet_count = L.points;
        out.push_back(p);
    }
    return out;
}

struct ComponentsAbove {
    std::int64_t components = 1;       // c_v
    std::int64_t sheets = 1;           // s_v, degree of each component over the base curve
    std::int64_t ramification = 1;     // e_v
    std::int64_t special_points = 0;   // k_v
    std::vector<int> genus;            // per component
};

// Which base-level neighbours / arrows meet vertex i, with their h-multiplicity.
struct BaseIncidence {
    std::vector<std::pair<int, std::int64_t>> edges;   // (neighbour, m_h)
    std::vector<std::pair<int, std::int64_t>> arrows;  // (arrow index, w_h)
};

struct CoverBase {
    int degree = 2;
    ResolutionOutcome outcome;

    std::int64_t mh(int v) const { return outcome.m_h.at(v); }

    BaseIncidence incidence(int v) const {
        BaseIncidence inc;
        for (int w : outcome.graph.neighbors(v)) inc.edges.emplace_back(w, mh(w));
        for (std::size_t a = 0; a < outcome.graph.arrows.size(); ++a)
            if (outcome.graph.arrows[a].vertex == v) inc.arrows.emplace_back(int(a), outcome.arrow_info[a].wh);
        return inc;
    }
};

inline CoverBase make_cover_base(const CoverSpec& spec) {
    if (spec.degree < 2) throw InputError("cover degree must be at least 2");
    if (spec.h_branches.empty()) throw InputError("cover needs at least one h-branch");
    WeightedBranch xa{y_axis()}, ya{x_axis()};  // {x=0}, {y=0}
    (spec.f_is_x ? xa.wf : xa.wg) = 1;
    (spec.f_is_x ? ya.wg : ya.wf) = 1;
    std::vector<WeightedBranch> wb;
    for (auto& tb : spec.h_branches) {
        if (tb.mult < 1) throw InputError("h-branch '" + tb.branch.name + "' has multiplicity < 1");
        // an h-branch equal to an axis rides on that axis
        if (tb.branch.x.exact_zero()) {
            xa.wh += tb.mult;
            continue;
        }
        if (tb.branch.y.exact_zero()) {
            ya.wh += tb.mult;
            continue;
        }
        WeightedBranch w{tb.branch};
        w.wh = tb.mult;
        wb.push_back(std::move(w));
    }
    wb.push_back(xa);
    wb.push_back(ya);
    ResolveOptions opt;
    opt.truncation = spec.truncation;
    CoverBase base;
    base.degree = spec.degree;
    base.outcome = resolve_weighted(wb, opt);
    return base;
}

inline std::map<int, ComponentsAbove> components_above(const CoverBase& base) {
    const DualGraph& g = base.outcome.graph;
    const std::int64_t d = base.degree;
    std::map<int, ComponentsAbove> out;
    for (auto& [v, _] : g.vertices) {
        BaseIncidence inc = base.incidence(v);
        std::int64_t gi = std::gcd(d, base.mh(v));
        std::int64_t G = gi;
        for (auto& [w, m] : inc.edges) G = std::gcd(G, m);
        for (auto& [a, m] : inc.arrows) G = std::gcd(G, m);
        ComponentsAbove c;
        c.components = G;
        c.sheets = gi / G;
        c.ramification = d / gi;
        c.special_points = std::int64_t(inc.edges.size() + inc.arrows.size());
        // Riemann-Hurwitz on each component: chi = s (2 - k) + sum over special points of g_P / G
        std::int64_t chi = c.sheets * (2 - c.special_points);
        for (auto& [w, m] : inc.edges) chi += std::gcd(gi, m) / G;
        for (auto& [a, m] : inc.arrows) chi += std::gcd(gi, m) / G;
        if (chi > 2 || (2 - chi) % 2 != 0) throw InternalError("Riemann-Hurwitz gives a non-integral genus");
        c.genus.assign(std::size_t(G), int((2 - chi) / 2));
        if (c.components * c.sheets * c.ramification != d) throw InternalError("c s e != d");
        out[v] = c;
    }
    return out;
}

struct CoverOrigin {
    bool bamboo = false;
    int base_vertex = -1;  // sheet owner, or the v1-side vertex of a bamboo
    std::int64_t sheet = 0;
    int point = -1;        // index into CoverGraph::points for bamboo vertices
    int position = 0;      // 1-based position along the bamboo from the v1 side
};

// An end of a strict transform upstairs, with its weights toward f, g, h.
struct CoverArrowEnd {
    int vertex;
    ArrowKind kind;
    std::int64_t wf = 0, wg = 0, wh = 0;
};

struct CoverGraph {
    DualGraph graph;
    std::map<int, CoverOrigin> origin;
    std::vector<HJPoint> points;
    std::vector<LatticeModel> models;      // parallel to points
    std::vector<CoverArrowEnd> ends;       // In/Out/Star ends; Star ends are not drawn in graph
    std::map<int, std::int64_t> m_h;
    DualGraph base;
    int degree = 2;
};

struct CoverResult {
    CoverBase base;
    std::map<int, ComponentsAbove> above;
    std::vector<CoverGraph> components;  // one per connected germ
};

// Weighted zero-intersection defect of F = f^a g^b h^c at every vertex; all zero when consistent.
inline std::map<int, std::int64_t> zero_intersection_defects(const DualGraph& g, const std::vector<CoverArrowEnd>& ends,
                                                             const std::map<int, std::int64_t>& mh, int a, int b,
                                                             int c) {
    std::map<int, std::int64_t> out;
    auto mF = [&](int v) {
        const Vertex& x = g.at(v);
        std::int64_t h = c ? mh.at(v) : 0;
        return a * x.m_f.value() + b * x.m_g.value() + c * h;
    };
    for (auto& [v, x] : g.vertices) {
        std::int64_t s = std::int64_t(x.self_int.value()) * mF(v);
        for (int w : g.neighbors(v)) s += mF(w);
        for (auto& e : ends)
            if (e.vertex == v) s += a * e.wf + b * e.wg + c * e.wh;
        out[v] = s;
    }
    return out;
}

// Same relation read off a plain graph whose arrows carry their multiplicity.
inline std::map<int, std::int64_t> zero_intersection_defects(const DualGraph& g, int a, int b) {
    std::vector<CoverArrowEnd> ends;
    for (auto& ar : g.arrows) {
        if (ar.kind == ArrowKind::Out) ends.push_back({ar.vertex, ar.kind, ar.mult, 0, 0});
        if (ar.kind == ArrowKind::In) ends.push_back({ar.vertex, ar.kind, 0, ar.mult, 0});
    }
    return zero_intersection_defects(g, ends, {}, a, b, 0);
}

inline bool zero_intersection_holds(const DualGraph& g) {
    for (auto [a, b] : {std::pair{1, 0}, std::pair{0, 1}})
        for (auto& [v, s] : zero_intersection_defects(g, a, b))
            if (s != 0) return false;
    return true;
}

inline CoverResult assemble_cover(const CoverBase& base) {
    CoverResult res;
    res.base = base;
    res.above = components_above(base);
    const DualGraph& bg = base.outcome.graph;
    const std::int64_t d = base.degree;

    // union-find over (vertex, local sheet class in Z_{g_i})
    std::map<std::pair<int, std::int64_t>, std::pair<int, std::int64_t>> parent;
    std::function<std::pair<int, std::int64_t>(std::pair<int, std::int64_t>)> find =
        [&](std::pair<int, std::int64_t> x) {
            auto it = parent.find(x);
            if (it->second == x) return x;
            auto r = find(it->second);
            parent[x] = r;
            return r;
        };
    auto unite = [&](std::pair<int, std::int64_t> x, std::pair<int, std::int64_t> y) { parent[find(x)] = find(y); };
    std::map<int, std::int64_t> gi;
    for (auto& [v, _] : bg.vertices) {
        gi[v] = std::gcd(d, base.mh(v));
        for (std::int64_t a = 0; a < gi[v]; ++a) parent[{v, a}] = {v, a};
    }
    for (auto& [v, _] : bg.vertices) {
        BaseIncidence inc = base.incidence(v);
        std::vector<std::int64_t> shifts;
        for (auto& [w, m] : inc.edges) shifts.push_back(m);
        for (auto& [a, m] : inc.arrows) shifts.push_back(m);
        for (std::int64_t s : shifts)
            for (std::int64_t a = 0; a < gi[v]; ++a) unite({v, a}, {v, mod_pos(a + s, gi[v])});
    }
    for (auto& [i, j] : bg.edges) {
        std::int64_t gP = std::gcd(d, std::gcd(base.mh(i), base.mh(j)));
        for (std::int64_t b = 0; b < gP; ++b) unite({i, b}, {j, b});
    }
    // closed form cross-check: classes above v are residues mod G_v
    for (auto& [v, c] : res.above) {
        std::map<std::pair<int, std::int64_t>, std::int64_t> rep;
        for (std::int64_t a = 0; a < gi[v]; ++a) {
            // within the vertex only monodromy matters; compare residues mod G
            for (std::int64_t b2 = 0; b2 < gi[v]; ++b2)
                if ((a - b2) % c.components == 0 && find({v, a}) != find({v, b2}))
                    throw InternalError("sheet gluing disagrees with the gcd closed form");
        }
    }

    // build the whole (possibly disconnected) cover graph
    CoverGraph all;
    all.base = bg;
    all.degree = int(d);
    std::map<std::pair<int, std::int64_t>, int> vid;  // (base vertex, residue mod G) -> cover vertex
    for (auto& [v, bv] : bg.vertices) {
        const ComponentsAbove& c = res.above.at(v);
        for (std::int64_t r = 0; r < c.components; ++r) {
            Vertex x;
            x.genus = c.genus[std::size_t(r)];
            x.m_f = c.ramification * bv.m_f.value();
            x.m_g = c.ramification * bv.m_g.value();
            x.q = Quotient::ratio(*x.m_f, *x.m_g);
            x.origin = "base " + std::to_string(v) + " sheet " + std::to_string(r);
            int id = all.graph.add_vertex(x);
            vid[{v, r}] = id;
            all.origin[id] = {false, v, r, -1, 0};
            all.m_h[id] = c.ramification * base.mh(v);
        }
    }
    auto sheet_vertex = [&](int v, std::int64_t b) { return vid.at({v, b % res.above.at(v).components}); };

    // Lays a bamboo from cover vertex `from` along the model; returns the last vertex.
    auto lay_bamboo = [&](int from, const LatticeModel& L, int point, std::int64_t mf_i, std::int64_t mg_i,
                          std::int64_t mh_i, std::int64_t mf_j, std::int64_t mg_j, std::int64_t mh_j,
                          const std::string& where) {
        int last = from;
        for (std::size_t k = 0; k < L.chain.size(); ++k) {
            auto [K, Lv] = L.vectors[k];
            Vertex x;
            x.self_int = -int(L.chain[k]);
            x.genus = 0;
            x.m_f = K * mf_i + Lv * mf_j;
            x.m_g = K * mg_i + Lv * mg_j;
            x.q = Quotient::ratio(*x.m_f, *x.m_g);
            x.origin = "bamboo " + where + " position " + std::to_string(k + 1);
            int id = all.graph.add_vertex(x);
            all.origin[id] = {true, all.origin.at(from).base_vertex, 0, point, int(k + 1)};
            all.m_h[id] = K * mh_i + Lv * mh_j;
            all.graph.add_edge(last, id);
            last = id;
        }
        return last;
    };

    for (auto& [i, j] : bg.edges) {
        const Vertex &bi = bg.at(i), &bj = bg.at(j);
        LatticeModel L = lattice_model(d, base.mh(i), base.mh(j));
        for (std::int64_t b = 0; b < L.points; ++b) {
            HJPoint p{i, j, -1, b, L.n, L.q, L.points};
            int pid = int(all.points.size());
            all.points.push_back(p);
            all.models.push_back(L);
            std::string where = "edge " + std::to_string(i) + "-" + std::to_string(j) + " point " + std::to_string(b);
            int last = lay_bamboo(sheet_vertex(i, b), L, pid, *bi.m_f, *bi.m_g, base.mh(i), *bj.m_f, *bj.m_g,
                                  base.mh(j), where);
            all.graph.add_edge(last, sheet_vertex(j, b));
        }
    }
    for (std::size_t a = 0; a < bg.arrows.size(); ++a) {
        const Arrow& ar = bg.arrows[a];
        const ArrowInfo& info = base.outcome.arrow_info[a];
        int i = ar.vertex;
        const Vertex& bi = bg.at(i);
        LatticeModel L = lattice_model(d, base.mh(i), info.wh);
        for (std::int64_t b = 0; b < L.points; ++b) {
            HJPoint p{i, -1, int(a), b, L.n, L.q, L.points};
            int pid = int(all.points.size());
            all.points.push_back(p);
            all.models.push_back(L);
            std::string where = "arrow " + std::to_string(a) + " point " + std::to_string(b);
            int last = lay_bamboo(sheet_vertex(i, b), L, pid, *bi.m_f, *bi.m_g, base.mh(i), info.wf, info.wg,
                                  info.wh, where);
            CoverArrowEnd e{last, ar.kind, L.n2 * info.wf, L.n2 * info.wg, L.n2 * info.wh};
            all.ends.push_back(e);
            if (ar.kind != ArrowKind::Star) {
                std::int64_t m = ar.kind == ArrowKind::Out ? e.wf : e.wg;
                all.graph.arrows.push_back({last, ar.kind, m, ar.label});
            }
        }
    }

    // self-intersections of sheet vertices from (f g h) o R
    for (auto& [v, x] : all.graph.vertices) {
        if (all.origin.at(v).bamboo) continue;
        std::int64_t mF = *x.m_f + *x.m_g + all.m_h.at(v);
        std::int64_t s = 0;
        for (int w : all.graph.neighbors(v)) {
            const Vertex& y = all.graph.at(w);
            s += *y.m_f + *y.m_g + all.m_h.at(w);
        }
        for (auto& e : all.ends)
            if (e.vertex == v) s += e.wf + e.wg + e.wh;
        if (s % mF != 0)
            throw InternalError("non-integral self-intersection at cover vertex " + std::to_string(v) + " (" +
                                x.origin + ")");
        x.self_int = int(-s / mF);
    }
    for (auto [a, b, c] : {std::tuple{1, 0, 0}, std::tuple{0, 1, 0}, std::tuple{0, 0, 1}})
        for (auto& [v, s] : zero_intersection_defects(all.graph, all.ends, all.m_h, a, b, c))
            if (s != 0)
                throw InternalError("zero-intersection fails at cover vertex " + std::to_string(v) + " (" +
                                    all.graph.at(v).origin + ")");

    // split into connected germs
    std::map<int, int> comp;
    int ncomp = 0;
    for (auto& [v, _] : all.graph.vertices) {
        if (comp.count(v)) continue;
        std::vector<int> st{v};
        comp[v] = ncomp;
        while (!st.empty()) {
            int u = st.back();
            st.pop_back();
            for (int w : all.graph.neighbors(u))
                if (!comp.count(w)) {
                    comp[w] = ncomp;
                    st.push_back(w);
                }
        }
        ++ncomp;
    }
    for (int k = 0; k < ncomp; ++k) {
        CoverGraph cg;
        cg.base = bg;
        cg.degree = int(d);
        std::map<int, int> re;
        for (auto& [v, x] : all.graph.vertices)
            if (comp[v] == k) {
                int id = cg.graph.add_vertex(x);
                re[v] = id;
                cg.origin[id] = all.origin.at(v);
                cg.m_h[id] = all.m_h.at(v);
            }
        for (auto& [a, b] : all.graph.edges)
            if (comp[a] == k) cg.graph.add_edge(re[a], re[b]);
        for (auto ar : all.graph.arrows)
            if (comp[ar.vertex] == k) {
                ar.vertex = re[ar.vertex];
                cg.graph.arrows.push_back(ar);
            }
        for (auto e : all.ends)
            if (comp[e.vertex] == k) {
                e.vertex = re[e.vertex];
                cg.ends.push_back(e);
            }
        cg.points = all.points;
        cg.models = all.models;
        res.components.push_back(std::move(cg));
    }
    return res;
}

inline CoverResult assemble_cover_graph(const CoverSpec& spec) { return assemble_cover(make_cover_base(spec)); }

struct Theorem2Report {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

inline Theorem2Report check_theorem2(const CoverGraph& cg) {
    Theorem2Report r;
    const DualGraph& g = cg.graph;
    auto base_q = [&](int v) { return *cg.base.at(v).q; };
    // (a) sheet vertices keep the base quotient
    for (auto& [v, o] : cg.origin)
        if (!o.bamboo && !(*g.at(v).q == base_q(o.base_vertex)))
            r.violations.push_back("vertex " + std::to_string(v) + " quotient " + g.at(v).q->to_text() +
                                   " differs from base " + base_q(o.base_vertex).to_text());
    // group bamboo vertices by point
    std::map<int, std::vector<std::pair<int, int>>> chains;  // point -> (position, vertex)
    for (auto& [v, o] : cg.origin)
        if (o.bamboo) chains[o.point].emplace_back(o.position, v);
    for (auto& [pid, members] : chains) {
        std::sort(members.begin(), members.end());
        const HJPoint& p = cg.points[std::size_t(pid)];
        const LatticeModel& L = cg.models[std::size_t(pid)];
        Quotient qi = base_q(p.base_i), qj;
        if (p.base_j >= 0) {
            qj = base_q(p.base_j);
        } else {
            ArrowKind k = cg.base.arrows[std::size_t(p.arrow)].kind;
            qj = k == ArrowKind::In ? Quotient::zero() : k == ArrowKind::Out ? Quotient::infinity() : qi;
        }
        std::string tag = "bamboo at point " + std::to_string(pid);
        std::vector<Quotient> qs;
        for (auto& [pos, v] : members) qs.push_back(*g.at(v).q);
        if (qi == qj) {
            for (auto& q : qs)
                if (!(q == qi)) r.violations.push_back(tag + ": not constant " + q.to_text() + " vs " + qi.to_text());
        } else {
            bool up = qi < qj;
            Quotient prev = qi;
            for (auto& q : qs) {
                bool good = up ? (prev < q) : (q < prev);
                if (!good) r.violations.push_back(tag + ": quotients not strictly monotone at " + q.to_text());
                prev = q;
            }
            bool last_ok = up ? (prev < qj) : (qj < prev);
            if (!last_ok) r.violations.push_back(tag + ": last quotient not strictly inside the interval");
        }
        // tridiagonal recurrence with the boundary values
        std::int64_t ei = (*cg.base.at(p.base_i).m_f) * L.n1, gi_ = (*cg.base.at(p.base_i).m_g) * L.n1;
        std::vector<std::pair<std::int64_t, std::int64_t>> ms{{ei, gi_}};
        for (auto& [pos, v] : members) ms.emplace_back(*g.at(v).m_f, *g.at(v).m_g);
        if (p.base_j >= 0) {
            ms.emplace_back(*cg.base.at(p.base_j).m_f * L.n2, *cg.base.at(p.base_j).m_g * L.n2);
        } else {
            const Arrow& ar = cg.base.arrows[std::size_t(p.arrow)];
            ms.emplace_back(ar.kind == ArrowKind::Out ? ar.mult * L.n2 : 0,
                            ar.kind == ArrowKind::In ? ar.mult * L.n2 : 0);
        }
        for (std::size_t k = 1; k + 1 < ms.size(); ++k) {
            std::int64_t b = L.chain[k - 1];
            if (ms[k - 1].first - b * ms[k].first + ms[k + 1].first != 0 ||
                ms[k - 1].second - b * ms[k].second + ms[k + 1].second != 0)
                r.violations.push_back(tag + ": tridiagonal relation fails at position " + std::to_string(k));
        }
    }
    return r;
}

}  // namespace hironaka
