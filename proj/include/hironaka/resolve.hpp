#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "contract.hpp"
#include "curve.hpp"
#include "graph.hpp"

namespace hironaka {

struct ResolveOptions {
    bool with_axes = false;
    bool f_is_x = true;  // with axes: f gets {x=0} and g gets {y=0}, or the reverse
    int truncation = kDefaultTruncation;
    int max_blowups = 10000;
    int non_minimal = 0;  // extra blow-ups at random points of the total transform
    std::uint64_t seed = 0;
};

// A branch as the engine sees it: weights toward f, g and h (the third
// function only matters to module cover).
struct WeightedBranch {
    Branch branch;
    std::int64_t wf = 0;
    std::int64_t wg = 0;
    std::int64_t wh = 0;
};

struct InfinitelyNearPoint {
    int id = 0;  // also the id of the component its blow-up creates
    std::optional<int> parent;
    bool satellite = false;
    std::map<int, int> branches_through;  // branch index -> multiplicity
    std::vector<Direction> path;          // chart directions from the origin
    std::optional<int> comp_x0, comp_y0;  // components {X=0}, {Y=0} through the point
    std::vector<Direction> child_directions;
};

struct ArrowInfo {
    int branch = -1;  // -1 for arrows added by extra blow-ups
    std::int64_t wf = 0, wg = 0, wh = 0;
};

struct ResolutionOutcome {
    DualGraph graph;
    std::vector<InfinitelyNearPoint> tree;  // indexed by vertex id; extra blow-ups are absent
    std::vector<WeightedBranch> branches;
    std::vector<ArrowInfo> arrow_info;  // parallel to graph.arrows
    std::map<int, std::int64_t> m_h;
    TaggedSystem system;
};

namespace detail {

inline ArrowKind kind_for(const WeightedBranch& b) {
    if (b.wf > 0) return ArrowKind::Out;
    if (b.wg > 0) return ArrowKind::In;
    return ArrowKind::Star;
}

struct PendingPoint {
    std::vector<Direction> path;
    std::optional<int> parent;
    std::optional<int> cx, cy;
    std::vector<std::pair<int, LocalBranch>> branches;
};

inline void extra_blowups(ResolutionOutcome& out, int k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    DualGraph& g = out.graph;
    for (int i = 0; i < k; ++i) {
        // sites: vertices, edges, arrows, picked uniformly among all of them
        std::size_t nv = g.vertices.size(), ne = g.edges.size(), na = g.arrows.size();
        std::uniform_int_distribution<std::size_t> pick(0, nv + ne + na - 1);
        std::size_t s = pick(rng);
        if (s < nv) {
            int v = std::next(g.vertices.begin(), long(s))->first;
            int w = blow_up_vertex_point(g, v);
            out.m_h[w] = out.m_h[v];
        } else if (s < nv + ne) {
            auto [a, b] = g.edges[s - nv];
            int w = blow_up_edge_point(g, a, b);
            out.m_h[w] = out.m_h[a] + out.m_h[b];
        } else {
            std::size_t ai = s - nv - ne;
            int v = g.arrows[ai].vertex;
            int w = blow_up_arrow_point(g, ai);
            out.m_h[w] = out.m_h[v] + out.arrow_info[ai].wh;
        }
    }
}

}  // namespace detail

inline ResolutionOutcome resolve_weighted(std::vector<WeightedBranch> branches, const ResolveOptions& opt) {
    ResolutionOutcome out;
    bool any_f = false, any_g = false;
    for (auto& b : branches) {
        validate_branch(b.branch);
        if (b.wf > 0 && b.wg > 0) throw InputError("branch '" + b.branch.name + "' is in both f and g");
        if (b.wf < 0 || b.wg < 0 || b.wh < 0) throw InputError("negative multiplicity on '" + b.branch.name + "'");
        any_f |= b.wf > 0;
        any_g |= b.wg > 0;
    }
    if (!any_f || !any_g) throw InputError("need at least one f-branch and one g-branch");
    for (std::size_t i = 0; i < branches.size(); ++i)
        for (std::size_t j = i + 1; j < branches.size(); ++j) {
            const Branch &a = branches[i].branch, &b = branches[j].branch;
            if (a.x.exact() && a.y.exact() && a.x == b.x && a.y == b.y)
                throw IdenticalBranch("branch '" + b.name + "' duplicates '" + a.name + "'");
        }
    out.branches = branches;

    DualGraph& g = out.graph;
    std::map<int, std::int64_t> mf, mg, mh;
    std::deque<detail::PendingPoint> queue;
    {
        detail::PendingPoint origin;
        for (std::size_t i = 0; i < branches.size(); ++i) origin.branches.emplace_back(int(i), local(branches[i].branch));
        queue.push_back(std::move(origin));
    }
    const int cap = opt.truncation;
    while (!queue.empty()) {
        detail::PendingPoint P = std::move(queue.front());
        queue.pop_front();
        if (int(g.vertices.size()) >= opt.max_blowups)
            throw InputError("blow-up cap of " + std::to_string(opt.max_blowups) + " reached");

        InfinitelyNearPoint pt;
        pt.id = g.next_id();
        pt.parent = P.parent;
        pt.satellite = P.cx.has_value() && P.cy.has_value();
        pt.path = P.path;
        pt.comp_x0 = P.cx;
        pt.comp_y0 = P.cy;

        std::int64_t f = 0, gg = 0, h = 0;
        std::vector<int> mults;
        for (auto& [bi, lb] : P.branches) {
            int m = multiplicity(lb);
            mults.push_back(m);
            pt.branches_through[bi] = m;
            f += branches[bi].wf * m;
            gg += branches[bi].wg * m;
            h += branches[bi].wh * m;
        }
        for (auto c : {P.cx, P.cy})
            if (c) {
                f += mf[*c];
                gg += mg[*c];
                h += mh[*c];
                auto& si = *g.at(*c).self_int;
                si -= 1;
            }
        Vertex vx;
        vx.self_int = -1;
        vx.genus = 0;
        vx.m_f = f;
        vx.m_g = gg;
        vx.q = Quotient::ratio(f, gg);
        int v = g.add_vertex(vx);
        mf[v] = f;
        mg[v] = gg;
        mh[v] = h;
        if (P.cx && P.cy && !g.remove_edge(*P.cx, *P.cy))
            throw InternalError("corner point without an edge between its components");
        if (P.cx) g.add_edge(v, *P.cx);
        if (P.cy) g.add_edge(v, *P.cy);

        // group branches by tangent direction
        std::map<Direction, std::vector<std::size_t>> groups;
        for (std::size_t k = 0; k < P.branches.size(); ++k) groups[direction(P.branches[k].second)].push_back(k);
        for (auto& [dir, members] : groups) {
            for (std::size_t a = 0; a < members.size(); ++a)
                for (std::size_t b = a + 1; b < members.size(); ++b)
                    if (mults[members[a]] == 1 && mults[members[b]] == 1)
                        check_separable(P.branches[members[a]].second, P.branches[members[b]].second, dir, cap,
                                        branches[P.branches[members[a]].first].branch.name,
                                        branches[P.branches[members[b]].first].branch.name);
            pt.child_directions.push_back(dir);
            detail::PendingPoint child;
            child.path = P.path;
            child.path.push_back(dir);
            child.parent = v;
            if (dir.infinite) {
                child.cy = v;
                child.cx = P.cx;
            } else {
                child.cx = v;
                if (sgn(dir.slope) == 0) child.cy = P.cy;
            }
            for (std::size_t k : members) child.branches.emplace_back(P.branches[k].first, chart(P.branches[k].second, dir, cap));
            bool alone = !(child.cx && child.cy);
            if (alone && child.branches.size() == 1) {
                Order o = order_along(child.branches[0].second, !dir.infinite);
                if (o.known() && o.value == 1) {
                    int bi = child.branches[0].first;
                    const auto& wb = branches[bi];
                    ArrowKind kind = detail::kind_for(wb);
                    std::int64_t m = kind == ArrowKind::Out ? wb.wf : kind == ArrowKind::In ? wb.wg : wb.wh;
                    g.arrows.push_back({v, kind, m, wb.branch.name});
                    out.arrow_info.push_back({bi, wb.wf, wb.wg, wb.wh});
                    continue;
                }
                if (o.unknown()) detail::exhausted("order of a strict transform along the exceptional curve");
            }
            queue.push_back(std::move(child));
        }
        out.tree.push_back(std::move(pt));
    }
    out.m_h = mh;
    if (opt.non_minimal > 0) detail::extra_blowups(out, opt.non_minimal, opt.seed);
    return out;
}

inline std::vector<WeightedBranch> weigh(const TaggedSystem& sys, const ResolveOptions& opt) {
    std::vector<WeightedBranch> out;
    for (auto& tb : sys.branches) {
        if (tb.mult < 1) throw InputError("branch '" + tb.branch.name + "' has multiplicity < 1");
        WeightedBranch w{tb.branch};
        (tb.role == Role::F ? w.wf : tb.role == Role::G ? w.wg : w.wh) = tb.mult;
        out.push_back(std::move(w));
    }
    if (opt.with_axes) {
        WeightedBranch xa{y_axis()}, ya{x_axis()};  // {x=0} and {y=0}
        (opt.f_is_x ? xa.wf : xa.wg) = 1;
        (opt.f_is_x ? ya.wg : ya.wf) = 1;
        out.push_back(xa);
        out.push_back(ya);
    }
    return out;
}

inline TaggedSystem with_axes_system(const TaggedSystem& sys, const ResolveOptions& opt) {
    TaggedSystem s = sys;
    if (opt.with_axes) {
        s.add(y_axis(), opt.f_is_x ? Role::F : Role::G);
        s.add(x_axis(), opt.f_is_x ? Role::G : Role::F);
    }
    return s;
}

inline ResolutionOutcome resolve_embedded(const TaggedSystem& sys, const ResolveOptions& opt = {}) {
    for (auto& a : sys.with_role(Role::F))
        for (auto& b : sys.with_role(Role::G))
            if (a->branch.x.exact() && a->branch.y.exact() && a->branch.x == b->branch.x && a->branch.y == b->branch.y)
                throw InputError("branch '" + b->branch.name + "' appears in both f and g");
    ResolutionOutcome out = resolve_weighted(weigh(sys, opt), opt);
    out.system = with_axes_system(sys, opt);
    return out;
}

// A branch whose strict transform is a curvetta of component v.
inline Branch synthesize_curvetta(const ResolutionOutcome& out, int v) {
    if (v < 0 || v >= int(out.tree.size()) || out.tree[v].id != v)
        throw InputError("vertex " + std::to_string(v) + " was not created by the blow-up of a point");
    const InfinitelyNearPoint& pt = out.tree[v];
    long sigma = 1;
    for (;; ++sigma) {
        bool clash = false;
        for (auto& d : pt.child_directions)
            if (!d.infinite && d.slope == Rat(sigma)) clash = true;
        if (!clash) break;
    }
    Series X = Series::monomial(1, 1), Y = Series::monomial(Rat(sigma), 1);
    for (auto it = pt.path.rbegin(); it != pt.path.rend(); ++it) {
        if (it->infinite) {
            X = X * Y;
        } else {
            Y = X * add_constant(Y, it->slope);
        }
    }
    return {X, Y, "curvetta(" + std::to_string(v) + ")"};
}

}  // namespace hironaka
