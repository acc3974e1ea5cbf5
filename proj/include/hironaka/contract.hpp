#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace hironaka {

struct ContractionStep {
    int contracted_vertex = -1;
    std::vector<std::pair<int, int>> neighbor_updates;  // (id, new self-intersection)
    std::optional<std::pair<int, int>> merged_edge;
    std::vector<std::size_t> moved_arrows;  // indices (valid in the graph after the step)
};

inline std::string contractible_reason(const DualGraph& g, int v) {
    const Vertex& x = g.at(v);
    if (!x.self_int || *x.self_int != -1) return "self-intersection is not -1";
    if (x.genus.value_or(0) != 0) return "positive genus";
    if (g.degree(v) > 2) return "degree " + std::to_string(g.degree(v)) + " > 2";
    if (g.vertices.size() < 2) return "last remaining vertex";
    if (g.edge_degree(v) == 2 && g.neighbors(v)[0] == g.neighbors(v)[1])
        return "both branches meet the same component";
    return {};
}

inline bool contractible(const DualGraph& g, int v) { return contractible_reason(g, v).empty(); }

inline std::pair<DualGraph, ContractionStep> blow_down_once(const DualGraph& g, int v) {
    std::string why = contractible_reason(g, v);
    if (!why.empty()) throw NotContractible("vertex " + std::to_string(v) + ": " + why);
    std::vector<int> nb = g.neighbors(v);
    DualGraph h = g;
    ContractionStep step;
    step.contracted_vertex = v;
    for (int w : nb) h.remove_edge(v, w);
    h.vertices.erase(v);
    for (int w : nb) {
        auto& si = h.at(w).self_int;
        if (si) *si += 1;
        step.neighbor_updates.emplace_back(w, si.value_or(0));
    }
    if (nb.size() == 2) {
        h.add_edge(nb[0], nb[1]);
        step.merged_edge = std::make_pair(std::min(nb[0], nb[1]), std::max(nb[0], nb[1]));
    }
    for (std::size_t i = 0; i < h.arrows.size(); ++i)
        if (h.arrows[i].vertex == v) {
            if (nb.size() != 1) throw InternalError("arrow on an isolated contracted vertex");
            h.arrows[i].vertex = nb[0];
            step.moved_arrows.push_back(i);
        }
    return {std::move(h), std::move(step)};
}

// Contract until no eligible vertex is left. With an rng the next vertex is
// drawn at random among the eligible ones, otherwise the lowest id goes first.
inline std::pair<DualGraph, std::vector<ContractionStep>> minimal_model(const DualGraph& g,
                                                                      std::mt19937_64* rng = nullptr) {
    DualGraph cur = g;
    std::vector<ContractionStep> steps;
    for (;;) {
        std::vector<int> cand;
        for (auto& [id, _] : cur.vertices)
            if (contractible(cur, id)) cand.push_back(id);
        if (cand.empty()) break;
        int v = cand.front();
        if (rng) v = cand[std::uniform_int_distribution<std::size_t>(0, cand.size() - 1)(*rng)];
        auto [next, step] = blow_down_once(cur, v);
        cur = std::move(next);
        steps.push_back(std::move(step));
    }
    return {std::move(cur), std::move(steps)};
}

inline DualGraph apply_steps(const DualGraph& g, const std::vector<ContractionStep>& steps) {
    DualGraph cur = g;
    for (auto& s : steps) cur = blow_down_once(cur, s.contracted_vertex).first;
    return cur;
}

struct TransportReport {
    std::vector<std::string> violations;
    int off_arc = 0;
    int interior = 0;     // p -> v -> n collapses to p -> n
    int in_shift = 0;     // in arrow at v, v -> n: the arrow moves to n
    int out_shift = 0;    // p -> v, out arrow at v: the arrow moves to p
    bool ok() const { return violations.empty(); }
};

inline TransportReport check_arc_transport(const DualGraph& before, const DualGraph& after,
                                           const std::vector<ContractionStep>& steps) {
    TransportReport r;
    DualGraph cur = before;
    for (std::size_t k = 0; k < steps.size(); ++k) {
        int v = steps[k].contracted_vertex;
        auto fail = [&](const std::string& why) {
            r.violations.push_back("step " + std::to_string(k) + " (vertex " + std::to_string(v) + "): " + why);
        };
        ArcDecomposition A = maximal_arcs(cur);
        std::vector<int> nb = cur.neighbors(v);
        int in_arrows = 0, out_arrows = 0;
        for (auto& a : cur.arrows) {
            if (a.vertex != v) continue;
            if (a.kind == ArrowKind::In) ++in_arrows;
            if (a.kind == ArrowKind::Out) ++out_arrows;
        }
        DualGraph nxt = blow_down_once(cur, v).first;
        ArcDecomposition B = maximal_arcs(nxt);

        std::set<int> exp_v = A.arc_vertices;
        std::multiset<std::pair<int, int>> exp_e = A.arc_edges;
        auto drop_edge = [&](int a, int b) {
            auto it = exp_e.find({std::min(a, b), std::max(a, b)});
            if (it != exp_e.end()) exp_e.erase(it);
        };
        if (!A.arc_vertices.count(v)) {
            ++r.off_arc;
            // complement components must survive with their quotient
            for (auto& c : A.complement) {
                std::set<int> img = c.vertices;
                if (img.erase(v)) {
                    std::size_t img_edges = c.edges.size() - nb.size() + (nb.size() == 2 ? 1 : 0);
                    bool boundary_only =
                        std::all_of(img.begin(), img.end(), [&](int w) { return B.arc_vertices.count(w) > 0; });
                    if (img_edges == 0 && boundary_only) continue;  // shrank onto the arcs
                }
                bool found = false;
                for (auto& d : B.complement)
                    if (d.vertices == img) {
                        found = (c.quotient && d.quotient && *c.quotient == *d.quotient);
                        break;
                    }
                if (!found) fail("a complement component does not map isomorphically");
            }
        } else {
            exp_v.erase(v);
            std::vector<int> preds, succs;
            for (int w : nb) {
                int o = edge_orientation(cur, w, v);
                if (o > 0 && A.arc_vertices.count(w)) preds.push_back(w);
                if (o < 0 && A.arc_vertices.count(w)) succs.push_back(w);
            }
            if (preds.size() == 1 && succs.size() == 1 && in_arrows == 0 && out_arrows == 0) {
                ++r.interior;
                drop_edge(preds[0], v);
                drop_edge(v, succs[0]);
                exp_e.insert({std::min(preds[0], succs[0]), std::max(preds[0], succs[0])});
            } else if (in_arrows == 1 && succs.size() == 1 && preds.empty() && out_arrows == 0) {
                ++r.in_shift;
                drop_edge(v, succs[0]);
            } else if (out_arrows == 1 && preds.size() == 1 && succs.empty() && in_arrows == 0) {
                ++r.out_shift;
                drop_edge(preds[0], v);
            } else {
                fail("on-arc contraction matches none of the three shapes");
            }
        }
        if (exp_v != B.arc_vertices) fail("arc vertices are not the image of the previous arcs");
        if (exp_e != B.arc_edges) fail("arc edges are not the image of the previous arcs");
        cur = std::move(nxt);
    }
    if (!graph_isomorphic(cur, after)) r.violations.push_back("replayed steps do not reach the given graph");
    return r;
}

// --- blow-ups at graph level (the inverse moves) ---

namespace detail {

inline Vertex new_component(std::int64_t mf, std::int64_t mg) {
    Vertex w;
    w.self_int = -1;
    w.genus = 0;
    w.m_f = mf;
    w.m_g = mg;
    w.q = Quotient::ratio(mf, mg);
    return w;
}

inline void lower(DualGraph& g, int v) {
    auto& si = g.at(v).self_int;
    if (si) *si -= 1;
}

inline std::int64_t need(const std::optional<std::int64_t>& m) {
    if (!m) throw InputError("blow-up needs multiplicities on the graph");
    return *m;
}

}  // namespace detail

// Generic point of component v.
inline int blow_up_vertex_point(DualGraph& g, int v) {
    const Vertex& x = g.at(v);
    int w = g.add_vertex(detail::new_component(detail::need(x.m_f), detail::need(x.m_g)));
    detail::lower(g, v);
    g.add_edge(v, w);
    return w;
}

inline int blow_up_edge_point(DualGraph& g, int a, int b) {
    if (!g.remove_edge(a, b)) throw InputError("no edge " + std::to_string(a) + "-" + std::to_string(b));
    const Vertex &x = g.at(a), &y = g.at(b);
    int w = g.add_vertex(detail::new_component(detail::need(x.m_f) + detail::need(y.m_f),
                                               detail::need(x.m_g) + detail::need(y.m_g)));
    detail::lower(g, a);
    detail::lower(g, b);
    g.add_edge(a, w);
    g.add_edge(w, b);
    return w;
}

// Point where the strict transform of arrow ai meets its component.
inline int blow_up_arrow_point(DualGraph& g, std::size_t ai) {
    Arrow& ar = g.arrows.at(ai);
    int v = ar.vertex;
    const Vertex& x = g.at(v);
    std::int64_t mf = detail::need(x.m_f) + (ar.kind == ArrowKind::Out ? ar.mult : 0);
    std::int64_t mg = detail::need(x.m_g) + (ar.kind == ArrowKind::In ? ar.mult : 0);
    int w = g.add_vertex(detail::new_component(mf, mg));
    detail::lower(g, v);
    g.add_edge(v, w);
    g.arrows.at(ai).vertex = w;
    return w;
}

}  // namespace hironaka
