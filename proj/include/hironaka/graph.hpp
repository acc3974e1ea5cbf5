#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "arith.hpp"

namespace hironaka {

enum class ArrowKind { In, Out, Star };

inline std::string arrow_kind_name(ArrowKind k) {
    switch (k) {
        case ArrowKind::In: return "in";
        case ArrowKind::Out: return "out";
        default: return "star";
    }
}

inline ArrowKind arrow_kind_from(const std::string& s) {
    if (s == "in") return ArrowKind::In;
    if (s == "out") return ArrowKind::Out;
    if (s == "star") return ArrowKind::Star;
    throw InputError("unknown arrow kind '" + s + "'");
}

// Fields are optional so hand transcribed figures can leave out what they do not show.
struct Vertex {
    std::optional<int> self_int;
    std::optional<int> genus;
    std::optional<std::int64_t> m_f;
    std::optional<std::int64_t> m_g;
    std::optional<Quotient> q;
    std::string origin;  // free-form provenance (cover graphs)
};

struct Arrow {
    int vertex;
    ArrowKind kind;
    std::int64_t mult = 1;
    std::string label;
};

struct DualGraph {
    std::map<int, Vertex> vertices;
    std::vector<std::pair<int, int>> edges;  // multiset of unordered pairs
    std::vector<Arrow> arrows;

    int next_id() const { return vertices.empty() ? 0 : vertices.rbegin()->first + 1; }

    int add_vertex(Vertex v) {
        int id = next_id();
        vertices.emplace(id, std::move(v));
        return id;
    }

    void add_edge(int a, int b) {
        if (a == b) throw GeometryViolation("self-loop at vertex " + std::to_string(a));
        edges.emplace_back(std::min(a, b), std::max(a, b));
    }

    // Removes one copy of the edge a-b; returns false if absent.
    bool remove_edge(int a, int b) {
        std::pair<int, int> e{std::min(a, b), std::max(a, b)};
        auto it = std::find(edges.begin(), edges.end(), e);
        if (it == edges.end()) return false;
        edges.erase(it);
        return true;
    }

    const Vertex& at(int v) const {
        auto it = vertices.find(v);
        if (it == vertices.end()) throw InputError("no vertex " + std::to_string(v));
        return it->second;
    }
    Vertex& at(int v) {
        auto it = vertices.find(v);
        if (it == vertices.end()) throw InputError("no vertex " + std::to_string(v));
        return it->second;
    }

    // Neighbours with repetition for multi-edges.
    std::vector<int> neighbors(int v) const {
        std::vector<int> out;
        for (auto& [a, b] : edges) {
            if (a == v) out.push_back(b);
            else if (b == v) out.push_back(a);
        }
        return out;
    }

    int edge_degree(int v) const { return int(neighbors(v).size()); }

    int arrow_count(int v, std::optional<ArrowKind> kind = std::nullopt) const {
        int n = 0;
        for (auto& a : arrows)
            if (a.vertex == v && (!kind || a.kind == *kind)) ++n;
        return n;
    }

    int degree(int v) const { return edge_degree(v) + arrow_count(v); }

    int edge_multiplicity(int a, int b) const {
        std::pair<int, int> e{std::min(a, b), std::max(a, b)};
        return int(std::count(edges.begin(), edges.end(), e));
    }

    bool connected() const {
        if (vertices.empty()) return true;
        std::set<int> seen{vertices.begin()->first};
        std::vector<int> stack{vertices.begin()->first};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : neighbors(v))
                if (seen.insert(w).second) stack.push_back(w);
        }
        return seen.size() == vertices.size();
    }

    // Number of independent cycles of the underlying multigraph.
    int cycle_rank() const {
        std::map<int, int> parent;
        for (auto& [id, _] : vertices) parent[id] = id;
        std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
        int extra = 0;
        for (auto& [a, b] : edges) {
            int ra = find(a), rb = find(b);
            if (ra == rb) ++extra;
            else parent[ra] = rb;
        }
        return extra;
    }
};

inline const Quotient& quotient_of(const DualGraph& g, int v) {
    const auto& q = g.at(v).q;
    if (!q) throw InputError("vertex " + std::to_string(v) + " has no quotient");
    return *q;
}

// +1: a -> b, -1: b -> a, 0: unoriented.
inline int edge_orientation(const DualGraph& g, int a, int b) {
    auto c = quotient_cmp(quotient_of(g, a), quotient_of(g, b));
    if (c < 0) return 1;
    if (c > 0) return -1;
    return 0;
}

struct OrientedEdges {
    std::vector<std::pair<int, int>> oriented;    // (from, to)
    std::vector<std::pair<int, int>> unoriented;  // as stored
};

inline OrientedEdges derive_orientation(const DualGraph& g) {
    OrientedEdges out;
    for (auto& [a, b] : g.edges) {
        int o = edge_orientation(g, a, b);
        if (o > 0) out.oriented.emplace_back(a, b);
        else if (o < 0) out.oriented.emplace_back(b, a);
        else out.unoriented.emplace_back(a, b);
    }
    return out;
}

inline bool is_rupture(const DualGraph& g, int v) {
    const auto& vx = g.at(v);
    return vx.genus.value_or(0) > 0 || g.degree(v) >= 3;
}

struct Arc {
    int in_arrow = -1;   // index into arrows
    std::vector<int> vertices;
    int out_arrow = -1;
};

struct ComplementComponent {
    std::set<int> vertices;  // includes boundary vertices shared with arcs
    std::vector<std::pair<int, int>> edges;
    std::optional<Quotient> quotient;  // set when constant
};

struct ArcDecomposition {
    std::vector<Arc> arcs;
    bool arcs_truncated = false;
    std::set<int> arc_vertices;
    std::multiset<std::pair<int, int>> arc_edges;  // as stored (min,max)
    std::vector<ComplementComponent> complement;
};

inline constexpr std::size_t kArcEnumerationCap = 20000;

inline ArcDecomposition maximal_arcs(const DualGraph& g, std::size_t cap = kArcEnumerationCap) {
    ArcDecomposition d;
    auto ori = derive_orientation(g);
    std::map<int, std::vector<int>> succ, pred;
    for (auto& [a, b] : ori.oriented) {
        succ[a].push_back(b);
        pred[b].push_back(a);
    }
    for (auto* adj : {&succ, &pred})
        for (auto& [_, l] : *adj) {
            std::sort(l.begin(), l.end());
            l.erase(std::unique(l.begin(), l.end()), l.end());
        }
    std::set<int> sources, sinks;
    for (auto& a : g.arrows) {
        if (a.kind == ArrowKind::In) sources.insert(a.vertex);
        if (a.kind == ArrowKind::Out) sinks.insert(a.vertex);
    }
    auto closure = [](const std::set<int>& start, std::map<int, std::vector<int>>& adj) {
        std::set<int> seen = start;
        std::vector<int> st(start.begin(), start.end());
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            for (int w : adj[v])
                if (seen.insert(w).second) st.push_back(w);
        }
        return seen;
    };
    std::set<int> fwd = closure(sources, succ), bwd = closure(sinks, pred);
    for (int v : fwd)
        if (bwd.count(v)) d.arc_vertices.insert(v);
    for (auto& [a, b] : ori.oriented)
        if (fwd.count(a) && bwd.count(b)) d.arc_edges.insert({std::min(a, b), std::max(a, b)});

    // explicit enumeration of In -> ... -> Out paths
    for (std::size_t ai = 0; ai < g.arrows.size() && !d.arcs_truncated; ++ai) {
        if (g.arrows[ai].kind != ArrowKind::In) continue;
        std::vector<int> path{g.arrows[ai].vertex};
        std::function<void()> dfs = [&]() {
            if (d.arcs_truncated) return;
            int v = path.back();
            for (std::size_t bi = 0; bi < g.arrows.size(); ++bi)
                if (g.arrows[bi].kind == ArrowKind::Out && g.arrows[bi].vertex == v) {
                    if (d.arcs.size() >= cap) {
                        d.arcs_truncated = true;
                        return;
                    }
                    d.arcs.push_back({int(ai), path, int(bi)});
                }
            for (int w : succ[v]) {
                if (!bwd.count(w)) continue;
                path.push_back(w);
                dfs();
                path.pop_back();
            }
        };
        dfs();
    }

    // closure of the complement
    std::map<int, int> parent;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    std::vector<std::pair<int, int>> comp_edges;
    std::multiset<std::pair<int, int>> arc_edges_left = d.arc_edges;
    for (auto& e : g.edges) {
        auto it = arc_edges_left.find(e);
        if (it != arc_edges_left.end()) {
            arc_edges_left.erase(it);
            continue;
        }
        comp_edges.push_back(e);
    }
    for (auto& [id, _] : g.vertices)
        if (!d.arc_vertices.count(id)) parent[id] = id;
    for (auto& [a, b] : comp_edges) {
        if (!parent.count(a)) parent[a] = a;
        if (!parent.count(b)) parent[b] = b;
        parent[find(a)] = find(b);
    }
    std::map<int, ComplementComponent> comps;
    for (auto& [v, _] : parent) comps[find(v)].vertices.insert(v);
    for (auto& e : comp_edges) comps[find(e.first)].edges.push_back(e);
    for (auto& [root, c] : comps) {
        std::optional<Quotient> q;
        bool constant = true;
        for (int v : c.vertices) {
            const auto& qv = g.at(v).q;
            if (!qv) {
                constant = false;
                break;
            }
            if (!q) q = *qv;
            else if (!(*q == *qv)) constant = false;
        }
        if (constant) c.quotient = q;
        d.complement.push_back(std::move(c));
    }
    return d;
}

struct Violation {
    char clause;  // 'a'..'e'
    std::string witness;
};

struct Theorem1Report {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_text() const {
        if (ok()) return "theorem 1: all clauses pass";
        std::string s;
        for (auto& v : violations) s += std::string("clause ") + v.clause + ": " + v.witness + "\n";
        return s;
    }
};

// Clauses (a)-(c) and (e) on the decomposition derived from g; (d) on the
// arcs of the given decomposition (which may come from elsewhere).
inline Theorem1Report verify_theorem1(const DualGraph& g, const ArcDecomposition& d) {
    Theorem1Report r;
    for (auto& [id, v] : g.vertices)
        if (!v.q) {
            r.violations.push_back({'a', "vertex " + std::to_string(id) + " has no quotient"});
            return r;
        }
    ArcDecomposition own = maximal_arcs(g);
    for (auto& c : own.complement) {
        if (c.quotient) continue;
        std::string w = "component {";
        for (int v : c.vertices) w += " " + std::to_string(v) + ":" + quotient_of(g, v).to_text();
        r.violations.push_back({'a', w + " } not constant"});
    }
    for (auto& a : g.arrows) {
        if (a.kind == ArrowKind::Star) continue;
        if (!own.arc_vertices.count(a.vertex))
            r.violations.push_back({'b', arrow_kind_name(a.kind) + " arrow at vertex " + std::to_string(a.vertex) +
                                             " lies outside the arcs"});
    }
    {
        auto left = own.arc_edges;
        for (auto& [a, b] : g.edges) {
            if (edge_orientation(g, a, b) == 0) continue;
            auto it = left.find({a, b});
            if (it != left.end()) {
                left.erase(it);
                continue;
            }
            r.violations.push_back({'c', "oriented edge " + std::to_string(a) + "-" + std::to_string(b) +
                                             " lies outside the arcs"});
        }
    }
    for (std::size_t i = 0; i < d.arcs.size(); ++i) {
        const Arc& arc = d.arcs[i];
        auto bad = [&](const std::string& why) {
            r.violations.push_back({'d', "arc " + std::to_string(i) + ": " + why});
        };
        if (arc.vertices.empty()) {
            bad("empty");
            continue;
        }
        if (arc.in_arrow < 0 || arc.in_arrow >= int(g.arrows.size()) ||
            g.arrows[arc.in_arrow].kind != ArrowKind::In || g.arrows[arc.in_arrow].vertex != arc.vertices.front())
            bad("does not begin with an in arrow");
        if (arc.out_arrow < 0 || arc.out_arrow >= int(g.arrows.size()) ||
            g.arrows[arc.out_arrow].kind != ArrowKind::Out || g.arrows[arc.out_arrow].vertex != arc.vertices.back())
            bad("does not end with an out arrow");
        for (std::size_t k = 0; k + 1 < arc.vertices.size(); ++k) {
            int a = arc.vertices[k], b = arc.vertices[k + 1];
            if (!g.vertices.count(a) || !g.vertices.count(b) || g.edge_multiplicity(a, b) == 0) {
                bad("no edge " + std::to_string(a) + "-" + std::to_string(b));
                continue;
            }
            if (edge_orientation(g, a, b) <= 0)
                bad("edge " + std::to_string(a) + "->" + std::to_string(b) + " does not increase (" +
                    quotient_of(g, a).to_text() + " then " + quotient_of(g, b).to_text() + ")");
        }
        std::set<int> seen(arc.vertices.begin(), arc.vertices.end());
        if (seen.size() != arc.vertices.size()) bad("not a segment");
    }
    // Remark 1: local characterisation of arc vertices
    std::map<int, bool> has_in, has_out;
    for (auto& a : g.arrows) {
        if (a.kind == ArrowKind::In) has_in[a.vertex] = true;
        if (a.kind == ArrowKind::Out) has_out[a.vertex] = true;
    }
    for (auto& [a, b] : derive_orientation(g).oriented) {
        has_out[a] = true;
        has_in[b] = true;
    }
    for (auto& [id, _] : g.vertices) {
        bool local = has_in[id] && has_out[id];
        bool global = own.arc_vertices.count(id) > 0;
        if (local != global)
            r.violations.push_back({'e', "vertex " + std::to_string(id) + (local ? " passes" : " fails") +
                                             " the local test but is" + (global ? "" : " not") + " on an arc"});
    }
    return r;
}

inline Theorem1Report verify_theorem1(const DualGraph& g) { return verify_theorem1(g, maximal_arcs(g)); }

// --- isomorphism ---

struct IsoOptions {
    bool quotient = true;
    bool self_int = true;
    bool genus = true;
    bool star_arrows = true;
};

namespace detail {

inline bool vertex_compatible(const Vertex& a, const Vertex& b, const IsoOptions& o) {
    if (o.quotient && a.q && b.q && !(*a.q == *b.q)) return false;
    if (o.self_int && a.self_int && b.self_int && *a.self_int != *b.self_int) return false;
    if (o.genus && a.genus && b.genus && *a.genus != *b.genus) return false;
    return true;
}

inline std::vector<int> arrow_signature(const DualGraph& g, int v, const IsoOptions& o) {
    return {g.arrow_count(v, ArrowKind::In), g.arrow_count(v, ArrowKind::Out),
            o.star_arrows ? g.arrow_count(v, ArrowKind::Star) : 0};
}

// Colour refinement on structural data only (wildcard fields do not enter).
inline std::map<int, std::size_t> refine(const DualGraph& g, const IsoOptions& o,
                                         std::map<std::vector<std::int64_t>, std::size_t>& palette) {
    std::map<int, std::vector<std::int64_t>> sig;
    for (auto& [id, _] : g.vertices) {
        auto s = arrow_signature(g, id, o);
        sig[id] = {g.edge_degree(id), s[0], s[1], s[2]};
    }
    std::map<int, std::size_t> col;
    for (int round = 0; round < 2 * int(g.vertices.size()) + 2; ++round) {
        std::map<int, std::size_t> next;
        for (auto& [id, s] : sig) {
            auto it = palette.find(s);
            if (it == palette.end()) it = palette.emplace(s, palette.size()).first;
            next[id] = it->second;
        }
        if (next == col) break;
        col = next;
        for (auto& [id, s] : sig) {
            std::vector<std::int64_t> ns = {std::int64_t(col[id])};
            std::vector<std::int64_t> nb;
            for (int w : g.neighbors(id)) nb.push_back(std::int64_t(col[w]));
            std::sort(nb.begin(), nb.end());
            ns.push_back(-1);
            ns.insert(ns.end(), nb.begin(), nb.end());
            s = ns;
        }
    }
    return col;
}

}  // namespace detail

inline std::optional<std::map<int, int>> graph_isomorphic(const DualGraph& a, const DualGraph& b,
                                                          const IsoOptions& o = {}) {
    if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) return std::nullopt;
    auto count_kind = [&](const DualGraph& g, ArrowKind k) {
        return std::count_if(g.arrows.begin(), g.arrows.end(), [&](const Arrow& x) { return x.kind == k; });
    };
    for (auto k : {ArrowKind::In, ArrowKind::Out})
        if (count_kind(a, k) != count_kind(b, k)) return std::nullopt;
    if (o.star_arrows && count_kind(a, ArrowKind::Star) != count_kind(b, ArrowKind::Star)) return std::nullopt;

    // refine both graphs with one shared palette so colours are comparable
    std::map<std::vector<std::int64_t>, std::size_t> palette;
    std::map<int, std::size_t> ca, cb;
    {
        // joint refinement: run on the disjoint union
        DualGraph u;
        std::map<int, int> ida, idb;
        for (auto& [id, v] : a.vertices) ida[id] = u.add_vertex(v);
        for (auto& [id, v] : b.vertices) idb[id] = u.add_vertex(v);
        for (auto& [x, y] : a.edges) u.add_edge(ida[x], ida[y]);
        for (auto& [x, y] : b.edges) u.add_edge(idb[x], idb[y]);
        for (auto ar : a.arrows) {
            ar.vertex = ida[ar.vertex];
            u.arrows.push_back(ar);
        }
        for (auto ar : b.arrows) {
            ar.vertex = idb[ar.vertex];
            u.arrows.push_back(ar);
        }
        auto cu = detail::refine(u, o, palette);
        for (auto& [id, n] : ida) ca[id] = cu[n];
        for (auto& [id, n] : idb) cb[id] = cu[n];
    }
    {
        std::map<std::size_t, int> ha, hb;
        for (auto& [_, c] : ca) ++ha[c];
        for (auto& [_, c] : cb) ++hb[c];
        if (ha != hb) return std::nullopt;
    }
    // BFS order on a, so each new vertex tends to have an assigned neighbour
    std::vector<int> order;
    {
        std::set<int> seen;
        for (auto& [start, _] : a.vertices) {
            if (seen.count(start)) continue;
            std::vector<int> queue{start};
            seen.insert(start);
            for (std::size_t i = 0; i < queue.size(); ++i) {
                order.push_back(queue[i]);
                for (int w : a.neighbors(queue[i]))
                    if (seen.insert(w).second) queue.push_back(w);
            }
        }
    }
    std::map<int, int> map;
    std::set<int> used;
    std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
        if (i == order.size()) return true;
        int v = order[i];
        for (auto& [w, wv] : b.vertices) {
            if (used.count(w) || cb[w] != ca[v]) continue;
            if (!detail::vertex_compatible(a.at(v), wv, o)) continue;
            bool ok = true;
            for (auto& [x, y] : map)
                if (a.edge_multiplicity(v, x) != b.edge_multiplicity(w, y)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            map[v] = w;
            used.insert(w);
            if (go(i + 1)) return true;
            map.erase(v);
            used.erase(w);
        }
        return false;
    };
    if (!go(0)) return std::nullopt;
    return map;
}

// --- DOT ---

inline std::string emit_dot(const DualGraph& g, const std::string& name = "G") {
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    os << "  node [shape=circle, fontsize=10];\n";
    for (auto& [id, v] : g.vertices) {
        os << "  v" << id << " [label=\"q=" << (v.q ? v.q->to_text() : "?");
        if (v.self_int) os << ", e=" << *v.self_int;
        if (v.genus) os << ", g=" << *v.genus;
        os << "\"];\n";
    }
    auto ori = derive_orientation(g);
    for (auto& [a, b] : ori.oriented) os << "  v" << a << " -> v" << b << ";\n";
    for (auto& [a, b] : ori.unoriented) os << "  v" << a << " -> v" << b << " [dir=none];\n";
    for (std::size_t i = 0; i < g.arrows.size(); ++i) {
        const auto& a = g.arrows[i];
        os << "  a" << i << " [shape=point, width=0.05];\n";
        switch (a.kind) {
            case ArrowKind::In: os << "  a" << i << " -> v" << a.vertex << ";\n"; break;
            case ArrowKind::Out: os << "  v" << a.vertex << " -> a" << i << ";\n"; break;
            case ArrowKind::Star:
                os << "  v" << a.vertex << " -> a" << i << " [dir=none, headlabel=\"*\"];\n";
                break;
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace hironaka
