#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "contract.hpp"
#include "cover.hpp"
#include "curve.hpp"
#include "graph.hpp"

namespace hironaka {

using json = nlohmann::json;

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

// --- branches ---

inline Rat coef_from_json(const json& j) {
    if (j.is_string()) return rat_from_text(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
    throw InputError("coefficient must be an integer or a \"p/q\" string");
}

inline Series series_from_json(const json& j, int precision) {
    if (!j.is_array()) throw InputError("series must be a list of [exponent, coefficient] pairs");
    std::vector<Series::Term> terms;
    for (auto& t : j) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer())
            throw InputError("series term must be [exponent, coefficient]");
        terms.emplace_back(t[0].get<int>(), coef_from_json(t[1]));
    }
    return Series(std::move(terms), precision);
}

inline json series_to_json(const Series& s) {
    json a = json::array();
    for (auto& [e, c] : s.terms()) a.push_back({e, rat_to_text(c)});
    return a;
}

inline TaggedBranch branch_from_json(const json& j, std::size_t index) {
    if (!j.is_object()) throw InputError("branch must be an object");
    TaggedBranch tb;
    int precision = Series::kExact;
    if (j.contains("precision")) precision = j.at("precision").get<int>();
    tb.branch.name = j.value("name", "branch" + std::to_string(index));
    if (!j.contains("x") || !j.contains("y")) throw InputError("branch '" + tb.branch.name + "' needs x and y");
    tb.branch.x = series_from_json(j.at("x"), precision);
    tb.branch.y = series_from_json(j.at("y"), precision);
    std::string role = j.value("role", "delta");
    if (role == "f") tb.role = Role::F;
    else if (role == "g") tb.role = Role::G;
    else if (role == "delta") tb.role = Role::Delta;
    else throw InputError("branch '" + tb.branch.name + "': unknown role '" + role + "'");
    tb.mult = j.value("mult", 1);
    if (tb.mult < 1) throw InputError("branch '" + tb.branch.name + "': mult must be positive");
    validate_branch(tb.branch);
    return tb;
}

inline json branch_to_json(const TaggedBranch& tb) {
    json j = {{"x", series_to_json(tb.branch.x)},
              {"y", series_to_json(tb.branch.y)},
              {"role", role_name(tb.role)},
              {"mult", tb.mult},
              {"name", tb.branch.name}};
    if (!tb.branch.x.exact()) j["precision"] = tb.branch.x.precision();
    return j;
}

struct SystemFile {
    TaggedSystem system;
    bool with_axes = false;
    bool f_is_x = true;
};

inline SystemFile system_from_json(const json& j) {
    SystemFile s;
    const json* list = &j;
    if (j.is_object()) {
        if (!j.contains("branches")) throw InputError("system needs a \"branches\" list");
        list = &j.at("branches");
        s.with_axes = j.value("with_axes", false);
        s.f_is_x = j.value("f_axis", std::string("x")) == "x";
    }
    if (!list->is_array()) throw InputError("branches must be a list");
    std::size_t i = 0;
    for (auto& b : *list) s.system.branches.push_back(branch_from_json(b, i++));
    return s;
}

inline CoverSpec cover_spec_from_json(const json& j) {
    if (!j.is_object()) throw InputError("cover spec must be an object");
    CoverSpec spec;
    spec.degree = j.at("degree").get<int>();
    if (spec.degree < 2) throw InputError("degree must be at least 2");
    std::string fr = j.value("f_role", std::string("x")), gr = j.value("g_role", fr == "x" ? "y" : "x");
    if (fr == gr || (fr != "x" && fr != "y") || (gr != "x" && gr != "y"))
        throw InputError("f_role and g_role must be \"x\" and \"y\" in some order");
    spec.f_is_x = fr == "x";
    std::size_t i = 0;
    for (auto& b : j.at("h_branches")) {
        TaggedBranch tb = branch_from_json(b, i++);
        tb.role = Role::Delta;
        spec.h_branches.push_back(std::move(tb));
    }
    return spec;
}

// --- graphs ---

inline json graph_to_json(const DualGraph& g) {
    json vs = json::array();
    for (auto& [id, v] : g.vertices) {
        json o = {{"id", id}};
        if (v.self_int) o["selfint"] = *v.self_int;
        if (v.genus) o["genus"] = *v.genus;
        if (v.m_f) o["mf"] = *v.m_f;
        if (v.m_g) o["mg"] = *v.m_g;
        if (v.q) o["q"] = v.q->to_text();
        if (!v.origin.empty()) o["origin"] = v.origin;
        vs.push_back(o);
    }
    json es = json::array();
    for (auto& [a, b] : g.edges) es.push_back({a, b});
    json as = json::array();
    for (auto& a : g.arrows) {
        json o = {{"v", a.vertex}, {"kind", arrow_kind_name(a.kind)}};
        if (a.mult != 1) o["mult"] = a.mult;
        if (!a.label.empty()) o["label"] = a.label;
        as.push_back(o);
    }
    return {{"vertices", vs}, {"edges", es}, {"arrows", as}};
}

inline DualGraph graph_from_json(const json& j) {
    DualGraph g;
    try {
        for (auto& v : j.at("vertices")) {
            Vertex x;
            if (v.contains("selfint")) x.self_int = v.at("selfint").get<int>();
            if (v.contains("genus")) x.genus = v.at("genus").get<int>();
            if (v.contains("mf")) x.m_f = v.at("mf").get<std::int64_t>();
            if (v.contains("mg")) x.m_g = v.at("mg").get<std::int64_t>();
            if (v.contains("q")) {
                const json& q = v.at("q");
                x.q = Quotient::from_text(q.is_string() ? q.get<std::string>() : std::to_string(q.get<long>()));
            } else if (x.m_f && x.m_g) {
                x.q = Quotient::ratio(*x.m_f, *x.m_g);
            }
            x.origin = v.value("origin", std::string());
            int id = v.at("id").get<int>();
            if (!g.vertices.emplace(id, x).second) throw InputError("duplicate vertex id " + std::to_string(id));
        }
        for (auto& e : j.at("edges")) {
            int a = e.at(0).get<int>(), b = e.at(1).get<int>();
            if (!g.vertices.count(a) || !g.vertices.count(b)) throw InputError("edge to an unknown vertex");
            g.add_edge(a, b);
        }
        if (j.contains("arrows"))
            for (auto& a : j.at("arrows")) {
                Arrow ar{a.at("v").get<int>(), arrow_kind_from(a.at("kind").get<std::string>()),
                         a.value("mult", std::int64_t(1)), a.value("label", std::string())};
                if (!g.vertices.count(ar.vertex)) throw InputError("arrow on an unknown vertex");
                g.arrows.push_back(ar);
            }
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed graph: ") + e.what());
    }
    return g;
}

inline json theorem1_to_json(const Theorem1Report& r) {
    json v = json::array();
    for (auto& x : r.violations) v.push_back({{"clause", std::string(1, x.clause)}, {"witness", x.witness}});
    return {{"ok", r.ok()}, {"violations", v}};
}

inline json arcs_to_json(const DualGraph& g, const ArcDecomposition& d) {
    json arcs = json::array();
    for (auto& a : d.arcs) arcs.push_back({{"in_arrow", a.in_arrow}, {"vertices", a.vertices}, {"out_arrow", a.out_arrow}});
    json comps = json::array();
    for (auto& c : d.complement) {
        json e = json::array();
        for (auto& [a, b] : c.edges) e.push_back({a, b});
        comps.push_back({{"vertices", c.vertices}, {"edges", e}, {"q", c.quotient ? c.quotient->to_text() : "mixed"}});
    }
    json ae = json::array();
    for (auto& [a, b] : d.arc_edges) ae.push_back({a, b});
    (void)g;
    return {{"arcs", arcs},
            {"arcs_truncated", d.arcs_truncated},
            {"arc_vertices", d.arc_vertices},
            {"arc_edges", ae},
            {"complement", comps}};
}

inline json steps_to_json(const std::vector<ContractionStep>& steps) {
    json out = json::array();
    for (auto& s : steps) {
        json u = json::array();
        for (auto& [id, si] : s.neighbor_updates) u.push_back({id, si});
        json o = {{"contracted", s.contracted_vertex}, {"neighbor_updates", u}};
        if (s.merged_edge) o["merged_edge"] = {s.merged_edge->first, s.merged_edge->second};
        out.push_back(o);
    }
    return out;
}

}  // namespace hironaka
