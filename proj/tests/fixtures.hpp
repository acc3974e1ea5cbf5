#pragma once

#include <string>

#include <hironaka/io.hpp>

namespace fixtures {

using namespace hironaka;

inline std::string path(const std::string& name) { return std::string(HIRONAKA_DATA_DIR) + "/fixtures/" + name; }

inline DualGraph expected(const std::string& name) { return graph_from_json(read_json_file(path(name))); }

inline SystemFile system(const std::string& name) { return system_from_json(read_json_file(path(name))); }

inline ResolveOptions options(const SystemFile& sf) {
    ResolveOptions o;
    o.with_axes = sf.with_axes;
    o.f_is_x = sf.f_is_x;
    return o;
}

inline ResolutionOutcome resolve(const std::string& name) {
    SystemFile sf = system(name);
    return resolve_embedded(sf.system, options(sf));
}

inline CoverSpec cover_spec(const std::string& name) { return cover_spec_from_json(read_json_file(path(name))); }

inline CoverGraph single_cover(const std::string& name) {
    CoverResult r = assemble_cover_graph(cover_spec(name));
    if (r.components.size() != 1) throw InternalError(name + ": cover is not connected");
    return r.components.front();
}

inline bool iso(const DualGraph& a, const DualGraph& b, const IsoOptions& o = {}) {
    return graph_isomorphic(a, b, o).has_value();
}

// The branch systems whose resolutions count as fixture graphs, with the
// system used for contact quotients on them.
inline std::vector<std::string> system_fixtures() {
    return {"example1_fg.json", "example1_delta.json", "example3_phi2_delta.json"};
}

inline std::vector<std::string> cover_fixtures() {
    return {"example2_cover.json", "example3_phi2_cover.json", "example3_phi1_cover.json"};
}

// f = x (or y), g = the other axis, h-branches as stars: the system behind a cover base.
inline TaggedSystem cover_base_system(const CoverSpec& spec) {
    TaggedSystem s;
    s.add(y_axis(), spec.f_is_x ? Role::F : Role::G);
    s.add(x_axis(), spec.f_is_x ? Role::G : Role::F);
    for (auto& tb : spec.h_branches)
        if (!tb.branch.x.exact_zero() && !tb.branch.y.exact_zero()) s.add(tb.branch, Role::Delta, tb.mult);
    return s;
}

}  // namespace fixtures
