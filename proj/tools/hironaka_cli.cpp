#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <hironaka/io.hpp>
#include <hironaka/random.hpp>

using namespace hironaka;

namespace {

enum Exit { kOk = 0, kVerify = 1, kInput = 2, kPrecision = 3 };

constexpr int kMaxTruncation = 1024;

struct Flags {
    std::string input;
    std::string format = "json";
    std::uint64_t seed = 0;
    int non_minimal = 0;
    int truncation = kDefaultTruncation;
    bool with_axes = false;
    std::string f_axis = "x";
    bool minimal = true;
    int cases = 1000;
    int covers = 200;
};

// Runs body with the truncation doubled after every precision failure.
template <class F>
auto with_retry(int start, F body) {
    for (int n = start;; n *= 2) {
        try {
            return body(n);
        } catch (const PrecisionExhausted&) {
            if (n * 2 > kMaxTruncation) throw;
        }
    }
}

void emit(const Flags& fl, const json& j, const std::vector<std::pair<std::string, const DualGraph*>>& graphs) {
    if (fl.format == "dot") {
        for (auto& [name, g] : graphs) std::cout << emit_dot(*g, name);
        return;
    }
    std::cout << j.dump(1) << "\n";
}

int cmd_resolve(const Flags& fl) {
    SystemFile sf = system_from_json(read_json_file(fl.input));
    ResolveOptions opt;
    opt.with_axes = fl.with_axes || sf.with_axes;
    opt.f_is_x = fl.f_axis == "x" && sf.f_is_x;
    opt.non_minimal = fl.non_minimal;
    opt.seed = fl.seed;
    ResolutionOutcome out = with_retry(fl.truncation, [&](int n) {
        ResolveOptions o = opt;
        o.truncation = n;
        return resolve_embedded(sf.system, o);
    });
    ArcDecomposition arcs = maximal_arcs(out.graph);
    Theorem1Report rep = verify_theorem1(out.graph, arcs);
    json j = {{"graph", graph_to_json(out.graph)}, {"arcs", arcs_to_json(out.graph, arcs)}, {"theorem1", theorem1_to_json(rep)}};
    emit(fl, j, {{"resolution", &out.graph}});
    return rep.ok() ? kOk : kVerify;
}

int cmd_cover(const Flags& fl) {
    CoverSpec spec = cover_spec_from_json(read_json_file(fl.input));
    CoverResult res = with_retry(fl.truncation, [&](int n) {
        CoverSpec s = spec;
        s.truncation = n;
        return assemble_cover_graph(s);
    });
    bool ok = true;
    json comps = json::array();
    std::vector<DualGraph> minimal;
    for (auto& cg : res.components) {
        Theorem2Report t2 = check_theorem2(cg);
        Theorem1Report t1 = verify_theorem1(cg.graph);
        ok = ok && t1.ok() && t2.ok();
        json c = {{"graph", graph_to_json(cg.graph)},
                  {"theorem1", theorem1_to_json(t1)},
                  {"theorem2", {{"ok", t2.ok()}, {"violations", t2.violations}}}};
        if (fl.minimal) {
            auto [m, steps] = minimal_model(cg.graph);
            TransportReport tr = check_arc_transport(cg.graph, m, steps);
            Theorem1Report tm = verify_theorem1(m);
            ok = ok && tr.ok() && tm.ok();
            ArcDecomposition arcs = maximal_arcs(m);
            c["minimal"] = {{"graph", graph_to_json(m)},
                            {"steps", steps_to_json(steps)},
                            {"arcs", arcs_to_json(m, arcs)},
                            {"theorem1", theorem1_to_json(tm)},
                            {"transport", {{"ok", tr.ok()}, {"violations", tr.violations}}}};
            minimal.push_back(std::move(m));
        }
        comps.push_back(c);
    }
    json j = {{"degree", spec.degree}, {"base", graph_to_json(res.base.outcome.graph)}, {"components", comps}};
    std::vector<std::pair<std::string, const DualGraph*>> gs{{"base", &res.base.outcome.graph}};
    for (std::size_t k = 0; k < res.components.size(); ++k) {
        gs.emplace_back("cover" + std::to_string(k), &res.components[k].graph);
        if (k < minimal.size()) gs.emplace_back("minimal" + std::to_string(k), &minimal[k]);
    }
    emit(fl, j, gs);
    return ok ? kOk : kVerify;
}

int cmd_arcs(const Flags& fl) {
    DualGraph g = graph_from_json(read_json_file(fl.input));
    ArcDecomposition arcs = maximal_arcs(g);
    Theorem1Report rep = verify_theorem1(g, arcs);
    json j = {{"arcs", arcs_to_json(g, arcs)}, {"theorem1", theorem1_to_json(rep)}};
    emit(fl, j, {{"graph", &g}});
    return rep.ok() ? kOk : kVerify;
}

int cmd_contract(const Flags& fl) {
    DualGraph g = graph_from_json(read_json_file(fl.input));
    std::mt19937_64 rng(fl.seed);
    auto [m, steps] = minimal_model(g, fl.seed ? &rng : nullptr);
    TransportReport tr = check_arc_transport(g, m, steps);
    json j = {{"graph", graph_to_json(m)},
              {"steps", steps_to_json(steps)},
              {"transport",
               {{"ok", tr.ok()},
                {"off_arc", tr.off_arc},
                {"interior", tr.interior},
                {"in_shift", tr.in_shift},
                {"out_shift", tr.out_shift},
                {"violations", tr.violations}}}};
    emit(fl, j, {{"minimal", &m}});
    return tr.ok() ? kOk : kVerify;
}

std::string fixture(const std::string& name) { return std::string(HIRONAKA_DATA_DIR) + "/fixtures/" + name; }

DualGraph expected(const std::string& name) { return graph_from_json(read_json_file(fixture(name))); }

ResolutionOutcome resolve_file(const std::string& name) {
    SystemFile sf = system_from_json(read_json_file(fixture(name)));
    ResolveOptions o;
    o.with_axes = sf.with_axes;
    o.f_is_x = sf.f_is_x;
    return resolve_embedded(sf.system, o);
}

CoverGraph single_cover(const std::string& name) {
    CoverResult r = assemble_cover_graph(cover_spec_from_json(read_json_file(fixture(name))));
    if (r.components.size() != 1) throw InternalError(name + ": cover is not connected");
    return r.components.front();
}

int cmd_fixtures(const Flags&) {
    struct Check {
        std::string what;
        bool ok;
    };
    auto iso = [](const DualGraph& a, const DualGraph& b) { return graph_isomorphic(a, b).has_value(); };
    auto report = [](const std::string& name, const std::vector<Check>& checks) {
        bool ok = true;
        std::string failed;
        for (auto& c : checks)
            if (!c.ok) {
                ok = false;
                failed += " " + c.what;
            }
        std::cout << (ok ? "MATCH " : "DIFF ") << name << (ok ? "" : ":" + failed) << "\n";
        return ok;
    };
    bool all = true;
    {
        DualGraph fg = minimal_model(resolve_file("example1_fg.json").graph).first;
        DualGraph dl = minimal_model(resolve_file("example1_delta.json").graph).first;
        all &= report("example1", {{"delta", iso(dl, expected("example1_delta_expected.json"))},
                                   {"morphism", iso(fg, expected("example1_min_expected.json"))}});
    }
    {
        CoverGraph cg = single_cover("example2_cover.json");
        DualGraph m = minimal_model(cg.graph).first;
        all &= report("example2", {{"base", iso(cg.base, expected("example2_base_expected.json"))},
                                   {"minimal", iso(m, expected("example2_min_expected.json"))},
                                   {"theorem2", check_theorem2(cg).ok()}});
    }
    {
        DualGraph dl = minimal_model(resolve_file("example3_phi2_delta.json").graph).first;
        CoverGraph c2 = single_cover("example3_phi2_cover.json"), c1 = single_cover("example3_phi1_cover.json");
        all &= report("example3", {{"delta2", iso(dl, expected("example3_phi2_delta_expected.json"))},
                                   {"phi2_hj", iso(c2.graph, expected("example3_phi2_hj_expected.json"))},
                                   {"phi2_minimal", iso(minimal_model(c2.graph).first, expected("example3_phi2_min_expected.json"))},
                                   {"phi1_hj", iso(c1.graph, expected("example3_phi1_hj_expected.json"))},
                                   {"phi1_minimal", iso(minimal_model(c1.graph).first, expected("example3_phi1_min_expected.json"))}});
    }
    return all ? kOk : kVerify;
}

int cmd_fuzz(const Flags& fl) {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(fl.seed);
    ResolveOptions opt;
    opt.truncation = fl.truncation;
    int violations = 0, resampled = 0;
    auto fail = [&](int i, const std::string& what) {
        ++violations;
        std::cout << "case " << i << ": " << what << "\n";
    };
    for (int i = 0; i < fl.cases; ++i) {
        RandomCase c = random_resolvable_system(rng, opt);
        resampled += c.resampled;
        const DualGraph& g = c.outcome.graph;
        Theorem1Report t1 = verify_theorem1(g);
        if (!t1.ok()) fail(i, t1.to_text());
        if (!zero_intersection_holds(g)) fail(i, "zero intersection");
        auto [m, steps] = minimal_model(g);
        if (!steps.empty()) fail(i, "resolution is not minimal");
        if (i < fl.covers) {
            CoverSpec spec = random_cover_spec(rng, c.system, 2 + i % 2);
            try {
                CoverResult r = assemble_cover_graph(spec);
                for (auto& cg : r.components) {
                    if (!verify_theorem1(cg.graph).ok()) fail(i, "cover: " + verify_theorem1(cg.graph).to_text());
                    if (!check_theorem2(cg).ok()) fail(i, "cover: theorem 2");
                }
            } catch (const Error& e) {
                fail(i, std::string("cover: ") + e.what());
            }
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "fuzz: " << fl.cases << " cases, " << std::min(fl.cases, fl.covers) << " covers, " << resampled
              << " resampled draws, " << violations << " violations, " << secs << " s\n";
    return violations ? kVerify : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hironaka quotients, maximal arcs and cover graphs of plane morphisms"};
    app.require_subcommand(1, 1);
    Flags fl;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", fl.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
        sub->add_option("--seed", fl.seed, "random seed");
    };
    auto* resolve = app.add_subcommand("resolve", "minimal good resolution of a branch system");
    resolve->add_option("input", fl.input)->required();
    resolve->add_flag("--with-axes", fl.with_axes, "add {x=0} and {y=0} as f and g (u and v)");
    resolve->add_option("--f-axis", fl.f_axis, "axis carrying f when axes are added")->check(CLI::IsMember({"x", "y"}));
    resolve->add_option("--non-minimal", fl.non_minimal, "extra random blow-ups");
    resolve->add_option("--truncation", fl.truncation, "series truncation");
    common(resolve);
    auto* cover = app.add_subcommand("cover", "cover graph of z^d = h(x,y)");
    cover->add_option("input", fl.input)->required();
    cover->add_option("--truncation", fl.truncation, "series truncation");
    cover->add_flag("!--no-minimal", fl.minimal, "skip the minimal model");
    common(cover);
    auto* arcs = app.add_subcommand("arcs", "maximal arcs of a graph file");
    arcs->add_option("input", fl.input)->required();
    common(arcs);
    auto* contract = app.add_subcommand("contract", "minimal model of a graph file");
    contract->add_option("input", fl.input)->required();
    common(contract);
    auto* fixtures = app.add_subcommand("fixtures", "run the stored examples");
    auto* fuzz = app.add_subcommand("fuzz", "random systems through every check");
    fuzz->add_option("--cases", fl.cases, "number of systems");
    fuzz->add_option("--covers", fl.covers, "how many of them to lift through covers");
    fuzz->add_option("--truncation", fl.truncation, "series truncation");
    common(fuzz);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInput;
    }
    try {
        if (*resolve) return cmd_resolve(fl);
        if (*cover) return cmd_cover(fl);
        if (*arcs) return cmd_arcs(fl);
        if (*contract) return cmd_contract(fl);
        if (*fixtures) return cmd_fixtures(fl);
        if (*fuzz) return cmd_fuzz(fl);
    } catch (const PrecisionExhausted& e) {
        std::cerr << "error: " << e.what() << "\nhint: the data is too tangent for truncation " << kMaxTruncation
                  << "; supply more terms\n";
        return kPrecision;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerify;
    }
    return kInput;
}
