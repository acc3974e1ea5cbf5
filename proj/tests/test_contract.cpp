#include <gtest/gtest.h>

#include <random>

#include <hironaka/random.hpp>

#include "fixtures.hpp"

using namespace hironaka;

namespace {

Vertex V(int self_int, std::int64_t mf, std::int64_t mg) {
    Vertex v;
    v.self_int = self_int;
    v.genus = 0;
    v.m_f = mf;
    v.m_g = mg;
    v.q = Quotient::ratio(mf, mg);
    return v;
}

// Graphs worth contracting: fixture resolutions and covers, each with extra blow-ups.
std::vector<DualGraph> sample_graphs() {
    std::vector<DualGraph> out;
    for (const std::string& name : fixtures::system_fixtures()) {
        SystemFile sf = fixtures::system(name);
        ResolveOptions o = fixtures::options(sf);
        out.push_back(resolve_embedded(sf.system, o).graph);
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            o.non_minimal = 4;
            o.seed = seed;
            out.push_back(resolve_embedded(sf.system, o).graph);
        }
    }
    for (const std::string& name : fixtures::cover_fixtures()) out.push_back(fixtures::single_cover(name).graph);
    return out;
}

}  // namespace

TEST(BlowDown, ChainVertex) {
    DualGraph g;
    g.add_vertex(V(-2, 1, 1));
    g.add_vertex(V(-1, 2, 2));
    g.add_vertex(V(-3, 1, 1));
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    auto [h, step] = blow_down_once(g, 1);
    EXPECT_EQ(h.vertices.size(), 2u);
    EXPECT_EQ(*h.at(0).self_int, -1);
    EXPECT_EQ(*h.at(2).self_int, -2);
    EXPECT_EQ(h.edge_multiplicity(0, 2), 1);
    ASSERT_TRUE(step.merged_edge);
    EXPECT_EQ(*step.merged_edge, std::make_pair(0, 2));
    EXPECT_EQ(step.neighbor_updates.size(), 2u);
}

TEST(BlowDown, ArrowsFollowTheOnlyNeighbour) {
    DualGraph g;
    g.add_vertex(V(-2, 1, 1));
    g.add_vertex(V(-1, 2, 1));
    g.add_edge(0, 1);
    g.arrows.push_back({1, ArrowKind::Out});
    auto [h, step] = blow_down_once(g, 1);
    ASSERT_EQ(h.arrows.size(), 1u);
    EXPECT_EQ(h.arrows[0].vertex, 0);
    EXPECT_EQ(step.moved_arrows, (std::vector<std::size_t>{0}));
}

TEST(BlowDown, Refusals) {
    DualGraph g;
    g.add_vertex(V(-2, 1, 1));
    g.add_vertex(V(-1, 2, 1));
    g.add_edge(0, 1);
    EXPECT_THROW(blow_down_once(g, 0), NotContractible);
    g.at(1).genus = 1;
    EXPECT_THROW(blow_down_once(g, 1), NotContractible);
    g.at(1).genus = 0;
    g.arrows.push_back({1, ArrowKind::In});
    g.arrows.push_back({1, ArrowKind::Out});
    EXPECT_THROW(blow_down_once(g, 1), NotContractible);

    DualGraph lone;
    lone.add_vertex(V(-1, 1, 1));
    EXPECT_THROW(blow_down_once(lone, 0), NotContractible);

    DualGraph loop;
    loop.add_vertex(V(-4, 1, 1));
    loop.add_vertex(V(-1, 2, 2));
    loop.add_edge(0, 1);
    loop.add_edge(0, 1);
    EXPECT_THROW(blow_down_once(loop, 1), NotContractible);
    EXPECT_FALSE(contractible(loop, 1));
}

TEST(BlowUp, InverseOfBlowDown) {
    DualGraph g = fixtures::resolve("example1_fg.json").graph;
    DualGraph a = g;
    blow_up_vertex_point(a, 2);
    auto [e0, e1] = g.edges.front();
    blow_up_edge_point(a, e0, e1);
    blow_up_arrow_point(a, 0);
    EXPECT_EQ(a.vertices.size(), g.vertices.size() + 3);
    EXPECT_TRUE(zero_intersection_holds(a));
    EXPECT_TRUE(verify_theorem1(a).ok());
    EXPECT_TRUE(fixtures::iso(minimal_model(a).first, g));
    EXPECT_THROW(blow_up_edge_point(a, e0, e1), InputError);
}

TEST(MinimalModel, ConfluentAcrossOrders) {
    for (const DualGraph& g : sample_graphs()) {
        DualGraph first = minimal_model(g).first;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            std::mt19937_64 rng(seed);
            DualGraph other = minimal_model(g, &rng).first;
            EXPECT_TRUE(fixtures::iso(first, other)) << "seed " << seed;
        }
        EXPECT_TRUE(zero_intersection_holds(first));
        for (auto& [id, _] : first.vertices) EXPECT_FALSE(contractible(first, id));
    }
}

TEST(MinimalModel, ApplyStepsReplays) {
    DualGraph g = sample_graphs()[1];
    auto [m, steps] = minimal_model(g);
    EXPECT_FALSE(steps.empty());
    EXPECT_TRUE(fixtures::iso(apply_steps(g, steps), m));
}

TEST(Transport, ArcsMapOntoArcs) {
    std::map<std::string, int> shapes;
    auto run = [&](const DualGraph& g, std::mt19937_64* rng) {
        auto [m, steps] = minimal_model(g, rng);
        TransportReport r = check_arc_transport(g, m, steps);
        EXPECT_TRUE(r.ok()) << (r.violations.empty() ? "" : r.violations.front());
        shapes["off"] += r.off_arc;
        shapes["interior"] += r.interior;
        shapes["in"] += r.in_shift;
        shapes["out"] += r.out_shift;
    };
    for (const DualGraph& g : sample_graphs()) run(g, nullptr);
    std::mt19937_64 rng(17);
    for (int i = 0; i < 60; ++i) {
        RandomCase c = random_resolvable_system(rng, {});
        ResolveOptions o;
        o.non_minimal = 5;
        o.seed = std::uint64_t(i);
        run(resolve_embedded(c.system, o).graph, &rng);
    }
    EXPECT_GT(shapes["off"], 0);
    EXPECT_GT(shapes["interior"], 0);
    EXPECT_GT(shapes["in"], 0);
    EXPECT_GT(shapes["out"], 0);
}

TEST(Transport, NoticesAWrongTarget) {
    DualGraph g = sample_graphs()[1];
    auto [m, steps] = minimal_model(g);
    DualGraph wrong = m;
    wrong.arrows.pop_back();
    EXPECT_FALSE(check_arc_transport(g, wrong, steps).ok());
}
