#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include <hironaka/random.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace hironaka;

namespace {

std::set<std::string> complement_quotients(const DualGraph& g) {
    std::set<std::string> out;
    for (auto& c : maximal_arcs(g).complement) out.insert(c.quotient ? c.quotient->to_text() : "mixed");
    return out;
}

}  // namespace

TEST(Lattice, AgreesWithBruteForceNormalization) {
    int checked = 0;
    for (std::int64_t d = 2; d <= 200; ++d)
        for (std::int64_t m1 = 1; d * m1 <= 200; ++m1)
            for (std::int64_t m2 = 1; d * m1 * m2 <= 200; ++m2) {
                ASSERT_EQ(oracles::lattice_mismatch(d, m1, m2), "") << d << " " << m1 << " " << m2;
                ++checked;
            }
    EXPECT_GT(checked, 500);
}

TEST(Lattice, SmallCases) {
    LatticeModel a = lattice_model(2, 1, 1);  // z^2 = xy: A1
    EXPECT_EQ(a.n, 2);
    EXPECT_EQ(a.chain, (HJString{2}));
    LatticeModel b = lattice_model(3, 1, 1);  // z^3 = xy: A2
    EXPECT_EQ(b.chain, (HJString{2, 2}));
    LatticeModel c = lattice_model(3, 1, 2);  // cone over twisted cubic
    EXPECT_EQ(c.chain, (HJString{3}));
    LatticeModel s = lattice_model(4, 2, 2);
    EXPECT_EQ(s.points, 2);
    EXPECT_EQ(s.chain, (HJString{2}));
    LatticeModel smooth = lattice_model(3, 3, 1);
    EXPECT_TRUE(smooth.chain.empty());
    EXPECT_THROW(lattice_model(1, 1, 1), InputError);
}

TEST(Components, GenusFromBranchPoints) {
    // z^2 = product of four lines: an elliptic curve above the first blow-up
    CoverSpec spec;
    spec.degree = 2;
    for (int c = 1; c <= 4; ++c)
        spec.h_branches.push_back({{Series::monomial(1, 1), Series::monomial(Rat(c), 1), "line"}, Role::Delta, 1});
    CoverResult r = assemble_cover_graph(spec);
    ASSERT_EQ(r.components.size(), 1u);
    const ComponentsAbove& e0 = r.above.at(0);
    EXPECT_EQ(e0.components, 1);
    EXPECT_EQ(e0.sheets, 2);
    EXPECT_EQ(e0.genus, (std::vector<int>{1}));
    const CoverGraph& cg = r.components.front();
    EXPECT_EQ(cg.graph.at(0).genus, 1);
    EXPECT_TRUE(check_theorem2(cg).ok());
    // a genus-one vertex is never contracted
    EXPECT_EQ(minimal_model(cg.graph).first.at(0).genus, 1);
}

TEST(Components, SheetCountsMultiplyToDegree) {
    for (const std::string& name : fixtures::cover_fixtures()) {
        CoverResult r = assemble_cover_graph(fixtures::cover_spec(name));
        for (auto& [v, c] : r.above) EXPECT_EQ(c.components * c.sheets * c.ramification, r.base.degree);
    }
}

TEST(Cover, AxisBranchRidesOnTheAxis) {
    CoverSpec spec = fixtures::cover_spec("example2_cover.json");
    spec.h_branches.push_back({y_axis(), Role::Delta, 2});
    CoverResult r = assemble_cover_graph(spec);
    for (auto& cg : r.components) {
        EXPECT_TRUE(check_theorem2(cg).ok());
        EXPECT_TRUE(verify_theorem1(cg.graph).ok());
    }
}

TEST(ExampleTwo, BaseGraph) {
    CoverGraph cg = fixtures::single_cover("example2_cover.json");
    EXPECT_TRUE(fixtures::iso(cg.base, fixtures::expected("example2_base_expected.json")));
    // the vertex carrying u: m_u = 2, m_v = 1
    for (auto& a : cg.base.arrows)
        if (a.kind == ArrowKind::Out) EXPECT_EQ(cg.base.at(a.vertex).q->to_text(), "2");
}

TEST(ExampleTwo, HirzebruchJungGraph) {
    CoverGraph cg = fixtures::single_cover("example2_cover.json");
    EXPECT_EQ(cg.graph.vertices.size(), 15u);
    EXPECT_TRUE(check_theorem2(cg).ok());
    EXPECT_TRUE(zero_intersection_holds(cg.graph));
    // the drawn graph has the middle edge of every two-vertex bamboo blown up
    DualGraph drawn = cg.graph;
    std::map<int, std::vector<std::pair<int, int>>> by_point;
    for (auto& [v, o] : cg.origin)
        if (o.bamboo) by_point[o.point].emplace_back(o.position, v);
    int blown = 0;
    for (auto& [pid, members] : by_point) {
        if (members.size() != 2) continue;
        std::sort(members.begin(), members.end());
        blow_up_edge_point(drawn, members[0].second, members[1].second);
        ++blown;
    }
    EXPECT_EQ(blown, 4);
    EXPECT_EQ(drawn.vertices.size(), 19u);
    EXPECT_TRUE(fixtures::iso(drawn, fixtures::expected("example2_hj_expected.json")));
    EXPECT_TRUE(fixtures::iso(minimal_model(drawn).first, fixtures::expected("example2_min_expected.json")));
}

TEST(ExampleTwo, MinimalGraph) {
    CoverGraph cg = fixtures::single_cover("example2_cover.json");
    auto [m, steps] = minimal_model(cg.graph);
    EXPECT_TRUE(fixtures::iso(m, fixtures::expected("example2_min_expected.json")));
    EXPECT_EQ(complement_quotients(m), (std::set<std::string>{"1", "3/2"}));
    for (auto& [v, x] : m.vertices) EXPECT_EQ(*x.self_int, m.arrow_count(v, ArrowKind::In) ? -3 : -2);
    EXPECT_TRUE(verify_theorem1(m).ok());
    EXPECT_TRUE(check_arc_transport(cg.graph, m, steps).ok());
}

TEST(ExampleThree, PhiTwo) {
    CoverGraph cg = fixtures::single_cover("example3_phi2_cover.json");
    EXPECT_TRUE(fixtures::iso(cg.graph, fixtures::expected("example3_phi2_hj_expected.json")));
    EXPECT_TRUE(check_theorem2(cg).ok());
    DualGraph m = minimal_model(cg.graph).first;
    EXPECT_TRUE(fixtures::iso(m, fixtures::expected("example3_phi2_min_expected.json")));
    EXPECT_EQ(complement_quotients(m), (std::set<std::string>{"1/3"}));
    EXPECT_TRUE(verify_theorem1(m).ok());
}

TEST(ExampleThree, PhiOne) {
    CoverGraph cg = fixtures::single_cover("example3_phi1_cover.json");
    EXPECT_GE(cg.graph.cycle_rank(), 1);
    for (auto& [v, o] : cg.origin)
        if (!o.bamboo) EXPECT_EQ(cg.graph.at(v).q->to_text(), "1");
    EXPECT_TRUE(fixtures::iso(cg.graph, fixtures::expected("example3_phi1_hj_expected.json")));
    DualGraph m = minimal_model(cg.graph).first;
    EXPECT_TRUE(fixtures::iso(m, fixtures::expected("example3_phi1_min_expected.json")));
    EXPECT_EQ(m.cycle_rank(), 1);
    EXPECT_TRUE(check_theorem2(cg).ok());
}

TEST(Theorem2, NoticesABrokenBamboo) {
    CoverGraph cg = fixtures::single_cover("example2_cover.json");
    for (auto& [v, o] : cg.origin)
        if (o.bamboo) {
            Vertex& x = cg.graph.at(v);
            *x.m_f += 1;
            x.q = Quotient::ratio(*x.m_f, *x.m_g);
            break;
        }
    EXPECT_FALSE(check_theorem2(cg).ok());
}

TEST(Cover, RandomLiftsSatisfyBothTheorems) {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 40; ++i) {
        RandomCase c = random_resolvable_system(rng, {});
        CoverSpec spec = random_cover_spec(rng, c.system, 2 + i % 2);
        CoverResult r = assemble_cover_graph(spec);
        for (auto& cg : r.components) {
            ASSERT_TRUE(check_theorem2(cg).ok()) << i;
            ASSERT_TRUE(verify_theorem1(cg.graph).ok()) << i;
            ASSERT_TRUE(zero_intersection_holds(cg.graph)) << i;
            auto [m, steps] = minimal_model(cg.graph);
            ASSERT_TRUE(verify_theorem1(m).ok()) << i;
            ASSERT_TRUE(zero_intersection_holds(m)) << i;
            ASSERT_TRUE(check_arc_transport(cg.graph, m, steps).ok()) << i;
        }
    }
}
