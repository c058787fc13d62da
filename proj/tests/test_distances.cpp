#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <vector>

#include "sstress/distances.hpp"
#include "sstress/errors.hpp"
#include "sstress/shortest_paths.hpp"
#include "oracles.hpp"

using namespace sstress;

TEST_SUITE_BEGIN("distances");

TEST_CASE("single-source distances match Floyd-Warshall") {
    for (const Graph& g : oracle::fixture_graphs()) {
        NodeId n = g.node_count();
        auto fw = oracle::floyd_warshall(g);
        std::vector<double> row(n);
        for (NodeId s = 0; s < n; ++s) {
            sssp_row(g, s, row);
            for (NodeId v = 0; v < n; ++v)
                CHECK(row[v] == doctest::Approx(fw[static_cast<std::size_t>(s) * n + v]).epsilon(1e-12));
        }
    }
}

TEST_CASE("distance matrix equals per-row runs") {
    oracle::Rng rng(11);
    Graph g = oracle::random_connected(rng, 25, 15, true);
    DistanceMatrix dm(g);
    std::vector<double> row(g.node_count());
    for (NodeId s = 0; s < g.node_count(); ++s) {
        sssp_row(g, s, row);
        for (NodeId v = 0; v < g.node_count(); ++v) CHECK(dm(s, v) == row[v]);
    }
}

TEST_CASE("eccentricity_max equals the brute-force diameter") {
    for (const Graph& g : oracle::fixture_graphs()) {
        auto fw = oracle::floyd_warshall(g);
        double best = 0;
        for (double d : fw)
            if (d != oracle::kInf) best = std::max(best, d);
        CHECK(eccentricity_max(g) == doctest::Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("sssp_within returns exactly the radius ball") {
    Graph g = make_grid(4, 4);
    auto fw = oracle::floyd_warshall(g);
    NodeId n = g.node_count();
    for (double radius : {0.0, 1.0, 2.0, 3.5}) {
        auto ball = sssp_within(g, 5, radius);
        std::set<NodeId> got;
        for (auto [v, d] : ball) {
            CHECK(d == fw[static_cast<std::size_t>(5) * n + v]);
            got.insert(v);
        }
        CHECK(got.size() == ball.size());  // no duplicates
        for (NodeId v = 0; v < n; ++v)
            CHECK(got.count(v) == (fw[static_cast<std::size_t>(5) * n + v] <= radius ? 1 : 0));
    }
}

TEST_CASE("mssp lays out one row per pivot and validates input") {
    Graph g = make_path(6);
    PivotDistances pd = mssp(g, {0, 3, 5});
    REQUIRE(pd.k() == 3);
    CHECK(pd.d(0, 5) == 5.0);
    CHECK(pd.d(1, 0) == 3.0);
    CHECK(pd.d(2, 5) == 0.0);

    CHECK_THROWS_AS(mssp(g, {}), ConfigError);
    CHECK_THROWS_AS(mssp(g, {0, 0}), ConfigError);
    CHECK_THROWS_AS(mssp(g, {0, 6}), ConfigError);
    CHECK_THROWS_AS(mssp(g, {-1}), ConfigError);

    std::istringstream disconnected("0 1\n2 3\n");
    Graph d = parse_edge_list(disconnected);
    CHECK_THROWS_AS(mssp(d, {0}), ValidationError);
}

TEST_CASE("regions partition the nodes around their closest pivots") {
    // documented example: a 3-path with pivots at both ends of an edge
    Graph p3 = make_path(3);
    Regions r = build_regions(mssp(p3, {0, 2}));
    REQUIRE(r.members.size() == 2);
    CHECK(r.members[0] == std::vector<NodeId>{0, 1});
    CHECK(r.members[1] == std::vector<NodeId>{2});
    CHECK(r.owner[0] == 0);
    CHECK(r.owner[1] == 0);
    CHECK(r.owner[2] == 1);
}

TEST_CASE("region ties prefer the smaller current region then the lower pivot") {
    // path of 5 with pivots 0 and 4; node 2 is equidistant and both regions
    // hold two nodes when it is placed, so the lower pivot index wins.
    Graph p5 = make_path(5);
    Regions r = build_regions(mssp(p5, {0, 4}));
    CHECK(r.members[0] == std::vector<NodeId>{0, 1, 2});
    CHECK(r.members[1] == std::vector<NodeId>{3, 4});

    // star: every leaf is at distance 1 from both pivot leaves; regions
    // alternate to stay balanced, favoring the lower pivot index on ties.
    Graph star = make_star(5);  // hub 0, leaves 1..5
    Regions s = build_regions(mssp(star, {1, 2}));
    std::size_t total = s.members[0].size() + s.members[1].size();
    CHECK(total == 6);
    CHECK(static_cast<int>(s.members[0].size()) - static_cast<int>(s.members[1].size()) <= 1);
}

TEST_CASE("every region invariant holds on random graphs") {
    oracle::Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = oracle::random_connected(rng, 20, 12, trial % 2 == 1);
        std::vector<NodeId> pivots;
        std::set<NodeId> chosen;
        while (chosen.size() < 4)
            chosen.insert(static_cast<NodeId>(rng.uniform_index(20)));
        pivots.assign(chosen.begin(), chosen.end());
        PivotDistances pd = mssp(g, pivots);
        Regions r = build_regions(pd);

        std::size_t total = 0;
        for (std::size_t p = 0; p < pd.k(); ++p) {
            total += r.members[p].size();
            CHECK(std::is_sorted(r.members[p].begin(), r.members[p].end()));
            CHECK(std::is_sorted(r.sorted_member_dist[p].begin(), r.sorted_member_dist[p].end()));
            CHECK(r.members[p].size() == r.sorted_member_dist[p].size());
            // a pivot owns itself
            CHECK(r.owner[pivots[p]] == static_cast<NodeId>(p));
        }
        CHECK(total == static_cast<std::size_t>(g.node_count()));
        // ownership is among the closest pivots
        for (NodeId v = 0; v < g.node_count(); ++v) {
            double best = oracle::kInf;
            for (std::size_t p = 0; p < pd.k(); ++p) best = std::min(best, pd.d(p, v));
            CHECK(pd.d(static_cast<std::size_t>(r.owner[v]), v) == best);
        }
    }
}

TEST_CASE("closeness counts are boundary inclusive") {
    // path 0-1-2-3-4-5-6-7-8, pivot 0 owning {0..4}: from node 8,
    // d_ip = 8, half = 4, members of R(0) with d_jp <= 4 -> all five
    Graph p9 = make_path(9);
    PivotDistances pd = mssp(p9, {0, 8});
    Regions r = build_regions(pd);
    REQUIRE(r.members[0] == std::vector<NodeId>{0, 1, 2, 3, 4});
    CHECK(closeness_count(8, 0, pd, r) == 5);
    // from node 5: d_ip = 5, half = 2.5, members with d <= 2.5 -> {0,1,2}
    CHECK(closeness_count(5, 0, pd, r) == 3);
    // from node 1: d_ip = 1, half = 0.5 -> only the pivot itself
    CHECK(closeness_count(1, 0, pd, r) == 1);
    CHECK(closeness_count(1, 0, pd, r) >= 1);  // s >= 1 always
}

TEST_CASE("adapted weights equal s over d squared") {
    Graph p9 = make_path(9);
    PivotDistances pd = mssp(p9, {0, 8});
    Regions r = build_regions(pd);
    CHECK(adapted_weight(8, 0, pd, r) == 5.0 / 64.0);
    CHECK(adapted_weight(5, 0, pd, r) == 3.0 / 25.0);
    CHECK_THROWS_AS(adapted_weight(0, 0, pd, r), ValidationError);  // d = 0
}

TEST_CASE("closeness count never drops below one on random instances") {
    oracle::Rng rng(77);
    for (int trial = 0; trial < 5; ++trial) {
        Graph g = oracle::random_connected(rng, 22, 14, trial % 2 == 1);
        std::vector<NodeId> pivots{0, 7, 13};
        PivotDistances pd = mssp(g, pivots);
        Regions r = build_regions(pd);
        for (NodeId v = 0; v < g.node_count(); ++v)
            for (std::size_t p = 0; p < pd.k(); ++p) {
                if (pd.d(p, v) == 0) continue;
                std::size_t s = closeness_count(v, p, pd, r);
                CHECK(s >= 1);
                // brute-force recount
                std::size_t expect = 0;
                for (NodeId j : r.members[p])
                    if (pd.d(p, j) <= pd.d(p, v) / 2) ++expect;
                CHECK(s == expect);
            }
    }
}

TEST_SUITE_END();
