#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "rvm/clique.hpp"
#include "rvm/cliquecontract.hpp"
#include "rvm/graph.hpp"
#include "rvm/permutation.hpp"
#include "rvm/schedule.hpp"

using namespace rvm;

namespace {

// Clique on 0..kappa-1 with a path of q extra vertices hanging off vertex
// kappa-1: kappa-1 -- kappa -- kappa+1 -- ... -- kappa+q-1.
Graph clique_plus_path(int kappa, int q) {
    Graph g(kappa + q);
    for (int i = 0; i < kappa; ++i)
        for (int j = i + 1; j < kappa; ++j) g.add_edge(i, j);
    for (int t = 0; t < q; ++t)
        g.add_edge(t == 0 ? kappa - 1 : kappa + t - 1, kappa + t);
    return g;
}

void check_route(const Graph& g, const Permutation& pi, const std::vector<int>& clique,
                 CliqueContractionStats* stats = nullptr) {
    Schedule s = route_via_clique_contraction(g, pi, clique, stats);
    auto report = verify_schedule(g, pi, s);
    CAPTURE(report.reason);
    REQUIRE((report.valid || (s.steps.empty() && pi.is_identity())));
}

}  // namespace

TEST_CASE("clique contraction validates inputs and pins the minor shape") {
    Graph g = clique_plus_path(4, 3);

    CHECK_THROWS_AS(contract_clique(g, {0, 1, 4}), std::invalid_argument);  // not a clique
    CHECK_THROWS_AS(contract_clique(g, {0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(contract_clique(g, {0, 9}), std::invalid_argument);
    CHECK_THROWS_AS(contract_clique(g, {}), std::invalid_argument);
    Graph split(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(contract_clique(split, {0, 1}), std::invalid_argument);

    ContractedInstance inst = contract_clique(g, {3, 1, 0, 2});
    CHECK(inst.clique == std::vector<int>{0, 1, 2, 3});
    CHECK(inst.outside == std::vector<int>{4, 5, 6});
    CHECK(inst.super_vertex == 3);
    CHECK(inst.minor.n() == 4);
    // path 4-5-6 survives, and only 4 touches the contracted clique
    CHECK(inst.minor.edges() ==
          std::vector<std::pair<int, int>>{{0, 1}, {0, 3}, {1, 2}});
    CHECK(inst.tree.root == inst.super_vertex);
    CHECK(inst.tree.graph.m() == 3);
}

TEST_CASE("clique contraction pinned routes") {
    Graph g = clique_plus_path(4, 3);
    std::vector<int> clique{0, 1, 2, 3};

    CHECK(route_via_clique_contraction(g, Permutation::identity(7), clique).steps.empty());

    {
        // whole graph is one clique: two-step fallback
        Graph k5 = complete_graph(5);
        Permutation pi = Permutation::from_cycles(5, {{0, 1, 2, 3, 4}});
        Schedule s = route_via_clique_contraction(k5, pi, {0, 1, 2, 3, 4});
        CHECK(s.length() <= 2);
        CHECK(verify_schedule(k5, pi, s).valid);
    }

    {
        // swap of the pendant path's endpoints
        Permutation pi = Permutation::from_cycles(7, {{4, 6}});
        check_route(g, pi, clique);
    }

    {
        // permutation confined to the clique: no minor routing at all
        Permutation pi = Permutation::from_cycles(7, {{0, 1, 2}, {3}});
        CliqueContractionStats stats;
        check_route(g, pi, clique, &stats);
        CHECK(stats.exchange_steps == 0);
        CHECK(stats.planned_steps == 0);
        CHECK(stats.cleanup_steps <= 2);
    }
}

TEST_CASE("route length ignores clique growth when the outside is fixed") {
    std::vector<int> lengths;
    for (int kappa = 4; kappa <= 8; ++kappa) {
        Graph g = clique_plus_path(kappa, 3);
        std::vector<int> clique(kappa);
        std::iota(clique.begin(), clique.end(), 0);
        Permutation pi =
            Permutation::from_cycles(kappa + 3, {{kappa, kappa + 2}});
        Schedule s = route_via_clique_contraction(g, pi, clique);
        CHECK(verify_schedule(g, pi, s).valid);
        lengths.push_back(s.length());
    }
    for (size_t i = 1; i < lengths.size(); ++i) CHECK(lengths[i] == lengths[0]);
}

TEST_CASE("route length grows linearly in the outside size") {
    int kappa = 4;
    double worst_ratio = 0.0;
    for (int q = 2; q <= 24; q += 2) {
        Graph g = clique_plus_path(kappa, q);
        std::vector<int> clique{0, 1, 2, 3};
        // path reversal, the adversarial permutation for a path
        std::vector<int> image(kappa + q);
        std::iota(image.begin(), image.end(), 0);
        std::reverse(image.begin() + kappa, image.end());
        Permutation pi{image};
        Schedule s = route_via_clique_contraction(g, pi, clique);
        CHECK(verify_schedule(g, pi, s).valid);
        CHECK(s.length() >= q - 1);  // the far pebble must travel the path
        CHECK(s.length() <= 4 * q + 4);
        worst_ratio = std::max(worst_ratio, s.length() / static_cast<double>(q));
    }
    MESSAGE("clique contraction worst length/q on path reversals: ", worst_ratio);
}

TEST_CASE("clique contraction handles heavy clique-outside exchange") {
    std::mt19937 rng(66010);
    double worst = 0.0;
    for (int trial = 0; trial < 120; ++trial) {
        int kappa = 3 + static_cast<int>(rng() % 4);
        int q = 2 + static_cast<int>(rng() % 9);
        int n = kappa + q;
        Graph g = clique_plus_path(kappa, q);
        // a few chords on the path side keep the minor from being a bare path
        for (int extra = rng() % 3; extra > 0; --extra) {
            int u = kappa + static_cast<int>(rng() % q);
            int v = static_cast<int>(rng() % n);
            if (u != v && !g.has_edge(std::min(u, v), std::max(u, v)))
                g.add_edge(std::min(u, v), std::max(u, v));
        }
        std::vector<int> clique(kappa);
        std::iota(clique.begin(), clique.end(), 0);
        Permutation pi = Permutation::random(n, rng);
        CliqueContractionStats stats;
        CAPTURE(trial);
        check_route(g, pi, clique, &stats);
        // every planned super-vertex step expands to at most one extra step
        CHECK(stats.expanded_steps <= stats.planned_steps + stats.super_vertex_steps);
        CHECK(stats.cleanup_steps <= 2);
        Schedule s = route_via_clique_contraction(g, pi, clique);
        if (!pi.is_identity()) {
            worst = std::max(worst, s.length() / static_cast<double>(q));
            CHECK(s.length() <= 8 * q + 8);
        }
    }
    MESSAGE("clique contraction worst length/(n-kappa) on random exchanges: ", worst);
}

TEST_CASE("clique contraction auto mode uses the maximum clique") {
    std::mt19937 rng(31337);
    Graph g = clique_plus_path(5, 4);
    Permutation pi = Permutation::random(9, rng);
    Schedule by_hand = route_via_clique_contraction(g, pi, {0, 1, 2, 3, 4});
    Schedule automatic = route_via_clique_contraction(g, pi);
    CHECK(max_clique_exact(g) == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(automatic.length() == by_hand.length());
    CHECK(verify_schedule(g, pi, automatic).valid);
}
