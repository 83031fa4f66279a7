#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "rvm/graph.hpp"
#include "rvm/maxroute.hpp"
#include "rvm/oracle.hpp"
#include "rvm/permutation.hpp"
#include "rvm/schedule.hpp"
#include "test_util.hpp"

using namespace rvm;

namespace {

std::set<std::vector<int>> walk_set(const std::vector<Walk>& walks) {
    std::set<std::vector<int>> s;
    for (const auto& w : walks) s.insert(w.vertices);
    return s;
}

// Reference enumeration with no pruning: every sequence over stay-or-move.
std::set<std::vector<int>> brute_walks(const Graph& g, int from, int to, int k) {
    std::set<std::vector<int>> out;
    std::vector<int> path{from};
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(path.size()) == k + 1) {
            if (path.back() == to) out.insert(path);
            return;
        }
        int cur = path.back();
        for (int next = 0; next < g.n(); ++next) {
            if (next != cur && !g.has_edge(std::min(cur, next), std::max(cur, next)))
                continue;
            path.push_back(next);
            self(self);
            path.pop_back();
        }
    };
    rec(rec);
    return out;
}

int agreements_after(const Graph& g, const Permutation& pi, const Schedule& s) {
    PebbleConfig cfg = PebbleConfig::initial(g.n());
    for (const auto& step : s.steps) cfg = apply_matching(g, cfg, step);
    return cfg.agreements(pi);
}

Walk make_walk(std::vector<int> vs) { return Walk{vs[0], std::move(vs)}; }

}  // namespace

TEST_CASE("walk enumeration is exhaustive and ordered") {
    {
        auto walks = enumerate_walks(complete_graph(2), 0, 0, 1);
        REQUIRE(walks.size() == 1);
        CHECK(walks[0].vertices == std::vector<int>{0, 0});
    }
    {
        auto walks = enumerate_walks(path_graph(3), 0, 2, 2);
        REQUIRE(walks.size() == 1);
        CHECK(walks[0].vertices == std::vector<int>{0, 1, 2});
    }
    CHECK(enumerate_walks(path_graph(3), 0, 2, 1).empty());
    CHECK(enumerate_walks(path_graph(3), 0, 0, 0).size() == 1);
    CHECK(enumerate_walks(path_graph(3), 0, 2, 0).empty());

    std::mt19937 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng() % 3);
        int m = std::min(n - 1 + static_cast<int>(rng() % n), n * (n - 1) / 2);
        Graph g = random_connected_graph(n, m, rng);
        int from = static_cast<int>(rng() % n), to = static_cast<int>(rng() % n);
        int k = static_cast<int>(rng() % 4);
        auto walks = enumerate_walks(g, from, to, k);
        CHECK(walk_set(walks) == brute_walks(g, from, to, k));
        CHECK(static_cast<double>(walks.size()) <=
              std::pow(g.max_degree() + 1, k));
        for (const auto& w : walks) {
            CHECK(w.owner == from);
            CHECK(w.k() == k);
        }
    }
}

TEST_CASE("walk compatibility enforces both joint-routing constraints") {
    CHECK(walks_compatible(make_walk({0, 1}), make_walk({1, 0})));
    CHECK(!walks_compatible(make_walk({0, 1}), make_walk({2, 1})));  // collision
    CHECK(!walks_compatible(make_walk({0, 1}), make_walk({1, 1})));  // one-sided
    CHECK(walks_compatible(make_walk({0, 0}), make_walk({1, 1})));
    CHECK_THROWS_AS(walks_compatible(make_walk({0, 1}), make_walk({1, 1, 1})),
                    std::invalid_argument);

    std::mt19937 rng(515);
    Graph g = random_connected_graph(5, 7, rng);
    for (int trial = 0; trial < 200; ++trial) {
        int k = 1 + static_cast<int>(rng() % 3);
        auto wa = enumerate_walks(g, static_cast<int>(rng() % 5),
                                  static_cast<int>(rng() % 5), k);
        auto wb = enumerate_walks(g, static_cast<int>(rng() % 5),
                                  static_cast<int>(rng() % 5), k);
        if (wa.empty() || wb.empty()) continue;
        const Walk& a = wa[rng() % wa.size()];
        const Walk& b = wb[rng() % wb.size()];
        CHECK(walks_compatible(a, b) == walks_compatible(b, a));
    }
}

TEST_CASE("clique graph is n-partite with the advertised blocks") {
    {
        CliqueGraph cg = build_clique_graph(complete_graph(2),
                                            Permutation::from_cycles(2, {{0, 1}}), 1);
        REQUIRE(cg.size() == 2);
        CHECK(cg.blocks == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
        CHECK(cg.adjacent[0][1]);
    }
    {
        // endpoint swap on the 3-path: the two forced endpoint walks collide
        CliqueGraph cg = build_clique_graph(path_graph(3),
                                            Permutation::from_cycles(3, {{0, 2}}), 2);
        REQUIRE(cg.blocks[0].second - cg.blocks[0].first == 1);
        REQUIRE(cg.blocks[2].second - cg.blocks[2].first == 1);
        CHECK(!cg.adjacent[cg.blocks[0].first][cg.blocks[2].first]);
    }

    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 3 + static_cast<int>(rng() % 3);
        Graph g = random_connected_graph(n, n, rng);
        Permutation pi = Permutation::random(n, rng);
        int k = 1 + static_cast<int>(rng() % 3);
        CliqueGraph cg = build_clique_graph(g, pi, k);
        for (int b = 0; b < n; ++b) {
            auto [first, last] = cg.blocks[b];
            CHECK(static_cast<double>(last - first) <=
                  std::pow(g.max_degree() + 1, k));
            for (int u = first; u < last; ++u) {
                CHECK(cg.walks[u].owner == b);
                for (int v = first; v < last; ++v) CHECK(!cg.adjacent[u][v]);
            }
        }
        for (int u = 0; u < cg.size(); ++u)
            for (int v = 0; v < cg.size(); ++v)
                CHECK(cg.adjacent[u][v] == cg.adjacent[v][u]);
    }

    SearchBudget tiny;
    tiny.max_states = 1;
    CHECK_THROWS_AS(build_clique_graph(path_graph(3), Permutation::identity(3), 2, tiny),
                    std::runtime_error);
}

TEST_CASE("greedy clique is a deterministic maximal clique") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 3 + static_cast<int>(rng() % 3);
        Graph g = random_connected_graph(n, n, rng);
        Permutation pi = Permutation::random(n, rng);
        int k = 1 + static_cast<int>(rng() % 2);
        CliqueGraph cg = build_clique_graph(g, pi, k);
        std::vector<int> clique = max_clique_greedy(cg, 5);
        CHECK(clique == max_clique_greedy(cg, 5));
        std::set<int> owners;
        for (int u : clique) owners.insert(cg.walks[u].owner);
        CHECK(owners.size() == clique.size());
        for (int u : clique)
            for (int v : clique)
                if (u != v) CHECK(cg.adjacent[u][v]);
        for (int w = 0; w < cg.size(); ++w) {  // maximal: nothing else fits
            bool fits = !std::count(clique.begin(), clique.end(), w);
            for (int u : clique) fits = fits && cg.adjacent[w][u];
            CHECK(!fits);
        }
        int fixed = 0;
        for (int i = 0; i < n; ++i) fixed += pi(i) == i;
        CHECK(static_cast<int>(clique.size()) >= fixed);
    }

    CliqueGraph id = build_clique_graph(cycle_graph(4), Permutation::identity(4), 2);
    CHECK(max_clique_greedy(id, 1).size() == 4);
}

TEST_CASE("maximum routability pinned examples") {
    {
        auto r = max_routability(complete_graph(3),
                                 Permutation::from_cycles(3, {{0, 1, 2}}), 1,
                                 MaxRouteMode::kExact);
        CHECK(r.m == 1);
    }
    {
        auto r = max_routability(cycle_graph(5), Permutation::identity(5), 2,
                                 MaxRouteMode::kExact);
        CHECK(r.m == 5);
        CHECK(r.schedule.steps.empty());
    }
    SearchBudget tiny;
    tiny.max_states = 1;
    CHECK_THROWS_AS(max_routability(path_graph(3), Permutation::identity(3), 2,
                                    MaxRouteMode::kExact, tiny),
                    std::runtime_error);
}

TEST_CASE("maximum routability agrees with the exhaustive oracle") {
    auto check_instance = [&](const Graph& g, const Permutation& pi, int k) {
        auto exact = max_routability(g, pi, k, MaxRouteMode::kExact);
        auto oracle = max_agreements_exact(g, pi, k);
        REQUIRE(!oracle.exhausted);
        CAPTURE(g.edges());
        CAPTURE(pi.image());
        CAPTURE(k);
        CHECK(exact.m == oracle.value);
        CHECK(exact.schedule.length() <= k);
        CHECK(agreements_after(g, pi, exact.schedule) >= exact.m);

        auto greedy = max_routability(g, pi, k, MaxRouteMode::kGreedy);
        CHECK(greedy.m <= exact.m);
        int fixed = 0;
        for (int i = 0; i < g.n(); ++i) fixed += pi(i) == i;
        CHECK(greedy.m >= fixed);
        CHECK(agreements_after(g, pi, greedy.schedule) >= greedy.m);
    };

    rvm_test::for_each_connected_graph(4, [&](const Graph& g) {
        rvm_test::for_each_permutation(4, [&](const Permutation& pi) {
            check_instance(g, pi, 1 + (std::hash<unsigned>{}(g.m() * 24 +
                                                             pi(0) * 6 + pi(1)) %
                                       3));
        });
    });

    std::mt19937 rng(424242);
    for (int trial = 0; trial < 60; ++trial) {
        Graph g = random_connected_graph(5, 5 + static_cast<int>(rng() % 4), rng);
        Permutation pi = Permutation::random(5, rng);
        check_instance(g, pi, 1 + static_cast<int>(rng() % 3));
    }
}

TEST_CASE("routability reaches n exactly at the routing time") {
    std::mt19937 rng(31007);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 3 + static_cast<int>(rng() % 3);
        int m = std::min(n - 1 + static_cast<int>(rng() % 3), n * (n - 1) / 2);
        Graph g = random_connected_graph(n, m, rng);
        Permutation pi = Permutation::random(n, rng);
        auto rt = routing_time_exact(g, pi);
        REQUIRE(!rt.exhausted);
        if (rt.value == 0 || rt.value > 4) continue;
        CAPTURE(g.edges());
        CAPTURE(pi.image());
        auto at_rt = max_routability(g, pi, rt.value, MaxRouteMode::kExact);
        CHECK(at_rt.m == n);
        auto below = max_routability(g, pi, rt.value - 1, MaxRouteMode::kExact);
        CHECK(below.m < n);

        int prev = -1;  // exact mode is monotone in the step budget
        for (int k = 0; k <= rt.value; ++k) {
            auto r = max_routability(g, pi, k, MaxRouteMode::kExact);
            CHECK(r.m >= prev);
            prev = r.m;
        }
    }
}
