// Acceptance gate: twelve independent checks over the whole library, one
// printed pass/fail line each, every tolerance pinned inline. Exit code is
// the number of failing lines.
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rvm/ccpp.hpp"
#include "rvm/cliquecontract.hpp"
#include "rvm/connectivity.hpp"
#include "rvm/graph.hpp"
#include "rvm/hconnroute.hpp"
#include "rvm/maxroute.hpp"
#include "rvm/oracle.hpp"
#include "rvm/permutation.hpp"
#include "rvm/sat_reduction.hpp"
#include "rvm/schedule.hpp"
#include "rvm/treeroute.hpp"
#include "rvm/twostep.hpp"

using namespace rvm;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

struct Line {
    bool ok = false;
    std::string detail;
};

Permutation random_perm(int n, std::mt19937& rng) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    std::shuffle(img.begin(), img.end(), rng);
    return Permutation(img);
}

Permutation transposition(int n, int u, int v) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    std::swap(img[u], img[v]);
    return Permutation(img);
}

Permutation reversal(int n) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = n - 1 - i;
    return Permutation(img);
}

void for_each_connected_graph(int n, const std::function<void(const Graph&)>& fn) {
    std::vector<std::pair<int, int>> slots;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) slots.emplace_back(u, v);
    for (unsigned mask = 0; mask < (1u << slots.size()); ++mask) {
        Graph g(n);
        for (size_t b = 0; b < slots.size(); ++b)
            if (mask & (1u << b)) g.add_edge(slots[b].first, slots[b].second);
        if (g.is_connected()) fn(g);
    }
}

// Depth-capped oracle verdict. The breadth-first queue dequeues a depth-d
// state only after expanding every shallower state, so an exhausted run with
// value == d has enumerated every configuration within d steps: rt > d.
bool routable_within(const Graph& g, const Permutation& pi, int d) {
    SearchBudget bud;
    bud.max_depth = d;
    bud.time_limit_seconds = 300;
    auto r = routing_time_exact(g, pi, bud);
    return !(r.exhausted && r.value == d);
}

CnfFormula make_formula(int num_vars, std::vector<std::array<int, 3>> clauses) {
    CnfFormula f;
    f.num_vars = num_vars;
    f.clauses = std::move(clauses);
    return f;
}

// ---------------------------------------------------------------------------
// 1. The exact oracle finds the routing number of the 3-cube.

Line criterion_oracle_cube() {
    auto r = routing_number_exact(hypercube_graph(3));
    bool ok = !r.exhausted && r.value == 4 && r.elapsed_seconds < 300.0;
    std::ostringstream d;
    d.precision(2);
    d << std::fixed << "routing number of the 3-cube = " << r.value << " in "
      << r.elapsed_seconds << "s (budget 300s)";
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// 2. Cliques route in two steps; every other connected graph has a
//    permutation needing three. The witness is a transposition of a
//    distance-2 pair, shown unroutable in two by the complete decider.

Line criterion_clique_dichotomy() {
    bool ok = true;
    for (int n : {3, 4, 5}) {
        auto r = routing_number_exact(complete_graph(n));
        if (r.exhausted || r.value != 2) ok = false;
    }
    long graphs = 0, witnesses = 0;
    for (int n = 3; n <= 6; ++n) {
        for_each_connected_graph(n, [&](const Graph& g) {
            if (g.m() == n * (n - 1) / 2) return;
            ++graphs;
            int u = -1, w = -1;
            for (int a = 0; a < n && u < 0; ++a) {
                auto dist = g.distances_from(a);
                for (int b = 0; b < n; ++b)
                    if (dist[b] == 2) {
                        u = a;
                        w = b;
                        break;
                    }
            }
            if (u >= 0 && !route_in_two(g, transposition(n, u, w)).has_value())
                ++witnesses;
        });
    }
    ok = ok && witnesses == graphs;
    std::ostringstream d;
    d << "rt(K_n) = 2 for n = 3,4,5; " << witnesses << "/" << graphs
      << " connected non-complete graphs with n <= 6 have a permutation "
         "needing 3 steps";
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// 3. Star routing numbers match floor(3(n-1)/2).

Line criterion_star_law() {
    bool ok = true;
    std::ostringstream d;
    d << "star values";
    for (int n : {4, 5}) {
        int expected = 3 * (n - 1) / 2;
        auto r = routing_number_exact(star_graph(n));
        ok = ok && !r.exhausted && r.value == expected;
        d << " rt(K_{1," << n - 1 << "}) = " << r.value << " (want " << expected
          << ")";
    }
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// 4. The three atomic gadget pairs each take exactly three steps.

Line criterion_gadget_values() {
    struct Probe {
        const char* name;
        Graph g;
        Permutation pi;
    };
    std::vector<Probe> probes;
    probes.push_back({"P3 ends", path_graph(3), transposition(3, 0, 2)});
    probes.push_back({"P4 ends", path_graph(4), transposition(4, 0, 3)});
    probes.push_back({"hexagon antipodes", cycle_graph(6), transposition(6, 0, 3)});
    bool ok = true;
    std::ostringstream d;
    for (const auto& p : probes) {
        auto r = routing_time_exact(p.g, p.pi);
        ok = ok && !r.exhausted && r.value == 3 &&
             verify_schedule(p.g, p.pi, r.witness).valid;
        d << p.name << " = " << r.value << "  ";
    }
    d << "(each must equal 3 exactly)";
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// 5. The two-step decider agrees with the depth-capped oracle everywhere:
//    exhaustively for n <= 5, on random instances at n in {6, 7}.

Line criterion_two_step_decider() {
    long cases = 0, disagreements = 0, bad_schedules = 0;
    double worst_ms = 0.0;

    auto check_one = [&](const Graph& g, const Permutation& pi) {
        auto t0 = clock_type::now();
        auto two = route_in_two(g, pi);
        double ms = seconds_since(t0) * 1e3;
        worst_ms = std::max(worst_ms, ms);
        if (two.has_value()) {
            auto rep = verify_schedule(g, pi, *two);
            if (!rep.valid || two->length() > 2) ++bad_schedules;
        }
        if (two.has_value() != routable_within(g, pi, 2)) ++disagreements;
        ++cases;
    };

    for (int n = 2; n <= 5; ++n) {
        for_each_connected_graph(n, [&](const Graph& g) {
            std::vector<int> img(n);
            std::iota(img.begin(), img.end(), 0);
            do {
                check_one(g, Permutation(img));
            } while (std::next_permutation(img.begin(), img.end()));
        });
    }
    long exhaustive_cases = cases;

    std::mt19937 rng(170105);
    for (int n : {6, 7}) {
        for (int trial = 0; trial < 120; ++trial) {
            int lo = n - 1, hi = n * (n - 1) / 2;
            int m = lo + static_cast<int>(rng() % (hi - lo + 1));
            Graph g = random_connected_graph(n, m, rng);
            check_one(g, random_perm(n, rng));
        }
    }

    bool ok = disagreements == 0 && bad_schedules == 0 && worst_ms < 10.0;
    std::ostringstream d;
    d.precision(2);
    d << std::fixed << exhaustive_cases << " exhaustive + "
      << cases - exhaustive_cases << " random cases, " << disagreements
      << " disagreements, worst decider call " << worst_ms << "ms (budget 10ms)";
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// 6. Exact bounded-step routability equals the agreement-maximization
//    oracle, hits n exactly when rt <= k, and its schedules check out.

Line criterion_maxroute_equivalence() {
    std::mt19937 rng(52899);
    long cases = 0, value_mismatches = 0, iff_violations = 0, bad_schedules = 0;
    for (int n = 2; n <= 5; ++n) {
        for_each_connected_graph(n, [&](const Graph& g) {
            for (int trial = 0; trial < 100; ++trial) {
                Permutation pi = random_perm(n, rng);
                auto rt = routing_time_exact(g, pi);
                for (int k = 1; k <= 3; ++k) {
                    auto mr = max_routability(g, pi, k, MaxRouteMode::kExact);
                    auto ma = max_agreements_exact(g, pi, k);
                    ++cases;
                    if (mr.m != ma.value) ++value_mismatches;
                    if ((mr.m == n) != (rt.value <= k)) ++iff_violations;
                    if (mr.schedule.length() > k ||
                        apply_schedule(g, mr.schedule).agreements(pi) < mr.m)
                        ++bad_schedules;
                }
            }
        });
    }
    bool ok = value_mismatches == 0 && iff_violations == 0 && bad_schedules == 0;
    std::ostringstream d;
    d << cases << " (graph, permutation, k) cases: " << value_mismatches
      << " value mismatches, " << iff_violations << " full-routability "
      << "violations, " << bad_schedules << " bad schedules";
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// 7. Port arrays: each row permutes its input list, each column permutes
//    the port indices.

Line criterion_port_arrays() {
    std::mt19937 rng(61347);
    long trials = 500, failures = 0;
    for (long trial = 0; trial < trials; ++trial) {
        int a = 1 + static_cast<int>(rng() % 8);
        int b = 1 + static_cast<int>(rng() % 8);
        PortLists lists;
        lists.lists.assign(a, {});
        std::vector<int> column(a);
        std::iota(column.begin(), column.end(), 0);
        for (int j = 0; j < b; ++j) {
            std::shuffle(column.begin(), column.end(), rng);
            for (int i = 0; i < a; ++i) lists.lists[i].push_back(column[i]);
        }
        for (auto& row : lists.lists) std::shuffle(row.begin(), row.end(), rng);

        PortArray arr = build_port_array(lists);
        bool good = arr.a() == a && arr.b() == b;
        for (int i = 0; good && i < a; ++i) {
            std::vector<int> want = lists.lists[i], got = arr.rows[i];
            std::sort(want.begin(), want.end());
            std::sort(got.begin(), got.end());
            good = want == got;
        }
        for (int j = 0; good && j < b; ++j) {
            std::vector<int> col;
            for (int i = 0; i < a; ++i) col.push_back(arr.rows[i][j]);
            std::sort(col.begin(), col.end());
            for (int i = 0; i < a; ++i) good = good && col[i] == i;
        }
        if (!good) ++failures;
    }
    std::ostringstream d;
    d << trials << " random port lists (a, b <= 8), " << failures << " failures";
    return {failures == 0, d.str()};
}

// ---------------------------------------------------------------------------
// 8. Tree routing: full permutations within 3n steps, subset tasks within
//    p + 2l, pipeline fills within 3k + 3 events with the level invariant
//    checked every round.

Line criterion_tree_routing() {
    std::mt19937 rng(88211);
    long trials = 1000;
    long full_bad = 0, subset_bad = 0, pipeline_bad = 0;
    for (long trial = 0; trial < trials; ++trial) {
        int n = 2 + static_cast<int>(rng() % 99);
        Graph g = random_tree(n, rng);
        RootedTree t = RootedTree::build(g, static_cast<int>(rng() % n));

        Permutation pi = random_perm(n, rng);
        Schedule full = route_tree(t, pi);
        if (!verify_schedule(g, pi, full).valid || full.length() > 3 * n)
            ++full_bad;

        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        int p = 1 + static_cast<int>(rng() % n);
        SubsetTask task;
        for (int i = 0; i < p; ++i) task.pebbles.emplace_back(order[i], -1);
        std::shuffle(order.begin(), order.end(), rng);
        for (int i = 0; i < p; ++i) task.pebbles[i].second = order[i];
        Schedule sub = route_subset_tree(t, task);
        int l = subset_task_span(t, task);
        PebbleConfig cfg = apply_schedule(g, sub);
        bool sub_ok = sub.length() <= p + 2 * l;
        for (auto [src, dst] : task.pebbles) sub_ok = sub_ok && cfg.at[dst] == src;
        if (!sub_ok) ++subset_bad;

        std::vector<PipelineIncoming> incoming;
        for (int v : reverse_level_order(t)) incoming.push_back({n + v, v});
        PipelineSchedule fill = pipeline_fill(t, incoming);
        std::string why;
        if (!verify_pipeline_fill(t, incoming, fill, &why) ||
            fill.size() > 3 * n + 3)
            ++pipeline_bad;
    }
    bool ok = full_bad == 0 && subset_bad == 0 && pipeline_bad == 0;
    std::ostringstream d;
    d << trials << " random trees (n <= 100): " << full_bad
      << " full-route violations, " << subset_bad << " subset violations, "
      << pipeline_bad << " pipeline violations";
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// 9. Composite routing through a port subgraph scales as
//    alpha * (n/h) * (rt_ports + 2) + beta * (n/h). Two families feed one
//    least-squares fit; the fitted alpha must stay under 2 and the per-size
//    additive term must stay stable.

struct FitPoint {
    double x1, x2, y;  // x1 = (n/h)(rt+2), x2 = n/h, y = schedule length
    int family, h, n;
};

Line criterion_hconn_scaling() {
    std::mt19937 rng(40923);
    std::vector<FitPoint> points;
    long invalid = 0;

    auto record = [&](int family, int h, const Graph& g,
                      const ConnectedPartition& part, int rt_ports) {
        Permutation pi = random_perm(g.n(), rng);
        Graph ports_graph = g.induced(part.ports);
        Schedule s = route_hconnected(g, pi, part, ports_graph, {});
        if (!verify_schedule(g, pi, s).valid) ++invalid;
        double x2 = static_cast<double>(g.n()) / h;
        points.push_back(
            {x2 * (rt_ports + 2), x2, static_cast<double>(s.length()),
             family, h, g.n()});
    };

    // family 0: clique of ports, one random tree hanging off each port
    for (int h : {2, 3, 4}) {
        int rt_ports = routing_number_exact(complete_graph(h)).value;
        for (int n : {24, 36, 48, 60}) {
            for (int trial = 0; trial < 4; ++trial) {
                int per = n / h;
                Graph g(n);
                ConnectedPartition part;
                part.ports.resize(h);
                part.blocks.assign(h, {});
                for (int i = 0; i < h; ++i)
                    for (int j = i + 1; j < h; ++j) g.add_edge(i, j);
                int next = h;
                for (int i = 0; i < h; ++i) {
                    part.ports[i] = i;
                    part.blocks[i].push_back(i);
                    for (int k = 1; k < per; ++k) {
                        int v = next++;
                        g.add_edge(part.blocks[i][rng() % part.blocks[i].size()], v);
                        part.blocks[i].push_back(v);
                    }
                }
                record(0, h, g, part, rt_ports);
            }
        }
    }

    // family 1: random graphs kept when h-connected, partition supplied by
    // the block search around the best port subgraph
    for (int h : {2, 3, 4}) {
        for (int n : {12, 18, 24}) {
            for (int trial = 0; trial < 2; ++trial) {
                Graph g(1);
                for (int attempt = 0; attempt < 300; ++attempt) {
                    g = random_connected_graph(n, 3 * n, rng);
                    if (vertex_connectivity(g) >= h) break;
                }
                if (vertex_connectivity(g) < h) {
                    ++invalid;
                    continue;
                }
                auto ports = best_port_subgraph(g, h);
                std::vector<int> sizes(h, n / h);
                for (int i = 0; i < n % h; ++i) ++sizes[i];
                auto found = find_partition(g, sizes, ports.vertices);
                if (found.exhausted) {
                    ++invalid;
                    continue;
                }
                record(1, h, g, found.partition, ports.routing_time);
            }
        }
    }

    // least squares for y ~ alpha * x1 + beta * x2 (2x2 normal equations)
    double s11 = 0, s12 = 0, s22 = 0, s1y = 0, s2y = 0;
    for (const auto& p : points) {
        s11 += p.x1 * p.x1;
        s12 += p.x1 * p.x2;
        s22 += p.x2 * p.x2;
        s1y += p.x1 * p.y;
        s2y += p.x2 * p.y;
    }
    double det = s11 * s22 - s12 * s12;
    double alpha = (s1y * s22 - s2y * s12) / det;
    double beta = (s11 * s2y - s12 * s1y) / det;

    // smallest beta that, with the fitted alpha, covers every measurement
    double beta_cover = -1e9;
    for (const auto& p : points)
        beta_cover = std::max(beta_cover, (p.y - alpha * p.x1) / p.x2);

    // stability: per (family, h, n) cell, the implied additive term must sit
    // within 20% of the cell's per-unit cost of the global fit
    std::map<std::tuple<int, int, int>, std::vector<const FitPoint*>> cells;
    for (const auto& p : points) cells[{p.family, p.h, p.n}].push_back(&p);
    double worst_rel_dev = 0.0;
    for (const auto& [key, cell] : cells) {
        double beta_cell = 0, cost_cell = 0;
        for (const FitPoint* p : cell) {
            beta_cell += (p->y - alpha * p->x1) / p->x2;
            cost_cell += p->y / p->x2;
        }
        beta_cell /= static_cast<double>(cell.size());
        cost_cell /= static_cast<double>(cell.size());
        worst_rel_dev = std::max(worst_rel_dev,
                                 std::abs(beta_cell - beta) / cost_cell);
    }

    bool ok = invalid == 0 && alpha <= 2.0 && beta_cover <= beta + 2.0 &&
              worst_rel_dev <= 0.20;
    std::ostringstream d;
    d.precision(2);
    d << std::fixed << points.size() << " instances, " << invalid
      << " invalid; fitted alpha = " << alpha << " (cap 2.0), beta = " << beta
      << ", covering beta = " << beta_cover << " (cap beta+2), size drift = "
      << worst_rel_dev * 100 << "% (cap 20%)";
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// 10. Clique-contraction routing on a clique with a pendant path: length is
//     flat in the clique size and at worst linear in the path length.

Line criterion_clique_contraction_scaling() {
    auto clique_with_tail = [](int kappa, int q) {
        Graph g(kappa + q);
        for (int i = 0; i < kappa; ++i)
            for (int j = i + 1; j < kappa; ++j) g.add_edge(i, j);
        g.add_edge(0, kappa);
        for (int i = 1; i < q; ++i) g.add_edge(kappa + i - 1, kappa + i);
        return g;
    };
    auto run = [&](int kappa, int q, bool& valid) {
        Graph g = clique_with_tail(kappa, q);
        Permutation pi = reversal(g.n());
        std::vector<int> clique(kappa);
        std::iota(clique.begin(), clique.end(), 0);
        Schedule s = route_via_clique_contraction(g, pi, clique);
        valid = verify_schedule(g, pi, s).valid;
        return s.length();
    };

    bool all_valid = true;
    int lo = 1 << 30, hi = 0;
    for (int kappa = 4; kappa <= 8; ++kappa) {
        bool valid = false;
        int len = run(kappa, 5, valid);
        all_valid = all_valid && valid;
        lo = std::min(lo, len);
        hi = std::max(hi, len);
    }
    int kappa_spread = hi - lo;

    int prev = -1, worst_jump = 0, worst_over = -1000;
    for (int q = 3; q <= 10; ++q) {
        bool valid = false;
        int len = run(4, q, valid);
        all_valid = all_valid && valid;
        worst_over = std::max(worst_over, len - (8 * q + 8));
        if (prev >= 0) worst_jump = std::max(worst_jump, len - prev);
        prev = len;
    }

    bool ok = all_valid && kappa_spread <= 6 && worst_over <= 0 && worst_jump <= 8;
    std::ostringstream d;
    d << "clique size 4..8 at tail 5: length spread " << kappa_spread
      << " (cap 6); tail 3..10 at clique 4: max excess over 8q+8 = "
      << worst_over << " (cap 0), max jump " << worst_jump << " (cap 8)";
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// 11. Three-step satisfiability instances. (a) Random satisfiable formulas
//     round-trip assignment -> schedule -> assignment. (b) Depth-3 search on
//     isolated gadgets confirms chain forcing and the mixed-direction veto.
//     (c) The smallest unsatisfiable instance is certified unroutable in
//     three steps by exact bounded-step routability.

struct GadgetLab {
    int n = 0;
    std::vector<std::pair<int, int>> edge_list;
    std::vector<std::pair<int, int>> swaps;

    int fresh() { return n++; }
    void edge(int a, int b) { edge_list.emplace_back(a, b); }
    // Two pendant leaves swapped through v: their entry/exit moves cannot
    // pair into fewer than three matchings, so v spends an edge every step,
    // standing in for a busy neighboring gadget.
    void busy(int v) {
        int p = fresh(), q = fresh();
        edge(p, v);
        edge(q, v);
        swaps.emplace_back(p, q);
    }
    Graph graph() const { return Graph(n, edge_list); }
    Permutation perm() const {
        std::vector<int> img(n);
        std::iota(img.begin(), img.end(), 0);
        for (auto [a, b] : swaps) std::swap(img[a], img[b]);
        return Permutation(img);
    }
};

GadgetLab diamond_chain(int len, bool drop_far) {
    GadgetLab lab;
    std::vector<int> corners;
    int count = drop_far ? len : len + 1;
    for (int j = 0; j < count; ++j) corners.push_back(lab.fresh());
    for (int j = 1; j <= len; ++j) {
        int top = lab.fresh(), bot = lab.fresh();
        lab.edge(corners[j - 1], top);
        lab.edge(corners[j - 1], bot);
        if (j < count) {
            lab.edge(top, corners[j]);
            lab.edge(bot, corners[j]);
        }
        lab.swaps.emplace_back(top, bot);
    }
    return lab;
}

GadgetLab variable_strip(std::array<int, 2> drop) {
    GadgetLab lab;
    int u[3] = {lab.fresh(), lab.fresh(), lab.fresh()};
    for (int i = 0; i < 2; ++i) {
        int a = lab.fresh(), b = lab.fresh();
        lab.swaps.emplace_back(a, b);
        if (drop[i] != 1) {
            int pos = lab.fresh();
            lab.edge(a, pos);
            lab.edge(pos, u[i]);
        }
        lab.edge(u[i], b);
        if (drop[i] != -1) {
            int neg = lab.fresh();
            lab.edge(b, neg);
            lab.edge(neg, u[i + 1]);
        }
        lab.edge(u[i + 1], a);
    }
    int top = lab.fresh(), bot = lab.fresh();
    lab.edge(u[0], top);
    lab.edge(top, u[2]);
    lab.edge(u[0], bot);
    lab.edge(bot, u[2]);
    lab.swaps.emplace_back(top, bot);
    return lab;
}

Line criterion_sat_reduction() {
    std::mt19937 rng(73532);
    int round_trips = 0, round_trip_failures = 0;
    while (round_trips < 25) {
        int vars = 1 + static_cast<int>(rng() % 3);
        int num_clauses = 1 + static_cast<int>(rng() % 3);
        std::vector<std::array<int, 3>> clauses;
        for (int c = 0; c < num_clauses; ++c) {
            std::array<int, 3> cl{};
            for (int j = 0; j < 3; ++j) {
                int v = 1 + static_cast<int>(rng() % vars);
                cl[j] = rng() % 2 ? v : -v;
            }
            clauses.push_back(cl);
        }
        CnfFormula f = make_formula(vars, clauses);
        std::optional<std::vector<bool>> satisfying;
        for (int mask = 0; mask < (1 << vars) && !satisfying; ++mask) {
            std::vector<bool> assign(vars);
            for (int v = 0; v < vars; ++v) assign[v] = (mask >> v) & 1;
            if (formula_satisfied(f, assign)) satisfying = assign;
        }
        if (!satisfying) continue;
        ++round_trips;
        int chain_len = 1 + static_cast<int>(rng() % 2);
        auto inst = build_sat_instance(f, chain_len);
        auto sched = assignment_to_schedule(inst, *satisfying);
        bool good = sched.has_value() && sched->length() <= 3 &&
                    verify_schedule(inst.graph, inst.pi, *sched).valid;
        if (good) {
            auto back = extract_assignment(inst, *sched);
            good = formula_satisfied(f, back);
        }
        if (!good) ++round_trip_failures;
    }

    int forcing_failures = 0;
    auto expect = [&](const GadgetLab& lab, bool want_routable) {
        bool got = routable_within(lab.graph(), lab.perm(), 3);
        if (got != want_routable) ++forcing_failures;
    };
    for (int len : {1, 2}) {
        GadgetLab free_chain = diamond_chain(len, false);
        free_chain.busy(0);
        expect(free_chain, true);
        GadgetLab cornered = diamond_chain(len, true);
        cornered.busy(0);
        expect(cornered, false);
        GadgetLab pinched = diamond_chain(len, false);
        pinched.busy(0);
        pinched.busy(len);
        expect(pinched, false);
    }
    expect(variable_strip({0, 0}), true);
    expect(variable_strip({1, 1}), true);
    expect(variable_strip({-1, -1}), true);
    expect(variable_strip({1, -1}), false);
    expect(variable_strip({-1, 1}), false);

    auto unsat = build_sat_instance(
        make_formula(1, {{1, 1, 1}, {-1, -1, -1}}), 1);
    auto t0 = clock_type::now();
    auto cert = max_routability(unsat.graph, unsat.pi, 3, MaxRouteMode::kExact);
    double cert_s = seconds_since(t0);
    bool unsat_certified = cert.m < unsat.graph.n() && cert_s < 600.0;

    auto sat_inst = build_sat_instance(make_formula(3, {{1, 2, -3}}), 1);
    auto sat_cert =
        max_routability(sat_inst.graph, sat_inst.pi, 3, MaxRouteMode::kExact);
    bool sat_routed = sat_cert.m == sat_inst.graph.n();

    bool ok = round_trip_failures == 0 && forcing_failures == 0 &&
              unsat_certified && sat_routed;
    std::ostringstream d;
    d.precision(2);
    d << std::fixed << round_trips << " round-trips ("
      << round_trip_failures << " failed), " << forcing_failures
      << " gadget forcing counterexamples; unsat instance (n = "
      << unsat.graph.n() << ") certified in " << cert_s
      << "s (budget 600s), satisfiable control routes " << sat_cert.m << "/"
      << sat_inst.graph.n();
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// 12. Colored-partition reduction and solver. The generated instance parts
//     at block size 4 and not 3; tampered partitions are rejected; the
//     solver matches a naive partition-enumeration oracle (exhaustively for
//     n <= 5, on random colored graphs at n in {6, 7, 8}).

void for_each_partition(int n,
                        const std::function<void(const std::vector<std::vector<int>>&)>& fn) {
    std::vector<int> rgs(n, 0);
    std::function<void(int, int)> rec = [&](int i, int max_used) {
        if (i == n) {
            std::vector<std::vector<int>> blocks(max_used + 1);
            for (int v = 0; v < n; ++v) blocks[rgs[v]].push_back(v);
            fn(blocks);
            return;
        }
        for (int b = 0; b <= max_used + 1; ++b) {
            rgs[i] = b;
            rec(i + 1, std::max(max_used, b));
        }
    };
    if (n > 0) rec(1, 0);
    else fn({});
}

// Validity check written independently of the library verifier: owner
// table, pairwise color comparison, frontier-scan reachability.
bool blocks_valid(const Graph& g, const std::vector<int>& color,
                  const std::vector<std::vector<int>>& blocks) {
    int n = g.n();
    std::vector<int> owner(n, -1);
    for (size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) return false;
        for (int v : blocks[b]) {
            if (v < 0 || v >= n || owner[v] != -1) return false;
            owner[v] = static_cast<int>(b);
        }
    }
    for (int v = 0; v < n; ++v)
        if (owner[v] == -1) return false;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (color[u] == color[v] && owner[u] != owner[v]) return false;
    for (const auto& block : blocks) {
        std::set<int> inside(block.begin(), block.end());
        std::set<int> seen{block.front()};
        std::vector<int> frontier{block.front()};
        while (!frontier.empty()) {
            int v = frontier.back();
            frontier.pop_back();
            for (int w : g.neighbors(v))
                if (inside.count(w) && !seen.count(w)) {
                    seen.insert(w);
                    frontier.push_back(w);
                }
        }
        if (seen.size() != block.size()) return false;
    }
    return true;
}

int enumeration_best(const Graph& g, const std::vector<int>& color) {
    int best = g.n() + 1;
    for_each_partition(g.n(), [&](const std::vector<std::vector<int>>& blocks) {
        if (!blocks_valid(g, color, blocks)) return;
        int mx = 0;
        for (const auto& b : blocks) mx = std::max(mx, static_cast<int>(b.size()));
        best = std::min(best, mx);
    });
    return best;
}

Line criterion_ccpp() {
    auto inst = build_ccpp_instance(make_formula(3, {{1, 2, -3}}));
    auto r4 = ccpp_solve_exact(inst.graph, inst.coloring, 4);
    int max_block = 0;
    for (const auto& b : r4.partition.blocks)
        max_block = std::max(max_block, static_cast<int>(b.size()));
    bool instance_ok =
        r4.found && max_block == 4 &&
        verify_ccpp_partition(inst.graph, inst.coloring, r4.partition, 4) &&
        blocks_valid(inst.graph, inst.coloring, r4.partition.blocks);
    auto r3 = ccpp_solve_exact(inst.graph, inst.coloring, 3);
    instance_ok = instance_ok && !r3.found && !r3.exhausted;

    // tampering: split each two-vertex color class across blocks, and merge
    // each pair of edge-disjoint blocks (size cap lifted to isolate the
    // connectivity check); the verifier must reject every variant
    long tampers = 0, accepted = 0;
    {
        std::map<int, std::vector<int>> classes;
        for (int v = 0; v < inst.graph.n(); ++v)
            classes[inst.coloring[v]].push_back(v);
        auto owner_of = [&](int v) {
            for (size_t b = 0; b < r4.partition.blocks.size(); ++b)
                for (int u : r4.partition.blocks[b])
                    if (u == v) return static_cast<int>(b);
            return -1;
        };
        for (const auto& [color, members] : classes) {
            if (members.size() != 2) continue;
            int from = owner_of(members[1]);
            ColoredPartition tampered = r4.partition;
            auto& src = tampered.blocks[from];
            src.erase(std::find(src.begin(), src.end(), members[1]));
            tampered.blocks[(from + 1) % tampered.blocks.size()].push_back(
                members[1]);
            ++tampers;
            if (verify_ccpp_partition(inst.graph, inst.coloring, tampered, 4))
                ++accepted;
        }
        int blocks_n = static_cast<int>(r4.partition.blocks.size());
        for (int i = 0; i < blocks_n; ++i)
            for (int j = i + 1; j < blocks_n; ++j) {
                bool touching = false;
                for (int u : r4.partition.blocks[i])
                    for (int v : r4.partition.blocks[j])
                        touching = touching || inst.graph.has_edge(u, v);
                if (touching) continue;
                ColoredPartition merged = r4.partition;
                for (int v : merged.blocks[j]) merged.blocks[i].push_back(v);
                merged.blocks.erase(merged.blocks.begin() + j);
                ++tampers;
                if (verify_ccpp_partition(inst.graph, inst.coloring, merged,
                                          inst.graph.n()))
                    ++accepted;
            }
    }

    // solver vs enumeration oracle
    std::mt19937 rng(95047);
    long agree_cases = 0, disagreements = 0;
    auto check_graph = [&](const Graph& g) {
        int n = g.n();
        std::vector<int> color(n);
        for (int v = 0; v < n; ++v)
            color[v] = static_cast<int>(rng() % std::max(1, n - 1));
        int best = enumeration_best(g, color);
        for (int t = 1; t <= n; ++t) {
            auto r = ccpp_solve_exact(g, color, t);
            ++agree_cases;
            bool want = t >= best;
            bool bad = r.exhausted || r.found != want;
            if (r.found) {
                bad = bad || !verify_ccpp_partition(g, color, r.partition, t) ||
                      !blocks_valid(g, color, r.partition.blocks);
            }
            if (bad) ++disagreements;
        }
    };
    for (int n = 1; n <= 5; ++n) {
        for_each_connected_graph(n, [&](const Graph& g) {
            check_graph(g);
            check_graph(g);  // second random coloring
        });
    }
    for (int n : {6, 7, 8}) {
        for (int trial = 0; trial < 8; ++trial) {
            int lo = n - 1, hi = n * (n - 1) / 2;
            int m = lo + static_cast<int>(rng() % (hi - lo + 1));
            check_graph(random_connected_graph(n, m, rng));
        }
    }

    bool ok = instance_ok && accepted == 0 && disagreements == 0;
    std::ostringstream d;
    d << "instance parts at 4, not 3; " << tampers << " tampered partitions, "
      << accepted << " wrongly accepted; solver vs enumeration: "
      << agree_cases << " thresholds (exhaustive n <= 5 x2 colorings, random "
      << "n = 6..8), " << disagreements << " disagreements";
    return {ok, d.str()};
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        std::function<Line()> run;
    };
    std::vector<Entry> entries{
        {"oracle exactness", criterion_oracle_cube},
        {"clique dichotomy", criterion_clique_dichotomy},
        {"star law", criterion_star_law},
        {"gadget values", criterion_gadget_values},
        {"two-step decider", criterion_two_step_decider},
        {"bounded routability", criterion_maxroute_equivalence},
        {"port arrays", criterion_port_arrays},
        {"tree routing", criterion_tree_routing},
        {"composite scaling", criterion_hconn_scaling},
        {"contraction scaling", criterion_clique_contraction_scaling},
        {"satisfiability reduction", criterion_sat_reduction},
        {"colored partition", criterion_ccpp},
    };

    int failures = 0;
    for (size_t i = 0; i < entries.size(); ++i) {
        Line line;
        try {
            line = entries[i].run();
        } catch (const std::exception& e) {
            line = {false, std::string("exception: ") + e.what()};
        }
        if (!line.ok) ++failures;
        std::printf("criterion %2zu [%s]: %s  %s\n", i + 1, entries[i].name,
                    line.ok ? "PASS" : "FAIL", line.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria pass\n", static_cast<int>(entries.size()) - failures,
                entries.size());
    return failures;
}
