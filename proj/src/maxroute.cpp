#include "rvm/maxroute.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <stdexcept>

namespace rvm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::vector<Walk> enumerate_walks(const Graph& g, int from, int to, int k) {
    int n = g.n();
    if (from < 0 || from >= n || to < 0 || to >= n)
        throw std::invalid_argument("walk endpoint out of range");
    if (k < 0) throw std::invalid_argument("walk length must be nonnegative");

    std::vector<int> dist = g.distances_from(to);
    std::vector<Walk> out;
    if (dist[from] < 0 || dist[from] > k) return out;

    std::vector<int> path{from};
    auto extend = [&](auto&& self) -> void {
        int t = static_cast<int>(path.size()) - 1;
        if (t == k) {
            if (path.back() == to) out.push_back(Walk{from, path});
            return;
        }
        int cur = path.back();
        // self-loop plus real edges, visited in ascending vertex order
        const auto& nbr = g.neighbors(cur);
        size_t ni = 0;
        bool stayed = false;
        auto visit = [&](int next) {
            if (dist[next] >= 0 && dist[next] <= k - t - 1) {
                path.push_back(next);
                self(self);
                path.pop_back();
            }
        };
        while (ni < nbr.size() || !stayed) {
            if (!stayed && (ni == nbr.size() || cur < nbr[ni])) {
                stayed = true;
                visit(cur);
            } else {
                visit(nbr[ni++]);
            }
        }
    };
    extend(extend);
    return out;
}

bool walks_compatible(const Walk& a, const Walk& b) {
    if (a.vertices.size() != b.vertices.size())
        throw std::invalid_argument("walk length mismatch");
    int k = a.k();
    for (int t = 0; t <= k; ++t)
        if (a.vertices[t] == b.vertices[t]) return false;
    for (int t = 0; t < k; ++t) {
        bool into = a.vertices[t + 1] == b.vertices[t];
        bool outof = b.vertices[t + 1] == a.vertices[t];
        if (into != outof) return false;
    }
    return true;
}

CliqueGraph build_clique_graph(const Graph& g, const Permutation& pi, int k,
                               const SearchBudget& budget) {
    if (pi.n() != g.n()) throw std::invalid_argument("permutation size mismatch");
    if (k < 0) throw std::invalid_argument("walk length must be nonnegative");
    auto start = Clock::now();

    CliqueGraph cg;
    // the adjacency below is quadratic in the walk count, hence the hard cap
    long long cap = std::min<long long>(budget.max_states, 20000);
    for (int i = 0; i < g.n(); ++i) {
        std::vector<Walk> block = enumerate_walks(g, i, pi(i), k);
        int first = cg.size();
        for (auto& w : block) cg.walks.push_back(std::move(w));
        cg.blocks.emplace_back(first, cg.size());
        if (cg.size() > cap)
            throw std::runtime_error("clique graph exceeds the walk budget");
    }

    int total = cg.size();
    cg.adjacent.assign(total, std::vector<bool>(total, false));
    long long ticks = 0;
    for (int u = 0; u < total; ++u) {
        for (int v = u + 1; v < total; ++v) {
            if (cg.walks[u].owner == cg.walks[v].owner) continue;
            if ((++ticks & 0xfff) == 0 && seconds_since(start) > budget.time_limit_seconds)
                throw std::runtime_error("clique graph construction timed out");
            if (walks_compatible(cg.walks[u], cg.walks[v]))
                cg.adjacent[u][v] = cg.adjacent[v][u] = true;
        }
    }
    return cg;
}

namespace {

// Indices of the all-stay walks of fixed points; pairwise compatible.
std::vector<int> stay_walks(const CliqueGraph& cg) {
    std::vector<int> base;
    for (auto [first, last] : cg.blocks)
        for (int w = first; w < last; ++w) {
            const auto& vs = cg.walks[w].vertices;
            if (std::all_of(vs.begin(), vs.end(),
                            [&](int v) { return v == cg.walks[w].owner; })) {
                base.push_back(w);
                break;
            }
        }
    return base;
}

Schedule schedule_from_walks(const Graph& g, const CliqueGraph& cg,
                             const std::vector<int>& clique, int k) {
    Schedule out;
    for (int t = 0; t < k; ++t) {
        MatchingStep step;
        for (int w : clique) {
            int u = cg.walks[w].vertices[t], v = cg.walks[w].vertices[t + 1];
            if (u != v) step.pairs.emplace_back(std::min(u, v), std::max(u, v));
        }
        step.normalize();
        step.pairs.erase(std::unique(step.pairs.begin(), step.pairs.end()),
                         step.pairs.end());
        std::vector<char> used(g.n(), 0);
        for (auto [u, v] : step.pairs) {
            if (used[u] || used[v])
                throw std::logic_error("incompatible walks produced a colliding step");
            used[u] = used[v] = 1;
        }
        if (!step.empty()) out.steps.push_back(std::move(step));
    }
    return out;
}

struct PartitionedCliqueSearch {
    const CliqueGraph& cg;
    long long nodes = 0;
    long long max_nodes;
    Clock::time_point start;
    double time_limit;
    std::vector<int> best, cur;

    void solve(size_t pos, const std::vector<std::vector<int>>& cand) {
        if (++nodes > max_nodes || seconds_since(start) > time_limit)
            throw std::runtime_error("maximum routability search exceeded its budget");
        int open = 0;
        for (size_t b = pos; b < cand.size(); ++b) open += !cand[b].empty();
        if (static_cast<int>(cur.size()) + open <= static_cast<int>(best.size()))
            return;
        if (pos == cand.size()) {
            best = cur;
            return;
        }
        for (int w : cand[pos]) {
            cur.push_back(w);
            std::vector<std::vector<int>> next(cand.size());
            for (size_t b = pos + 1; b < cand.size(); ++b) {
                for (int x : cand[b])
                    if (cg.adjacent[w][x]) next[b].push_back(x);
            }
            solve(pos + 1, next);
            cur.pop_back();
        }
        solve(pos + 1, cand);  // leave this block out
    }
};

}  // namespace

std::vector<int> max_clique_greedy(const CliqueGraph& cg, unsigned seed) {
    int total = cg.size();
    int nblocks = static_cast<int>(cg.blocks.size());
    std::vector<int> base = stay_walks(cg);
    std::mt19937 rng(seed);
    std::vector<int> best;

    std::vector<int> block_of(total);
    for (int b = 0; b < nblocks; ++b)
        for (int w = cg.blocks[b].first; w < cg.blocks[b].second; ++w) block_of[w] = b;

    for (int restart = 0; restart < 24; ++restart) {
        std::vector<int> order(nblocks);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);

        std::vector<char> alive(total, 1), taken(nblocks, 0);
        std::vector<int> chosen;
        auto pick = [&](int w) {
            chosen.push_back(w);
            taken[block_of[w]] = 1;
            for (int x = 0; x < total; ++x)
                if (alive[x] && !cg.adjacent[w][x]) alive[x] = 0;
        };
        for (int w : base) pick(w);
        for (int b : order) {
            if (taken[b]) continue;
            int pickw = -1, support = -1;
            for (int w = cg.blocks[b].first; w < cg.blocks[b].second; ++w) {
                if (!alive[w]) continue;
                int s = 0;
                for (int x = 0; x < total; ++x) s += alive[x] && cg.adjacent[w][x];
                if (s > support) {
                    support = s;
                    pickw = w;
                }
            }
            if (pickw != -1) pick(pickw);
        }
        if (chosen.size() > best.size()) best = chosen;
    }
    std::sort(best.begin(), best.end());
    return best;
}

MaxRoutabilityResult max_routability(const Graph& g, const Permutation& pi, int k,
                                     MaxRouteMode mode, const SearchBudget& budget,
                                     unsigned seed) {
    CliqueGraph cg = build_clique_graph(g, pi, k, budget);
    MaxRoutabilityResult result;
    result.clique_graph_size = cg.size();

    if (mode == MaxRouteMode::kGreedy) {
        result.clique = max_clique_greedy(cg, seed);
    } else {
        PartitionedCliqueSearch search{cg,
                                       0,
                                       budget.max_states,
                                       Clock::now(),
                                       budget.time_limit_seconds,
                                       max_clique_greedy(cg, seed),
                                       {}};
        std::vector<int> order(cg.blocks.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return cg.blocks[a].second - cg.blocks[a].first <
                   cg.blocks[b].second - cg.blocks[b].first;
        });
        std::vector<std::vector<int>> cand;
        for (int b : order) {
            std::vector<int> list;
            for (int w = cg.blocks[b].first; w < cg.blocks[b].second; ++w)
                list.push_back(w);
            if (!list.empty()) cand.push_back(std::move(list));
        }
        search.solve(0, cand);
        result.clique = search.best;
        std::sort(result.clique.begin(), result.clique.end());
    }

    result.m = static_cast<int>(result.clique.size());
    result.schedule = schedule_from_walks(g, cg, result.clique, k);

    PebbleConfig cfg = PebbleConfig::initial(g.n());
    for (const auto& step : result.schedule.steps) cfg = apply_matching(g, cfg, step);
    for (int w : result.clique)
        if (cfg.at[pi(cg.walks[w].owner)] != cg.walks[w].owner)
            throw std::logic_error("extracted schedule missed a chosen pebble");
    return result;
}

}  // namespace rvm
