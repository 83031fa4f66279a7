#include "rvm/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <string>
#include <unordered_map>

namespace rvm {

namespace {

void collect_matchings(const Graph& g, size_t edge_index, std::vector<char>& used,
                       std::vector<std::pair<int, int>>& current,
                       std::vector<MatchingStep>& out, MatchingMode mode) {
    if (edge_index == g.edges().size()) {
        if (current.empty()) return;
        if (mode == MatchingMode::kMaximalOnly) {
            for (auto [u, v] : g.edges())
                if (!used[u] && !used[v]) return;
        }
        MatchingStep step{current};
        step.normalize();
        out.push_back(std::move(step));
        return;
    }
    auto [u, v] = g.edges()[edge_index];
    if (!used[u] && !used[v]) {
        used[u] = used[v] = 1;
        current.emplace_back(u, v);
        collect_matchings(g, edge_index + 1, used, current, out, mode);
        current.pop_back();
        used[u] = used[v] = 0;
    }
    collect_matchings(g, edge_index + 1, used, current, out, mode);
}

std::string config_key(const std::vector<int>& at) {
    std::string key(at.size(), '\0');
    for (size_t i = 0; i < at.size(); ++i) key[i] = static_cast<char>(at[i]);
    return key;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Shared BFS over configurations from the identity. Stops early when `stop`
// (if nonnull) matches a dequeued configuration. Depth-limited by
// budget.max_depth and extra_depth_cap (whichever is tighter).
struct BfsOutcome {
    bool exhausted = false;
    bool found = false;
    int found_index = -1;
    int deepest_index = 0;  // index of a config at the deepest completed level
    int deepest_depth = 0;
    long long states = 0;
    double elapsed = 0.0;
    std::vector<std::vector<int>> configs;
    std::vector<int> parent, via, depth;
};

BfsOutcome bfs_configs(const Graph& g, const std::vector<MatchingStep>& matchings,
                       const std::vector<int>* stop, int extra_depth_cap,
                       const SearchBudget& budget) {
    auto start = Clock::now();
    BfsOutcome out;
    int n = g.n();
    std::unordered_map<std::string, int> index;
    std::vector<int> init(n);
    for (int v = 0; v < n; ++v) init[v] = v;
    out.configs.push_back(init);
    out.parent.push_back(-1);
    out.via.push_back(-1);
    out.depth.push_back(0);
    index.emplace(config_key(init), 0);

    int cap = budget.max_depth;
    if (extra_depth_cap >= 0) cap = cap < 0 ? extra_depth_cap : std::min(cap, extra_depth_cap);

    size_t head = 0;
    std::vector<int> next(n);
    while (head < out.configs.size()) {
        int at_index = static_cast<int>(head);
        const int d = out.depth[at_index];
        if (stop && out.configs[at_index] == *stop) {
            out.found = true;
            out.found_index = at_index;
            break;
        }
        if (d > out.deepest_depth) {
            out.deepest_depth = d;
            out.deepest_index = at_index;
        }
        ++head;
        ++out.states;
        if (out.states > budget.max_states ||
            out.configs.size() > static_cast<size_t>(budget.max_states) ||
            (out.states % 1024 == 0 && seconds_since(start) > budget.time_limit_seconds)) {
            out.exhausted = true;
            break;
        }
        if (cap >= 0 && d == cap) continue;
        // Copy: configs grows inside the loop and would invalidate a reference.
        const std::vector<int> at = out.configs[at_index];
        for (size_t mi = 0; mi < matchings.size(); ++mi) {
            next = at;
            for (auto [u, v] : matchings[mi].pairs) std::swap(next[u], next[v]);
            auto [it, inserted] = index.emplace(config_key(next), out.configs.size());
            if (inserted) {
                out.configs.push_back(next);
                out.parent.push_back(at_index);
                out.via.push_back(static_cast<int>(mi));
                out.depth.push_back(d + 1);
                if (stop && next == *stop) {
                    out.found = true;
                    out.found_index = static_cast<int>(out.configs.size()) - 1;
                    out.elapsed = seconds_since(start);
                    return out;
                }
            }
        }
    }
    out.elapsed = seconds_since(start);
    return out;
}

Schedule reconstruct(const BfsOutcome& out, const std::vector<MatchingStep>& matchings,
                     int index) {
    std::vector<int> vias;
    for (int v = index; out.parent[v] != -1; v = out.parent[v]) vias.push_back(out.via[v]);
    std::reverse(vias.begin(), vias.end());
    Schedule schedule;
    for (int mi : vias) schedule.append(matchings[mi]);
    return schedule;
}

// The configuration in which pebble i sits on pi(i): at[pi(i)] = i.
std::vector<int> target_config(const Permutation& pi) {
    std::vector<int> at(pi.n());
    for (int i = 0; i < pi.n(); ++i) at[pi(i)] = i;
    return at;
}

}  // namespace

std::vector<MatchingStep> enumerate_matchings(const Graph& g, MatchingMode mode) {
    std::vector<MatchingStep> out;
    std::vector<char> used(g.n(), 0);
    std::vector<std::pair<int, int>> current;
    collect_matchings(g, 0, used, current, out, mode);
    return out;
}

ExactRoutingResult routing_time_exact(const Graph& g, const Permutation& pi,
                                      const SearchBudget& budget, MatchingMode mode) {
    ExactRoutingResult result;
    if (pi.n() != g.n()) throw std::invalid_argument("permutation size mismatch");
    auto matchings = enumerate_matchings(g, mode);
    auto target = target_config(pi);
    auto out = bfs_configs(g, matchings, &target, -1, budget);
    result.states_visited = out.states;
    result.elapsed_seconds = out.elapsed;
    if (out.found) {
        result.value = out.depth[out.found_index];
        result.witness = reconstruct(out, matchings, out.found_index);
        return result;
    }
    result.exhausted = true;
    // Every configuration through depth deepest_depth was expanded without
    // hitting the target (assuming the queue outran that level), so the
    // routing time exceeds the deepest fully completed level.
    result.value = out.deepest_depth;
    return result;
}

RoutingNumberResult routing_number_exact(const Graph& g, const SearchBudget& budget) {
    RoutingNumberResult result;
    auto matchings = enumerate_matchings(g, MatchingMode::kAll);
    auto out = bfs_configs(g, matchings, nullptr, -1, budget);
    result.states_visited = out.states;
    result.elapsed_seconds = out.elapsed;
    result.exhausted = out.exhausted;
    result.value = out.deepest_depth;
    // at[] lists pebbles by vertex; the permutation realized is its inverse.
    const auto& at = out.configs[out.deepest_index];
    std::vector<int> image(at.size());
    for (int v = 0; v < static_cast<int>(at.size()); ++v) image[at[v]] = v;
    result.witness = Permutation(std::move(image));
    return result;
}

MaxAgreementsResult max_agreements_exact(const Graph& g, const Permutation& pi, int k,
                                         const SearchBudget& budget) {
    MaxAgreementsResult result;
    if (pi.n() != g.n()) throw std::invalid_argument("permutation size mismatch");
    if (k < 0) throw std::invalid_argument("negative step bound");
    auto matchings = enumerate_matchings(g, MatchingMode::kAll);
    auto out = bfs_configs(g, matchings, nullptr, k, budget);
    result.states_visited = out.states;
    result.elapsed_seconds = out.elapsed;
    result.exhausted = out.exhausted;
    int best_index = 0;
    int best = -1;
    for (size_t i = 0; i < out.configs.size(); ++i) {
        PebbleConfig config{out.configs[i]};
        int a = config.agreements(pi);
        if (a > best) {
            best = a;
            best_index = static_cast<int>(i);
        }
    }
    result.value = best;
    result.witness = reconstruct(out, matchings, best_index);
    return result;
}

}  // namespace rvm
