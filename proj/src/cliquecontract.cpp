#include "rvm/cliquecontract.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "rvm/clique.hpp"
#include "rvm/twostep.hpp"

namespace rvm {

namespace {

// Any rearrangement inside a clique takes at most two steps: per cycle of the
// seat permutation, two reflections t -> -t and t -> 1-t compose to the shift
// t -> t+1, and each reflection is a matching of clique edges.
std::vector<MatchingStep> clique_arrange(const std::vector<int>& clique,
                                         const std::vector<int>& at,
                                         const std::vector<int>& want) {
    int k = static_cast<int>(clique.size());
    std::vector<int> slot(at.size(), -1);
    for (int i = 0; i < k; ++i) slot[want[i]] = i;
    std::vector<int> sigma(k);
    for (int j = 0; j < k; ++j) {
        int s = slot[at[clique[j]]];
        if (s < 0) throw std::logic_error("clique holds a pebble destined outside");
        sigma[j] = s;
    }
    MatchingStep first, second;
    std::vector<char> done(k, 0);
    for (int s0 = 0; s0 < k; ++s0) {
        if (done[s0]) continue;
        std::vector<int> cyc;
        for (int c = s0; !done[c]; c = sigma[c]) {
            done[c] = 1;
            cyc.push_back(c);
        }
        int a = static_cast<int>(cyc.size());
        if (a < 2) continue;
        auto add = [&](MatchingStep& step, int t, int u) {
            if (t < u)
                step.pairs.emplace_back(std::min(clique[cyc[t]], clique[cyc[u]]),
                                        std::max(clique[cyc[t]], clique[cyc[u]]));
        };
        for (int t = 0; t < a; ++t) {
            add(first, t, (a - t) % a);
            add(second, t, (a + 1 - t) % a);
        }
    }
    std::vector<MatchingStep> steps;
    if (!first.empty()) steps.push_back(std::move(first));
    if (!second.empty()) steps.push_back(std::move(second));
    return steps;
}

}  // namespace

ContractedInstance contract_clique(const Graph& g, std::vector<int> clique) {
    int n = g.n();
    if (clique.empty()) throw std::invalid_argument("clique must be nonempty");
    std::sort(clique.begin(), clique.end());
    for (int v : clique)
        if (v < 0 || v >= n) throw std::invalid_argument("clique vertex out of range");
    for (size_t i = 1; i < clique.size(); ++i)
        if (clique[i] == clique[i - 1])
            throw std::invalid_argument("duplicate clique vertex");
    for (size_t i = 0; i < clique.size(); ++i)
        for (size_t j = i + 1; j < clique.size(); ++j)
            if (!g.has_edge(clique[i], clique[j]))
                throw std::invalid_argument("vertices do not form a clique");
    if (!g.is_connected()) throw std::invalid_argument("graph must be connected");

    std::vector<char> in_clique(n, 0);
    for (int v : clique) in_clique[v] = 1;
    std::vector<int> outside, idx(n, -1);
    for (int v = 0; v < n; ++v)
        if (!in_clique[v]) {
            idx[v] = static_cast<int>(outside.size());
            outside.push_back(v);
        }
    int m = n - static_cast<int>(clique.size());

    Graph minor(m + 1);
    std::vector<char> touches(m, 0);
    for (auto [u, v] : g.edges()) {
        bool cu = in_clique[u], cv = in_clique[v];
        if (cu && cv) continue;
        if (!cu && !cv) {
            minor.add_edge(idx[u], idx[v]);
        } else {
            int o = idx[cu ? v : u];
            if (!touches[o]) {
                touches[o] = 1;
                minor.add_edge(o, m);
            }
        }
    }

    Graph tree_g(m + 1);
    std::vector<int> queue{m};
    std::vector<char> seen(m + 1, 0);
    seen[m] = 1;
    for (size_t head = 0; head < queue.size(); ++head) {
        int u = queue[head];
        for (int w : minor.neighbors(u)) {
            if (seen[w]) continue;
            seen[w] = 1;
            tree_g.add_edge(u, w);
            queue.push_back(w);
        }
    }
    if (static_cast<int>(queue.size()) != m + 1)
        throw std::logic_error("contracted minor is disconnected");

    return ContractedInstance{g,     std::move(clique), std::move(outside),
                              minor, m,                 RootedTree::build(tree_g, m)};
}

Schedule route_via_clique_contraction(const Graph& g, const Permutation& pi,
                                      const std::vector<int>& clique,
                                      CliqueContractionStats* stats) {
    if (pi.n() != g.n()) throw std::invalid_argument("permutation size mismatch");
    ContractedInstance inst = contract_clique(g, clique);
    if (stats) *stats = {};
    int n = g.n();
    int kappa = static_cast<int>(inst.clique.size());
    int m = static_cast<int>(inst.outside.size());

    if (pi.is_identity()) return {};
    if (kappa == n) {
        auto two = route_in_two(g, pi);
        if (!two) throw std::logic_error("clique routing missed its two-step witness");
        return *two;
    }

    std::vector<char> in_clique(n, 0);
    for (int v : inst.clique) in_clique[v] = 1;
    std::vector<int> idx(n, -1);
    for (int i = 0; i < m; ++i) idx[inst.outside[i]] = i;

    std::vector<int> at(n);
    std::iota(at.begin(), at.end(), 0);
    Schedule out;
    auto emit = [&](MatchingStep step) {
        if (step.empty()) return;
        step.normalize();
        for (auto [u, v] : step.pairs) std::swap(at[u], at[v]);
        out.steps.push_back(std::move(step));
    };

    // smallest clique neighbor of every outside vertex on the boundary
    std::vector<int> gate(m, -1);
    for (int i = 0; i < m; ++i)
        for (int w : g.neighbors(inst.outside[i]))
            if (in_clique[w]) {
                gate[i] = w;
                break;
            }

    // Exchange: pebbles parked on the clique but destined outside trade seats
    // with the outside pebbles destined for the clique, by subset routing on a
    // real spanning tree (the minor tree mapped back through the gates, plus a
    // star inside the clique). The rest of the clique is tasked to stay put,
    // so afterwards the clique holds exactly the pebbles that belong there.
    std::vector<int> emigrants, immigrants;
    for (int v : inst.clique)
        if (!in_clique[pi(v)]) emigrants.push_back(v);
    for (int v : inst.outside)
        if (in_clique[pi(v)]) immigrants.push_back(v);
    if (!emigrants.empty()) {
        Graph span(n);
        for (auto [a, b] : inst.tree.graph.edges()) {
            if (a != inst.super_vertex && b != inst.super_vertex) {
                span.add_edge(inst.outside[a], inst.outside[b]);
            } else {
                int o = a == inst.super_vertex ? b : a;
                span.add_edge(inst.outside[o], gate[o]);
            }
        }
        for (int j = 1; j < kappa; ++j) span.add_edge(inst.clique[0], inst.clique[j]);
        RootedTree real_tree = RootedTree::build(span, inst.clique[0]);
        SubsetTask task;
        for (int v : inst.clique)
            if (in_clique[pi(v)]) task.pebbles.emplace_back(v, v);
        for (size_t i = 0; i < emigrants.size(); ++i) {
            task.pebbles.emplace_back(emigrants[i], immigrants[i]);
            task.pebbles.emplace_back(immigrants[i], emigrants[i]);
        }
        Schedule exchange = route_subset_tree(real_tree, task);
        if (stats) stats->exchange_steps = exchange.length();
        for (auto& step : exchange.steps) emit(std::move(step));
    }

    // Tree-route the all-outside remainder on the minor. The super-vertex is
    // a fixed point of the permutation but still relays pebbles between
    // branches; `rep` is the real clique seat of whatever pebble currently
    // plays the super-vertex's planning pebble.
    std::vector<int> rho(m + 1);
    rho[m] = m;
    for (int i = 0; i < m; ++i) {
        int dest = pi(at[inst.outside[i]]);
        if (in_clique[dest]) throw std::logic_error("exchange left a clique pebble outside");
        rho[i] = idx[dest];
    }
    Schedule planned = route_tree(inst.tree, Permutation(rho));
    if (stats) stats->planned_steps = planned.length();
    int before_expansion = out.length();
    int rep = -1;
    for (const auto& pstep : planned.steps) {
        MatchingStep rest;
        int vu = -1;
        for (auto [a, b] : pstep.pairs) {
            if (a == inst.super_vertex || b == inst.super_vertex)
                vu = a == inst.super_vertex ? b : a;
            else
                rest.pairs.emplace_back(std::min(inst.outside[a], inst.outside[b]),
                                        std::max(inst.outside[a], inst.outside[b]));
        }
        if (vu == -1) {
            emit(std::move(rest));
            continue;
        }
        if (stats) ++stats->super_vertex_steps;
        int h = gate[vu];
        // line the departing pebble up on the boundary seat, then swap across
        if (rep != -1 && rep != h)
            rest.pairs.emplace_back(std::min(rep, h), std::max(rep, h));
        emit(std::move(rest));
        MatchingStep cross;
        cross.pairs.emplace_back(std::min(h, inst.outside[vu]),
                                 std::max(h, inst.outside[vu]));
        emit(std::move(cross));
        rep = h;
    }
    if (stats) stats->expanded_steps = out.length() - before_expansion;

    // Everything outside is home; at most two clique steps fix the interior.
    Permutation inv = pi.inverse();
    std::vector<int> want(kappa);
    for (int i = 0; i < kappa; ++i) want[i] = inv(inst.clique[i]);
    for (auto& step : clique_arrange(inst.clique, at, want)) {
        if (stats) ++stats->cleanup_steps;
        emit(std::move(step));
    }

    for (int v = 0; v < n; ++v)
        if (pi(at[v]) != v) throw std::logic_error("contraction routing missed its target");
    return out;
}

Schedule route_via_clique_contraction(const Graph& g, const Permutation& pi,
                                      CliqueContractionStats* stats) {
    return route_via_clique_contraction(g, pi, max_clique_exact(g), stats);
}

}  // namespace rvm
