#include "rvm/hconnroute.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "rvm/connectivity.hpp"
#include "rvm/matching.hpp"
#include "rvm/treeroute.hpp"

namespace rvm {

void check_partition(const Graph& g, const ConnectedPartition& part) {
    int n = g.n(), h = part.h();
    if (h == 0) throw std::invalid_argument("partition has no blocks");
    if (static_cast<int>(part.ports.size()) != h)
        throw std::invalid_argument("one port per block required");
    std::vector<int> owner(n, -1);
    for (int i = 0; i < h; ++i) {
        if (part.blocks[i].empty()) throw std::invalid_argument("empty block");
        for (int v : part.blocks[i]) {
            if (v < 0 || v >= n)
                throw std::invalid_argument("block vertex out of range");
            if (owner[v] != -1) throw std::invalid_argument("vertex in two blocks");
            owner[v] = i;
        }
        int u = part.ports[i];
        if (u < 0 || u >= n || owner[u] != i)
            throw std::invalid_argument("port outside its block");
        if (!g.induced(part.blocks[i]).is_connected())
            throw std::invalid_argument("block does not induce a connected subgraph");
    }
    for (int v = 0; v < n; ++v)
        if (owner[v] == -1) throw std::invalid_argument("vertex in no block");
}

namespace {

struct PartitionSearch {
    const Graph& g;
    std::vector<int> assign;                 // vertex -> block, -1 unassigned
    std::vector<std::vector<int>> members;
    std::vector<int> remaining;
    long long nodes = 0;
    long long max_nodes;
    std::chrono::steady_clock::time_point deadline;
    bool exhausted = false;

    bool over_budget() {
        if (nodes > max_nodes ||
            ((nodes & 0xff) == 0 && std::chrono::steady_clock::now() > deadline))
            exhausted = true;
        return exhausted;
    }

    // Every component of the unassigned region must fit inside the open
    // blocks bordering it, and every open block must border enough
    // unassigned vertices to fill its quota.
    bool feasible() const {
        int n = g.n(), h = static_cast<int>(remaining.size());
        std::vector<int> comp(n, -1), comp_size, stack;
        for (int v = 0; v < n; ++v) {
            if (assign[v] != -1 || comp[v] != -1) continue;
            int c = static_cast<int>(comp_size.size());
            comp_size.push_back(0);
            comp[v] = c;
            stack.push_back(v);
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                ++comp_size[c];
                for (int w : g.neighbors(u))
                    if (assign[w] == -1 && comp[w] == -1) {
                        comp[w] = c;
                        stack.push_back(w);
                    }
            }
        }
        int nc = static_cast<int>(comp_size.size());
        std::vector<char> touch(static_cast<size_t>(h) * nc, 0);
        for (int v = 0; v < n; ++v) {
            if (assign[v] == -1 || remaining[assign[v]] == 0) continue;
            for (int w : g.neighbors(v))
                if (assign[w] == -1)
                    touch[static_cast<size_t>(assign[v]) * nc + comp[w]] = 1;
        }
        for (int c = 0; c < nc; ++c) {
            long long cap = 0;
            for (int b = 0; b < h; ++b)
                if (touch[static_cast<size_t>(b) * nc + c]) cap += remaining[b];
            if (cap < comp_size[c]) return false;
        }
        for (int b = 0; b < h; ++b) {
            if (remaining[b] == 0) continue;
            long long reach = 0;
            for (int c = 0; c < nc; ++c)
                if (touch[static_cast<size_t>(b) * nc + c]) reach += comp_size[c];
            if (reach < remaining[b]) return false;
        }
        return true;
    }

    bool solve() {
        ++nodes;
        if (over_budget()) return false;
        int pick = -1;
        for (int b = 0; b < static_cast<int>(remaining.size()); ++b)
            if (remaining[b] > 0 && (pick == -1 || remaining[b] < remaining[pick]))
                pick = b;
        if (pick == -1) return true;
        std::vector<char> cand(g.n(), 0);
        for (int v : members[pick])
            for (int w : g.neighbors(v))
                if (assign[w] == -1) cand[w] = 1;
        for (int w = 0; w < g.n(); ++w) {
            if (!cand[w]) continue;
            assign[w] = pick;
            members[pick].push_back(w);
            --remaining[pick];
            if (feasible() && solve()) return true;
            ++remaining[pick];
            members[pick].pop_back();
            assign[w] = -1;
            if (exhausted) return false;
        }
        return false;
    }
};

}  // namespace

PartitionResult find_partition(const Graph& g, const std::vector<int>& sizes,
                               const std::vector<int>& terminals,
                               const SearchBudget& budget) {
    int n = g.n(), h = static_cast<int>(sizes.size());
    if (h == 0 || static_cast<int>(terminals.size()) != h)
        throw std::invalid_argument("need one terminal per block size");
    long long total = 0;
    for (int s : sizes) {
        if (s <= 0) throw std::invalid_argument("block sizes must be positive");
        total += s;
    }
    if (total != n) throw std::invalid_argument("block sizes must sum to n");
    std::vector<char> seen(n, 0);
    for (int t : terminals) {
        if (t < 0 || t >= n) throw std::invalid_argument("terminal out of range");
        if (seen[t]) throw std::invalid_argument("terminals must be distinct");
        seen[t] = 1;
    }
    if (vertex_connectivity(g) < h)
        throw std::invalid_argument("graph is not h-connected");

    PartitionSearch search{g,
                           std::vector<int>(n, -1),
                           std::vector<std::vector<int>>(h),
                           sizes,
                           0,
                           budget.max_states,
                           std::chrono::steady_clock::now() +
                               std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                   std::chrono::duration<double>(budget.time_limit_seconds))};
    for (int i = 0; i < h; ++i) {
        search.assign[terminals[i]] = i;
        search.members[i] = {terminals[i]};
        --search.remaining[i];
    }

    PartitionResult result;
    bool found = search.feasible() && search.solve();
    result.nodes_visited = search.nodes;
    result.exhausted = search.exhausted;
    if (found) {
        result.partition.blocks = search.members;
        for (auto& blk : result.partition.blocks) std::sort(blk.begin(), blk.end());
        result.partition.ports = terminals;
        check_partition(g, result.partition);
    } else if (!search.exhausted) {
        // existence is guaranteed at this connectivity, so a clean miss means
        // the instance violated a precondition we could not detect cheaply
        throw std::logic_error("partition search came up empty");
    }
    return result;
}

PortArray build_port_array(const PortLists& lists) {
    int a = lists.a();
    if (a == 0) throw std::invalid_argument("no lists");
    int b = lists.b();
    std::vector<std::vector<int>> cnt(a, std::vector<int>(a, 0));
    for (int i = 0; i < a; ++i) {
        if (static_cast<int>(lists.lists[i].size()) != b)
            throw std::invalid_argument("lists must share one length");
        for (int c : lists.lists[i]) {
            if (c < 0 || c >= a) throw std::invalid_argument("list entry out of range");
            ++cnt[i][c];
        }
    }
    for (int c = 0; c < a; ++c) {
        int occurrences = 0;
        for (int i = 0; i < a; ++i) occurrences += cnt[i][c];
        if (occurrences != b)
            throw std::invalid_argument("every value must occur exactly b times");
    }

    PortArray out;
    out.rows.assign(a, std::vector<int>(b, -1));
    for (int col = 0; col < b; ++col) {
        std::vector<std::vector<int>> adj(a);
        for (int i = 0; i < a; ++i)
            for (int c = 0; c < a; ++c)
                if (cnt[i][c] > 0) adj[i].push_back(c);
        std::vector<int> rep = bipartite_matching(a, a, adj);
        for (int i = 0; i < a; ++i) {
            if (rep[i] == -1)
                throw std::logic_error("distinct representatives missing");
            out.rows[i][col] = rep[i];
            --cnt[i][rep[i]];
        }
    }
    return out;
}

PortSubgraphResult best_port_subgraph(const Graph& g, int h,
                                      const SearchBudget& budget) {
    if (h < 2 || h > g.n())
        throw std::invalid_argument("subgraph order out of range");
    auto start = std::chrono::steady_clock::now();
    PortSubgraphResult best;
    bool found = false, stop = false;
    long long states_left = budget.max_states;

    auto consider = [&](std::vector<int> s) {
        double elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
        if (states_left <= 0 || elapsed >= budget.time_limit_seconds) {
            best.exhausted = stop = true;
            return;
        }
        SearchBudget slice = budget;
        slice.max_states = states_left;
        slice.time_limit_seconds = budget.time_limit_seconds - elapsed;
        RoutingNumberResult r = routing_number_exact(g.induced(s), slice);
        states_left -= r.states_visited;
        if (r.exhausted) {
            best.exhausted = stop = true;
            return;
        }
        if (!found || r.value < best.routing_time) {
            found = true;
            std::sort(s.begin(), s.end());
            best.vertices = std::move(s);
            best.routing_time = r.value;
        }
    };

    // connected sets anchored at their minimum vertex, grown by one frontier
    // vertex at a time; a candidate popped for branching stays excluded for
    // the rest of that branch, so every set appears exactly once
    std::vector<int> s;
    std::function<void(std::vector<int>, std::vector<char>)> grow =
        [&](std::vector<int> ext, std::vector<char> visited) {
            if (stop) return;
            if (static_cast<int>(s.size()) == h) {
                consider(s);
                return;
            }
            while (!ext.empty() && !stop) {
                int w = ext.back();
                ext.pop_back();
                std::vector<int> ext2 = ext;
                std::vector<char> vis2 = visited;
                for (int x : g.neighbors(w))
                    if (!vis2[x] && x > s[0]) {
                        vis2[x] = 1;
                        ext2.push_back(x);
                    }
                s.push_back(w);
                grow(std::move(ext2), std::move(vis2));
                s.pop_back();
            }
        };
    for (int v0 = 0; !stop && v0 < g.n(); ++v0) {
        std::vector<char> visited(g.n(), 0);
        visited[v0] = 1;
        std::vector<int> ext;
        for (int w : g.neighbors(v0))
            if (w > v0) {
                visited[w] = 1;
                ext.push_back(w);
            }
        s = {v0};
        grow(std::move(ext), std::move(visited));
    }
    if (!found && !best.exhausted)
        throw std::invalid_argument("no connected subgraph of the requested order");
    if (found) best.ratio = static_cast<double>(best.routing_time) / h;
    return best;
}

namespace {

RootedTree spanning_tree(const Graph& local, int root) {
    std::vector<int> parent(local.n(), -2);
    std::deque<int> queue{root};
    parent[root] = -1;
    std::vector<std::pair<int, int>> edges;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : local.neighbors(v))
            if (parent[w] == -2) {
                parent[w] = v;
                edges.emplace_back(v, w);
                queue.push_back(w);
            }
    }
    return RootedTree::build(Graph(local.n(), edges), root);
}

// Overlays a block-local schedule onto the shared step list, step s of the
// block landing in slot s. Blocks are vertex-disjoint, so steps merge freely.
void merge_parallel(std::vector<MatchingStep>& into, const Schedule& sub,
                    const std::vector<int>& to_global) {
    for (size_t st = 0; st < sub.steps.size(); ++st) {
        if (st == into.size()) into.emplace_back();
        for (auto [u, v] : sub.steps[st].pairs)
            into[st].pairs.emplace_back(to_global[u], to_global[v]);
    }
}

}  // namespace

Schedule route_hconnected(const Graph& g, const Permutation& pi,
                          const ConnectedPartition& part, const Graph& ports_graph,
                          const HConnOptions& opts) {
    check_partition(g, part);
    int n = g.n(), h = part.h();
    if (pi.n() != n) throw std::invalid_argument("permutation size mismatch");
    {
        Graph expect = g.induced(part.ports);
        if (ports_graph.n() != expect.n() || ports_graph.edges() != expect.edges())
            throw std::invalid_argument("ports subgraph must be induced on the ports");
    }
    if (!ports_graph.is_connected())
        throw std::invalid_argument("ports subgraph must be connected");

    std::vector<int> block_of(n, -1), loc(n, -1);
    std::vector<std::vector<int>> verts(h);
    int b = 0;
    for (int i = 0; i < h; ++i) {
        verts[i] = part.blocks[i];
        std::sort(verts[i].begin(), verts[i].end());
        b = std::max(b, static_cast<int>(verts[i].size()));
        for (int ell = 0; ell < static_cast<int>(verts[i].size()); ++ell) {
            block_of[verts[i][ell]] = i;
            loc[verts[i][ell]] = ell;
        }
    }
    std::vector<int> sorted_ports = part.ports;
    std::sort(sorted_ports.begin(), sorted_ports.end());
    std::vector<int> pl(h);  // block index -> vertex of ports_graph
    for (int i = 0; i < h; ++i)
        pl[i] = static_cast<int>(std::lower_bound(sorted_ports.begin(), sorted_ports.end(),
                                                  part.ports[i]) -
                                 sorted_ports.begin());

    // departure lists: one entry per pebble leaving its block, padded with
    // do-nothing slots so every list reaches the round count b
    PortLists lists;
    lists.lists.assign(h, {});
    std::vector<std::vector<std::deque<int>>> queue(
        h, std::vector<std::deque<int>>(h));
    for (int i = 0; i < h; ++i) {
        for (int v : verts[i]) {
            int c = block_of[pi(v)];
            if (c == i) continue;
            lists.lists[i].push_back(c);
            queue[i][c].push_back(v);
        }
        while (static_cast<int>(lists.lists[i].size()) < b) lists.lists[i].push_back(i);
    }
    PortArray array = build_port_array(lists);

    // slot[i][j]: pebble leaving block i in round j (-1 for padded slots);
    // arrivals into block c, in round order, mirror the slots column-wise
    std::vector<std::vector<int>> slot(h, std::vector<int>(b, -1));
    std::vector<std::vector<int>> arr_pebble(h), arr_round(h);
    for (int j = 0; j < b; ++j)
        for (int i = 0; i < h; ++i) {
            int c = array.rows[i][j];
            if (c == i) continue;
            slot[i][j] = queue[i][c].front();
            queue[i][c].pop_front();
            arr_pebble[c].push_back(slot[i][j]);
            arr_round[c].push_back(j);
        }

    // spanning trees and arrival lanes: the m-th arrival of a block parks at
    // the m-th deepest vertex, so every lane below a parked vertex is dead
    std::vector<RootedTree> tree;
    tree.reserve(h);
    std::vector<std::vector<std::vector<int>>> lane(h);
    for (int i = 0; i < h; ++i) {
        tree.push_back(spanning_tree(g.induced(verts[i]), loc[part.ports[i]]));
        std::vector<int> rlo = reverse_level_order(tree[i]);
        lane[i].resize(arr_pebble[i].size());
        for (size_t m = 0; m < lane[i].size(); ++m) {
            for (int u = rlo[m]; u != -1; u = tree[i].parent[u])
                lane[i][m].push_back(u);
            std::reverse(lane[i][m].begin(), lane[i][m].end());
        }
    }

    // conveyor simulation with vertex-labelled tokens: records which start
    // vertex surfaces at the port before each real round (the phase-1 target
    // of that round's outgoing pebble) and every descent matching for replay
    std::vector<std::vector<int>> tok(h), apos(h);
    std::vector<int> entered(h, 0);
    for (int i = 0; i < h; ++i) {
        tok[i].resize(verts[i].size());
        std::iota(tok[i].begin(), tok[i].end(), 0);
        apos[i].assign(arr_pebble[i].size(), 0);
    }
    std::vector<std::vector<std::pair<int, int>>> half;
    std::vector<std::vector<int>> surf(h, std::vector<int>(b, -1));
    auto do_half = [&](int parity) {
        std::vector<std::pair<int, int>> moves;
        for (int i = 0; i < h; ++i)
            for (int m = 0; m < entered[i]; ++m) {
                if (apos[i][m] + 1 == static_cast<int>(lane[i][m].size())) continue;
                int v = lane[i][m][apos[i][m]];
                if (tree[i].level[v] % 2 != parity) continue;
                int w = lane[i][m][apos[i][m] + 1];
                std::swap(tok[i][v], tok[i][w]);
                ++apos[i][m];
                moves.emplace_back(verts[i][v], verts[i][w]);
            }
        half.push_back(std::move(moves));
    };
    for (int j = 0; j < b; ++j) {
        for (int i = 0; i < h; ++i) {
            if (slot[i][j] == -1) continue;
            int root = tree[i].root;
            int k = static_cast<int>(verts[i].size());
            if (tok[i][root] >= k)
                throw std::logic_error("conveyor surfaced an incoming pebble");
            surf[i][j] = tok[i][root];
            int m = entered[i]++;
            if (arr_round[i][m] != j)
                throw std::logic_error("conveyor arrival out of order");
            tok[i][root] = k + m;
        }
        do_half(0);
        do_half(1);
    }
    for (int spin = 0;; ++spin) {
        bool busy = false;
        for (int i = 0; i < h && !busy; ++i)
            for (int m = 0; m < entered[i] && !busy; ++m)
                busy = apos[i][m] + 1 != static_cast<int>(lane[i][m].size());
        if (!busy) break;
        if (spin > n + 4) throw std::logic_error("conveyor failed to park");
        do_half(0);
        do_half(1);
    }

    Schedule sched;
    std::vector<int> at(n);
    std::iota(at.begin(), at.end(), 0);
    auto emit = [&](MatchingStep step) {
        if (step.empty()) return;
        step.normalize();
        for (auto [u, v] : step.pairs) std::swap(at[u], at[v]);
        sched.steps.push_back(std::move(step));
    };
    auto emit_merged = [&](const std::vector<MatchingStep>& merged) {
        for (const auto& step : merged) emit(step);
    };

    // phase 1: each block routes its outgoing pebbles onto the start vertices
    // the conveyor will drain, stayers onto the leftovers
    {
        std::vector<MatchingStep> merged;
        for (int i = 0; i < h; ++i) {
            int k = static_cast<int>(verts[i].size());
            std::vector<int> target(k, -1);
            std::vector<char> taken(k, 0);
            for (int j = 0; j < b; ++j)
                if (slot[i][j] != -1) {
                    target[loc[slot[i][j]]] = surf[i][j];
                    taken[surf[i][j]] = 1;
                }
            int free_v = 0;
            for (int ell = 0; ell < k; ++ell) {
                if (target[ell] != -1) continue;
                while (taken[free_v]) ++free_v;
                target[ell] = free_v;
                taken[free_v] = 1;
            }
            merge_parallel(merged, route_tree(tree[i], Permutation(target)), verts[i]);
        }
        emit_merged(merged);
    }

    // phase 2: route each column permutation across the ports, then let the
    // two descent matchings absorb arrivals and surface the next departures
    RootedTree ports_tree;
    if (h > 6) ports_tree = spanning_tree(ports_graph, 0);
    size_t next_half = 0;
    for (int j = 0; j < b; ++j) {
        std::vector<int> image(h);
        for (int i = 0; i < h; ++i) image[pl[i]] = pl[array.rows[i][j]];
        Permutation sigma(image);
        if (!sigma.is_identity()) {
            for (int i = 0; i < h; ++i)
                if (slot[i][j] != -1 && at[part.ports[i]] != slot[i][j])
                    throw std::logic_error("port holds the wrong outgoing pebble");
            Schedule ps;
            if (h <= 6) {
                ExactRoutingResult r = routing_time_exact(ports_graph, sigma);
                if (r.exhausted) throw std::logic_error("port routing exhausted");
                ps = std::move(r.witness);
            } else {
                ps = route_tree(ports_tree, sigma);
            }
            for (const auto& st : ps.steps) {
                MatchingStep gstep;
                for (auto [u, v] : st.pairs)
                    gstep.pairs.emplace_back(sorted_ports[u], sorted_ports[v]);
                emit(std::move(gstep));
            }
        }
        for (int twice = 0; twice < 2; ++twice, ++next_half) {
            MatchingStep step;
            step.pairs = half[next_half];
            emit(std::move(step));
        }
    }
    for (; next_half < half.size(); ++next_half) {
        MatchingStep step;
        step.pairs = half[next_half];
        emit(std::move(step));
    }

    // phase 3: blocks deliver their final contents in parallel
    {
        std::vector<MatchingStep> merged;
        for (int i = 0; i < h; ++i) {
            int k = static_cast<int>(verts[i].size());
            std::vector<int> image(k);
            for (int ell = 0; ell < k; ++ell) {
                int dest = pi(at[verts[i][ell]]);
                if (block_of[dest] != i)
                    throw std::logic_error("pebble ended the rounds in the wrong block");
                image[ell] = loc[dest];
            }
            merge_parallel(merged, route_tree(tree[i], Permutation(image)), verts[i]);
        }
        emit_merged(merged);
    }

    return opts.pipelined ? compact_schedule(n, sched) : sched;
}

}  // namespace rvm
