#include "rvm/connectivity.hpp"

#include <algorithm>
#include <queue>
#include <vector>

namespace rvm {

namespace {

// Unit-capacity Dinic, good enough for the n <= a few hundred graphs here.
class MaxFlow {
public:
    explicit MaxFlow(int n) : head_(n, -1) {}

    void add_edge(int u, int v, int cap) {
        edges_.push_back({v, head_[u], cap});
        head_[u] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({u, head_[v], 0});
        head_[v] = static_cast<int>(edges_.size()) - 1;
    }

    int run(int s, int t, int limit) {
        int flow = 0;
        while (flow < limit && bfs(s, t)) {
            iter_ = head_;
            while (flow < limit) {
                int pushed = dfs(s, t, limit - flow);
                if (!pushed) break;
                flow += pushed;
            }
        }
        return flow;
    }

private:
    struct Edge {
        int to, next, cap;
    };

    bool bfs(int s, int t) {
        level_.assign(head_.size(), -1);
        std::queue<int> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int e = head_[v]; e != -1; e = edges_[e].next)
                if (edges_[e].cap > 0 && level_[edges_[e].to] == -1) {
                    level_[edges_[e].to] = level_[v] + 1;
                    q.push(edges_[e].to);
                }
        }
        return level_[t] != -1;
    }

    int dfs(int v, int t, int budget) {
        if (v == t) return budget;
        for (int& e = iter_[v]; e != -1; e = edges_[e].next) {
            Edge& edge = edges_[e];
            if (edge.cap > 0 && level_[edge.to] == level_[v] + 1) {
                int pushed = dfs(edge.to, t, std::min(budget, edge.cap));
                if (pushed) {
                    edge.cap -= pushed;
                    edges_[e ^ 1].cap += pushed;
                    return pushed;
                }
            }
        }
        return 0;
    }

    std::vector<int> head_;
    std::vector<Edge> edges_;
    std::vector<int> level_;
    std::vector<int> iter_;
};

// Max number of internally vertex-disjoint s-t paths, s and t non-adjacent.
// Every vertex v splits into v_in (v) and v_out (v+n) joined by a unit arc.
int disjoint_paths(const Graph& g, int s, int t, int limit) {
    int n = g.n();
    MaxFlow flow(2 * n);
    for (int v = 0; v < n; ++v) flow.add_edge(v, v + n, v == s || v == t ? limit : 1);
    for (auto [u, v] : g.edges()) {
        flow.add_edge(u + n, v, limit);
        flow.add_edge(v + n, u, limit);
    }
    return flow.run(s, t + n, limit);
}

}  // namespace

int vertex_connectivity(const Graph& g) {
    int n = g.n();
    if (n <= 1) return 0;
    if (!g.is_connected()) return 0;
    if (g.m() == n * (n - 1) / 2) return n - 1;

    // Menger: flow(s,t) >= kappa for every non-adjacent pair, so best never
    // drops below kappa. Some s in {0..kappa} avoids a minimum cut C and has
    // a non-neighbor on the far side of C, so scanning s while s <= best is
    // guaranteed to hit the exact value.
    int best = n - 1;
    for (int s = 0; s <= best && s < n; ++s) {
        for (int t = 0; t < n; ++t) {
            if (t == s || g.has_edge(s, t)) continue;
            best = std::min(best, disjoint_paths(g, s, t, best + 1));
        }
    }
    return best;
}

bool is_k_connected(const Graph& g, int k) {
    if (k <= 0) return true;
    return vertex_connectivity(g) >= k;
}

}  // namespace rvm
