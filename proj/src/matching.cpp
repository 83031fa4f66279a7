#include "rvm/matching.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace rvm {

namespace {

// Classic blossom-contraction search for one augmenting path.
struct BlossomSolver {
    const Graph& g;
    int n;
    std::vector<int> mate, parent, base;
    std::vector<char> used, in_blossom;

    explicit BlossomSolver(const Graph& graph)
        : g(graph), n(graph.n()), mate(n, -1), parent(n), base(n), used(n), in_blossom(n) {}

    int lowest_common_base(int a, int b) {
        std::vector<char> seen(n, 0);
        while (true) {
            a = base[a];
            seen[a] = 1;
            if (mate[a] == -1) break;
            a = parent[mate[a]];
        }
        while (true) {
            b = base[b];
            if (seen[b]) return b;
            b = parent[mate[b]];
        }
    }

    void mark_path(int v, int stop, int child) {
        while (base[v] != stop) {
            in_blossom[base[v]] = 1;
            in_blossom[base[mate[v]]] = 1;
            parent[v] = child;
            child = mate[v];
            v = parent[mate[v]];
        }
    }

    // BFS from an exposed root; returns an exposed vertex whose parent chain
    // encodes an augmenting path, or -1.
    int find_path(int root) {
        std::fill(used.begin(), used.end(), 0);
        std::fill(parent.begin(), parent.end(), -1);
        for (int i = 0; i < n; ++i) base[i] = i;
        used[root] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int to : g.neighbors(v)) {
                if (base[v] == base[to] || mate[v] == to) continue;
                if (to == root || (mate[to] != -1 && parent[mate[to]] != -1)) {
                    // Odd cycle: contract the blossom.
                    int stop = lowest_common_base(v, to);
                    std::fill(in_blossom.begin(), in_blossom.end(), 0);
                    mark_path(v, stop, to);
                    mark_path(to, stop, v);
                    for (int i = 0; i < n; ++i)
                        if (in_blossom[base[i]]) {
                            base[i] = stop;
                            if (!used[i]) {
                                used[i] = 1;
                                q.push(i);
                            }
                        }
                } else if (parent[to] == -1) {
                    parent[to] = v;
                    if (mate[to] == -1) return to;
                    used[mate[to]] = 1;
                    q.push(mate[to]);
                }
            }
        }
        return -1;
    }

    void augment(int v) {
        while (v != -1) {
            int pv = parent[v];
            int next = mate[pv];
            mate[v] = pv;
            mate[pv] = v;
            v = next;
        }
    }

    std::vector<int> solve() {
        for (int v = 0; v < n; ++v)
            if (mate[v] == -1) {
                int end = find_path(v);
                if (end != -1) augment(end);
            }
        return mate;
    }
};

}  // namespace

std::vector<int> max_matching(const Graph& g) { return BlossomSolver(g).solve(); }

int max_matching_size(const Graph& g) {
    auto mate = max_matching(g);
    int count = 0;
    for (int v : mate)
        if (v != -1) ++count;
    return count / 2;
}

std::vector<int> bipartite_matching(int left, int right,
                                    const std::vector<std::vector<int>>& adj) {
    std::vector<int> match_left(left, -1), match_right(right, -1);
    std::vector<char> visited(right);

    // Kuhn's augmenting search.
    std::function<bool(int)> try_kuhn = [&](int l) -> bool {
        for (int r : adj[l]) {
            if (visited[r]) continue;
            visited[r] = 1;
            if (match_right[r] == -1 || try_kuhn(match_right[r])) {
                match_left[l] = r;
                match_right[r] = l;
                return true;
            }
        }
        return false;
    };

    for (int l = 0; l < left; ++l) {
        std::fill(visited.begin(), visited.end(), 0);
        try_kuhn(l);
    }
    return match_left;
}

}  // namespace rvm
