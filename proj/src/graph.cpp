#include "rvm/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rvm {

Graph::Graph(int n) : n_(n), adj_(n) {
    if (n < 0) throw std::invalid_argument("graph size must be nonnegative");
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= n_)
        throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
}

void Graph::add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("loop edge at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    std::pair<int, int> e{u, v};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it != edges_.end() && *it == e)
        throw std::invalid_argument("duplicate edge " + std::to_string(u) + "-" +
                                    std::to_string(v));
    edges_.insert(it, e);
    adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
    adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
}

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v) return false;
    const auto& nb = adj_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

int Graph::degree(int v) const {
    check_vertex(v);
    return static_cast<int>(adj_[v].size());
}

int Graph::max_degree() const {
    int d = 0;
    for (const auto& nb : adj_) d = std::max(d, static_cast<int>(nb.size()));
    return d;
}

const std::vector<int>& Graph::neighbors(int v) const {
    check_vertex(v);
    return adj_[v];
}

std::vector<int> Graph::component_ids() const {
    std::vector<int> id(n_, -1);
    int next = 0;
    std::vector<int> stack;
    for (int s = 0; s < n_; ++s) {
        if (id[s] != -1) continue;
        id[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj_[v])
                if (id[w] == -1) {
                    id[w] = next;
                    stack.push_back(w);
                }
        }
        ++next;
    }
    return id;
}

bool Graph::is_connected() const {
    if (n_ <= 1) return true;
    auto id = component_ids();
    return std::all_of(id.begin(), id.end(), [](int c) { return c == 0; });
}

bool Graph::is_tree() const {
    return m() == n_ - 1 && is_connected();
}

Graph Graph::induced(std::vector<int> verts) const {
    std::sort(verts.begin(), verts.end());
    if (std::adjacent_find(verts.begin(), verts.end()) != verts.end())
        throw std::invalid_argument("induced: duplicate vertex");
    for (int v : verts) check_vertex(v);
    std::vector<int> local(n_, -1);
    for (int i = 0; i < static_cast<int>(verts.size()); ++i) local[verts[i]] = i;
    Graph sub(static_cast<int>(verts.size()));
    for (int i = 0; i < static_cast<int>(verts.size()); ++i)
        for (int w : adj_[verts[i]])
            if (local[w] > i) sub.add_edge(i, local[w]);
    return sub;
}

std::vector<int> Graph::distances_from(int src) const {
    check_vertex(src);
    std::vector<int> dist(n_, -1);
    dist[src] = 0;
    std::vector<int> queue{src};
    for (size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        for (int w : adj_[v])
            if (dist[w] == -1) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

Graph path_graph(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
    Graph g = path_graph(n);
    g.add_edge(0, n - 1);
    return g;
}

Graph star_graph(int n) {
    if (n < 1) throw std::invalid_argument("star needs at least 1 vertex");
    Graph g(n);
    for (int v = 1; v < n; ++v) g.add_edge(0, v);
    return g;
}

Graph complete_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph complete_bipartite_graph(int a, int b) {
    if (a < 1 || b < 1) throw std::invalid_argument("bipartite sides must be nonempty");
    Graph g(a + b);
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < b; ++v) g.add_edge(u, a + v);
    return g;
}

Graph hypercube_graph(int d) {
    if (d < 0 || d > 20) throw std::invalid_argument("hypercube dimension out of range");
    Graph g(1 << d);
    for (int v = 0; v < (1 << d); ++v)
        for (int b = 0; b < d; ++b)
            if (!(v & (1 << b))) g.add_edge(v, v | (1 << b));
    return g;
}

Graph random_tree(int n, std::mt19937& rng) {
    if (n < 1) throw std::invalid_argument("tree needs at least 1 vertex");
    if (n == 1) return Graph(1);
    if (n == 2) return path_graph(2);
    // Pruefer decoding gives the uniform distribution on labelled trees.
    std::vector<int> code(n - 2);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int& c : code) c = pick(rng);
    std::vector<int> deg(n, 1);
    for (int c : code) ++deg[c];
    Graph g(n);
    int ptr = 0;
    while (deg[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (int c : code) {
        g.add_edge(leaf, c);
        if (--deg[c] == 1 && c < ptr) {
            leaf = c;
        } else {
            while (deg[++ptr] != 1) {}
            leaf = ptr;
        }
    }
    g.add_edge(leaf, n - 1);
    return g;
}

Graph random_connected_graph(int n, int m, std::mt19937& rng) {
    long long max_m = static_cast<long long>(n) * (n - 1) / 2;
    if (m < n - 1 || m > max_m)
        throw std::invalid_argument("edge count incompatible with connected graph");
    Graph g = random_tree(n, rng);
    std::vector<std::pair<int, int>> spare;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.has_edge(u, v)) spare.emplace_back(u, v);
    std::shuffle(spare.begin(), spare.end(), rng);
    for (int i = 0; i < m - (n - 1); ++i) g.add_edge(spare[i].first, spare[i].second);
    return g;
}

}  // namespace rvm
