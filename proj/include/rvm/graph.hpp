#ifndef RVM_GRAPH_HPP
#define RVM_GRAPH_HPP

#include <random>
#include <utility>
#include <vector>

namespace rvm {

// Simple undirected graph on vertices 0..n-1. No loops, no parallel edges.
// Build it (constructor or add_edge), then treat it as immutable: every
// routine in this library takes `const Graph&` and never mutates.
class Graph {
public:
    explicit Graph(int n = 0);
    Graph(int n, const std::vector<std::pair<int, int>>& edges);

    // Inserts {u,v}; throws std::invalid_argument on loops, out-of-range
    // endpoints or duplicate edges.
    void add_edge(int u, int v);

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }

    bool has_edge(int u, int v) const;
    int degree(int v) const;
    int max_degree() const;

    // Sorted ascending.
    const std::vector<int>& neighbors(int v) const;
    // Each pair normalized u < v; list sorted lexicographically.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    bool is_connected() const;
    bool is_tree() const;
    // component_id[v] in 0..#components-1, numbered by smallest contained vertex.
    std::vector<int> component_ids() const;

    // Subgraph induced on `verts` (need not be sorted; duplicates rejected).
    // Vertex i of the result corresponds to sorted(verts)[i].
    Graph induced(std::vector<int> verts) const;

    // BFS distances from src; -1 for unreachable vertices.
    std::vector<int> distances_from(int src) const;

private:
    void check_vertex(int v) const;

    int n_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<std::pair<int, int>> edges_;
};

// Generators. Vertex conventions are part of the contract:
//   path_graph:  0-1-2-...-n-1
//   cycle_graph: path plus edge {0,n-1}, n >= 3
//   star_graph:  center 0, leaves 1..n-1
//   complete_bipartite: sides {0..a-1} and {a..a+b-1}
//   hypercube:   2^d vertices, edges between indices differing in one bit
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph star_graph(int n);
Graph complete_graph(int n);
Graph complete_bipartite_graph(int a, int b);
Graph hypercube_graph(int d);

// Uniform random labelled tree (Pruefer sequence).
Graph random_tree(int n, std::mt19937& rng);
// Random spanning tree plus extra edges until m edges total. Requires
// n-1 <= m <= n(n-1)/2.
Graph random_connected_graph(int n, int m, std::mt19937& rng);

}  // namespace rvm

#endif
