#ifndef RVM_MAXROUTE_HPP
#define RVM_MAXROUTE_HPP

#include <vector>

#include "rvm/graph.hpp"
#include "rvm/oracle.hpp"
#include "rvm/permutation.hpp"
#include "rvm/schedule.hpp"

namespace rvm {

// Length-k walk of one pebble in the self-loop augmentation of g:
// vertices[0] is the owner's start, vertices[k] its destination, consecutive
// entries equal (stay put) or adjacent.
struct Walk {
    int owner = 0;
    std::vector<int> vertices;

    int k() const { return static_cast<int>(vertices.size()) - 1; }
};

// All walks of length exactly k from `from` to `to`, stays allowed,
// ascending-vertex order at every step. At most (max_degree+1)^k of them.
std::vector<Walk> enumerate_walks(const Graph& g, int from, int to, int k);

// Two walks can run side by side iff they are never on the same vertex at
// the same time and never trade one-sidedly: a move onto the other walk's
// vertex is legal only when the other simultaneously moves here (a swap).
// Throws on length mismatch.
bool walks_compatible(const Walk& a, const Walk& b);

// One vertex per candidate walk, blocks grouped by owner pebble, edges only
// between compatible walks of distinct owners, so the graph is n-partite and
// any clique picks at most one walk per pebble.
struct CliqueGraph {
    std::vector<Walk> walks;                  // grouped by owner
    std::vector<std::pair<int, int>> blocks;  // per pebble: [first, last) into walks
    std::vector<std::vector<bool>> adjacent;

    int size() const { return static_cast<int>(walks.size()); }
};

// Throws std::runtime_error when the walk count outgrows the budget (the
// adjacency is quadratic, so there is also a hard internal cap) or the
// pairwise compatibility pass outruns the time limit.
CliqueGraph build_clique_graph(const Graph& g, const Permutation& pi, int k,
                               const SearchBudget& budget = {});

// Maximal clique as sorted walk indices, deterministic per seed. Starts from
// the stay walks of the permutation's fixed points (pairwise compatible), so
// the result is never smaller than the fixed-point count.
std::vector<int> max_clique_greedy(const CliqueGraph& cg, unsigned seed);

enum class MaxRouteMode { kExact, kGreedy };

struct MaxRoutabilityResult {
    int m = 0;
    std::vector<int> clique;  // walk indices into the clique graph
    Schedule schedule;        // length <= k, lands the m chosen pebbles
    int clique_graph_size = 0;
};

// Most pebbles any schedule of length <= k can land on their destinations.
// Exact mode runs a partition-aware branch and bound (bound: chosen so far
// plus blocks that still have compatible candidates); greedy mode reports
// the maximal-clique lower bound. The schedule is read off the chosen walks:
// mutual trades become swaps, and a walk entering a vertex no chosen walk
// occupies drags that bystander pebble back along the edge.
MaxRoutabilityResult max_routability(const Graph& g, const Permutation& pi, int k,
                                     MaxRouteMode mode, const SearchBudget& budget = {},
                                     unsigned seed = 1);

}  // namespace rvm

#endif
