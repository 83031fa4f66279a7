#ifndef RVM_HCONNROUTE_HPP
#define RVM_HCONNROUTE_HPP

#include <vector>

#include "rvm/graph.hpp"
#include "rvm/oracle.hpp"
#include "rvm/permutation.hpp"
#include "rvm/schedule.hpp"

namespace rvm {

// Partition of the vertex set into connected blocks, each with a
// distinguished port vertex. blocks[i] is sorted and contains ports[i].
struct ConnectedPartition {
    std::vector<std::vector<int>> blocks;
    std::vector<int> ports;

    int h() const { return static_cast<int>(blocks.size()); }
};

// Throws std::invalid_argument unless the blocks partition 0..n-1, every
// induced block subgraph is connected, and ports[i] lies in blocks[i].
void check_partition(const Graph& g, const ConnectedPartition& part);

struct PartitionResult {
    bool exhausted = false;        // budget ran out before a partition was found
    ConnectedPartition partition;  // valid when !exhausted
    long long nodes_visited = 0;
};

// Splits an h-connected graph into connected blocks of the given sizes with
// terminals[i] inside block i. Such a partition always exists at this
// connectivity, so the budget guards against search blowup, not against
// nonexistence. Backtracking: the block with the smallest open quota grows
// by one frontier vertex at a time; a state is cut when some component of
// the unassigned region cannot be absorbed by the blocks bordering it, or
// some block cannot reach enough unassigned vertices to fill up.
PartitionResult find_partition(const Graph& g, const std::vector<int>& sizes,
                               const std::vector<int>& terminals,
                               const SearchBudget& budget = {});

// a lists of length b, entries in 0..a-1, every value appearing exactly b
// times across all lists.
struct PortLists {
    std::vector<std::vector<int>> lists;

    int a() const { return static_cast<int>(lists.size()); }
    int b() const { return lists.empty() ? 0 : static_cast<int>(lists[0].size()); }
};

// Row i is a permutation of lists[i] and every column is a permutation of
// 0..a-1.
struct PortArray {
    std::vector<std::vector<int>> rows;

    int a() const { return static_cast<int>(rows.size()); }
    int b() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()); }
};

// Builds the array column by column. A system of distinct representatives
// for the remaining lists always exists (any k lists hold k*(remaining
// length) entries and no value has more copies than that length, so they
// span at least k values); each column is found as a perfect bipartite
// matching and removed from the lists. Throws std::invalid_argument when
// the input violates the PortLists counting invariants.
PortArray build_port_array(const PortLists& lists);

struct PortSubgraphResult {
    bool exhausted = false;     // an oracle call ran out of budget
    std::vector<int> vertices;  // sorted vertex set of the best subgraph found
    int routing_time = -1;      // exact routing number of that subgraph
    double ratio = 0.0;         // routing_time / |vertices|
};

// Minimizes rt(G[S]) / |S| over connected induced subgraphs with exactly h
// vertices, by exhaustive enumeration plus the exact oracle (desk scale).
// Ties keep the first subgraph in enumeration order. Throws when the graph
// has no connected subgraph of order h.
PortSubgraphResult best_port_subgraph(const Graph& g, int h,
                                      const SearchBudget& budget = {});

struct HConnOptions {
    // Packs the finished schedule: every step slides to the earliest slot
    // whose steps it is vertex-disjoint from (disjoint swaps commute), which
    // overlaps block-interior traffic with port rounds. Off by default; the
    // unpacked schedule is the correctness baseline.
    bool pipelined = false;
};

// Routes pi on a graph decomposed into connected blocks wired together by
// the induced ports subgraph (ports_graph must equal g.induced(part.ports)
// and be connected). Three phases:
//   1. each block rearranges internally so that its outgoing pebbles surface
//      at its port in the order of its row of the port array built from the
//      destination-block lists;
//   2. one round per array column: the column permutation is routed on the
//      ports subgraph (exact oracle for up to 6 ports, else a spanning-tree
//      route), then two matchings let arrivals descend into block interiors
//      while the next outgoing pebbles drift up to the ports;
//   3. each block delivers its final contents internally, in parallel.
// Pebbles destined for their own block never enter the port conveyor; rows
// are padded with do-nothing slots instead, so the identity permutation
// yields an empty schedule.
Schedule route_hconnected(const Graph& g, const Permutation& pi,
                          const ConnectedPartition& part, const Graph& ports_graph,
                          const HConnOptions& opts = {});

}  // namespace rvm

#endif
