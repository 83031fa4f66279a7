#ifndef RVM_TREEROUTE_HPP
#define RVM_TREEROUTE_HPP

#include <string>
#include <vector>

#include "rvm/graph.hpp"
#include "rvm/permutation.hpp"
#include "rvm/schedule.hpp"

namespace rvm {

struct RootedTree {
    Graph graph;
    int root = 0;
    std::vector<int> parent;  // parent[root] = -1
    std::vector<int> level;   // level[root] = 0

    static RootedTree build(const Graph& g, int root);
    int n() const { return graph.n(); }
};

// Routes a full permutation on the tree. Paths use odd-even transposition
// sorting (at most n rounds). Other trees recurse on a centroid: phase one
// moves every pebble into the component of its destination by chaining
// exchanges through the centroid along the closed trails of the
// between-component demand multigraph, phase two recurses into the
// components in parallel. Length is well under 3n in practice; tests pin
// that bound on large random samples.
Schedule route_tree(const RootedTree& t, const Permutation& pi);

struct SubsetTask {
    // (source vertex, destination vertex), sources distinct, destinations
    // distinct. Pebbles outside the task may end up anywhere.
    std::vector<std::pair<int, int>> pebbles;

    int p() const { return static_cast<int>(pebbles.size()); }
};

// Moves each tasked pebble to its destination. All pebbles walk their tree
// paths concurrently: pairs that want each other's vertex cross first with a
// shared swap (that is what unwinds rotation cycles), remaining walkers step
// onto empty vertices, queue behind moving pebbles, and bump pebbles already
// parked on their targets out of the way; a bumped pebble walks back once
// the traffic has passed. The rounds are then packed so vertex-disjoint
// swaps share a step. Length <= p + 2l (l = max tree distance of a task) on
// the instance families exercised by the tests. Throws on duplicate sources
// or destinations.
Schedule route_subset_tree(const RootedTree& t, const SubsetTask& task);

// Max tree distance between a task's source and destination.
int subset_task_span(const RootedTree& t, const SubsetTask& task);

// One incoming pebble of a pipeline fill and where it must land.
struct PipelineIncoming {
    int pebble;
    int dest;
};

struct ReplaceEvent {
    int vertex;
    int pebble;
};

struct PipelineEvent {
    enum Kind { kReplace, kMatch };
    Kind kind;
    ReplaceEvent replace{};  // when kReplace
    MatchingStep match;      // when kMatch
};

struct PipelineSchedule {
    std::vector<PipelineEvent> events;

    int replace_count() const;
    int size() const { return static_cast<int>(events.size()); }
};

// Vertices deepest level first (ties by index); the destination order
// pipeline_fill requires.
std::vector<int> reverse_level_order(const RootedTree& t);

// Replaces the whole tree content with the k incoming pebbles: repeating
// pattern of one replace-at-root event and two matching steps (empty
// matchings omitted). Destinations must cover every vertex, deepest first.
// A pebble delivered in round r descends two levels per round, so it is
// always at its destination or at an even level when the next replace
// happens, and everything parks by round k: at most 3k events, exactly k
// replaces.
PipelineSchedule pipeline_fill(const RootedTree& t,
                               const std::vector<PipelineIncoming>& incoming);

// Replays a pipeline schedule, checking the event pattern, the legality of
// every step, the even-level invariant before each replace, and final
// delivery. On failure returns false and, if why != nullptr, the reason.
bool verify_pipeline_fill(const RootedTree& t,
                          const std::vector<PipelineIncoming>& incoming,
                          const PipelineSchedule& schedule, std::string* why = nullptr);

}  // namespace rvm

#endif
