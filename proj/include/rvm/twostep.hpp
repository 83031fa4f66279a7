#ifndef RVM_TWOSTEP_HPP
#define RVM_TWOSTEP_HPP

#include <optional>
#include <utility>
#include <vector>

#include "rvm/graph.hpp"
#include "rvm/permutation.hpp"
#include "rvm/schedule.hpp"

namespace rvm {

// Polynomial decision procedure for "is rt(G, pi) <= 2", with witness.
//
// A cycle routes itself in two steps only as a pair of reflections: if
// M2 o M1 rotates (c_0 .. c_{a-1}) one position then conjugating the rotation
// by the involution M1 must invert it, which forces M1(c_t) = c_{s-t} and
// M2(c_t) = c_{s+1-t} for some offset s. Likewise a cycle pair of equal
// length a routed purely across forces the crossing patterns
// {x_p, y_{c-p}} then {x_p, y_{c+1-p}}. Each candidate offset is checked by
// letting every available edge vote for the offsets it can serve.

// A two-step sub-schedule; either half may be empty (a 2-cycle with its edge
// present needs only one of the two steps).
struct TwoStepScheme {
    MatchingStep first, second;
};

// Cycle graph of pi on g: one node per cycle, a loop where the cycle can
// route itself, an edge where two cycles can route each other.
struct CycleGraph {
    std::vector<std::vector<int>> nodes;  // vertex lists, graphcore cycle order
    std::vector<char> loops;
    std::vector<TwoStepScheme> loop_schemes;   // meaningful where loops[i]
    std::vector<std::pair<int, int>> edges;    // i < j
    std::vector<TwoStepScheme> edge_schemes;   // parallel to edges
};

// Rotation scheme for one cycle using only edges inside it, or nullopt.
// Cycle length >= 2; fixed points are handled by build_cycle_graph directly.
std::optional<Schedule> self_routable(const Graph& g, const std::vector<int>& cycle);

// Scheme routing both cycles using only edges between them, or nullopt.
// Unequal lengths are immediately unroutable.
std::optional<Schedule> mutually_routable(const Graph& g, const std::vector<int>& cycle_i,
                                          const std::vector<int>& cycle_j);

CycleGraph build_cycle_graph(const Graph& g, const Permutation& pi);

// Schedule of length <= 2, or nullopt when rt(G, pi) > 2. Length 0 and 1
// cases are answered directly; otherwise a perfect matching on the cycle
// graph (loops may cover their own node) merges the stored sub-schedules.
std::optional<Schedule> route_in_two(const Graph& g, const Permutation& pi);

}  // namespace rvm

#endif
