#ifndef RVM_ORACLE_HPP
#define RVM_ORACLE_HPP

#include "rvm/graph.hpp"
#include "rvm/permutation.hpp"
#include "rvm/schedule.hpp"

namespace rvm {

// Exhaustive-search reference implementations. Everything here is breadth
// first search over pebble configurations, so results are exact minima /
// maxima whenever the budget is not exhausted.

struct SearchBudget {
    int max_depth = -1;  // -1: no depth cap
    long long max_states = 10'000'000;
    double time_limit_seconds = 60.0;
};

enum class MatchingMode {
    kAll,          // every nonempty matching is a legal step
    kMaximalOnly,  // restrict steps to maximal matchings (strictly weaker;
                   // kept for head-to-head comparisons)
};

// All nonempty matchings of g, each normalized, enumerated by take/skip over
// the sorted edge list. The order is a pure function of the edge list, which
// keeps downstream output deterministic.
std::vector<MatchingStep> enumerate_matchings(const Graph& g,
                                              MatchingMode mode = MatchingMode::kAll);

struct ExactRoutingResult {
    bool exhausted = false;
    // Minimum number of steps when !exhausted; otherwise the best proven
    // lower bound at the point the budget ran out.
    int value = -1;
    Schedule witness;  // empty for value 0
    long long states_visited = 0;
    double elapsed_seconds = 0.0;
};

ExactRoutingResult routing_time_exact(const Graph& g, const Permutation& pi,
                                      const SearchBudget& budget = {},
                                      MatchingMode mode = MatchingMode::kAll);

struct RoutingNumberResult {
    bool exhausted = false;
    // max over permutations of the routing time; a lower bound if exhausted.
    int value = -1;
    Permutation witness;  // a permutation attaining value
    long long states_visited = 0;
    double elapsed_seconds = 0.0;
};

// One BFS from the identity configuration; the routing number is the
// eccentricity of the identity in the step graph.
RoutingNumberResult routing_number_exact(const Graph& g, const SearchBudget& budget = {});

struct MaxAgreementsResult {
    bool exhausted = false;
    // max over schedules of length <= k of #{i : pebble i ends on pi(i)}.
    int value = -1;
    Schedule witness;
    long long states_visited = 0;
    double elapsed_seconds = 0.0;
};

MaxAgreementsResult max_agreements_exact(const Graph& g, const Permutation& pi, int k,
                                         const SearchBudget& budget = {});

}  // namespace rvm

#endif
