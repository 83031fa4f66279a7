#ifndef RVM_SCHEDULE_HPP
#define RVM_SCHEDULE_HPP

#include <string>
#include <vector>

#include "rvm/graph.hpp"
#include "rvm/permutation.hpp"

namespace rvm {

// One routing step: a set of graph edges, pairwise vertex-disjoint. The two
// pebbles on a matched edge swap; everything else stays put.
struct MatchingStep {
    std::vector<std::pair<int, int>> pairs;

    // Sorts pairs, normalizes each to u < v.
    void normalize();
    bool contains_vertex(int v) const;
    bool empty() const { return pairs.empty(); }
};

struct Schedule {
    std::vector<MatchingStep> steps;

    int length() const { return static_cast<int>(steps.size()); }
    void append(const MatchingStep& step) { steps.push_back(step); }
};

// Applies one step. Throws std::invalid_argument when a pair is not an edge
// of g, an endpoint repeats within the step, or an endpoint is out of range.
PebbleConfig apply_matching(const Graph& g, const PebbleConfig& config,
                            const MatchingStep& step);

// Runs the whole schedule from the initial configuration.
PebbleConfig apply_schedule(const Graph& g, const Schedule& schedule);

// Slides every step to the earliest slot whose steps it shares no vertex
// with (vertex-disjoint swaps commute, so this preserves the outcome) and
// drops empty steps. Never longer than the input.
Schedule compact_schedule(int n, const Schedule& schedule);

struct VerificationReport {
    bool valid = false;
    // Index of the first step that is not a matching of g (or is empty);
    // -1 when all steps are fine.
    int first_bad_step = -1;
    std::string reason;
    PebbleConfig final_config;
};

// Checks that every step is a nonempty matching of g and that running the
// schedule routes pebble i to pi(i) for all i. Empty steps are rejected: a
// do-nothing round never belongs in a witness.
VerificationReport verify_schedule(const Graph& g, const Permutation& pi,
                                   const Schedule& schedule);


}  // namespace rvm

#endif
