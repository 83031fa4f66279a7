#ifndef RVM_CLIQUECONTRACT_HPP
#define RVM_CLIQUECONTRACT_HPP

#include <vector>

#include "rvm/graph.hpp"
#include "rvm/permutation.hpp"
#include "rvm/schedule.hpp"
#include "rvm/treeroute.hpp"

namespace rvm {

// A clique contracted to a planning super-vertex. Minor vertex i < m is
// outside[i]; the last minor vertex is the super-vertex standing in for the
// whole clique, which stores up to |clique| pebbles internally during
// routing (the ledger of who sits where lives in the router's state).
struct ContractedInstance {
    Graph original;
    std::vector<int> clique;   // sorted, pairwise adjacent
    std::vector<int> outside;  // sorted complement
    Graph minor;
    int super_vertex = 0;      // = minor.n() - 1
    RootedTree tree;           // spanning tree of the minor, rooted at the super-vertex
};

// Validates the clique (distinct, in range, pairwise adjacent) and that g is
// connected, then contracts. Throws std::invalid_argument otherwise.
ContractedInstance contract_clique(const Graph& g, std::vector<int> clique);

struct CliqueContractionStats {
    int exchange_steps = 0;      // clique <-> outside exchange phase
    int planned_steps = 0;       // minor tree-routing steps before expansion
    int super_vertex_steps = 0;  // planned steps that touch the super-vertex
    int expanded_steps = 0;      // real steps the planned phase expanded to
    int cleanup_steps = 0;       // final in-clique rearrangement, <= 2
};

// Routes pi on g by contracting the given clique: first the pebbles parked on
// the clique but destined outside trade places with the outside pebbles
// destined for the clique (subset routing on a spanning tree of g, so the
// clique ends up holding exactly the pebbles that belong there), then the
// remaining all-outside permutation is tree-routed on the contracted minor,
// expanding every planned swap at the super-vertex into at most 3 real steps
// (an in-clique shuffle lining up the departing pebble, then the boundary
// swap), and finally at most 2 clique steps fix the internal arrangement.
// Length is linear in (n - |clique|) for a fixed outside structure; tests pin
// the constant. The identity yields an empty schedule, and a clique covering
// the whole graph falls back to the two-step router.
Schedule route_via_clique_contraction(const Graph& g, const Permutation& pi,
                                      const std::vector<int>& clique,
                                      CliqueContractionStats* stats = nullptr);

// Same, with the clique found by max_clique_exact.
Schedule route_via_clique_contraction(const Graph& g, const Permutation& pi,
                                      CliqueContractionStats* stats = nullptr);

}  // namespace rvm

#endif
