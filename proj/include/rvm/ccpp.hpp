#ifndef RVM_CCPP_HPP
#define RVM_CCPP_HPP

#include <array>
#include <vector>

#include "rvm/graph.hpp"
#include "rvm/oracle.hpp"
#include "rvm/sat_reduction.hpp"

namespace rvm {

// Connected colored partition: the blocks must partition the vertex set, each
// induced subgraph must be connected, and every color class must sit entirely
// inside one block.
struct ColoredPartition {
    std::vector<std::vector<int>> blocks;
};

// True iff part is a colored partition of g with every block nonempty,
// connected, of size <= t, and no color class split across blocks. Malformed
// input (wrong coloring size, out-of-range or repeated vertices) returns
// false rather than throwing.
bool verify_ccpp_partition(const Graph& g, const std::vector<int>& coloring,
                           const ColoredPartition& part, int t);

struct CcppSolveResult {
    bool exhausted = false;  // budget ran out before the search settled
    bool found = false;
    ColoredPartition partition;  // meaningful iff found
    long long states_visited = 0;
    double elapsed_seconds = 0.0;
};

// Exhaustive decision procedure: processes multi-vertex color classes in
// order, enumerating every connected block of size <= t that contains the
// class and splits no other class, and recursing on the rest. Vertices left
// over at the end have singleton classes and become singleton blocks, so the
// search is complete: !found && !exhausted proves no valid partition with
// max block <= t exists. Colors may be arbitrary ints.
CcppSolveResult ccpp_solve_exact(const Graph& g, const std::vector<int>& coloring,
                                 int t, const SearchBudget& budget = {});

// Vertex bookkeeping for generated instances. Fused literal vertices keep
// their hexagon role and additionally record the clause line they belong to.
struct CcppVertexInfo {
    GadgetRole role = GadgetRole::kHexagonCorner;
    int variable = -1;  // 1-based, for hexagon roles
    int hexagon = -1;   // hexagon number (corner roles: corner number)
    int clause = -1;    // set on clause anchors and fused literal vertices
    int slot = -1;      // clause line 0..2 for fused literal vertices
};

// Clause gadget: anchors a and b joined by three three-edge lines; line[s]
// lists the two interior vertices of slot s, both fused into the gadget of
// the literal's variable. a and b share a color, so any partition must pick
// one full line to connect them, which only stays disjoint from the variable
// blocks when that literal is true.
struct CcppClauseGadget {
    int a = -1, b = -1;
    std::array<std::array<int, 2>, 3> line{};
};

// A closed necklace of 2m hexagons (two per occurrence): corners[j] is
// u_{j+1} and hexagon i (0-based) is the 6-cycle
//   a - pos - corners[i] - b - neg - corners[(i+1) % 2m] - a.
// Each (a, b) pair shares a color, so its block must be one of the hexagon's
// two four-vertex paths; around the closed necklace the choices must be all
// top or all bottom, which encodes the variable's value.
struct CcppVariableGadget {
    int variable = 0;  // 1-based
    std::vector<int> corners;
    std::vector<HexagonGadget> hexagons;
};

struct CcppInstance {
    CnfFormula formula;
    Graph graph;
    std::vector<int> coloring;  // color classes have size <= 2
    int num_colors = 0;
    std::vector<CcppVertexInfo> provenance;
    std::vector<CcppVariableGadget> variables;  // variables with >= 1 occurrence
    std::vector<CcppClauseGadget> clause_gadgets;
};

// Builds the colored-partition reduction: occurrence k of a variable fuses
// the two interior vertices of its clause line with the pos (or neg) vertices
// of hexagons 2k and 2k+1. The instance admits a colored partition with max
// block 4 iff the formula is satisfiable. Throws std::invalid_argument on an
// invalid formula.
CcppInstance build_ccpp_instance(const CnfFormula& f);

}  // namespace rvm

#endif
