#ifndef RVM_SAT_REDUCTION_HPP
#define RVM_SAT_REDUCTION_HPP

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rvm/graph.hpp"
#include "rvm/permutation.hpp"
#include "rvm/schedule.hpp"

namespace rvm {

// 3-CNF formula in DIMACS conventions: literals are nonzero ints, the sign is
// the polarity, |lit| is a 1-based variable in 1..num_vars. Exactly three
// literals per clause (repeats allowed).
struct CnfFormula {
    int num_vars = 0;
    std::vector<std::array<int, 3>> clauses;
};

// Throws std::invalid_argument unless num_vars >= 1, there is at least one
// clause, and every literal names an in-range variable.
void validate_formula(const CnfFormula& f);

// assign[i] is the value of variable i+1. Throws on a size mismatch.
bool formula_satisfied(const CnfFormula& f, const std::vector<bool>& assign);

// DIMACS CNF: "c" comment lines, a "p cnf <vars> <clauses>" header, then
// clauses as whitespace-separated literals each terminated by 0. Clauses may
// span lines. Throws std::invalid_argument on malformed input or a clause
// whose literal count is not exactly 3.
CnfFormula read_dimacs_cnf(std::istream& in);
CnfFormula read_dimacs_cnf_file(const std::string& path);
void write_dimacs_cnf(std::ostream& out, const CnfFormula& f);

// Building blocks of the reduction graph. Within every gadget the only
// pebbles that move are explicit 2-cycles; all other vertices hold pebbles
// that must return home, which is what makes a vertex "owned" by the routine
// that swaps across it: a three-step swap of two pebbles at distance two
// engages the middle vertex in all three steps.
enum class GadgetRole {
    kClauseA,           // one end of a clause's swapped pair
    kClauseB,           // the other end
    kClauseLiteral,     // middle of one of the clause's three two-edge paths
    kHexagonA,          // one end of a hexagon's antipodal swapped pair
    kHexagonB,
    kHexagonPositive,   // positive-literal vertex on the hexagon's top path
    kHexagonNegative,   // negated-literal vertex on the bottom path
    kHexagonCorner,     // shared corner u_j between consecutive hexagons
    kDiamondTop,        // one end of a diamond's swapped pair
    kDiamondBottom,
    kDiamondCorner,     // interior corner between consecutive diamonds
};

const char* gadget_role_name(GadgetRole role);

// Unused fields are -1.
//   clause roles:   clause; literal middles also carry variable + index(slot)
//   hexagon roles:  variable; index = hexagon number (corners: corner number)
//   diamond roles:  chain; index = diamond number (corners: corner position)
// Chain terminals reuse existing vertices, so wired hexagon literal vertices
// and clause literal middles additionally record their chain id.
struct VertexProvenance {
    GadgetRole role = GadgetRole::kDiamondCorner;
    int variable = -1;
    int clause = -1;
    int index = -1;
    int chain = -1;
};

// Diamond chain joining two pre-existing corner vertices: corners[0] and
// corners.back() are the terminals, pairs[j] is diamond j's (top, bottom)
// 2-cycle strung between corners[j] and corners[j+1]. A three-step routing of
// all the pairs must leave one terminal untouched; which one is forced as
// soon as the other is busy.
struct DiamondChain {
    std::vector<int> corners;
    std::vector<std::pair<int, int>> pairs;
};

struct HexagonGadget {
    int a = -1, b = -1;      // the antipodal 2-cycle
    int pos = -1, neg = -1;  // literal vertices on the top / bottom path
};

// One variable's strip of hexagons, one per clause occurrence (assigned in
// clause order). corners[j] is u_{j+1}; hexagon i (0-based) is the 6-cycle
//   a - pos - corners[i] - b - neg - corners[i+1] - a,
// so its top path runs through pos and the left corner and its bottom path
// through the right corner and neg. Routing every hexagon over its top path
// frees all neg vertices, the bottom path frees all pos vertices, and the
// internal chain joining the outer corners vetoes any mix.
struct VariableGadget {
    int variable = 0;  // 1-based
    std::vector<int> corners;
    std::vector<HexagonGadget> hexagons;
    int internal_chain = -1;
    std::vector<int> wiring_chain;  // per hexagon, links its literal vertex
                                    // to the matching clause middle
};

// Theta graph: a and b joined by three two-edge paths whose middles stand for
// the clause's literals. Swapping (a, b) in three steps owns exactly one
// middle, and that middle's wiring chain then leans back onto the variable
// side, which only works out when the literal is true.
struct ClauseGadget {
    int a = -1, b = -1;
    std::array<int, 3> literal_vertex{{-1, -1, -1}};
    std::array<int, 3> slot_chain{{-1, -1, -1}};
};

struct RoutingReductionInstance {
    CnfFormula formula;
    int chain_len = 1;
    Graph graph;
    Permutation pi;
    std::vector<VertexProvenance> provenance;  // one entry per vertex
    std::vector<VariableGadget> variables;     // variables with >= 1 occurrence
    std::vector<ClauseGadget> clause_gadgets;
    std::vector<DiamondChain> chains;
};

// Assembles the reduction graph: one theta gadget per clause, one hexagon
// strip per occurring variable, a diamond chain of chain_len diamonds joining
// each strip's outer corners, and one such chain wiring every occurrence's
// hexagon literal vertex to its clause middle. The permutation swaps each
// gadget pair and fixes everything else; it is routable in three steps iff
// the formula is satisfiable. Throws std::invalid_argument on an invalid
// formula or chain_len < 1.
RoutingReductionInstance build_sat_instance(const CnfFormula& f, int chain_len = 1);

// Turns a satisfying assignment into a three-step schedule: true variables
// route their hexagons over the bottom paths (false over the top), every
// chain swaps its diamonds across the corners on its forced-free side, and
// each clause swaps through the middle of a true literal. Returns nullopt
// when some clause has no true literal.
std::optional<Schedule> assignment_to_schedule(const RoutingReductionInstance& inst,
                                               const std::vector<bool>& assign);

// Reads the assignment back out of a valid three-step schedule by tracing
// each hexagon's `a` pebble: it must walk one of the two gadget paths, and
// all hexagons of a variable must agree (bottom = true). Throws
// std::invalid_argument when the schedule is not a valid three-step routing
// of the instance and std::runtime_error when the traced routing is torn or
// the resulting assignment fails the formula.
std::vector<bool> extract_assignment(const RoutingReductionInstance& inst,
                                     const Schedule& s);

}  // namespace rvm

#endif
