#ifndef RVM_CLIQUE_HPP
#define RVM_CLIQUE_HPP

#include <vector>

#include "rvm/graph.hpp"

namespace rvm {

// Maximum clique, exact. Ties broken toward the lexicographically smallest
// sorted vertex list among all maximum cliques. Branch and bound with a
// greedy-coloring upper bound; fine for the n <= a few dozen inputs here.
std::vector<int> max_clique_exact(const Graph& g);

int clique_number(const Graph& g);

}  // namespace rvm

#endif
