#ifndef RVM_MATCHING_HPP
#define RVM_MATCHING_HPP

#include <vector>

#include "rvm/graph.hpp"

namespace rvm {

// Maximum-cardinality matching in a general graph (blossom contraction,
// O(n^3)). Returns mate[v] = matched partner or -1.
std::vector<int> max_matching(const Graph& g);

int max_matching_size(const Graph& g);

// Maximum bipartite matching. adj[l] lists the right-side vertices available
// to left vertex l (0 <= l < left, entries in [0, right)). Returns
// match_of_left with entries in [0, right) or -1.
std::vector<int> bipartite_matching(int left, int right,
                                    const std::vector<std::vector<int>>& adj);

}  // namespace rvm

#endif
