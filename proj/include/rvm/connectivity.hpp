#ifndef RVM_CONNECTIVITY_HPP
#define RVM_CONNECTIVITY_HPP

#include "rvm/graph.hpp"

namespace rvm {

// Vertex connectivity kappa(G): minimum number of vertices whose removal
// disconnects G or reduces it to one vertex. Complete graphs give n-1,
// disconnected graphs 0. Computed with max-flow over the split-vertex
// network for every non-adjacent pair (plus the standard neighbor trick).
int vertex_connectivity(const Graph& g);

bool is_k_connected(const Graph& g, int k);

}  // namespace rvm

#endif
