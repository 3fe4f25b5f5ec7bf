#pragma once

#include <string>
#include <vector>

#include "osgraph/graph.hpp"

namespace osgraph {

/// Node permutation: mapping[i] is the image of node i.
using Permutation = std::vector<int>;

/// Orbits of the automorphism group acting on the nodes. Blocks are in
/// canonical order (by minimum node id); sizes[i] is |blocks[i]|. The
/// witnesses are automorphisms discovered during the search; together they
/// connect every orbit (useful for steady-state invariance checks).
struct OrbitPartition {
    Partition partition;
    std::vector<int> sizes;
    std::vector<Permutation> witnesses;
};

/// True iff for every ordered pair (u,v): u->v is an edge exactly when
/// psi(u)->psi(v) is. Orientation-preserving by construction.
bool is_automorphism(const OrientedGraph& g, const Permutation& psi);

inline constexpr int kDefaultOracleLimit = 9;

/// Brute force over all node permutations, in lexicographic order. Grows
/// as n!, so refuses graphs larger than `limit` nodes.
std::vector<Permutation> enumerate_automorphisms(const OrientedGraph& g,
                                                 int limit = kDefaultOracleLimit);

/// Exact orbit partition of Aut(g) acting on the nodes. Seeds a backtracking
/// equivariant search with in/out-degree color refinement; orbits accumulate
/// in a union-find, so the search stops as soon as each pair is decided.
OrbitPartition orbit_partition(const OrientedGraph& g);

/// True iff some automorphism maps u to v (same orbit).
bool exchangeable(const OrientedGraph& g, int u, int v);

// {"blocks":[[ids...]],"sizes":[ints]}
std::string orbits_to_json(const OrbitPartition& orbits);

}  // namespace osgraph
