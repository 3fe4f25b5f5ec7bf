#pragma once

#include <utility>
#include <vector>

#include "osgraph/graph.hpp"

namespace osgraph {

/// Prescribed cluster sizes r_1..r_k (all >= 1).
struct ClusterSpec {
    std::vector<int> sizes;

    int cluster_count() const { return static_cast<int>(sizes.size()); }
    int node_count() const;
    /// Throws std::invalid_argument unless k >= 1 and every size >= 1.
    void validate() const;

    friend bool operator==(const ClusterSpec&, const ClusterSpec&) = default;
};

/// Visit order of cluster indices 1..k, read as order[0] -> order[1] -> ...
struct PathOrder {
    std::vector<int> order;

    void validate(int cluster_count) const;

    friend bool operator==(const PathOrder&, const PathOrder&) = default;
};

/// Spanning tree over cluster indices 1..k as k-1 unordered index pairs.
struct TreeTopology {
    std::vector<std::pair<int, int>> edges;

    void validate(int cluster_count) const;

    friend bool operator==(const TreeTopology&, const TreeTopology&) = default;
};

/// Node id of cluster j's p-th node (both 1-based) in the synthesized layout:
/// clusters are laid out consecutively in index order.
int cluster_node_id(const ClusterSpec& spec, int cluster, int index);

/// Sparse construction along a path: for each consecutive cluster pair (i,j)
/// one edge per p = 1..lcm(r_i,r_j) from (i, wrap(p,r_i)) to (j, wrap(p,r_j)),
/// plus a directed cycle on the smallest cluster when its size is >= 2.
/// The result is weakly connected and its orbits are exactly the clusters.
OrientedGraph build_sparse(const ClusterSpec& spec, const PathOrder& path);

/// Same edge rule applied to the arcs of an arbitrary tree (arcs read
/// tail-cluster -> head-cluster). For non-path trees the orbit structure is
/// generally NOT the cluster partition; see the star counterexample tests.
OrientedGraph build_sparse_tree(const ClusterSpec& spec,
                                const std::vector<std::pair<int, int>>& tree_arcs);

/// Fault-tolerant construction: complete directed graph for k = 1, otherwise
/// every edge (i,p) -> (j,q) for each consecutive path pair (i,j).
OrientedGraph build_robust(const ClusterSpec& spec, const PathOrder& path);

/// Alternating-extremes order: sort clusters by descending size (stable) and
/// weave largest, smallest, 2nd largest, 2nd smallest, ... This path keeps the
/// robust construction under the (k-1)n^2/k^2 edge cap.
PathOrder global_bound_path(const ClusterSpec& spec);

}  // namespace osgraph
