#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace osgraph {

/// Cluster tag carried by synthesized nodes: cluster j (1-based) and the
/// position p within that cluster (1..r_j).
struct NodeLabel {
    int cluster = 0;
    int index = 0;

    friend bool operator==(const NodeLabel&, const NodeLabel&) = default;
};

/// Directed graph on nodes 0..node_count-1. Edges are (tail, head) pairs,
/// stored sorted and without duplicates; self-loops are rejected. Opposite
/// pairs (a->b and b->a) are two distinct edges and both may be present.
struct OrientedGraph {
    int node_count = 0;
    std::vector<std::optional<NodeLabel>> labels;  // one entry per node
    std::vector<std::pair<int, int>> edges;        // (tail, head), canonical order

    int edge_count() const { return static_cast<int>(edges.size()); }
    bool has_edge(int tail, int head) const;

    /// Validates invariants, sorts the edge set and fills missing labels.
    /// Throws std::invalid_argument on self-loops, duplicate edges,
    /// out-of-range ids or non-unique (cluster, index) labels.
    static OrientedGraph create(int node_count, std::vector<std::pair<int, int>> edges,
                                std::vector<std::optional<NodeLabel>> labels = {});

    friend bool operator==(const OrientedGraph&, const OrientedGraph&) = default;
};

/// Node-major incidence matrix: one row per node, one column per edge.
/// Column e of edge (tail, head) holds +1 at the head row and -1 at the
/// tail row. Stored node-major so that u = -E mu and zeta = E^T y typecheck
/// with per-node u, y and per-edge mu, zeta.
struct IncidenceMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<int> data;  // row-major

    int at(int node, int edge) const { return data[static_cast<size_t>(node) * cols + edge]; }
};

/// Disjoint node blocks covering every node exactly once. Canonical form:
/// each block sorted ascending, blocks ordered by their minimum element.
struct Partition {
    std::vector<std::vector<int>> blocks;

    size_t block_count() const { return blocks.size(); }
    void canonicalize();
    /// Throws std::invalid_argument unless blocks are disjoint and cover 0..n-1.
    void validate(int node_count) const;

    friend bool operator==(const Partition&, const Partition&) = default;
};

IncidenceMatrix incidence_matrix(const OrientedGraph& g);

/// True iff the graph is connected after forgetting edge orientations.
bool is_weakly_connected(const OrientedGraph& g);

/// Subgraph on `keep` (must be non-empty). Nodes are re-indexed to
/// 0..|keep|-1 in ascending original id; original labels are retained.
OrientedGraph induced_subgraph(const OrientedGraph& g, const std::vector<int>& keep);

/// One node per partition block; an edge b1->b2 (b1 != b2) iff some g-edge
/// runs from block b1 to block b2. Within-block edges vanish and parallel
/// crossings collapse.
OrientedGraph quotient(const OrientedGraph& g, const Partition& parts);

// JSON document: {"nodes":[{"id":0,"cluster":1,"index":1},...],"edges":[[tail,head],...]}
std::string graph_to_json(const OrientedGraph& g);
OrientedGraph graph_from_json(const std::string& text);

/// DOT export; nodes are filled with a fixed palette keyed by cluster tag.
std::string graph_to_dot(const OrientedGraph& g);

}  // namespace osgraph
