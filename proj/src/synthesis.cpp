#include "osgraph/synthesis.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "osgraph/union_find.hpp"

namespace osgraph {

namespace {

// Maps p in 1..lcm onto 1..r, so p = r lands on node r rather than node 0.
int wrap(int p, int r) { return (p - 1) % r + 1; }

std::vector<int> cluster_offsets(const ClusterSpec& spec) {
    std::vector<int> off(spec.sizes.size() + 1, 0);
    for (size_t j = 0; j < spec.sizes.size(); ++j) off[j + 1] = off[j] + spec.sizes[j];
    return off;
}

std::vector<std::optional<NodeLabel>> cluster_labels(const ClusterSpec& spec) {
    std::vector<std::optional<NodeLabel>> labels;
    labels.reserve(spec.node_count());
    for (int j = 1; j <= spec.cluster_count(); ++j)
        for (int p = 1; p <= spec.sizes[j - 1]; ++p) labels.push_back(NodeLabel{j, p});
    return labels;
}

// Directed cycle on the smallest cluster (first index on ties); skipped when
// that cluster is a single node. For size 2 this yields the opposite pair.
void append_smallest_cluster_cycle(const ClusterSpec& spec,
                                   std::vector<std::pair<int, int>>& edges) {
    int star = 1;
    for (int j = 2; j <= spec.cluster_count(); ++j)
        if (spec.sizes[j - 1] < spec.sizes[star - 1]) star = j;
    int r = spec.sizes[star - 1];
    if (r < 2) return;
    for (int p = 1; p <= r; ++p)
        edges.emplace_back(cluster_node_id(spec, star, p),
                           cluster_node_id(spec, star, wrap(p + 1, r)));
}

}  // namespace

int ClusterSpec::node_count() const {
    return std::accumulate(sizes.begin(), sizes.end(), 0);
}

void ClusterSpec::validate() const {
    if (sizes.empty()) throw std::invalid_argument("cluster spec needs at least one cluster");
    for (int r : sizes)
        if (r < 1) throw std::invalid_argument("cluster sizes must be positive");
}

void PathOrder::validate(int cluster_count) const {
    if (static_cast<int>(order.size()) != cluster_count)
        throw std::invalid_argument("path must visit every cluster exactly once");
    std::vector<char> hit(cluster_count, 0);
    for (int j : order) {
        if (j < 1 || j > cluster_count || hit[j - 1])
            throw std::invalid_argument("path is not a permutation of 1..k");
        hit[j - 1] = 1;
    }
}

void TreeTopology::validate(int cluster_count) const {
    if (static_cast<int>(edges.size()) != cluster_count - 1)
        throw std::invalid_argument("spanning tree needs exactly k-1 edges");
    UnionFind uf(cluster_count);
    for (auto [a, b] : edges) {
        if (a < 1 || a > cluster_count || b < 1 || b > cluster_count || a == b)
            throw std::invalid_argument("tree edge out of range");
        if (!uf.unite(a - 1, b - 1)) throw std::invalid_argument("tree edges contain a cycle");
    }
}

int cluster_node_id(const ClusterSpec& spec, int cluster, int index) {
    return cluster_offsets(spec)[cluster - 1] + index - 1;
}

OrientedGraph build_sparse_tree(const ClusterSpec& spec,
                                const std::vector<std::pair<int, int>>& tree_arcs) {
    spec.validate();
    TreeTopology tree{tree_arcs};
    if (spec.cluster_count() > 1) tree.validate(spec.cluster_count());
    else if (!tree_arcs.empty()) throw std::invalid_argument("single cluster takes no tree edges");

    auto off = cluster_offsets(spec);
    std::vector<std::pair<int, int>> edges;
    for (auto [i, j] : tree_arcs) {
        int ri = spec.sizes[i - 1], rj = spec.sizes[j - 1];
        int span = std::lcm(ri, rj);
        for (int p = 1; p <= span; ++p)
            edges.emplace_back(off[i - 1] + wrap(p, ri) - 1, off[j - 1] + wrap(p, rj) - 1);
    }
    append_smallest_cluster_cycle(spec, edges);
    return OrientedGraph::create(spec.node_count(), std::move(edges), cluster_labels(spec));
}

OrientedGraph build_sparse(const ClusterSpec& spec, const PathOrder& path) {
    spec.validate();
    path.validate(spec.cluster_count());
    std::vector<std::pair<int, int>> arcs;
    for (size_t t = 0; t + 1 < path.order.size(); ++t)
        arcs.emplace_back(path.order[t], path.order[t + 1]);
    return build_sparse_tree(spec, arcs);
}

OrientedGraph build_robust(const ClusterSpec& spec, const PathOrder& path) {
    spec.validate();
    path.validate(spec.cluster_count());

    const int n = spec.node_count();
    std::vector<std::pair<int, int>> edges;
    if (spec.cluster_count() == 1) {
        // Complete directed graph: fully symmetric under any permutation.
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (u != v) edges.emplace_back(u, v);
        return OrientedGraph::create(n, std::move(edges), cluster_labels(spec));
    }

    auto off = cluster_offsets(spec);
    for (size_t t = 0; t + 1 < path.order.size(); ++t) {
        int i = path.order[t], j = path.order[t + 1];
        for (int p = 1; p <= spec.sizes[i - 1]; ++p)
            for (int q = 1; q <= spec.sizes[j - 1]; ++q)
                edges.emplace_back(off[i - 1] + p - 1, off[j - 1] + q - 1);
    }
    return OrientedGraph::create(n, std::move(edges), cluster_labels(spec));
}

PathOrder global_bound_path(const ClusterSpec& spec) {
    spec.validate();
    const int k = spec.cluster_count();
    std::vector<int> by_size(k);
    std::iota(by_size.begin(), by_size.end(), 1);
    std::stable_sort(by_size.begin(), by_size.end(),
                     [&](int a, int b) { return spec.sizes[a - 1] > spec.sizes[b - 1]; });
    PathOrder path;
    int lo = 0, hi = k - 1;
    bool from_front = true;
    while (lo <= hi) {
        path.order.push_back(from_front ? by_size[lo++] : by_size[hi--]);
        from_front = !from_front;
    }
    return path;
}

}  // namespace osgraph
