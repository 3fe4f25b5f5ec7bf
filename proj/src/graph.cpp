#include "osgraph/graph.hpp"

#include <algorithm>
#include <array>
#include <queue>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace osgraph {

bool OrientedGraph::has_edge(int tail, int head) const {
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(tail, head));
}

OrientedGraph OrientedGraph::create(int node_count, std::vector<std::pair<int, int>> edges,
                                    std::vector<std::optional<NodeLabel>> labels) {
    if (node_count <= 0) throw std::invalid_argument("graph needs at least one node");
    for (auto [t, h] : edges) {
        if (t < 0 || t >= node_count || h < 0 || h >= node_count)
            throw std::invalid_argument("edge endpoint out of range");
        if (t == h) throw std::invalid_argument("self-loops are not allowed");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("duplicate directed edge");

    if (labels.empty()) labels.resize(node_count);
    if (static_cast<int>(labels.size()) != node_count)
        throw std::invalid_argument("label count must match node count");
    std::set<std::pair<int, int>> seen;
    for (const auto& lab : labels) {
        if (!lab) continue;
        if (!seen.insert({lab->cluster, lab->index}).second)
            throw std::invalid_argument("duplicate (cluster, index) label");
    }

    OrientedGraph g;
    g.node_count = node_count;
    g.edges = std::move(edges);
    g.labels = std::move(labels);
    return g;
}

void Partition::canonicalize() {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

void Partition::validate(int node_count) const {
    std::vector<char> hit(node_count, 0);
    for (const auto& block : blocks) {
        if (block.empty()) throw std::invalid_argument("partition block must be non-empty");
        for (int v : block) {
            if (v < 0 || v >= node_count) throw std::invalid_argument("partition id out of range");
            if (hit[v]) throw std::invalid_argument("partition blocks are not disjoint");
            hit[v] = 1;
        }
    }
    for (char c : hit)
        if (!c) throw std::invalid_argument("partition does not cover all nodes");
}

IncidenceMatrix incidence_matrix(const OrientedGraph& g) {
    IncidenceMatrix m;
    m.rows = g.node_count;
    m.cols = g.edge_count();
    m.data.assign(static_cast<size_t>(m.rows) * m.cols, 0);
    for (int e = 0; e < m.cols; ++e) {
        auto [tail, head] = g.edges[e];
        m.data[static_cast<size_t>(head) * m.cols + e] = 1;
        m.data[static_cast<size_t>(tail) * m.cols + e] = -1;
    }
    return m;
}

bool is_weakly_connected(const OrientedGraph& g) {
    std::vector<std::vector<int>> adj(g.node_count);
    for (auto [t, h] : g.edges) {
        adj[t].push_back(h);
        adj[h].push_back(t);
    }
    std::vector<char> seen(g.node_count, 0);
    std::queue<int> fringe;
    fringe.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!fringe.empty()) {
        int v = fringe.front();
        fringe.pop();
        for (int w : adj[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                fringe.push(w);
            }
        }
    }
    return reached == g.node_count;
}

OrientedGraph induced_subgraph(const OrientedGraph& g, const std::vector<int>& keep) {
    if (keep.empty()) throw std::invalid_argument("induced subgraph needs a non-empty node set");
    std::vector<int> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> remap(g.node_count, -1);
    for (size_t i = 0; i < sorted.size(); ++i) {
        int v = sorted[i];
        if (v < 0 || v >= g.node_count) throw std::invalid_argument("keep id out of range");
        remap[v] = static_cast<int>(i);
    }
    std::vector<std::pair<int, int>> edges;
    for (auto [t, h] : g.edges)
        if (remap[t] >= 0 && remap[h] >= 0) edges.emplace_back(remap[t], remap[h]);
    std::vector<std::optional<NodeLabel>> labels(sorted.size());
    for (size_t i = 0; i < sorted.size(); ++i) labels[i] = g.labels[sorted[i]];
    return OrientedGraph::create(static_cast<int>(sorted.size()), std::move(edges), std::move(labels));
}

OrientedGraph quotient(const OrientedGraph& g, const Partition& parts) {
    parts.validate(g.node_count);
    std::vector<int> block_of(g.node_count, -1);
    for (size_t b = 0; b < parts.blocks.size(); ++b)
        for (int v : parts.blocks[b]) block_of[v] = static_cast<int>(b);
    std::set<std::pair<int, int>> edges;
    for (auto [t, h] : g.edges) {
        int bt = block_of[t], bh = block_of[h];
        if (bt != bh) edges.insert({bt, bh});
    }
    return OrientedGraph::create(static_cast<int>(parts.blocks.size()),
                                 {edges.begin(), edges.end()});
}

std::string graph_to_json(const OrientedGraph& g) {
    nlohmann::json doc;
    doc["nodes"] = nlohmann::json::array();
    for (int v = 0; v < g.node_count; ++v) {
        nlohmann::json node;
        node["id"] = v;
        if (g.labels[v]) {
            node["cluster"] = g.labels[v]->cluster;
            node["index"] = g.labels[v]->index;
        } else {
            node["cluster"] = nullptr;
            node["index"] = nullptr;
        }
        doc["nodes"].push_back(node);
    }
    doc["edges"] = nlohmann::json::array();
    for (auto [t, h] : g.edges) doc["edges"].push_back({t, h});
    return doc.dump(2) + "\n";
}

OrientedGraph graph_from_json(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    const auto& nodes = doc.at("nodes");
    int n = static_cast<int>(nodes.size());
    std::vector<std::optional<NodeLabel>> labels(n);
    for (const auto& node : nodes) {
        int id = node.at("id").get<int>();
        if (id < 0 || id >= n) throw std::invalid_argument("node id out of range in JSON graph");
        if (node.contains("cluster") && !node.at("cluster").is_null())
            labels[id] = NodeLabel{node.at("cluster").get<int>(), node.at("index").get<int>()};
    }
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : doc.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return OrientedGraph::create(n, std::move(edges), std::move(labels));
}

std::string graph_to_dot(const OrientedGraph& g) {
    // Fixed palette keyed by cluster index so repeated exports color alike.
    static constexpr std::array<const char*, 10> kPalette = {
        "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00",
        "#ffff33", "#a65628", "#f781bf", "#999999", "#66c2a5"};
    std::string out = "digraph g {\n  node [style=filled];\n";
    for (int v = 0; v < g.node_count; ++v) {
        out += "  " + std::to_string(v);
        if (g.labels[v]) {
            const auto& lab = *g.labels[v];
            out += " [label=\"v" + std::to_string(lab.cluster) + "_" + std::to_string(lab.index) +
                   "\", fillcolor=\"" + kPalette[(lab.cluster - 1) % kPalette.size()] + "\"]";
        } else {
            out += " [fillcolor=\"#cccccc\"]";
        }
        out += ";\n";
    }
    for (auto [t, h] : g.edges)
        out += "  " + std::to_string(t) + " -> " + std::to_string(h) + ";\n";
    out += "}\n";
    return out;
}

}  // namespace osgraph
