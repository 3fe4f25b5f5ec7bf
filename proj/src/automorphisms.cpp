#include "osgraph/automorphisms.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "osgraph/union_find.hpp"

namespace osgraph {

namespace {

std::vector<uint8_t> adjacency(const OrientedGraph& g) {
    std::vector<uint8_t> adj(static_cast<size_t>(g.node_count) * g.node_count, 0);
    for (auto [t, h] : g.edges) adj[static_cast<size_t>(t) * g.node_count + h] = 1;
    return adj;
}

// Refine node colors by the multiset of in- and out-neighbor colors until
// stable. Stable colors are preserved by every automorphism, so the search
// below only has to consider color-respecting maps.
std::vector<int> stable_colors(const OrientedGraph& g, const std::vector<uint8_t>& adj) {
    const int n = g.node_count;
    std::vector<int> color(n, 0);
    {
        std::vector<std::pair<int, int>> deg(n, {0, 0});
        for (auto [t, h] : g.edges) {
            deg[t].second++;  // out
            deg[h].first++;   // in
        }
        std::vector<std::pair<int, int>> uniq(deg.begin(), deg.end());
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        for (int v = 0; v < n; ++v)
            color[v] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), deg[v]) -
                                        uniq.begin());
    }

    for (int round = 0; round < n; ++round) {
        std::vector<std::vector<int>> sig(n);
        for (int v = 0; v < n; ++v) {
            std::vector<int> out_cols, in_cols;
            for (int w = 0; w < n; ++w) {
                if (adj[static_cast<size_t>(v) * n + w]) out_cols.push_back(color[w]);
                if (adj[static_cast<size_t>(w) * n + v]) in_cols.push_back(color[w]);
            }
            std::sort(out_cols.begin(), out_cols.end());
            std::sort(in_cols.begin(), in_cols.end());
            sig[v].push_back(color[v]);
            sig[v].push_back(-1);
            sig[v].insert(sig[v].end(), out_cols.begin(), out_cols.end());
            sig[v].push_back(-1);
            sig[v].insert(sig[v].end(), in_cols.begin(), in_cols.end());
        }
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return sig[a] < sig[b]; });
        std::vector<int> next(n, 0);
        int c = 0;
        for (int i = 0; i < n; ++i) {
            if (i > 0 && sig[order[i]] != sig[order[i - 1]]) ++c;
            next[order[i]] = c;
        }
        if (next == color) break;
        color.swap(next);
    }
    return color;
}

struct MappingSearch {
    int n;
    const std::vector<uint8_t>* adj;
    const std::vector<int>* color;
    std::vector<int> order;   // source nodes in assignment order
    std::vector<int> image;   // image[x], -1 while unassigned
    std::vector<char> used;   // target already taken

    bool consistent(int x, int y, int depth) const {
        for (int i = 0; i < depth; ++i) {
            int x2 = order[i], y2 = image[x2];
            if ((*adj)[static_cast<size_t>(x) * n + x2] !=
                (*adj)[static_cast<size_t>(y) * n + y2])
                return false;
            if ((*adj)[static_cast<size_t>(x2) * n + x] !=
                (*adj)[static_cast<size_t>(y2) * n + y])
                return false;
        }
        return true;
    }

    bool extend(int depth) {
        if (depth == n) return true;
        int x = order[depth];
        for (int y = 0; y < n; ++y) {  // ascending target id: deterministic
            if (used[y] || (*color)[y] != (*color)[x]) continue;
            if (!consistent(x, y, depth)) continue;
            image[x] = y;
            used[y] = 1;
            if (extend(depth + 1)) return true;
            image[x] = -1;
            used[y] = 0;
        }
        return false;
    }
};

// Looks for an automorphism sending u to v; empty result means none exists.
std::optional<Permutation> find_mapping(const OrientedGraph& g, const std::vector<uint8_t>& adj,
                                        const std::vector<int>& color, int u, int v) {
    const int n = g.node_count;
    if (color[u] != color[v]) return std::nullopt;

    std::vector<int> class_size(n, 0);
    for (int w = 0; w < n; ++w) class_size[color[w]]++;

    MappingSearch search;
    search.n = n;
    search.adj = &adj;
    search.color = &color;
    search.order.reserve(n);
    search.order.push_back(u);
    std::vector<int> rest;
    for (int w = 0; w < n; ++w)
        if (w != u) rest.push_back(w);
    // Most constrained first: small color classes before large ones.
    std::stable_sort(rest.begin(), rest.end(), [&](int a, int b) {
        return std::tuple(class_size[color[a]], color[a], a) <
               std::tuple(class_size[color[b]], color[b], b);
    });
    search.order.insert(search.order.end(), rest.begin(), rest.end());
    search.image.assign(n, -1);
    search.used.assign(n, 0);
    search.image[u] = v;
    search.used[v] = 1;
    if (!search.extend(1)) return std::nullopt;
    return Permutation(search.image.begin(), search.image.end());
}

}  // namespace

bool is_automorphism(const OrientedGraph& g, const Permutation& psi) {
    const int n = g.node_count;
    if (static_cast<int>(psi.size()) != n)
        throw std::invalid_argument("permutation size does not match node count");
    std::vector<char> hit(n, 0);
    for (int y : psi) {
        if (y < 0 || y >= n || hit[y]) throw std::invalid_argument("mapping is not a permutation");
        hit[y] = 1;
    }
    auto adj = adjacency(g);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (adj[static_cast<size_t>(u) * n + v] !=
                adj[static_cast<size_t>(psi[u]) * n + psi[v]])
                return false;
    return true;
}

std::vector<Permutation> enumerate_automorphisms(const OrientedGraph& g, int limit) {
    const int n = g.node_count;
    if (n > limit)
        throw std::invalid_argument(
            "enumerate_automorphisms is a factorial-time oracle (limit " + std::to_string(limit) +
            " nodes); use orbit_partition for larger graphs");
    auto adj = adjacency(g);
    std::vector<Permutation> found;
    Permutation psi(n);
    std::iota(psi.begin(), psi.end(), 0);
    do {
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            for (int v = 0; v < n; ++v)
                if (adj[static_cast<size_t>(u) * n + v] !=
                    adj[static_cast<size_t>(psi[u]) * n + psi[v]]) {
                    ok = false;
                    break;
                }
        if (ok) found.push_back(psi);
    } while (std::next_permutation(psi.begin(), psi.end()));
    return found;
}

OrbitPartition orbit_partition(const OrientedGraph& g) {
    const int n = g.node_count;
    auto adj = adjacency(g);
    auto color = stable_colors(g, adj);

    UnionFind uf(n);
    std::vector<Permutation> witnesses;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (color[u] != color[v] || uf.same(u, v)) continue;
            auto psi = find_mapping(g, adj, color, u, v);
            if (!psi) continue;
            witnesses.push_back(*psi);
            for (int i = 0; i < n; ++i) uf.unite(i, (*psi)[i]);
        }
    }

    std::vector<std::vector<int>> by_root(n);
    for (int v = 0; v < n; ++v) by_root[uf.find(v)].push_back(v);
    OrbitPartition result;
    for (int r = 0; r < n; ++r)
        if (!by_root[r].empty()) result.partition.blocks.push_back(std::move(by_root[r]));
    result.partition.canonicalize();
    for (const auto& b : result.partition.blocks) result.sizes.push_back(static_cast<int>(b.size()));
    result.witnesses = std::move(witnesses);
    return result;
}

bool exchangeable(const OrientedGraph& g, int u, int v) {
    if (u < 0 || u >= g.node_count || v < 0 || v >= g.node_count)
        throw std::invalid_argument("node id out of range");
    if (u == v) return true;
    auto adj = adjacency(g);
    auto color = stable_colors(g, adj);
    return find_mapping(g, adj, color, u, v).has_value();
}

std::string orbits_to_json(const OrbitPartition& orbits) {
    nlohmann::json doc;
    doc["blocks"] = orbits.partition.blocks;
    doc["sizes"] = orbits.sizes;
    return doc.dump(2) + "\n";
}

}  // namespace osgraph
