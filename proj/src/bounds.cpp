#include "osgraph/bounds.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "osgraph/union_find.hpp"

namespace osgraph {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

using WeightFn = std::int64_t (*)(std::int64_t, std::int64_t);

std::int64_t lcm_weight(std::int64_t a, std::int64_t b) { return checked_lcm(a, b); }
std::int64_t product_weight(std::int64_t a, std::int64_t b) { return a * b; }

TreeBound min_spanning_tree(const ClusterSpec& spec, WeightFn weight) {
    const int k = spec.cluster_count();
    struct Candidate {
        std::int64_t w;
        int a, b;
    };
    std::vector<Candidate> candidates;
    for (int a = 1; a <= k; ++a)
        for (int b = a + 1; b <= k; ++b)
            candidates.push_back({weight(spec.sizes[a - 1], spec.sizes[b - 1]), a, b});
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
        return std::tuple(x.w, x.a, x.b) < std::tuple(y.w, y.a, y.b);
    });
    TreeBound result;
    UnionFind uf(k);
    for (const auto& c : candidates) {
        if (!uf.unite(c.a - 1, c.b - 1)) continue;
        result.weight += c.w;
        result.tree.edges.emplace_back(c.a, c.b);
    }
    return result;
}

// Exact minimum Hamiltonian path by subset DP. `completion[mask][last]` is
// the cheapest way to extend a path that has visited `mask` and stands at
// `last` into a full path; walking it greedily (smallest feasible next
// cluster first) reconstructs the lexicographically smallest optimal order.
std::pair<std::int64_t, PathOrder> min_hamiltonian_path(const ClusterSpec& spec, WeightFn weight) {
    const int k = spec.cluster_count();
    PathOrder path;
    if (k == 1) {
        path.order = {1};
        return {0, path};
    }

    std::vector<std::vector<std::int64_t>> w(k, std::vector<std::int64_t>(k, 0));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            if (a != b) w[a][b] = weight(spec.sizes[a], spec.sizes[b]);

    const int full = (1 << k) - 1;
    std::vector<std::vector<std::int64_t>> completion(
        static_cast<size_t>(full) + 1, std::vector<std::int64_t>(k, kInf));
    std::vector<int> masks_by_popcount((size_t)full + 1);
    std::iota(masks_by_popcount.begin(), masks_by_popcount.end(), 0);
    std::stable_sort(masks_by_popcount.begin(), masks_by_popcount.end(),
                     [](int a, int b) { return std::popcount(unsigned(a)) > std::popcount(unsigned(b)); });

    for (int mask : masks_by_popcount) {
        for (int last = 0; last < k; ++last) {
            if (!(mask & (1 << last))) continue;
            if (mask == full) {
                completion[mask][last] = 0;
                continue;
            }
            std::int64_t best = kInf;
            for (int next = 0; next < k; ++next) {
                if (mask & (1 << next)) continue;
                std::int64_t c = w[last][next] + completion[mask | (1 << next)][next];
                best = std::min(best, c);
            }
            completion[mask][last] = best;
        }
    }

    std::int64_t best = kInf;
    for (int start = 0; start < k; ++start)
        best = std::min(best, completion[1 << start][start]);

    int mask = 0, last = -1;
    for (int step = 0; step < k; ++step) {
        for (int next = 0; next < k; ++next) {
            if (mask & (1 << next)) continue;
            std::int64_t tail_cost = completion[mask | (1 << next)][next];
            std::int64_t edge = (last < 0) ? 0 : w[last][next];
            std::int64_t need = (last < 0) ? best : completion[mask][last];
            if (edge + tail_cost == need) {
                path.order.push_back(next + 1);
                mask |= 1 << next;
                last = next;
                break;
            }
        }
    }
    return {best, path};
}

std::int64_t min_cluster_size(const ClusterSpec& spec) {
    return *std::min_element(spec.sizes.begin(), spec.sizes.end());
}

std::int64_t path_sum(const ClusterSpec& spec, const PathOrder& path, WeightFn weight) {
    std::int64_t total = 0;
    for (size_t t = 0; t + 1 < path.order.size(); ++t)
        total += weight(spec.sizes[path.order[t] - 1], spec.sizes[path.order[t + 1] - 1]);
    return total;
}

PathBound path_bound(const ClusterSpec& spec, WeightFn weight, int exact_limit) {
    spec.validate();
    PathBound result;
    if (spec.cluster_count() <= exact_limit) {
        auto [value, path] = min_hamiltonian_path(spec, weight);
        result.value = value;
        result.path = path;
        result.exact = true;
    } else {
        result.path = global_bound_path(spec);
        result.value = path_sum(spec, result.path, weight);
        result.exact = false;
    }
    return result;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

bool operator<=(std::int64_t lhs, const Rational& rhs) { return lhs * rhs.den <= rhs.num; }
bool operator==(std::int64_t lhs, const Rational& rhs) { return rhs.den == 1 && lhs == rhs.num; }

std::int64_t checked_gcd(std::int64_t a, std::int64_t b) {
    if (a < 1 || b < 1) throw std::invalid_argument("gcd needs positive integers");
    return std::gcd(a, b);
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
    if (a < 1 || b < 1) throw std::invalid_argument("lcm needs positive integers");
    return a / std::gcd(a, b) * b;
}

TreeBound lower_bound(const ClusterSpec& spec) {
    spec.validate();
    return min_spanning_tree(spec, lcm_weight);
}

PathBound upper_bound(const ClusterSpec& spec, int exact_limit) {
    PathBound result = path_bound(spec, lcm_weight, exact_limit);
    result.value += min_cluster_size(spec);
    return result;
}

RobustBounds robust_bounds(const ClusterSpec& spec, int exact_limit) {
    spec.validate();
    RobustBounds result;
    TreeBound tree = min_spanning_tree(spec, product_weight);
    result.lower = tree.weight;
    result.lower_tree = std::move(tree.tree);
    PathBound path = path_bound(spec, product_weight, exact_limit);
    result.upper = path.value;
    result.upper_path = std::move(path.path);
    result.exact = path.exact;
    return result;
}

Rational global_upper_bound(const ClusterSpec& spec) {
    spec.validate();
    const std::int64_t k = spec.cluster_count();
    const std::int64_t n = spec.node_count();
    return Rational((k - 1) * n * n, k * k);
}

std::int64_t sorted_path_cap(const ClusterSpec& spec) {
    spec.validate();
    const int q = static_cast<int>(*std::max_element(spec.sizes.begin(), spec.sizes.end()));
    std::vector<std::int64_t> count(q + 1, 0);
    for (int r : spec.sizes) count[r]++;
    std::int64_t cap = 0;
    for (int l = 1; l <= q; ++l)
        if (count[l] > 0) cap += (count[l] - 1) * l;
    for (int l = 1; l <= q - 1; ++l) cap += static_cast<std::int64_t>(l) * (l - 1);
    return cap + min_cluster_size(spec);
}

std::int64_t sorted_path_cap_full(const ClusterSpec& spec) {
    const int q = static_cast<int>(*std::max_element(spec.sizes.begin(), spec.sizes.end()));
    return sorted_path_cap(spec) + static_cast<std::int64_t>(q) * (q - 1);
}

BoundReport bound_report(const ClusterSpec& spec, int exact_limit) {
    spec.validate();
    BoundReport report;
    report.spec = spec;

    TreeBound sparse_tree = lower_bound(spec);
    report.sparse_lower = sparse_tree.weight;
    report.sparse_lower_tree = std::move(sparse_tree.tree);

    PathBound sparse_path = upper_bound(spec, exact_limit);
    report.sparse_upper = sparse_path.value;
    report.sparse_upper_path = sparse_path.path;

    RobustBounds robust = robust_bounds(spec, exact_limit);
    report.robust_lower = robust.lower;
    report.robust_lower_tree = std::move(robust.lower_tree);
    report.robust_upper = robust.upper;
    report.robust_upper_path = robust.upper_path;
    report.paths_exact = sparse_path.exact && robust.exact;

    report.global_cap = global_upper_bound(spec);
    report.realized_sparse_edges = build_sparse(spec, sparse_path.path).edge_count();
    report.realized_robust_edges = build_robust(spec, robust.upper_path).edge_count();
    return report;
}

std::string bound_report_to_json(const BoundReport& report) {
    nlohmann::json doc;
    doc["clusters"] = report.spec.sizes;
    doc["sparse_lower"] = report.sparse_lower;
    doc["sparse_lower_tree"] = report.sparse_lower_tree.edges;
    doc["sparse_upper"] = report.sparse_upper;
    doc["sparse_upper_path"] = report.sparse_upper_path.order;
    doc["robust_lower"] = report.robust_lower;
    doc["robust_lower_tree"] = report.robust_lower_tree.edges;
    doc["robust_upper"] = report.robust_upper;
    doc["robust_upper_path"] = report.robust_upper_path.order;
    doc["paths_exact"] = report.paths_exact;
    doc["global_cap"] = report.global_cap.str();
    doc["realized_sparse_edges"] = report.realized_sparse_edges;
    doc["realized_robust_edges"] = report.realized_robust_edges;
    return doc.dump(2) + "\n";
}

}  // namespace osgraph
