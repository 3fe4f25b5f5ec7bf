#pragma once

#include <cstdint>
#include <string>

#include "osgraph/synthesis.hpp"

namespace osgraph {

/// Exact rational with canonical sign/reduction; avoids float drift in the
/// edge-cap comparisons.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d);

    std::string str() const;
    friend bool operator==(const Rational&, const Rational&) = default;
};

bool operator<=(std::int64_t lhs, const Rational& rhs);
bool operator==(std::int64_t lhs, const Rational& rhs);

/// Checked gcd/lcm on positive integers; throw on zero or negative input.
std::int64_t checked_gcd(std::int64_t a, std::int64_t b);
std::int64_t checked_lcm(std::int64_t a, std::int64_t b);

/// Minimum-weight spanning tree on the complete cluster graph with
/// lcm(r_i, r_j) weights (Kruskal). Every orbit-structured graph for the
/// spec needs at least this many edges. Zero for a single cluster.
struct TreeBound {
    std::int64_t weight = 0;
    TreeTopology tree;
};
TreeBound lower_bound(const ClusterSpec& spec);

/// Minimum over Hamiltonian path orders of the summed edge weights, solved
/// exactly by subset DP up to `kExactPathLimit` clusters; above that the
/// alternating-extremes order is scored instead and `exact` is false.
/// For the sparse bound min_i r_i is added on top of the path sum.
inline constexpr int kExactPathLimit = 16;

struct PathBound {
    std::int64_t value = 0;  // path sum (+ min r for the sparse variant)
    PathOrder path;          // lexicographically smallest optimum when exact
    bool exact = true;
};
PathBound upper_bound(const ClusterSpec& spec, int exact_limit = kExactPathLimit);

/// Tree/path optimization with product weights r_i * r_j: the edge-count
/// window for fault-tolerant constructions.
struct RobustBounds {
    std::int64_t lower = 0;
    TreeTopology lower_tree;
    std::int64_t upper = 0;
    PathOrder upper_path;
    bool exact = true;
};
RobustBounds robust_bounds(const ClusterSpec& spec, int exact_limit = kExactPathLimit);

/// Exact (k-1)n^2/k^2: the robust construction over the alternating-extremes
/// path never exceeds this many edges.
Rational global_upper_bound(const ClusterSpec& spec);

/// Closed-form cap on the ascending-sorted-path construction, computed from
/// the histogram of cluster sizes: sum (m_l - 1) l over occupied sizes, plus
/// the cross-size term sum of l(l-1), plus the smallest size. The plain form
/// stops the cross-size sum one short of the largest size and can undercount
/// when the largest size borders a smaller one (sizes {1,2} realize 2 against
/// a cap of 1); the `_full` form extends the sum to the largest size and
/// always dominates the realized edge count.
std::int64_t sorted_path_cap(const ClusterSpec& spec);
std::int64_t sorted_path_cap_full(const ClusterSpec& spec);

/// Everything the `bounds` CLI subcommand reports for one spec.
struct BoundReport {
    ClusterSpec spec;
    std::int64_t sparse_lower = 0;
    TreeTopology sparse_lower_tree;
    std::int64_t sparse_upper = 0;
    PathOrder sparse_upper_path;
    std::int64_t robust_lower = 0;
    TreeTopology robust_lower_tree;
    std::int64_t robust_upper = 0;
    PathOrder robust_upper_path;
    bool paths_exact = true;
    Rational global_cap;
    std::int64_t realized_sparse_edges = 0;  // build_sparse at sparse_upper_path
    std::int64_t realized_robust_edges = 0;  // build_robust at robust_upper_path
};

BoundReport bound_report(const ClusterSpec& spec, int exact_limit = kExactPathLimit);
std::string bound_report_to_json(const BoundReport& report);

}  // namespace osgraph
