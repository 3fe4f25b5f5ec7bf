#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "osgraph/bounds.hpp"

using namespace osgraph;

namespace {

std::int64_t lcm_w(int a, int b) { return checked_lcm(a, b); }
std::int64_t prod_w(int a, int b) { return std::int64_t(a) * b; }

std::int64_t max_pairwise_gcd(const ClusterSpec& spec) {
    std::int64_t rho = 1;
    for (size_t i = 0; i < spec.sizes.size(); ++i)
        for (size_t j = i + 1; j < spec.sizes.size(); ++j)
            rho = std::max(rho, checked_gcd(spec.sizes[i], spec.sizes[j]));
    return rho;
}

}  // namespace

TEST_CASE("checked gcd and lcm") {
    CHECK(checked_lcm(3, 3) == 3);
    CHECK(checked_lcm(4, 2) == 4);
    CHECK(checked_lcm(6, 10) == 30);  // 2*3 and 2*5 share only the 2
    CHECK(checked_gcd(6, 10) == 2);
    CHECK_THROWS_AS(checked_lcm(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(checked_gcd(-2, 3), std::invalid_argument);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        std::int64_t a = 1 + rng() % 1000, b = 1 + rng() % 1000;
        CHECK(checked_lcm(a, b) * checked_gcd(a, b) == a * b);
    }
}

TEST_CASE("rational arithmetic") {
    CHECK(Rational(300, 16) == Rational(75, 4));
    CHECK(Rational(36, 1).str() == "36");
    CHECK(Rational(75, 4).str() == "75/4");
    CHECK(18 <= Rational(75, 4));
    CHECK_FALSE(19 <= Rational(75, 4));
    CHECK(36 == Rational(36, 1));
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("tree lower bound") {
    SUBCASE("star at the singleton cluster wins for 1,2,3,4") {
        auto bound = lower_bound(ClusterSpec{{1, 2, 3, 4}});
        CHECK(bound.weight == 9);
        bound.tree.validate(4);
    }
    SUBCASE("single cluster has no tree edges") {
        CHECK(lower_bound(ClusterSpec{{6}}).weight == 0);
    }
    SUBCASE("equal clusters pay size times k-1") {
        CHECK(lower_bound(ClusterSpec{{3, 3, 3, 3, 3}}).weight == 12);
    }
    SUBCASE("matches enumeration over all labeled trees") {
        std::mt19937_64 rng(41);
        for (int trial = 0; trial < 40; ++trial) {
            ClusterSpec spec = oracle::random_spec(rng, 1, 5, 6);
            auto bound = lower_bound(spec);
            if (spec.cluster_count() >= 2) {
                CHECK(bound.weight == oracle::min_tree_weight(spec, lcm_w));
                bound.tree.validate(spec.cluster_count());
                std::int64_t tree_total = 0;
                for (auto [a, b] : bound.tree.edges)
                    tree_total += checked_lcm(spec.sizes[a - 1], spec.sizes[b - 1]);
                CHECK(tree_total == bound.weight);
            }
        }
    }
}

TEST_CASE("path upper bound") {
    SUBCASE("sizes 1,2,3,4") {
        auto bound = upper_bound(ClusterSpec{{1, 2, 3, 4}});
        CHECK(bound.value == 10);
        CHECK(bound.exact);
        // both orientations of the optimal order cost 9; ties resolve to the
        // lexicographically smaller sequence
        CHECK(bound.path.order == std::vector<int>{3, 1, 2, 4});
    }
    SUBCASE("equal clusters reach n") {
        auto bound = upper_bound(ClusterSpec{{3, 3, 3, 3, 3}});
        CHECK(bound.value == 15);
        CHECK(bound.path.order == std::vector<int>{1, 2, 3, 4, 5});
    }
    SUBCASE("single cluster keeps only the cycle term") {
        CHECK(upper_bound(ClusterSpec{{7}}).value == 7);
    }
    SUBCASE("limit overflow falls back to the alternating-extremes path") {
        ClusterSpec spec{{2, 3, 4, 5, 6}};
        auto fallback = upper_bound(spec, 4);
        CHECK_FALSE(fallback.exact);
        CHECK(fallback.path.order == global_bound_path(spec).order);
        CHECK(fallback.value >= upper_bound(spec).value);
    }
}

TEST_CASE("path DP equals brute-force enumeration") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        ClusterSpec spec = oracle::random_spec(rng, 2, 7, 6);
        int rmin = *std::min_element(spec.sizes.begin(), spec.sizes.end());
        CHECK(upper_bound(spec).value == oracle::min_path_weight(spec, lcm_w) + rmin);
        CHECK(robust_bounds(spec).upper == oracle::min_path_weight(spec, prod_w));
    }
}

TEST_CASE("robust bounds") {
    SUBCASE("sizes 1,2,3,4") {
        auto bounds = robust_bounds(ClusterSpec{{1, 2, 3, 4}});
        CHECK(bounds.lower == 9);
        CHECK(bounds.upper == 12);
        std::int64_t realized = 0;
        for (size_t t = 0; t + 1 < bounds.upper_path.order.size(); ++t)
            realized += prod_w(ClusterSpec{{1, 2, 3, 4}}.sizes[bounds.upper_path.order[t] - 1],
                               ClusterSpec{{1, 2, 3, 4}}.sizes[bounds.upper_path.order[t + 1] - 1]);
        CHECK(realized == 12);
    }
    SUBCASE("pair of equal clusters") {
        auto bounds = robust_bounds(ClusterSpec{{2, 2}});
        CHECK(bounds.lower == 4);
        CHECK(bounds.upper == 4);
    }
    SUBCASE("five equal clusters") {
        auto bounds = robust_bounds(ClusterSpec{{3, 3, 3, 3, 3}});
        CHECK(bounds.lower == 36);
        CHECK(bounds.upper == 36);
    }
}

TEST_CASE("bound orderings on random specs") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 60; ++trial) {
        ClusterSpec spec = oracle::random_spec(rng, 2, 6, 8);
        int rmin = *std::min_element(spec.sizes.begin(), spec.sizes.end());
        auto lower = lower_bound(spec);
        auto upper = upper_bound(spec);
        auto robust = robust_bounds(spec);
        std::int64_t rho = max_pairwise_gcd(spec);

        // tree optimum never beats the path optimum over the same weights
        CHECK(lower.weight <= upper.value - rmin);
        // product weights sandwich the lcm weights through gcd * lcm = a * b
        CHECK(lower.weight <= robust.lower);
        CHECK(robust.lower <= rho * lower.weight);
        CHECK(upper.value - rmin <= robust.upper);
        CHECK(robust.upper <= rho * (upper.value - rmin));

        if (spec.cluster_count() <= 3) {
            // every tree on at most 3 nodes is a path
            CHECK(lower.weight == upper.value - rmin);
            CHECK(robust.lower == robust.upper);
        }
    }
}

TEST_CASE("global cap") {
    CHECK(global_upper_bound(ClusterSpec{{3, 3, 3, 3, 3}}) == Rational(36, 1));
    CHECK(global_upper_bound(ClusterSpec{{9}}) == Rational(0, 1));
    CHECK(global_upper_bound(ClusterSpec{{1, 2, 3, 4}}) == Rational(75, 4));

    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 60; ++trial) {
        ClusterSpec spec = oracle::random_spec(rng, 2, 8, 8);
        PathOrder weave = global_bound_path(spec);
        std::int64_t realized = 0;
        for (size_t t = 0; t + 1 < weave.order.size(); ++t)
            realized += prod_w(spec.sizes[weave.order[t] - 1], spec.sizes[weave.order[t + 1] - 1]);
        CHECK(realized <= global_upper_bound(spec));
    }
}

TEST_CASE("sorted-path histogram cap") {
    CHECK(sorted_path_cap(ClusterSpec{{2, 2, 2}}) == 6);
    CHECK(sorted_path_cap(ClusterSpec{{1, 1}}) == 2);
    // the plain form undercounts here: the realized sorted path needs 2 edges
    CHECK(sorted_path_cap(ClusterSpec{{1, 2}}) == 1);
    CHECK(sorted_path_cap_full(ClusterSpec{{1, 2}}) == 3);

    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 60; ++trial) {
        ClusterSpec spec = oracle::random_spec(rng, 1, 6, 6);
        ClusterSpec sorted = spec;
        std::sort(sorted.sizes.begin(), sorted.sizes.end());
        PathOrder ascending;
        ascending.order.resize(sorted.cluster_count());
        std::iota(ascending.order.begin(), ascending.order.end(), 1);
        auto g = build_sparse(sorted, ascending);
        CHECK(g.edge_count() <= sorted_path_cap_full(spec));
    }
}

TEST_CASE("bound report") {
    auto report = bound_report(ClusterSpec{{1, 2, 3, 4}});
    CHECK(report.sparse_lower == 9);
    CHECK(report.sparse_upper == 10);
    CHECK(report.robust_lower == 9);
    CHECK(report.robust_upper == 12);
    CHECK(report.realized_sparse_edges == 9);
    CHECK(report.realized_robust_edges == 12);
    CHECK(report.paths_exact);
    CHECK(report.global_cap == Rational(75, 4));

    std::string text = bound_report_to_json(report);
    CHECK(text.find("\"sparse_lower\": 9") != std::string::npos);
    CHECK(text.find("\"sparse_upper\": 10") != std::string::npos);
    CHECK(text.find("\"global_cap\": \"75/4\"") != std::string::npos);
}

TEST_CASE("report sandwich on random specs") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 40; ++trial) {
        ClusterSpec spec = oracle::random_spec(rng, 2, 6, 8);
        auto report = bound_report(spec);
        CHECK(report.sparse_lower <= report.realized_sparse_edges);
        CHECK(report.realized_sparse_edges <= report.sparse_upper);
        CHECK(report.robust_lower <= report.realized_robust_edges);
        CHECK(report.realized_robust_edges <= report.robust_upper);
    }
}
