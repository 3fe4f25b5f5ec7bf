#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "osgraph/automorphisms.hpp"
#include "osgraph/synthesis.hpp"

using namespace osgraph;

namespace {

OrientedGraph directed_cycle(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    return OrientedGraph::create(n, edges);
}

// leaves hang off node 0: 0->1, 0->2, 0->3
OrientedGraph star3() { return OrientedGraph::create(4, {{0, 1}, {0, 2}, {0, 3}}); }

}  // namespace

TEST_CASE("is_automorphism") {
    auto edge = OrientedGraph::create(2, {{0, 1}});
    CHECK(is_automorphism(edge, {0, 1}));
    CHECK_FALSE(is_automorphism(edge, {1, 0}));  // would reverse the orientation

    auto cycle = directed_cycle(3);
    CHECK(is_automorphism(cycle, {1, 2, 0}));
    CHECK(is_automorphism(cycle, {2, 0, 1}));
    CHECK_FALSE(is_automorphism(cycle, {1, 0, 2}));

    CHECK_THROWS_AS(is_automorphism(edge, {0}), std::invalid_argument);
    CHECK_THROWS_AS(is_automorphism(edge, {0, 0}), std::invalid_argument);
}

TEST_CASE("enumerate_automorphisms") {
    SUBCASE("single node") {
        auto autos = enumerate_automorphisms(OrientedGraph::create(1, {}));
        REQUIRE(autos.size() == 1);
        CHECK(autos[0] == Permutation{0});
    }
    SUBCASE("directed n-cycles have exactly the n rotations") {
        for (int n = 3; n <= 7; ++n) {
            auto autos = enumerate_automorphisms(directed_cycle(n));
            CHECK(autos.size() == static_cast<size_t>(n));
            for (const auto& psi : autos) {
                int shift = psi[0];
                for (int v = 0; v < n; ++v) CHECK(psi[v] == (v + shift) % n);
            }
        }
    }
    SUBCASE("out-star on three leaves carries the full leaf symmetry") {
        auto autos = enumerate_automorphisms(star3());
        CHECK(autos.size() == 6);
    }
    SUBCASE("oracle limit") {
        CHECK_THROWS_AS(enumerate_automorphisms(directed_cycle(10)), std::invalid_argument);
        CHECK_NOTHROW(enumerate_automorphisms(directed_cycle(10), 10));
    }
}

TEST_CASE("automorphism set is a group") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 + static_cast<int>(rng() % 5);
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (u != v && rng() % 3 == 0) edges.emplace_back(u, v);
        auto g = OrientedGraph::create(n, edges);
        auto autos = enumerate_automorphisms(g);

        Permutation identity(n);
        std::iota(identity.begin(), identity.end(), 0);
        CHECK(std::find(autos.begin(), autos.end(), identity) != autos.end());

        auto contains = [&](const Permutation& psi) {
            return std::binary_search(autos.begin(), autos.end(), psi);
        };
        for (const auto& f : autos) {
            Permutation inverse(n);
            for (int i = 0; i < n; ++i) inverse[f[i]] = i;
            CHECK(contains(inverse));
            for (const auto& g2 : autos) {
                Permutation composite(n);
                for (int i = 0; i < n; ++i) composite[i] = f[g2[i]];
                CHECK(contains(composite));
            }
        }
    }
}

TEST_CASE("orbit_partition basics") {
    SUBCASE("single node") {
        auto orbits = orbit_partition(OrientedGraph::create(1, {}));
        CHECK(orbits.partition.blocks == std::vector<std::vector<int>>{{0}});
    }
    SUBCASE("directed edge separates tail from head") {
        auto orbits = orbit_partition(OrientedGraph::create(2, {{0, 1}}));
        CHECK(orbits.partition.blocks == std::vector<std::vector<int>>{{0}, {1}});
        CHECK(orbits.sizes == std::vector<int>{1, 1});
    }
    SUBCASE("five equal clusters on the synthesized graph") {
        auto g = build_sparse(ClusterSpec{{3, 3, 3, 3, 3}}, PathOrder{{1, 2, 3, 4, 5}});
        auto orbits = orbit_partition(g);
        REQUIRE(orbits.sizes == std::vector<int>{3, 3, 3, 3, 3});
        std::vector<std::vector<int>> clusters = {
            {0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {9, 10, 11}, {12, 13, 14}};
        CHECK(orbits.partition.blocks == clusters);
    }
    SUBCASE("witnesses really are automorphisms") {
        auto g = build_sparse(ClusterSpec{{1, 2, 3, 4}}, PathOrder{{4, 2, 1, 3}});
        auto orbits = orbit_partition(g);
        CHECK_FALSE(orbits.witnesses.empty());
        for (const auto& psi : orbits.witnesses) CHECK(is_automorphism(g, psi));
    }
}

TEST_CASE("orbit_partition matches the brute-force oracle") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(rng() % 6);
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (u != v && rng() % 3 == 0) edges.emplace_back(u, v);
        auto g = OrientedGraph::create(n, edges);
        CHECK(orbit_partition(g).partition == oracle::orbits_from_enumeration(g));
    }
    // structured cases where refinement alone cannot finish the job
    auto cycle = directed_cycle(7);
    CHECK(orbit_partition(cycle).partition == oracle::orbits_from_enumeration(cycle));
    auto star = star3();
    CHECK(orbit_partition(star).partition == oracle::orbits_from_enumeration(star));
}

TEST_CASE("orbits share in- and out-degrees") {
    auto g = build_sparse(ClusterSpec{{2, 4, 6}}, PathOrder{{1, 2, 3}});
    auto orbits = orbit_partition(g);
    std::vector<int> in(g.node_count, 0), out(g.node_count, 0);
    for (auto [t, h] : g.edges) {
        out[t]++;
        in[h]++;
    }
    for (const auto& block : orbits.partition.blocks)
        for (int v : block) {
            CHECK(in[v] == in[block.front()]);
            CHECK(out[v] == out[block.front()]);
        }
}

TEST_CASE("exchangeable") {
    auto edge = OrientedGraph::create(2, {{0, 1}});
    CHECK(exchangeable(edge, 0, 0));
    CHECK_FALSE(exchangeable(edge, 0, 1));
    CHECK_THROWS_AS(exchangeable(edge, 0, 5), std::invalid_argument);

    // leaves of the out-star swap freely
    auto star = star3();
    CHECK(exchangeable(star, 1, 2));
    CHECK(exchangeable(star, 2, 3));
    CHECK_FALSE(exchangeable(star, 0, 1));
}

TEST_CASE("orbit report json") {
    auto orbits = orbit_partition(OrientedGraph::create(2, {{0, 1}}));
    std::string text = orbits_to_json(orbits);
    CHECK(text.find("\"blocks\"") != std::string::npos);
    CHECK(text.find("\"sizes\"") != std::string::npos);
}
