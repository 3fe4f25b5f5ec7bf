#include "osgraph/robustness.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace osgraph {

namespace {

// Lexicographic t-combinations of 0..n-1; fn returns false to stop early.
template <typename Fn>
bool for_each_combination(int n, int t, Fn&& fn) {
    std::vector<int> idx(t);
    for (int i = 0; i < t; ++i) idx[i] = i;
    while (true) {
        if (!fn(idx)) return false;
        int i = t - 1;
        while (i >= 0 && idx[i] == n - t + i) --i;
        if (i < 0) return true;
        ++idx[i];
        for (int j = i + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
    }
}

std::uint64_t subset_count(int n, int max_removed) {
    std::uint64_t total = 0;
    std::uint64_t binom = 1;
    for (int t = 0; t <= max_removed; ++t) {
        total += binom;
        if (total > (std::uint64_t(1) << 62)) return total;
        binom = binom * (n - t) / (t + 1);
    }
    return total;
}

// Orbits of the survivors, expressed in g's original node ids.
Partition induced_orbits(const OrientedGraph& g, const std::vector<int>& survivors) {
    OrientedGraph sub = induced_subgraph(g, survivors);
    std::vector<int> sorted = survivors;
    std::sort(sorted.begin(), sorted.end());
    Partition orbits = orbit_partition(sub).partition;
    for (auto& block : orbits.blocks)
        for (int& v : block) v = sorted[v];
    orbits.canonicalize();
    return orbits;
}

Partition intersect_clusters(const Partition& clusters, const std::vector<char>& removed) {
    Partition expected;
    for (const auto& block : clusters.blocks) {
        std::vector<int> rest;
        for (int v : block)
            if (!removed[v]) rest.push_back(v);
        if (!rest.empty()) expected.blocks.push_back(std::move(rest));
    }
    expected.canonicalize();
    return expected;
}

// nullopt when the survivors still carry the intersected cluster structure.
std::optional<RemovalWitness> check_removal(const OrientedGraph& g, const Partition& clusters,
                                            const std::vector<int>& removal) {
    std::vector<char> removed(g.node_count, 0);
    for (int v : removal) removed[v] = 1;
    std::vector<int> survivors;
    for (int v = 0; v < g.node_count; ++v)
        if (!removed[v]) survivors.push_back(v);
    Partition expected = intersect_clusters(clusters, removed);
    Partition actual = induced_orbits(g, survivors);
    if (actual == expected) return std::nullopt;
    return RemovalWitness{removal, std::move(expected), std::move(actual)};
}

int clamp_s(const OrientedGraph& g, int s) {
    // Survivor sets must stay non-empty, so at most n-1 nodes can go.
    return std::min(s, g.node_count - 1);
}

}  // namespace

bool verify_os_type(const OrientedGraph& g, const ClusterSpec& spec) {
    spec.validate();
    if (g.node_count != spec.node_count())
        throw std::invalid_argument("graph node count does not match cluster spec");
    if (!is_weakly_connected(g)) return false;
    std::vector<int> sizes = orbit_partition(g).sizes;
    std::vector<int> expected = spec.sizes;
    std::sort(sizes.begin(), sizes.end());
    std::sort(expected.begin(), expected.end());
    return sizes == expected;
}

SRobustCheck verify_s_robust(const OrientedGraph& g, const ClusterSpec& spec, int s,
                             std::uint64_t budget) {
    if (s < 1 || s > g.node_count) throw std::invalid_argument("s must be in 1..n");
    if (!verify_os_type(g, spec))
        throw std::invalid_argument("graph is not orbit-structured for the given cluster sizes");
    const int max_removed = clamp_s(g, s);
    if (subset_count(g.node_count, max_removed) > budget)
        throw std::runtime_error("removal enumeration exceeds budget; use verify_s_robust_sampled");

    Partition clusters = orbit_partition(g).partition;
    SRobustCheck result;
    for (int t = 1; t <= max_removed && result.ok; ++t) {
        for_each_combination(g.node_count, t, [&](const std::vector<int>& removal) {
            auto witness = check_removal(g, clusters, removal);
            if (witness) {
                result.ok = false;
                result.witness = std::move(witness);
                return false;
            }
            return true;
        });
    }
    return result;
}

SRobustCheck verify_s_robust_sampled(const OrientedGraph& g, const ClusterSpec& spec, int s,
                                     int samples, std::uint64_t seed) {
    if (s < 1 || s > g.node_count) throw std::invalid_argument("s must be in 1..n");
    if (!verify_os_type(g, spec))
        throw std::invalid_argument("graph is not orbit-structured for the given cluster sizes");
    const int max_removed = clamp_s(g, s);
    Partition clusters = orbit_partition(g).partition;
    std::mt19937_64 rng(seed);
    std::vector<int> ids(g.node_count);
    std::iota(ids.begin(), ids.end(), 0);

    SRobustCheck result;
    for (int i = 0; i < samples && result.ok; ++i) {
        int t = static_cast<int>(rng() % (max_removed + 1));
        if (t == 0) continue;
        for (int j = 0; j < t; ++j)
            std::swap(ids[j], ids[j + rng() % (ids.size() - j)]);
        std::vector<int> removal(ids.begin(), ids.begin() + t);
        std::sort(removal.begin(), removal.end());
        auto witness = check_removal(g, clusters, removal);
        if (witness) {
            result.ok = false;
            result.witness = std::move(witness);
        }
    }
    return result;
}

SRobustCheck verify_totally_robust(const OrientedGraph& g, const ClusterSpec& spec,
                                   std::uint64_t budget) {
    return verify_s_robust(g, spec, g.node_count, budget);
}

std::map<std::pair<int, int>, BlockStatus> block_status(const OrientedGraph& g,
                                                        const Partition& parts) {
    parts.validate(g.node_count);
    std::map<std::pair<int, int>, BlockStatus> status;
    for (size_t i = 0; i < parts.blocks.size(); ++i) {
        for (size_t j = i + 1; j < parts.blocks.size(); ++j) {
            std::int64_t linked = 0;
            for (int u : parts.blocks[i])
                for (int v : parts.blocks[j])
                    if (g.has_edge(u, v) || g.has_edge(v, u)) ++linked;
            const auto slots = static_cast<std::int64_t>(parts.blocks[i].size()) *
                               static_cast<std::int64_t>(parts.blocks[j].size());
            BlockStatus st = linked == 0           ? BlockStatus::Empty
                             : linked == slots     ? BlockStatus::Complete
                                                   : BlockStatus::Partial;
            status[{static_cast<int>(i + 1), static_cast<int>(j + 1)}] = st;
        }
    }
    return status;
}

RobustnessReport robustness_report(const OrientedGraph& g, const ClusterSpec& spec,
                                   int requested_s, std::uint64_t budget, int samples,
                                   std::uint64_t seed) {
    RobustnessReport report;
    spec.validate();
    if (g.node_count != spec.node_count())
        throw std::invalid_argument("graph node count does not match cluster spec");
    OrbitPartition orbits = orbit_partition(g);
    report.orbit_sizes = orbits.sizes;
    {
        std::vector<int> sizes = orbits.sizes, expected = spec.sizes;
        std::sort(sizes.begin(), sizes.end());
        std::sort(expected.begin(), expected.end());
        report.is_os = is_weakly_connected(g) && sizes == expected;
    }
    report.blocks = block_status(g, orbits.partition);
    report.requested_s = std::min(requested_s, g.node_count);
    report.max_verified_s = 0;
    if (!report.is_os || report.requested_s < 1) return report;

    const int max_removed = clamp_s(g, report.requested_s);
    if (subset_count(g.node_count, max_removed) <= budget) {
        Partition clusters = orbits.partition;
        for (int t = 1; t <= max_removed; ++t) {
            bool level_ok = for_each_combination(g.node_count, t, [&](const std::vector<int>& rm) {
                auto witness = check_removal(g, clusters, rm);
                if (witness) {
                    report.witnesses.push_back(std::move(*witness));
                    return false;
                }
                return true;
            });
            if (!level_ok) return report;
            report.max_verified_s = t;
        }
        // Removing everything but one node is covered at t = n-1; larger s
        // adds no removal sets, so the verdict extends up to the request.
        report.max_verified_s = report.requested_s;
    } else {
        report.sampled = true;
        SRobustCheck check = verify_s_robust_sampled(g, spec, report.requested_s, samples, seed);
        if (check.ok) {
            report.max_verified_s = report.requested_s;
        } else {
            report.witnesses.push_back(std::move(*check.witness));
        }
    }
    return report;
}

namespace {
const char* block_status_name(BlockStatus st) {
    switch (st) {
        case BlockStatus::Empty: return "empty";
        case BlockStatus::Complete: return "complete";
        default: return "partial";
    }
}
}  // namespace

std::string robustness_report_to_json(const RobustnessReport& report) {
    nlohmann::json doc;
    doc["is_os"] = report.is_os;
    doc["orbit_sizes"] = report.orbit_sizes;
    doc["requested_s"] = report.requested_s;
    doc["max_verified_s"] = report.max_verified_s;
    doc["sampled"] = report.sampled;
    doc["blocks"] = nlohmann::json::array();
    for (const auto& [pair, st] : report.blocks)
        doc["blocks"].push_back({{"pair", {pair.first, pair.second}},
                                 {"status", block_status_name(st)}});
    doc["witnesses"] = nlohmann::json::array();
    for (const auto& w : report.witnesses)
        doc["witnesses"].push_back({{"removed", w.removed},
                                    {"expected", w.expected.blocks},
                                    {"actual", w.actual.blocks}});
    return doc.dump(2) + "\n";
}

}  // namespace osgraph
