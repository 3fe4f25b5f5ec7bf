#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "osgraph/automorphisms.hpp"
#include "osgraph/synthesis.hpp"

namespace osgraph {

enum class BlockStatus { Empty, Complete, Partial };

/// A removal set under which the induced orbit structure departs from the
/// intersected clusters.
struct RemovalWitness {
    std::vector<int> removed;
    Partition expected;
    Partition actual;
};

struct SRobustCheck {
    bool ok = true;
    std::optional<RemovalWitness> witness;
};

/// True iff g is weakly connected and the orbit sizes of Aut(g) equal the
/// multiset of prescribed cluster sizes. Throws on node-count mismatch.
bool verify_os_type(const OrientedGraph& g, const ClusterSpec& spec);

inline constexpr std::uint64_t kDefaultRemovalBudget = std::uint64_t(1) << 14;

/// Checks that for every non-empty survivor set A with |A| >= n - s the
/// orbits of the induced subgraph are exactly the intersected clusters
/// (clusters emptied by the removal are dropped). Clusters are taken from
/// the orbit partition of g itself. Removal sets are enumerated smallest
/// first; the first mismatch is returned as a witness. Throws when the
/// number of subsets exceeds `budget` (use the sampled variant instead)
/// or when g is not orbit-structured for the spec.
SRobustCheck verify_s_robust(const OrientedGraph& g, const ClusterSpec& spec, int s,
                             std::uint64_t budget = kDefaultRemovalBudget);

/// Same check over `samples` uniformly drawn removal sets (seeded, with
/// replacement) instead of exhaustive enumeration.
SRobustCheck verify_s_robust_sampled(const OrientedGraph& g, const ClusterSpec& spec, int s,
                                     int samples, std::uint64_t seed);

/// s-robustness at s = n: every removal set is in play.
SRobustCheck verify_totally_robust(const OrientedGraph& g, const ClusterSpec& spec,
                                   std::uint64_t budget = kDefaultRemovalBudget);

/// For each unordered block pair: Empty when no edges cross, Complete when
/// every cross pair is linked by at least one directed edge, Partial
/// otherwise. Within-block edges are ignored.
std::map<std::pair<int, int>, BlockStatus>
block_status(const OrientedGraph& g, const Partition& parts);

/// Aggregate report behind the `verify` CLI subcommand.
struct RobustnessReport {
    bool is_os = false;
    std::vector<int> orbit_sizes;
    int requested_s = 0;
    int max_verified_s = 0;
    bool sampled = false;
    std::map<std::pair<int, int>, BlockStatus> blocks;
    std::vector<RemovalWitness> witnesses;
};

RobustnessReport robustness_report(const OrientedGraph& g, const ClusterSpec& spec,
                                   int requested_s,
                                   std::uint64_t budget = kDefaultRemovalBudget,
                                   int samples = 10000, std::uint64_t seed = 0);

std::string robustness_report_to_json(const RobustnessReport& report);

}  // namespace osgraph
