#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "osgraph/automorphisms.hpp"
#include "osgraph/graph.hpp"

namespace osgraph {

/// Closed-loop parameters. Agents follow xdot = -x + u + alpha with y = x;
/// each edge carries the static controller mu(zeta) = a1 + a2 (zeta +
/// cos zeta), coupled diffusively through the incidence matrix
/// (zeta = E^T y, u = -E mu).
struct SimConfig {
    double alpha = 0.5;
    double a1 = 1.0;
    double a2 = 1.0;
    double dt = 1e-3;
    double t_final = 50.0;
    std::uint64_t seed = 0;
    double ss_tol = 1e-8;       // max |xdot| declaring steady state
    double cluster_tol = 1e-6;  // output gap separating clusters
};

struct SimInputs {
    SimConfig cfg;
    std::vector<double> x0;
};

/// Draws alpha (log-uniform on [0.1, 1]), a1 (normal, sd 10), a2
/// (log-uniform on [0.1, 10]) and then one initial state per node (uniform
/// on [-1, 1]) from a single seeded generator, in that fixed order. The
/// distribution mapping is implemented locally so identical seeds give
/// bit-identical draws on every platform.
SimInputs sample_inputs(std::uint64_t seed, int node_count);

/// Controller output at rest. When it is zero the loop settles on consensus
/// instead of the designed clusters, so callers get a warning path.
double controller_rest_output(const SimConfig& cfg);
bool forces_clustering(const SimConfig& cfg);

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;  // one row per stored time
    bool converged = false;
    std::vector<double> y_ss;    // outputs at the final state
    double final_residual = 0;   // max |xdot| at the final state
};

/// Fixed-step classical 4th-order integration of the closed loop; stops
/// early once max |xdot| <= ss_tol. Throws on non-finite states, naming the
/// offending time.
Trajectory simulate(const OrientedGraph& g, const SimConfig& cfg, const std::vector<double>& x0);

/// Single-linkage grouping on the line: sort the outputs and split wherever
/// a consecutive gap exceeds tol.
Partition detect_clusters(const std::vector<double>& y_ss, double tol);

/// True iff the outputs are constant along every given automorphism,
/// within tol.
bool check_symmetry_invariance(const std::vector<double>& y_ss,
                               const std::vector<Permutation>& autos, double tol);

/// CSV rows t,x_1,...,x_n at the given stride (final state always written).
/// Numbers carry 17 significant digits, locale-independent.
std::string trajectory_to_csv(const Trajectory& traj, int stride = 1);

/// {"converged":...,"y_ss":[...],"clusters":[[ids]],"sum_check":...}
/// sum_check is sum(y_ss) - n*alpha, which vanishes at steady state.
std::string summary_to_json(const Trajectory& traj, const SimConfig& cfg, const Partition& clusters);

}  // namespace osgraph
