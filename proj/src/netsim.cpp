#include "osgraph/netsim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace osgraph {

namespace {

// 53-bit uniform in [0,1); fixed mapping keeps draws identical across
// standard libraries (std::*_distribution is implementation-defined).
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::exp(std::log(lo) + uniform01(rng) * (std::log(hi) - std::log(lo)));
}

double normal(std::mt19937_64& rng, double mean, double sd) {
    double u1 = uniform01(rng);
    double u2 = uniform01(rng);
    if (u1 <= 0) u1 = 0x1.0p-53;
    return mean + sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

struct CoupledSystem {
    const OrientedGraph& g;
    const SimConfig& cfg;

    // xdot = -x - E mu(E^T x) + alpha; E columns hold +1 at the head row
    // and -1 at the tail row, so zeta_e = x[head] - x[tail].
    void derivative(const std::vector<double>& x, std::vector<double>& dx) const {
        for (int i = 0; i < g.node_count; ++i) dx[i] = -x[i] + cfg.alpha;
        for (auto [tail, head] : g.edges) {
            double zeta = x[head] - x[tail];
            double mu = cfg.a1 + cfg.a2 * (zeta + std::cos(zeta));
            dx[head] -= mu;
            dx[tail] += mu;
        }
    }
};

double max_abs(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

}  // namespace

SimInputs sample_inputs(std::uint64_t seed, int node_count) {
    std::mt19937_64 rng(seed);
    SimInputs inputs;
    inputs.cfg.seed = seed;
    inputs.cfg.alpha = log_uniform(rng, 0.1, 1.0);
    inputs.cfg.a1 = normal(rng, 0.0, 10.0);
    inputs.cfg.a2 = log_uniform(rng, 0.1, 10.0);
    inputs.x0.resize(node_count);
    for (int i = 0; i < node_count; ++i) inputs.x0[i] = 2.0 * uniform01(rng) - 1.0;
    return inputs;
}

double controller_rest_output(const SimConfig& cfg) { return cfg.a1 + cfg.a2; }

bool forces_clustering(const SimConfig& cfg) {
    return std::abs(controller_rest_output(cfg)) > 1e-12;
}

Trajectory simulate(const OrientedGraph& g, const SimConfig& cfg, const std::vector<double>& x0) {
    if (static_cast<int>(x0.size()) != g.node_count)
        throw std::invalid_argument("initial state size does not match node count");
    if (cfg.dt <= 0 || cfg.t_final <= 0) throw std::invalid_argument("dt and t_final must be positive");

    CoupledSystem system{g, cfg};
    const int n = g.node_count;
    std::vector<double> x = x0, k1(n), k2(n), k3(n), k4(n), work(n);

    Trajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(x);

    const auto steps = static_cast<std::int64_t>(std::ceil(cfg.t_final / cfg.dt));
    const double h = cfg.dt;
    for (std::int64_t step = 0; step < steps; ++step) {
        system.derivative(x, k1);
        if (max_abs(k1) <= cfg.ss_tol) {
            traj.converged = true;
            break;
        }
        for (int i = 0; i < n; ++i) work[i] = x[i] + 0.5 * h * k1[i];
        system.derivative(work, k2);
        for (int i = 0; i < n; ++i) work[i] = x[i] + 0.5 * h * k2[i];
        system.derivative(work, k3);
        for (int i = 0; i < n; ++i) work[i] = x[i] + h * k3[i];
        system.derivative(work, k4);
        for (int i = 0; i < n; ++i)
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        double t = static_cast<double>(step + 1) * h;
        for (double xi : x)
            if (!std::isfinite(xi))
                throw std::runtime_error("state became non-finite at t = " + format_double(t));
        traj.times.push_back(t);
        traj.states.push_back(x);
    }
    system.derivative(x, k1);
    traj.final_residual = max_abs(k1);
    traj.converged = traj.final_residual <= cfg.ss_tol;
    traj.y_ss = x;
    return traj;
}

Partition detect_clusters(const std::vector<double>& y_ss, double tol) {
    for (double y : y_ss)
        if (!std::isfinite(y)) throw std::invalid_argument("outputs must be finite");
    std::vector<int> order(y_ss.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return y_ss[a] < y_ss[b]; });

    Partition parts;
    std::vector<int> block;
    for (size_t i = 0; i < order.size(); ++i) {
        if (!block.empty() && y_ss[order[i]] - y_ss[order[i - 1]] > tol) {
            parts.blocks.push_back(block);
            block.clear();
        }
        block.push_back(order[i]);
    }
    if (!block.empty()) parts.blocks.push_back(block);
    parts.canonicalize();
    return parts;
}

bool check_symmetry_invariance(const std::vector<double>& y_ss,
                               const std::vector<Permutation>& autos, double tol) {
    for (const auto& psi : autos) {
        if (psi.size() != y_ss.size())
            throw std::invalid_argument("permutation size does not match output size");
        for (size_t i = 0; i < psi.size(); ++i)
            if (std::abs(y_ss[psi[i]] - y_ss[i]) > tol) return false;
    }
    return true;
}

std::string trajectory_to_csv(const Trajectory& traj, int stride) {
    if (stride < 1) throw std::invalid_argument("stride must be >= 1");
    const size_t n = traj.states.empty() ? 0 : traj.states.front().size();
    std::string out = "t";
    for (size_t i = 1; i <= n; ++i) out += ",x_" + std::to_string(i);
    out += "\n";
    for (size_t row = 0; row < traj.times.size(); ++row) {
        if (row % stride != 0 && row + 1 != traj.times.size()) continue;
        out += format_double(traj.times[row]);
        for (double x : traj.states[row]) {
            out += ',';
            out += format_double(x);
        }
        out += "\n";
    }
    return out;
}

std::string summary_to_json(const Trajectory& traj, const SimConfig& cfg,
                            const Partition& clusters) {
    nlohmann::json doc;
    doc["converged"] = traj.converged;
    doc["t_end"] = traj.times.empty() ? 0.0 : traj.times.back();
    doc["final_residual"] = traj.final_residual;
    doc["forces_clustering"] = forces_clustering(cfg);
    doc["y_ss"] = traj.y_ss;
    doc["clusters"] = clusters.blocks;
    double sum = std::accumulate(traj.y_ss.begin(), traj.y_ss.end(), 0.0);
    doc["sum_check"] = sum - static_cast<double>(traj.y_ss.size()) * cfg.alpha;
    return doc.dump(2) + "\n";
}

}  // namespace osgraph
