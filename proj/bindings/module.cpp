#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "osgraph/bounds.hpp"
#include "osgraph/netsim.hpp"
#include "osgraph/robustness.hpp"

namespace py = pybind11;
using namespace osgraph;

namespace {

ClusterSpec make_spec(const std::vector<int>& sizes) {
    ClusterSpec spec{sizes};
    spec.validate();
    return spec;
}

PathOrder make_path(const std::vector<int>& order, int k) {
    PathOrder path{order};
    path.validate(k);
    return path;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "cluster-forcing oriented graph synthesis, bounds and simulation";

    py::class_<NodeLabel>(m, "NodeLabel")
        .def(py::init<>())
        .def_readwrite("cluster", &NodeLabel::cluster)
        .def_readwrite("index", &NodeLabel::index)
        .def("__repr__", [](const NodeLabel& lab) {
            return "NodeLabel(cluster=" + std::to_string(lab.cluster) +
                   ", index=" + std::to_string(lab.index) + ")";
        });

    py::class_<OrientedGraph>(m, "OrientedGraph")
        .def_static(
            "create",
            [](int n, const std::vector<std::pair<int, int>>& edges) {
                return OrientedGraph::create(n, edges);
            },
            py::arg("node_count"), py::arg("edges"))
        .def_readonly("node_count", &OrientedGraph::node_count)
        .def_readonly("edges", &OrientedGraph::edges)
        .def_property_readonly("labels",
                               [](const OrientedGraph& g) {
                                   std::vector<std::optional<std::pair<int, int>>> out;
                                   for (const auto& lab : g.labels)
                                       out.push_back(lab ? std::make_optional(std::make_pair(
                                                               lab->cluster, lab->index))
                                                         : std::nullopt);
                                   return out;
                               })
        .def("edge_count", &OrientedGraph::edge_count)
        .def("has_edge", &OrientedGraph::has_edge)
        .def("to_json", &graph_to_json)
        .def_static("from_json", &graph_from_json)
        .def("to_dot", &graph_to_dot)
        .def("__eq__", [](const OrientedGraph& a, const OrientedGraph& b) { return a == b; });

    m.def("is_weakly_connected", &is_weakly_connected);
    m.def("induced_subgraph", &induced_subgraph);
    m.def("quotient", [](const OrientedGraph& g, const std::vector<std::vector<int>>& blocks) {
        return quotient(g, Partition{blocks});
    });
    m.def("incidence_matrix", [](const OrientedGraph& g) {
        IncidenceMatrix e = incidence_matrix(g);
        std::vector<std::vector<int>> rows(e.rows, std::vector<int>(e.cols));
        for (int i = 0; i < e.rows; ++i)
            for (int j = 0; j < e.cols; ++j) rows[i][j] = e.at(i, j);
        return rows;
    });

    m.def("is_automorphism", &is_automorphism);
    m.def("enumerate_automorphisms", &enumerate_automorphisms, py::arg("graph"),
          py::arg("limit") = kDefaultOracleLimit);
    m.def("orbit_partition", [](const OrientedGraph& g) {
        OrbitPartition orbits = orbit_partition(g);
        return py::make_tuple(orbits.partition.blocks, orbits.sizes);
    });
    m.def("exchangeable", &exchangeable);

    m.def(
        "build_sparse",
        [](const std::vector<int>& sizes, const std::vector<int>& order) {
            ClusterSpec spec = make_spec(sizes);
            return build_sparse(spec, make_path(order, spec.cluster_count()));
        },
        py::arg("cluster_sizes"), py::arg("path"));
    m.def(
        "build_robust",
        [](const std::vector<int>& sizes, const std::vector<int>& order) {
            ClusterSpec spec = make_spec(sizes);
            return build_robust(spec, make_path(order, spec.cluster_count()));
        },
        py::arg("cluster_sizes"), py::arg("path"));
    m.def(
        "build_sparse_tree",
        [](const std::vector<int>& sizes, const std::vector<std::pair<int, int>>& arcs) {
            return build_sparse_tree(make_spec(sizes), arcs);
        },
        py::arg("cluster_sizes"), py::arg("tree_arcs"));
    m.def("global_bound_path",
          [](const std::vector<int>& sizes) { return global_bound_path(make_spec(sizes)).order; });

    m.def("bound_report", [](const std::vector<int>& sizes) {
        BoundReport report = bound_report(make_spec(sizes));
        py::dict d;
        d["sparse_lower"] = report.sparse_lower;
        d["sparse_upper"] = report.sparse_upper;
        d["sparse_upper_path"] = report.sparse_upper_path.order;
        d["robust_lower"] = report.robust_lower;
        d["robust_upper"] = report.robust_upper;
        d["robust_upper_path"] = report.robust_upper_path.order;
        d["paths_exact"] = report.paths_exact;
        d["global_cap"] = report.global_cap.str();
        d["realized_sparse_edges"] = report.realized_sparse_edges;
        d["realized_robust_edges"] = report.realized_robust_edges;
        return d;
    });

    m.def("verify_os_type", [](const OrientedGraph& g, const std::vector<int>& sizes) {
        return verify_os_type(g, make_spec(sizes));
    });
    m.def(
        "verify_s_robust",
        [](const OrientedGraph& g, const std::vector<int>& sizes, int s) {
            SRobustCheck check = verify_s_robust(g, make_spec(sizes), s);
            if (check.ok) return py::make_tuple(true, py::none());
            return py::make_tuple(false, py::cast(check.witness->removed));
        },
        py::arg("graph"), py::arg("cluster_sizes"), py::arg("s"));
    m.def("verify_totally_robust",
          [](const OrientedGraph& g, const std::vector<int>& sizes) {
              SRobustCheck check = verify_totally_robust(g, make_spec(sizes));
              if (check.ok) return py::make_tuple(true, py::none());
              return py::make_tuple(false, py::cast(check.witness->removed));
          });

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("alpha", &SimConfig::alpha)
        .def_readwrite("a1", &SimConfig::a1)
        .def_readwrite("a2", &SimConfig::a2)
        .def_readwrite("dt", &SimConfig::dt)
        .def_readwrite("t_final", &SimConfig::t_final)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("ss_tol", &SimConfig::ss_tol)
        .def_readwrite("cluster_tol", &SimConfig::cluster_tol);

    m.def("sample_inputs", [](std::uint64_t seed, int node_count) {
        SimInputs inputs = sample_inputs(seed, node_count);
        return py::make_tuple(inputs.cfg, inputs.x0);
    });
    m.def("forces_clustering", &forces_clustering);
    m.def("simulate", [](const OrientedGraph& g, const SimConfig& cfg, const std::vector<double>& x0) {
        Trajectory traj = simulate(g, cfg, x0);
        py::dict d;
        d["converged"] = traj.converged;
        d["y_ss"] = traj.y_ss;
        d["final_residual"] = traj.final_residual;
        d["t_end"] = traj.times.back();
        return d;
    });
    m.def("detect_clusters", [](const std::vector<double>& y, double tol) {
        return detect_clusters(y, tol).blocks;
    });
    m.def("check_symmetry_invariance", &check_symmetry_invariance);

    m.attr("__version__") = "0.1.0";
}
