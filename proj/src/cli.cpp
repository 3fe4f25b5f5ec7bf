#include "osgraph/cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "osgraph/bounds.hpp"
#include "osgraph/netsim.hpp"
#include "osgraph/robustness.hpp"

namespace osgraph::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    if (auto dir = fs::path(path).parent_path(); !dir.empty()) fs::create_directories(dir);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

struct FileRecord {
    std::string role;
    std::string path;
    std::string digest;
};

// Run manifest: enough structured state to replay the command and check the
// results byte for byte.
struct Manifest {
    std::string command;
    json options;
    std::vector<FileRecord> inputs;
    std::vector<FileRecord> outputs;

    json to_json() const {
        json doc;
        doc["tool_version"] = kToolVersion;
        doc["command"] = command;
        doc["options"] = options;
        auto dump_records = [](const std::vector<FileRecord>& records) {
            json arr = json::array();
            for (const auto& r : records)
                arr.push_back({{"role", r.role}, {"path", r.path}, {"digest", r.digest}});
            return arr;
        };
        doc["inputs"] = dump_records(inputs);
        doc["outputs"] = dump_records(outputs);
        return doc;
    }

    static Manifest parse(const json& doc) {
        Manifest m;
        m.command = doc.at("command").get<std::string>();
        m.options = doc.at("options");
        auto load_records = [](const json& arr) {
            std::vector<FileRecord> records;
            for (const auto& r : arr)
                records.push_back({r.at("role").get<std::string>(), r.at("path").get<std::string>(),
                                   r.at("digest").get<std::string>()});
            return records;
        };
        m.inputs = load_records(doc.at("inputs"));
        m.outputs = load_records(doc.at("outputs"));
        return m;
    }
};

void record_output(Manifest& m, const std::string& role, const std::string& path,
                   const std::string& content) {
    write_file(path, content);
    m.outputs.push_back({role, path, digest_bytes(content)});
}

void record_input(Manifest& m, const std::string& role, const std::string& path,
                  const std::string& content) {
    m.inputs.push_back({role, path, digest_bytes(content)});
}

void write_manifest(const Manifest& m, const std::string& anchor_path) {
    write_file(anchor_path + ".manifest.json", m.to_json().dump(2) + "\n");
}

std::string orbit_sizes_string(const std::vector<int>& sizes) {
    std::string out = "[";
    for (size_t i = 0; i < sizes.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(sizes[i]);
    }
    return out + "]";
}

// ---- synth -----------------------------------------------------------

struct SynthOptions {
    std::vector<int> clusters;
    std::vector<int> path;  // empty: pick the bound-optimal path
    bool robust = false;
    std::string out = "graph.json";
    std::string dot;
};

json synth_options_json(const SynthOptions& o) {
    return {{"clusters", o.clusters}, {"path", o.path}, {"robust", o.robust},
            {"out", o.out},           {"dot", o.dot}};
}

SynthOptions synth_options_from_json(const json& j) {
    SynthOptions o;
    o.clusters = j.at("clusters").get<std::vector<int>>();
    o.path = j.at("path").get<std::vector<int>>();
    o.robust = j.at("robust").get<bool>();
    o.out = j.at("out").get<std::string>();
    o.dot = j.at("dot").get<std::string>();
    return o;
}

int exec_synth(const SynthOptions& opts, Manifest& manifest) {
    ClusterSpec spec{opts.clusters};
    spec.validate();
    PathOrder path;
    if (!opts.path.empty()) {
        path.order = opts.path;
        path.validate(spec.cluster_count());
    } else if (opts.robust) {
        path = robust_bounds(spec).upper_path;
    } else {
        path = upper_bound(spec).path;
    }

    OrientedGraph g = opts.robust ? build_robust(spec, path) : build_sparse(spec, path);
    manifest.command = "synth";
    SynthOptions resolved = opts;
    resolved.path = path.order;
    manifest.options = synth_options_json(resolved);
    record_output(manifest, "graph", opts.out, graph_to_json(g));
    if (!opts.dot.empty()) record_output(manifest, "dot", opts.dot, graph_to_dot(g));
    write_manifest(manifest, opts.out);

    OrbitPartition orbits = orbit_partition(g);
    std::cout << "wrote " << opts.out << ": " << g.edge_count() << " edges, orbit sizes "
              << orbit_sizes_string(orbits.sizes) << "\n";
    return 0;
}

// ---- bounds ----------------------------------------------------------

struct BoundsOptions {
    std::vector<int> clusters;
    std::string out;  // empty: stdout only
};

int exec_bounds(const BoundsOptions& opts, Manifest& manifest) {
    ClusterSpec spec{opts.clusters};
    BoundReport report = bound_report(spec);
    std::string text = bound_report_to_json(report);
    manifest.command = "bounds";
    manifest.options = {{"clusters", opts.clusters}, {"out", opts.out}};
    if (!opts.out.empty()) {
        record_output(manifest, "report", opts.out, text);
        write_manifest(manifest, opts.out);
    }
    std::cout << text;
    return 0;
}

// ---- orbits ----------------------------------------------------------

struct OrbitsOptions {
    std::string graph;
    std::string out;  // empty: stdout only
};

int exec_orbits(const OrbitsOptions& opts, Manifest& manifest) {
    std::string graph_text = read_file(opts.graph);
    OrientedGraph g = graph_from_json(graph_text);
    std::string text = orbits_to_json(orbit_partition(g));
    manifest.command = "orbits";
    manifest.options = {{"graph", opts.graph}, {"out", opts.out}};
    record_input(manifest, "graph", opts.graph, graph_text);
    if (!opts.out.empty()) {
        record_output(manifest, "orbits", opts.out, text);
        write_manifest(manifest, opts.out);
    }
    std::cout << text;
    return 0;
}

// ---- verify ----------------------------------------------------------

struct VerifyOptions {
    std::string graph;
    std::vector<int> clusters;
    std::string s;  // "", "all", or a positive integer
    std::string out;
};

int exec_verify(const VerifyOptions& opts, Manifest& manifest) {
    std::string graph_text = read_file(opts.graph);
    OrientedGraph g = graph_from_json(graph_text);
    ClusterSpec spec{opts.clusters};
    spec.validate();

    int requested_s = 0;
    if (opts.s == "all") {
        requested_s = g.node_count;
    } else if (!opts.s.empty()) {
        requested_s = std::stoi(opts.s);
        if (requested_s < 1 || requested_s > g.node_count)
            throw CLI::ValidationError("--s must be in 1..n or 'all'");
    }

    RobustnessReport report = robustness_report(g, spec, requested_s);
    std::string text = robustness_report_to_json(report);
    manifest.command = "verify";
    manifest.options = {{"graph", opts.graph}, {"clusters", opts.clusters}, {"s", opts.s},
                        {"out", opts.out}};
    record_input(manifest, "graph", opts.graph, graph_text);
    if (!opts.out.empty()) {
        record_output(manifest, "report", opts.out, text);
        write_manifest(manifest, opts.out);
    }
    std::cout << text;
    bool pass = report.is_os && report.max_verified_s >= requested_s;
    return pass ? 0 : 1;
}

// ---- simulate --------------------------------------------------------

struct SimulateOptions {
    std::string graph;
    std::uint64_t seed = 0;
    double dt = 1e-3;
    double tf = 50.0;
    int stride = 10;
    // NaN means "keep the seeded draw"
    double alpha = std::numeric_limits<double>::quiet_NaN();
    double a1 = std::numeric_limits<double>::quiet_NaN();
    double a2 = std::numeric_limits<double>::quiet_NaN();
    std::string csv = "trajectory.csv";
    std::string summary = "summary.json";
};

json simulate_options_json(const SimulateOptions& o) {
    json j = {{"graph", o.graph}, {"seed", o.seed},   {"dt", o.dt},
              {"tf", o.tf},       {"stride", o.stride}, {"csv", o.csv},
              {"summary", o.summary}};
    if (!std::isnan(o.alpha)) j["alpha"] = o.alpha;
    if (!std::isnan(o.a1)) j["a1"] = o.a1;
    if (!std::isnan(o.a2)) j["a2"] = o.a2;
    return j;
}

SimulateOptions simulate_options_from_json(const json& j) {
    SimulateOptions o;
    o.graph = j.at("graph").get<std::string>();
    o.seed = j.at("seed").get<std::uint64_t>();
    o.dt = j.at("dt").get<double>();
    o.tf = j.at("tf").get<double>();
    o.stride = j.at("stride").get<int>();
    o.csv = j.at("csv").get<std::string>();
    o.summary = j.at("summary").get<std::string>();
    if (j.contains("alpha")) o.alpha = j.at("alpha").get<double>();
    if (j.contains("a1")) o.a1 = j.at("a1").get<double>();
    if (j.contains("a2")) o.a2 = j.at("a2").get<double>();
    return o;
}

int exec_simulate(const SimulateOptions& opts, Manifest& manifest) {
    std::string graph_text = read_file(opts.graph);
    OrientedGraph g = graph_from_json(graph_text);

    SimInputs inputs = sample_inputs(opts.seed, g.node_count);
    inputs.cfg.dt = opts.dt;
    inputs.cfg.t_final = opts.tf;
    if (!std::isnan(opts.alpha)) inputs.cfg.alpha = opts.alpha;
    if (!std::isnan(opts.a1)) inputs.cfg.a1 = opts.a1;
    if (!std::isnan(opts.a2)) inputs.cfg.a2 = opts.a2;

    if (!forces_clustering(inputs.cfg))
        std::cerr << "warning: controller rest output a1 + a2 is zero; expecting consensus, "
                     "not the designed clusters\n";
    if (inputs.cfg.a2 <= 0)
        std::cerr << "warning: a2 <= 0 breaks controller monotonicity; the loop may diverge\n";

    Trajectory traj = simulate(g, inputs.cfg, inputs.x0);
    Partition clusters = detect_clusters(traj.y_ss, inputs.cfg.cluster_tol);

    manifest.command = "simulate";
    manifest.options = simulate_options_json(opts);
    record_input(manifest, "graph", opts.graph, graph_text);
    record_output(manifest, "csv", opts.csv, trajectory_to_csv(traj, opts.stride));
    record_output(manifest, "summary", opts.summary,
                  summary_to_json(traj, inputs.cfg, clusters));
    write_manifest(manifest, opts.summary);

    std::cout << "simulated " << opts.graph << ": " << (traj.converged ? "converged" : "NOT converged")
              << " at t = " << traj.times.back() << ", " << clusters.blocks.size()
              << " cluster(s) detected\n";
    return 0;
}

// ---- repro -----------------------------------------------------------

int exec_replayed(const std::string& command, const json& options, Manifest& replay) {
    if (command == "synth") return exec_synth(synth_options_from_json(options), replay);
    if (command == "bounds") {
        BoundsOptions o{options.at("clusters").get<std::vector<int>>(),
                        options.at("out").get<std::string>()};
        return exec_bounds(o, replay);
    }
    if (command == "orbits") {
        OrbitsOptions o{options.at("graph").get<std::string>(), options.at("out").get<std::string>()};
        return exec_orbits(o, replay);
    }
    if (command == "verify") {
        VerifyOptions o{options.at("graph").get<std::string>(),
                        options.at("clusters").get<std::vector<int>>(),
                        options.at("s").get<std::string>(), options.at("out").get<std::string>()};
        return exec_verify(o, replay);
    }
    if (command == "simulate") return exec_simulate(simulate_options_from_json(options), replay);
    throw std::runtime_error("manifest names unknown command '" + command + "'");
}

json redirect_output_paths(const std::string& command, json options, const fs::path& dir) {
    auto redirect = [&](const char* key) {
        if (options.contains(key)) {
            std::string old = options.at(key).get<std::string>();
            if (!old.empty()) options[key] = (dir / fs::path(old).filename()).string();
        }
    };
    if (command == "synth") {
        redirect("out");
        redirect("dot");
    } else if (command == "bounds" || command == "verify" || command == "orbits") {
        redirect("out");
    } else if (command == "simulate") {
        redirect("csv");
        redirect("summary");
    }
    return options;
}

int exec_repro(const std::string& manifest_path) {
    Manifest recorded = Manifest::parse(json::parse(read_file(manifest_path)));

    for (const auto& input : recorded.inputs) {
        std::string digest = digest_bytes(read_file(input.path));
        if (digest != input.digest) {
            std::cerr << "input " << input.path << " changed since the recorded run\n";
            return 1;
        }
    }

    fs::path replay_dir =
        fs::temp_directory_path() / ("osgraph-repro-" + std::to_string(std::random_device{}()));
    fs::create_directories(replay_dir);
    json replay_options = redirect_output_paths(recorded.command, recorded.options, replay_dir);

    Manifest replay;
    exec_replayed(recorded.command, replay_options, replay);

    bool identical = recorded.outputs.size() == replay.outputs.size();
    for (size_t i = 0; identical && i < recorded.outputs.size(); ++i) {
        const auto& want = recorded.outputs[i];
        const auto& got = replay.outputs[i];
        if (want.role != got.role || want.digest != got.digest) {
            std::cerr << "output '" << want.role << "' differs: recorded " << want.digest
                      << ", replayed " << got.digest << "\n";
            identical = false;
        }
    }
    std::cout << (identical ? "replay reproduced all outputs byte-identically\n"
                            : "replay DIVERGED from the recorded run\n");
    fs::remove_all(replay_dir);
    return identical ? 0 : 1;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            values.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw CLI::ValidationError(std::string(what) + " must be a comma list of integers");
        }
    }
    if (values.empty()) throw CLI::ValidationError(std::string(what) + " must be non-empty");
    return values;
}

}  // namespace

std::string digest_bytes(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

int run(const std::vector<std::string>& args) {
    CLI::App app{"oriented-graph cluster synthesis, sparsity bounds and network simulation"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    std::string clusters_text, path_text, s_text;

    SynthOptions synth;
    auto* cmd_synth = app.add_subcommand("synth", "construct a cluster-forcing oriented graph");
    cmd_synth->add_option("--clusters", clusters_text, "cluster sizes, e.g. 1,2,3,4")->required();
    cmd_synth->add_option("--path", path_text, "cluster visit order (default: bound-optimal)");
    cmd_synth->add_flag("--robust", synth.robust, "all-pairs edges (fault tolerant)");
    cmd_synth->add_option("--out", synth.out, "graph JSON output path");
    cmd_synth->add_option("--dot", synth.dot, "also write a DOT rendering");

    BoundsOptions bounds;
    auto* cmd_bounds = app.add_subcommand("bounds", "edge-count bounds for a cluster spec");
    cmd_bounds->add_option("--clusters", clusters_text, "cluster sizes")->required();
    cmd_bounds->add_option("--out", bounds.out, "write the report here as well");

    OrbitsOptions orbits;
    auto* cmd_orbits = app.add_subcommand("orbits", "orbit partition of a graph");
    cmd_orbits->add_option("--graph", orbits.graph, "graph JSON input")->required();
    cmd_orbits->add_option("--out", orbits.out, "write the orbit report here as well");

    VerifyOptions verify;
    auto* cmd_verify = app.add_subcommand("verify", "check orbit structure and robustness");
    cmd_verify->add_option("--graph", verify.graph, "graph JSON input")->required();
    cmd_verify->add_option("--clusters", clusters_text, "expected cluster sizes")->required();
    cmd_verify->add_option("--s", s_text, "robustness level to verify: 1..n or 'all'");
    cmd_verify->add_option("--out", verify.out, "write the report here as well");

    SimulateOptions simulate;
    auto* cmd_simulate = app.add_subcommand("simulate", "integrate the diffusively coupled loop");
    cmd_simulate->add_option("--graph", simulate.graph, "graph JSON input")->required();
    cmd_simulate->add_option("--seed", simulate.seed, "seed for alpha/a1/a2/x0 draws");
    cmd_simulate->add_option("--dt", simulate.dt, "integration step");
    cmd_simulate->add_option("--tf", simulate.tf, "time horizon");
    cmd_simulate->add_option("--stride", simulate.stride, "store every N-th step in the CSV");
    cmd_simulate->add_option("--alpha", simulate.alpha, "override the agent offset");
    cmd_simulate->add_option("--a1", simulate.a1, "override the controller offset");
    cmd_simulate->add_option("--a2", simulate.a2, "override the controller gain");
    cmd_simulate->add_option("--csv", simulate.csv, "trajectory CSV path");
    cmd_simulate->add_option("--summary", simulate.summary, "summary JSON path");

    std::string manifest_path;
    auto* cmd_repro = app.add_subcommand("repro", "replay a run manifest and compare outputs");
    cmd_repro->add_option("--manifest", manifest_path, "manifest JSON path")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Manifest manifest;
        if (cmd_synth->parsed()) {
            synth.clusters = parse_int_list(clusters_text, "--clusters");
            if (!path_text.empty()) synth.path = parse_int_list(path_text, "--path");
            return exec_synth(synth, manifest);
        }
        if (cmd_bounds->parsed()) {
            bounds.clusters = parse_int_list(clusters_text, "--clusters");
            return exec_bounds(bounds, manifest);
        }
        if (cmd_orbits->parsed()) return exec_orbits(orbits, manifest);
        if (cmd_verify->parsed()) {
            verify.clusters = parse_int_list(clusters_text, "--clusters");
            verify.s = s_text;
            return exec_verify(verify, manifest);
        }
        if (cmd_simulate->parsed()) return exec_simulate(simulate, manifest);
        if (cmd_repro->parsed()) return exec_repro(manifest_path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace osgraph::cli
