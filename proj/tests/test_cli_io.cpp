#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "osgraph/cli.hpp"
#include "osgraph/graph.hpp"

namespace fs = std::filesystem;
using osgraph::cli::run;

namespace {

struct CoutCapture {
    std::ostringstream captured;
    std::streambuf* saved;
    CoutCapture() : saved(std::cout.rdbuf(captured.rdbuf())) {}
    ~CoutCapture() { std::cout.rdbuf(saved); }
};

fs::path fresh_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("osgraph-test-" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("digest is stable") {
    CHECK(osgraph::cli::digest_bytes("") == "fnv1a64:cbf29ce484222325");
    CHECK(osgraph::cli::digest_bytes("a") != osgraph::cli::digest_bytes("b"));
}

TEST_CASE("synth writes graph, dot and manifest") {
    auto dir = fresh_dir("synth");
    auto out = (dir / "g.json").string();
    auto dot = (dir / "g.dot").string();
    CoutCapture quiet;
    int rc = run({"synth", "--clusters", "1,2,3,4", "--path", "4,2,1,3", "--out", out,
                  "--dot", dot});
    REQUIRE(rc == 0);
    CHECK(quiet.captured.str().find("9 edges") != std::string::npos);

    auto g = osgraph::graph_from_json(slurp(out));
    CHECK(g.node_count == 10);
    CHECK(g.edge_count() == 9);
    CHECK(slurp(dot).find("digraph") != std::string::npos);
    CHECK(fs::exists(out + ".manifest.json"));
}

TEST_CASE("synth default paths come from the bound reports") {
    auto dir = fresh_dir("synth-default");
    auto sparse_out = (dir / "s.json").string();
    auto robust_out = (dir / "r.json").string();
    CoutCapture quiet;
    REQUIRE(run({"synth", "--clusters", "1,2,3,4", "--out", sparse_out}) == 0);
    REQUIRE(run({"synth", "--clusters", "1,2,3,4", "--robust", "--out", robust_out}) == 0);
    CHECK(osgraph::graph_from_json(slurp(sparse_out)).edge_count() == 9);
    CHECK(osgraph::graph_from_json(slurp(robust_out)).edge_count() == 12);
}

TEST_CASE("single-cluster synth branches") {
    auto dir = fresh_dir("synth-k1");
    auto out = (dir / "g.json").string();
    CoutCapture quiet;
    REQUIRE(run({"synth", "--clusters", "5", "--out", out}) == 0);
    CHECK(osgraph::graph_from_json(slurp(out)).edge_count() == 5);  // directed cycle
    REQUIRE(run({"synth", "--clusters", "5", "--robust", "--out", out}) == 0);
    CHECK(osgraph::graph_from_json(slurp(out)).edge_count() == 20);  // complete
}

TEST_CASE("usage errors exit with 2") {
    CoutCapture quiet;
    CHECK(run({"synth"}) == 2);                                        // missing --clusters
    CHECK(run({"synth", "--clusters", "x,y"}) == 2);                   // not integers
    CHECK(run({"synth", "--clusters", "1,2", "--path", "2,2"}) == 2);  // bad permutation
    CHECK(run({"nonsense"}) == 2);
}

TEST_CASE("bounds prints the report") {
    CoutCapture capture;
    REQUIRE(run({"bounds", "--clusters", "1,2,3,4"}) == 0);
    auto text = capture.captured.str();
    CHECK(text.find("\"sparse_lower\": 9") != std::string::npos);
    CHECK(text.find("\"sparse_upper\": 10") != std::string::npos);
    CHECK(text.find("\"robust_upper\": 12") != std::string::npos);
}

TEST_CASE("orbits subcommand reports blocks") {
    auto dir = fresh_dir("orbits");
    auto graph_path = (dir / "g.json").string();
    {
        CoutCapture quiet;
        REQUIRE(run({"synth", "--clusters", "3,3", "--out", graph_path}) == 0);
    }
    CoutCapture capture;
    REQUIRE(run({"orbits", "--graph", graph_path}) == 0);
    CHECK(capture.captured.str().find("\"sizes\": [") != std::string::npos);
}

TEST_CASE("verify exit codes reflect the properties") {
    auto dir = fresh_dir("verify");
    auto good = (dir / "good.json").string();
    auto star = (dir / "star.json").string();
    {
        CoutCapture quiet;
        REQUIRE(run({"synth", "--clusters", "2,2", "--robust", "--out", good}) == 0);
    }
    osgraph::OrientedGraph star_graph =
        osgraph::OrientedGraph::create(4, {{0, 1}, {0, 2}, {0, 3}});
    {
        std::ofstream out(star);
        out << osgraph::graph_to_json(star_graph);
    }

    CoutCapture quiet;
    CHECK(run({"verify", "--graph", good, "--clusters", "2,2"}) == 0);
    CHECK(run({"verify", "--graph", good, "--clusters", "2,2", "--s", "all"}) == 0);
    CHECK(run({"verify", "--graph", star, "--clusters", "1,1,1,1"}) == 1);
    CHECK(run({"verify", "--graph", good, "--clusters", "2,2", "--s", "99"}) == 2);
}

TEST_CASE("simulate writes csv and summary, byte-stable across reruns") {
    auto dir = fresh_dir("simulate");
    auto graph_path = (dir / "g.json").string();
    {
        CoutCapture quiet;
        REQUIRE(run({"synth", "--clusters", "1,2,3,4", "--path", "4,2,1,3", "--out",
                     graph_path}) == 0);
    }
    auto run_once = [&](const std::string& tag) {
        auto csv = (dir / (tag + ".csv")).string();
        auto summary = (dir / (tag + ".json")).string();
        CoutCapture quiet;
        REQUIRE(run({"simulate", "--graph", graph_path, "--seed", "7", "--csv", csv,
                     "--summary", summary}) == 0);
        return std::pair{slurp(csv), slurp(summary)};
    };
    auto first = run_once("a");
    auto second = run_once("b");
    CHECK(first.first == second.first);
    CHECK(first.second == second.second);
    CHECK(first.second.find("\"converged\": true") != std::string::npos);
}

TEST_CASE("repro replays manifests and flags drift") {
    auto dir = fresh_dir("repro");
    auto graph_path = (dir / "g.json").string();
    auto csv = (dir / "t.csv").string();
    auto summary = (dir / "s.json").string();
    {
        CoutCapture quiet;
        REQUIRE(run({"synth", "--clusters", "3,3,3,3,3", "--path", "1,2,3,4,5", "--out",
                     graph_path}) == 0);
        REQUIRE(run({"simulate", "--graph", graph_path, "--seed", "42", "--csv", csv,
                     "--summary", summary}) == 0);
    }

    CoutCapture quiet;
    CHECK(run({"repro", "--manifest", graph_path + ".manifest.json"}) == 0);
    CHECK(run({"repro", "--manifest", summary + ".manifest.json"}) == 0);

    // touch the input graph: the simulate manifest must refuse to replay
    {
        std::ofstream out(graph_path, std::ios::app);
        out << "\n";
    }
    CHECK(run({"repro", "--manifest", summary + ".manifest.json"}) == 1);
}
