#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <set>

#include "support/golden.hpp"
#include "support/test_support.hpp"
#include "torsolab/canon.hpp"
#include "torsolab/generators.hpp"
#include "torsolab/graph_io.hpp"
#include "torsolab/json_io.hpp"

using namespace torsolab;
using namespace torsolab::testing;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_in_data(std::vector<std::string> args) {
  const auto previous = std::filesystem::current_path();
  std::filesystem::current_path(data_dir());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  std::filesystem::current_path(previous);
  return {code, out.str(), err.str()};
}

// Scratch files live in the build tree, never next to the inputs.
std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::current_path() / "cli_scratch";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("golden files") {
  const bool regenerate = std::getenv("TORSOLAB_REGENERATE_GOLDEN") != nullptr;
  const auto cases = load_golden_cases();
  REQUIRE(cases.size() >= 20);
  std::set<std::string> names;
  for (const GoldenCase& c : cases) {
    CAPTURE(c.name);
    CHECK(names.insert(c.name).second);
    const std::string rendered = render_golden(c);
    if (regenerate) {
      write_bytes(golden_file(c), rendered);
    } else {
      REQUIRE(std::filesystem::exists(golden_file(c)));
      CHECK(read_bytes(golden_file(c)) == rendered);
    }
  }
}

TEST_CASE("canon agrees on two encodings of the same labeled graph") {
  const Result a = run_in_data({"canon", "p4.edges"});
  const Result b = run_in_data({"canon", "p4_reordered.edges"});
  const Result c = run_in_data({"canon", "p4.g6"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(a.out.find_first_not_of("0123456789abcdef\n") == std::string::npos);
}

TEST_CASE("iso exit codes follow the brute oracle") {
  const Graph p4 = generators::path(4);
  const Graph k13 = generators::star(3);
  REQUIRE_FALSE(brute_isomorphic(p4, k13));
  CHECK(run_in_data({"iso", "p4.edges", "k13.edges"}).code == cli::kExitNotIsomorphic);
  CHECK(run_in_data({"iso", "petersen.g6", "kneser_5_2.json"}).code == cli::kExitOk);
  CHECK(run_in_data({"iso", "p4.edges", "p4.g6"}).code == cli::kExitOk);
}

TEST_CASE("check rejects a decomposition with a vertex deleted from a bag") {
  const Result r = run_in_data({"check", "p4.edges", "p4_missing_vertex.td.json"});
  CHECK(r.code == cli::kExitError);
  CHECK(r.err.rfind("error: verification: ", 0) == 0);
  const Json report = parse_json(r.out);
  CHECK_FALSE(report.at("ok").get<bool>());
  std::set<std::string> kinds;
  for (const Json& v : report.at("violations")) kinds.insert(v.at("kind").get<std::string>());
  CHECK(kinds == std::set<std::string>{"edge-coverage"});
}

TEST_CASE("check names exactly the broken axioms after a bag entry is deleted") {
  const Graph g = parse_graph(read_bytes(data_dir() / "p5.edges"), GraphFormat::kEdgeList);
  const TreeDecomposition valid = elimination_decomposition(g, {0, 1, 2, 3, 4});
  for (std::size_t node = 0; node < valid.size(); ++node) {
    for (Vertex v : valid.bags[node]) {
      TreeDecomposition t = valid;
      t.bags[node] = t.bags[node].without(VertexSet(std::vector<Vertex>{v}));
      const auto file = scratch("mutated.json");
      write_bytes(file, to_json(t, g).dump());
      const Result r = run_in_data({"check", "p5.edges", file.string()});
      const auto expected = expected_axiom_failures(g, t.bags, t.parent);
      CAPTURE(node);
      CAPTURE(v);
      CHECK(r.code == (expected.empty() ? cli::kExitOk : cli::kExitError));
      const Json report = parse_json(r.out);
      std::set<std::string> kinds;
      for (const Json& x : report.at("violations")) kinds.insert(x.at("kind").get<std::string>());
      CHECK(kinds == expected);
    }
  }
}

TEST_CASE("every emitted JSON is accepted by check") {
  struct Producer {
    std::vector<std::string> args;  // graph file at index 1
    std::vector<std::string> check_flags;
  };
  const std::vector<Producer> producers = {
      {{"decompose", "grid_3x3.g6", "--degree", "2", "--apex", "1", "--max-bag", "5"},
       {"--degree", "2", "--apex", "1"}},
      {{"decompose", "p5.edges", "--degree", "1"}, {"--degree", "1"}},
      {{"treelike", "c6.g6", "--max-bag", "3"}, {"--invariance"}},
      {{"treelike", "two_triangles.edges", "--max-bag", "3"}, {"--invariance"}},
      {{"pds", "petersen.g6", "--t", "7"}, {}},
      {{"canon", "grid_3x3.g6", "--witness"}, {}},
      {{"canon", "petersen.g6", "--witness", "--max-bag", "6"}, {"--max-bag", "6"}},
  };
  for (const Producer& p : producers) {
    CAPTURE(p.args[0]);
    CAPTURE(p.args[1]);
    const Result made = run_in_data(p.args);
    REQUIRE(made.code == 0);
    const auto file = scratch("emitted.json");
    write_bytes(file, made.out);
    std::vector<std::string> check = {"check", p.args[1], file.string()};
    check.insert(check.end(), p.check_flags.begin(), p.check_flags.end());
    const Result checked = run_in_data(check);
    CHECK(checked.err == "");
    CHECK(checked.code == 0);
    CHECK(parse_json(checked.out).at("ok").get<bool>());
  }
}

TEST_CASE("output flag writes the same bytes as stdout") {
  const auto file = scratch("canon.txt");
  const Result to_stdout = run_in_data({"canon", "petersen.g6"});
  const Result to_file = run_in_data({"canon", "petersen.g6", "-o", file.string()});
  CHECK(to_file.code == 0);
  CHECK(to_file.out.empty());
  CHECK(read_bytes(file) == to_stdout.out);
}

TEST_CASE("ceilings from flags reach the oracles") {
  const Result r = run_in_data({"check", "p4.edges", "p4_path.td.json", "--minor", "k5.edges",
                                "--pattern-ceiling", "4"});
  CHECK(r.code == cli::kExitError);
  CHECK(r.err.find("unverifiable") != std::string::npos);
}

TEST_CASE("errors are single machine-parsable lines") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"canon", "bad_header.edges"},
           {"canon", "absent.g6"},
           {"frobnicate"},
           {},
           {"pds", "p4.edges", "--t", "-1"},
           {"canon", "p4.edges", "--format", "xml"},
       }) {
    const Result r = run_in_data(args);
    CHECK(r.code == cli::kExitError);
    CHECK(r.err.rfind("error: ", 0) == 0);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  }
}
