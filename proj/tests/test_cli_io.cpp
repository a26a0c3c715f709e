#include "support.hpp"

#include "corners/cli_io.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace corners;
using namespace corners::io;
using namespace corners::testing;

namespace {

std::string data(const std::string& name) { return std::string(CORNERS_DATA_DIR) + "/" + name; }

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& text, const std::string& needle, const std::string& without = "") {
  std::istringstream in(text);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);)
    if (line.find(needle) != std::string::npos && (without.empty() || line.find(without) == std::string::npos)) ++n;
  return n;
}

std::string write_temp(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST(SpaceDocument, RoundTrip) {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    auto x = random_space(rng, 4, "h", "X");
    auto j = space_json(x);
    auto back = load_space(json::parse(j.dump()));
    EXPECT_EQ(back.space, x);
    EXPECT_EQ(space_json(back).dump(), j.dump());
  }
  for (const char* f : {"three_chain_a.json", "three_chain_b.json", "three_chain_c.json", "three_chain_d.json"}) {
    auto d = load_space(read_json_file(data(f)));
    auto again = load_space(space_json(d));
    EXPECT_EQ(space_json(again).dump(), space_json(d).dump()) << f;
    EXPECT_EQ(again.blowups, d.blowups);
  }
}

TEST(SpaceDocument, OrderClosureAndErrors) {
  // Only covering edges are given; the closure is taken on load.
  auto d = load_space(read_json_file(data("three_chain_a.json")));
  EXPECT_TRUE(d.space.less("1", "3"));
  EXPECT_TRUE(d.space.less("0", "3"));
  EXPECT_THROW(load_space(json::parse(R"({"hypersurfaces": []})")), InputError);
  EXPECT_THROW(load_space(json::parse(R"({"interior": "X", "hypersurfaces": ["a"], "order": [["X"]]})")), InputError);
  EXPECT_THROW(load_space(json::parse(R"({"schema_version": 7, "interior": "X", "hypersurfaces": []})")), InputError);
  EXPECT_THROW(load_space(json::parse(R"({"interior": "X", "hypersurfaces": ["a"], "blowups": [[]]})")), InputError);
}

TEST(SpaceDocument, FibrationAnnotations) {
  auto base = read_json_file(data("three_chain_a.json"));
  auto good = base;
  good["fibrations"] = json::parse(R"({"2": {"fiber_index": ["3"], "base_index": ["0", "1"]}})");
  auto [up, down] = fibration_index_sets(load_space(base).space, "2");
  good["fibrations"]["2"]["fiber_index"] = std::vector<Label>(up.begin(), up.end());
  good["fibrations"]["2"]["base_index"] = std::vector<Label>(down.begin(), down.end());
  EXPECT_NO_THROW(load_space(good));
  auto bad = good;
  bad["fibrations"]["2"]["fiber_index"] = json::array();
  EXPECT_THROW(load_space(bad), InputError);
}

TEST(MapDocument, RoundTrip) {
  auto m = load_map(read_json_file(data("diagonal_map.json")));
  auto j = map_json(m);
  auto back = load_map(json::parse(j.dump()));
  EXPECT_EQ(back.map, m.map);
  EXPECT_EQ(map_json(back).dump(), j.dump());
}

TEST(ArrangementDocument, RoundTripWithRationals) {
  auto a = load_arrangement(json::parse(R"({"ambient_dim": 2, "subspaces": [[[2, 1]], [["1/3", 1]]]})"));
  ASSERT_EQ(a.subspaces.size(), 4u);
  auto back = load_arrangement(arrangement_json(a));
  EXPECT_EQ(back.subspaces, a.subspaces);
  EXPECT_EQ(arrangement_json(back).dump(), arrangement_json(a).dump());
  EXPECT_THROW(load_arrangement(json::parse(R"({"ambient_dim": -1})")), InputError);
  EXPECT_THROW(load_arrangement(json::parse(R"({"ambient_dim": 2, "subspaces": [[[1, 0, 0]]]})")), InputError);
  EXPECT_THROW(load_arrangement(json::parse(R"({"ambient_dim": 2, "subspaces": [[["x", 0]]]})")), InputError);
}

TEST(ParseCombination, Grammar) {
  EXPECT_EQ(parse_combination("r1^2*r3/r2"), vec("2*1+3") - vec("2"));
  EXPECT_EQ(parse_combination("1"), MonoidVector());
  EXPECT_EQ(parse_combination("1/r2"), MonoidVector() - vec("2"));
  EXPECT_EQ(parse_combination("rab^-1"), MonoidVector() - vec("ab"));
  EXPECT_EQ(parse_combination("r1/r1"), MonoidVector());
  for (const char* bad : {"r1/r2/r3", "x1", "r", "r1^a", "", "r1*", "/r2", "r1^", "r1**r2", "r1^2^3"})
    EXPECT_THROW(parse_combination(bad), InputError) << bad;
  EXPECT_EQ(parse_combinations("r1/r2,r1/r3").size(), 2u);
  EXPECT_EQ(parse_vector("2*a+b"), vec("2*a+b"));
}

TEST(EmitDot, Examples) {
  auto quadrant = product_space(half_line("x", true), half_line("y", true, "Y"));
  auto q = emit_dot(face_poset(quadrant.fan));
  EXPECT_EQ(count_lines(q, "[label="), 3u);
  EXPECT_EQ(count_lines(q, "->", "dashed"), 2u);
  EXPECT_EQ(count_lines(q, "dashed"), 0u);

  auto single = emit_dot(face_poset(initial_refinement(half_line("x", true))));
  EXPECT_EQ(count_lines(single, "[label="), 1u);
  EXPECT_EQ(count_lines(single, "->"), 0u);

  auto fan_d = emit_dot(face_poset(refine(load_space(read_json_file(data("three_chain_d.json"))))));
  EXPECT_EQ(count_lines(fan_d, "[label="), 5u);
  EXPECT_EQ(count_lines(fan_d, "->", "dashed"), 0u);
  EXPECT_GT(count_lines(fan_d, "dashed"), 0u);
  EXPECT_NE(fan_d.find("[label=\"1+2+3\"]"), std::string::npos);
}

TEST(EmitDot, LinesAreSorted) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto p = product_space(random_space(rng, 2, "h", "X"), random_space(rng, 2, "g", "Y"));
    std::istringstream in(emit_dot(face_poset(p.fan)));
    std::vector<std::string> nodes, edges;
    for (std::string line; std::getline(in, line);) {
      if (line.find("[label=") != std::string::npos) nodes.push_back(line);
      if (line.find("->") != std::string::npos && line.find("dashed") == std::string::npos) edges.push_back(line);
    }
    EXPECT_TRUE(std::is_sorted(nodes.begin(), nodes.end()));
    EXPECT_TRUE(std::is_sorted(edges.begin(), edges.end()));
  }
}

TEST(RunCli, Examples) {
  auto p = cli({"product", "--variant", "min", data("half_line_x.json"), data("half_line_y.json")});
  ASSERT_EQ(p.code, 0) << p.err;
  auto r = json::parse(p.out);
  EXPECT_EQ(r["operation"], "product");
  EXPECT_EQ(r["outputs"]["rays"].size(), 3u);
  EXPECT_EQ(r["outputs"]["poset_edges"].size(), 2u);

  auto s = cli({"psub-check", data("three_chain_b.json"), "--sigmas", "r1/r2,r1/r3"});
  EXPECT_EQ(s.code, 0);
  EXPECT_TRUE(json::parse(s.out)["outputs"]["p_submanifold"].get<bool>());

  auto f = cli({"frames-verify", "--kind", "phi", "--n", "3", "--k", "2"});
  EXPECT_EQ(f.code, 0);
  EXPECT_TRUE(json::parse(f.out)["outputs"]["table_ok"].get<bool>());

  auto m = cli({"mb-product-check", data("axes_r2.json"), data("line_r1.json")});
  EXPECT_EQ(m.code, 0);
  EXPECT_EQ(json::parse(m.out)["outputs"]["hypersurfaces"], 7);
}

TEST(RunCli, EveryCommandSucceedsOnSamples) {
  std::vector<std::vector<std::string>> runs = {
      {"validate", data("three_chain_d.json")},
      {"join", data("half_line_x.json"), data("half_line_y.json"), "--variant", "max"},
      {"join", data("three_chain_a.json"), data("half_line_y.json"), "--side", "base"},
      {"cone", data("three_chain_a.json"), "--variant", "min"},
      {"blowup", data("three_chain_a.json"), "--center", "2,3"},
      {"lift-check", data("diagonal_map.json")},
      {"sigma-check", data("three_chain_c.json"), "--sigma", "r2/r3"},
      {"fiber-product", data("fiber_f.json"), data("fiber_g.json")},
      {"manybody", data("axes_r2.json")},
      {"product", "--seed", "3", "--trials", "10"},
      {"mb-product-check", "--seed", "3", "--trials", "10"},
  };
  for (const auto& args : runs) {
    auto r = cli(args);
    EXPECT_EQ(r.code, 0) << args.front() << ": " << r.err;
    json parsed;
    EXPECT_NO_THROW(parsed = json::parse(r.out)) << args.front();
  }
}

TEST(RunCli, ExitCodes) {
  // Computed false.
  EXPECT_EQ(cli({"psub-check", data("three_chain_a.json"), "--sigmas", "r1/r2,r1/r3"}).code, 2);
  EXPECT_EQ(cli({"psub-check", data("three_chain_c.json"), "--sigmas", "r1/r2,r1/r3"}).code, 2);
  EXPECT_EQ(cli({"sigma-check", data("three_chain_b.json"), "--sigma", "r1/r2"}).code, 2);
  auto invalid = write_temp("corners_invalid.json",
                            R"({"interior": "X", "hypersurfaces": ["a", "b"], "order": [["X", "a"], ["X", "b"]], "corners": [["a", "b"]]})");
  EXPECT_EQ(cli({"validate", invalid}).code, 2);
  // Failed to compute.
  auto bad = write_temp("corners_bad.json", "{bad");
  auto r = cli({"validate", bad});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("malformed JSON"), std::string::npos);
  EXPECT_EQ(cli({"validate", "/nonexistent/space.json"}).code, 1);
  EXPECT_EQ(cli({"no-such-command"}).code, 1);
  EXPECT_EQ(cli({"product", data("half_line_x.json")}).code, 1);
  EXPECT_EQ(cli({"blowup", data("three_chain_a.json"), "--center", "1,5"}).code, 1);
  EXPECT_EQ(cli({"frames-verify", "--kind", "phi", "--n", "2", "--k", "3"}).code, 1);
  EXPECT_EQ(cli({"sigma-check", data("three_chain_c.json"), "--sigma", "r1/r2/r3"}).code, 1);
  EXPECT_EQ(cli({"cone", data("three_chain_a.json"), "--format", "svg"}).code, 1);
  EXPECT_EQ(cli({"lift-check", data("diagonal_map.json"), "--format", "dot"}).code, 1);
  EXPECT_EQ(cli({"product", data("half_line_x.json"), invalid}).code, 1);
}

TEST(RunCli, DotFormat) {
  auto r = cli({"product", "--variant", "min", data("half_line_x.json"), data("half_line_y.json"), "--format", "dot"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("digraph", 0), 0u);
  EXPECT_EQ(count_lines(r.out, "[label="), 3u);
}

TEST(RunCli, DeterministicAndOutputDirectory) {
  const std::vector<std::string> args{"join", data("three_chain_a.json"), data("half_line_y.json"), "--variant", "min"};
  auto a = cli(args), b = cli(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(cli({"product", "--seed", "9", "--trials", "5"}).out, cli({"product", "--seed", "9", "--trials", "5"}).out);
  // A different option changes the digest.
  auto c = cli({"join", data("three_chain_a.json"), data("half_line_y.json"), "--variant", "max"});
  EXPECT_NE(json::parse(a.out)["inputs_digest"], json::parse(c.out)["inputs_digest"]);

  auto dir = std::filesystem::temp_directory_path() / "corners_out";
  std::filesystem::create_directories(dir);
  ::setenv("CORNERS_OUT_DIR", dir.c_str(), 1);
  auto w = cli({"join", data("three_chain_a.json"), data("half_line_y.json"), "--variant", "min", "--out", "join.json"});
  ::unsetenv("CORNERS_OUT_DIR");
  ASSERT_EQ(w.code, 0);
  EXPECT_TRUE(w.out.empty());
  std::ifstream in(dir / "join.json");
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str(), a.out);
}
