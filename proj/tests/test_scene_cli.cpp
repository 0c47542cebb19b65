#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "whelix/commands.hpp"

using namespace whelix;

namespace {

const char* kBeilinsonScene = R"({
  "variety": { "factors": [{ "dim": 2 }] },
  "bundles": {
    "O":  { "summands": [{ "degree": [0] }] },
    "O1": { "summands": [{ "degree": [1] }] },
    "O2": { "summands": [{ "degree": [2] }] }
  },
  "collection": ["O", "O1", "O2"],
  "helix": { "thread": ["O", "O1", "O2"], "d": 3 }
})";

const char* kConicScene = R"({
  "variety": {
    "factors": [{
      "dim": 1,
      "twist": { "invariants": [
        { "place": "2", "num": 1, "den": 2 },
        { "place": "inf", "num": 1, "den": 2 }
      ]}
    }]
  },
  "bundles": {
    "split1": { "summands": [{ "degree": [1], "mult": 2, "geometric": true }] }
  },
  "galois": {
    "labels": { "oo": { "degree": [0] }, "a": { "degree": [1] } },
    "generators": [],
    "bundle": "split1",
    "full_collection": [["oo"], ["a"]]
  }
})";

Scene beilinson_scene() { return Scene::from_json(Json::parse(kBeilinsonScene)); }

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path(name) {
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("scene parsing and lookups") {
  Scene s = beilinson_scene();
  CHECK(s.variety.dimension() == 2);
  CHECK(s.bundles.size() == 3);
  CHECK(s.collection.size() == 3);
  CHECK(s.named_bundle("O1").split_rank() == 1);
  CHECK_THROWS_AS(s.named_bundle("nope"), validation_error);
  HelixSpec H = s.make_helix();
  CHECK(H.n() == 3);
  CHECK(H.d() == 3);
  CHECK(s.window_or_default(H.n()) == 9);
  CHECK_THROWS_AS(s.make_galois(), validation_error);
  CHECK_THROWS_AS(s.galois_bundle(), validation_error);
}

TEST_CASE("scene validation diagnostics carry field paths") {
  auto parse = [](const std::string& text) {
    return Scene::from_json(Json::parse(text));
  };
  CHECK_THROWS_WITH_AS(parse(R"({})"),
                       doctest::Contains("scene.variety"), validation_error);
  CHECK_THROWS_WITH_AS(
      parse(R"({"variety": {"factors": [{"dim": 1}]}, "extra": 1})"),
      doctest::Contains("unknown field"), validation_error);
  CHECK_THROWS_WITH_AS(
      parse(R"({"variety": {"factors": [{"dim": 1}]},
                "collection": ["ghost"]})"),
      doctest::Contains("ghost"), validation_error);
  CHECK_THROWS_WITH_AS(
      parse(R"({"variety": {"factors": [{"dim": 1}]},
                "helix": {"thread": ["ghost"], "d": 2}})"),
      doctest::Contains("ghost"), validation_error);
  CHECK_THROWS_WITH_AS(
      parse(R"({"variety": {"factors": [{"dim": 1}]},
                "options": {"window": 0}})"),
      doctest::Contains("scene.options.window"), validation_error);
  CHECK_THROWS_WITH_AS(
      parse(R"({"variety": {"factors": [{"dim": 1}]},
                "options": {"strictness": "sloppy"}})"),
      doctest::Contains("strictness"), validation_error);
  CHECK_THROWS_WITH_AS(
      parse(R"({"variety": {"factors": [{"dim": 1}]},
                "galois": {"labels": {"a": {"degree": [0], "end": 1}}}})"),
      doctest::Contains("unknown field"), validation_error);
  CHECK_THROWS_WITH_AS(
      parse(R"({"variety": {"factors": [{"dim": 1}]},
                "galois": {"labels": {"a": {"degree": [0]}},
                           "multiplicities": {"a": 2}}})"),
      doctest::Contains("orbit_of_"), validation_error);
  CHECK_THROWS_WITH_AS(
      parse(R"({"variety": {"factors": [{"dim": 1}]},
                "galois": {"labels": {"a": {"degree": [0]}},
                           "multiplicities": {"orbit_of_b": 2}}})"),
      doctest::Contains("unknown label"), validation_error);
}

TEST_CASE("scene files: missing and malformed") {
  CHECK_THROWS_AS(Scene::from_file("/definitely/not/here.json"),
                  validation_error);
  TempFile bad("whelix_test_bad_scene.json", "{ not json");
  CHECK_THROWS_WITH_AS(Scene::from_file(bad.path),
                       doctest::Contains("not valid JSON"), validation_error);
  TempFile good("whelix_test_good_scene.json", kBeilinsonScene);
  CHECK(Scene::from_file(good.path).bundles.size() == 3);
}

TEST_CASE("command outputs are deterministic") {
  Scene s = beilinson_scene();
  CmdContext ctx;
  std::string first = cmd_helix_verify(s, ctx).output.dump(2);
  std::string second = cmd_helix_verify(s, ctx).output.dump(2);
  CHECK(first == second);
  std::string q1 = cmd_helix_quiver(s, ctx).output.dump(2);
  std::string q2 = cmd_helix_quiver(s, ctx).output.dump(2);
  CHECK(q1 == q2);
}

TEST_CASE("check-collection command resolves names and exit codes") {
  Scene s = beilinson_scene();
  CmdContext ctx;
  CmdResult ok = cmd_check_collection(s, {}, ctx);
  CHECK(ok.exit_code == kExitOk);
  CHECK(ok.output["passed"] == true);

  CmdResult reversed = cmd_check_collection(s, {"O2", "O1", "O"}, ctx);
  CHECK(reversed.exit_code == kExitCheckFailed);
  CHECK(reversed.output["passed"] == false);

  CHECK_THROWS_AS(cmd_check_collection(s, {"ghost"}, ctx), validation_error);

  Scene bare = Scene::from_json(
      Json::parse(R"({"variety": {"factors": [{"dim": 1}]}})"));
  CHECK_THROWS_AS(cmd_check_collection(bare, {}, ctx), validation_error);
}

TEST_CASE("context flags override scene options") {
  Scene s = beilinson_scene();
  CmdContext ctx;
  ctx.window = 4;
  CmdResult r = cmd_helix_verify(s, ctx);
  CHECK(r.output["window"] == 4);

  CmdContext strict;
  strict.strictness = "separable";
  CHECK(cmd_helix_verify(s, strict).output["strictness"] == "separable");

  CmdContext bogus;
  bogus.strictness = "sloppy";
  CHECK_THROWS_AS(cmd_helix_verify(s, bogus), validation_error);

  CmdContext tilt;
  tilt.L = 3;
  tilt.thread_index = 2;
  CmdResult t = cmd_helix_tilting(s, tilt);
  CHECK(t.output["L"] == 3);
  CHECK(t.output["thread_index"] == 2);
  CHECK(t.exit_code == kExitOk);
}

TEST_CASE("quiver command writes DOT on request") {
  Scene s = beilinson_scene();
  CmdContext ctx;
  ctx.dot_path = "whelix_test_quiver.dot";
  CmdResult r = cmd_helix_quiver(s, ctx);
  CHECK(r.exit_code == kExitOk);
  std::ifstream in(*ctx.dot_path);
  REQUIRE(in.good());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(text.rfind("digraph helix {", 0) == 0);
  CHECK(text.find("v2 -> v0 [label=\"3\"];") != std::string::npos);
  std::remove(ctx.dot_path->c_str());
}

TEST_CASE("descent commands route verdicts to exit codes") {
  Scene conic = Scene::from_json(Json::parse(kConicScene));
  CmdContext ctx;
  CHECK(cmd_descent_orbits(conic, ctx).exit_code == kExitOk);
  CHECK(cmd_descent_thm612(conic, ctx).exit_code == kExitOk);
  CHECK(cmd_descent_thm613(conic, ctx).exit_code == kExitOk);
  CHECK(cmd_descent_thm614(conic, ctx).exit_code == kExitOk);
  CHECK(cmd_descent_asdecomp(conic, ctx).exit_code == kExitOk);

  CmdResult orbits = cmd_descent_orbits(conic, ctx);
  REQUIRE(orbits.output["orbits"].size() == 2);
  CHECK(orbits.output["group_order"] == 1);
}

TEST_CASE("run_guarded maps error kinds to documented exit codes") {
  CmdResult invalid = run_guarded(
      []() -> CmdResult { throw validation_error("broken input"); });
  CHECK(invalid.exit_code == kExitInvalid);
  CHECK(invalid.output["error"] == "broken input");
  CHECK(invalid.output["kind"] == "validation");

  CmdResult undet = run_guarded(
      []() -> CmdResult { throw undetermined_error("cannot say"); });
  CHECK(undet.exit_code == kExitHypothesisNotMet);
  CHECK(undet.output["kind"] == "undetermined");

  CmdResult fine = run_guarded([]() -> CmdResult {
    Json j;
    j["x"] = 1;
    return {kExitOk, j};
  });
  CHECK(fine.exit_code == kExitOk);

  CHECK_THROWS_AS(load_scene_or_throw(std::nullopt), validation_error);
}

TEST_CASE("brauer commands parse their inputs") {
  CmdContext ctx;
  CmdResult cls = cmd_brauer_class("-1", "-1", ctx);
  CHECK(cls.exit_code == kExitOk);
  CHECK(cls.output["index"] == 2);
  CHECK(cls.output["class"]["invariants"].size() == 2);

  CmdResult idx = cmd_brauer_index({"-1", "3"}, ctx);
  CHECK(idx.output["period"] == 2);
  CmdResult idx_json = cmd_brauer_index({R"({"invariants": []})"}, ctx);
  CHECK(idx_json.output["index"] == 1);
  CHECK(idx_json.output["is_split"] == true);
  CHECK_THROWS_AS(cmd_brauer_index({}, ctx), validation_error);
  CHECK_THROWS_AS(cmd_brauer_index({"not json"}, ctx), validation_error);

  CmdResult t = cmd_brauer_tensor(
      R"({"invariants": [{"place": "2", "num": 1, "den": 2},
                          {"place": "inf", "num": 1, "den": 2}]})",
      R"({"invariants": [{"place": "2", "num": 1, "den": 2},
                          {"place": "3", "num": 1, "den": 2}]})",
      ctx);
  CHECK(t.output["period"] == 2);
  CHECK(t.output["class"]["invariants"][0]["place"] == "3");

  CHECK_THROWS_AS(cmd_brauer_class("0", "1", ctx), validation_error);
  CHECK_THROWS_AS(cmd_brauer_class("x", "1", ctx), validation_error);
}
