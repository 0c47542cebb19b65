#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "whelix/commands.hpp"

using namespace whelix;

int main(int argc, char** argv) {
  CLI::App app{
      "whelix: exceptional collections, helices, and Galois descent on "
      "products of (possibly twisted) projective spaces over the rationals"};
  app.require_subcommand(1);

  CmdContext ctx;
  std::optional<std::string> scene_path;
  bool json_flag = false;

  auto add_scene = [&](CLI::App* cmd) {
    cmd->add_option("--scene", scene_path, "Scene file (JSON)");
  };
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_flag("--json", json_flag,
                  "Emit machine-readable JSON (the default and only format)");
    cmd->add_option("--seed", ctx.seed,
                    "Seed for randomized strategies (all current checks are "
                    "deterministic; recorded for reproducibility)");
  };
  auto add_strictness = [&](CLI::App* cmd) {
    cmd->add_option("--strictness", ctx.strictness,
                    "Member strictness: weak | separable");
  };

  std::vector<std::string> collection_names;
  CLI::App* check = app.add_subcommand(
      "check-collection",
      "Verify an ordered collection of bundles from a scene");
  check->add_option("names", collection_names,
                    "Bundle names (default: the scene's collection)");
  add_scene(check);
  add_common(check);
  add_strictness(check);
  check->add_flag("--strong", ctx.strong,
                  "Also require vanishing higher Ext in the forward direction");
  check->add_flag("--full", ctx.full,
                  "Also require the numerical fullness criterion");

  CLI::App* helix = app.add_subcommand("helix", "Helix checks");
  helix->require_subcommand(1);

  CLI::App* helix_verify = helix->add_subcommand(
      "verify", "Check the w-helix axioms and geometricity in a window");
  add_scene(helix_verify);
  add_common(helix_verify);
  add_strictness(helix_verify);
  helix_verify->add_option("--window", ctx.window,
                           "Window half-width (default 3n)");

  CLI::App* helix_quiver = helix->add_subcommand(
      "quiver", "Compute the rolled-up quiver of the helix algebra");
  add_scene(helix_quiver);
  add_common(helix_quiver);
  helix_quiver->add_option("--window", ctx.window,
                           "Window half-width (default 3n)");
  helix_quiver->add_option("--dot", ctx.dot_path,
                           "Also write the quiver as a DOT file");

  CLI::App* helix_tilting = helix->add_subcommand(
      "tilting", "Check the tilting-sum cohomology vanishing hypothesis");
  add_scene(helix_tilting);
  add_common(helix_tilting);
  helix_tilting->add_option("--thread-index", ctx.thread_index,
                            "First thread position of the sum (default 1)");
  helix_tilting->add_option("--L", ctx.L,
                            "Explicit twist range to check (default 10)");

  CLI::App* descent = app.add_subcommand("descent", "Galois descent checks");
  descent->require_subcommand(1);

  CLI::App* descent_orbits = descent->add_subcommand(
      "orbits", "List label orbits and their descent multiplicities");
  add_scene(descent_orbits);
  add_common(descent_orbits);

  CLI::App* descent_612 = descent->add_subcommand(
      "thm612",
      "Decide whether the bundle splits into separable exceptional bundles");
  add_scene(descent_612);
  add_common(descent_612);

  CLI::App* descent_613 = descent->add_subcommand(
      "thm613",
      "Check inclusion of the bundle's blocks into a full block collection");
  add_scene(descent_613);
  add_common(descent_613);

  CLI::App* descent_614 = descent->add_subcommand(
      "thm614",
      "Decompose a rigid bundle with singleton orbits into descended "
      "indecomposables");
  add_scene(descent_614);
  add_common(descent_614);

  CLI::App* descent_as = descent->add_subcommand(
      "asdecomp",
      "Group a split form on a one-factor curve model into indecomposables");
  add_scene(descent_as);
  add_common(descent_as);
  descent_as->add_option("--bundle", ctx.bundle_name,
                         "Bundle name from the scene (default: galois.bundle)");

  CLI::App* brauer = app.add_subcommand(
      "brauer", "Brauer classes of the rationals");
  brauer->require_subcommand(1);

  std::string quat_a, quat_b;
  CLI::App* brauer_class = brauer->add_subcommand(
      "class", "Local invariants of the quaternion algebra (A, B)");
  brauer_class->add_option("a", quat_a, "First slot (rational)")->required();
  brauer_class->add_option("b", quat_b, "Second slot (rational)")->required();
  add_common(brauer_class);

  std::vector<std::string> index_args;
  CLI::App* brauer_index = brauer->add_subcommand(
      "index", "Period and index of a class (quaternion A B, or JSON)");
  brauer_index->add_option("args", index_args,
                           "Either A B or one JSON class")
      ->expected(1, 2);
  add_common(brauer_index);

  std::string tensor_1, tensor_2;
  CLI::App* brauer_tensor = brauer->add_subcommand(
      "tensor", "Tensor product of two classes given as JSON");
  brauer_tensor->add_option("first", tensor_1, "First class (JSON)")
      ->required();
  brauer_tensor->add_option("second", tensor_2, "Second class (JSON)")
      ->required();
  add_common(brauer_tensor);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  CmdResult result = run_guarded([&]() -> CmdResult {
    if (check->parsed())
      return cmd_check_collection(load_scene_or_throw(scene_path),
                                  collection_names, ctx);
    if (helix_verify->parsed())
      return cmd_helix_verify(load_scene_or_throw(scene_path), ctx);
    if (helix_quiver->parsed())
      return cmd_helix_quiver(load_scene_or_throw(scene_path), ctx);
    if (helix_tilting->parsed())
      return cmd_helix_tilting(load_scene_or_throw(scene_path), ctx);
    if (descent_orbits->parsed())
      return cmd_descent_orbits(load_scene_or_throw(scene_path), ctx);
    if (descent_612->parsed())
      return cmd_descent_thm612(load_scene_or_throw(scene_path), ctx);
    if (descent_613->parsed())
      return cmd_descent_thm613(load_scene_or_throw(scene_path), ctx);
    if (descent_614->parsed())
      return cmd_descent_thm614(load_scene_or_throw(scene_path), ctx);
    if (descent_as->parsed())
      return cmd_descent_asdecomp(load_scene_or_throw(scene_path), ctx);
    if (brauer_class->parsed()) return cmd_brauer_class(quat_a, quat_b, ctx);
    if (brauer_index->parsed()) return cmd_brauer_index(index_args, ctx);
    if (brauer_tensor->parsed())
      return cmd_brauer_tensor(tensor_1, tensor_2, ctx);
    throw validation_error("no subcommand given");
  });

  std::cout << result.output.dump(2) << "\n";
  return result.exit_code;
}
