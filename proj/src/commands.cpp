#include "whelix/commands.hpp"

#include <fstream>

namespace whelix {

namespace {

Strictness effective_strictness(const Scene& scene, const CmdContext& ctx) {
  if (ctx.strictness) return strictness_from_string(*ctx.strictness);
  return scene.options.strictness;
}

long long effective_window(const Scene& scene, const CmdContext& ctx,
                           long long n) {
  if (ctx.window) return *ctx.window;
  return scene.window_or_default(n);
}

long long effective_L(const Scene& scene, const CmdContext& ctx) {
  if (ctx.L) return *ctx.L;
  return scene.options.L;
}

Json parse_inline_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw validation_error(what + " is not valid JSON: " + e.what());
  }
}

int exit_for(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::affirmative:
      return kExitOk;
    case VerdictStatus::negative:
      return kExitCheckFailed;
    case VerdictStatus::hypothesis_not_met:
      return kExitHypothesisNotMet;
  }
  return kExitInvalid;
}

Json class_summary(const BrauerClass& c) {
  Json out;
  out["class"] = c.to_json();
  out["period"] = c.period();
  out["index"] = c.index();
  out["is_split"] = c.is_split();
  return out;
}

// Scene multiplicity for an orbit: any member label may carry it, but two
// members disagreeing is a scene error.
std::optional<long long> orbit_scene_multiplicity(
    const std::map<std::string, long long>& values,
    const std::vector<std::string>& orbit) {
  std::optional<long long> found;
  for (const std::string& label : orbit) {
    auto it = values.find(label);
    if (it == values.end()) continue;
    if (found && *found != it->second)
      throw validation_error(
          "conflicting scene multiplicities inside the orbit of " + orbit[0]);
    found = it->second;
  }
  return found;
}

}  // namespace

CmdResult cmd_check_collection(const Scene& scene,
                               const std::vector<std::string>& names,
                               const CmdContext& ctx) {
  std::vector<std::string> use = names.empty() ? scene.collection : names;
  if (use.empty())
    throw validation_error(
        "no collection given: pass bundle names or put a \"collection\" in "
        "the scene");
  std::vector<FormalBundle> members;
  members.reserve(use.size());
  for (const std::string& name : use)
    members.push_back(scene.named_bundle(name));

  CollectionOptions opts;
  opts.require_strong = ctx.strong;
  opts.require_full = ctx.full;
  opts.strictness = effective_strictness(scene, ctx);
  CheckReport report = check_collection(scene.variety, members, opts);

  Json out;
  out["command"] = "check-collection";
  out["members"] = use;
  out["strictness"] = to_string(opts.strictness);
  out["passed"] = report.passed;
  out["details"] = report.details;
  return {report.passed ? kExitOk : kExitCheckFailed, out};
}

CmdResult cmd_helix_verify(const Scene& scene, const CmdContext& ctx) {
  HelixSpec H = scene.make_helix();
  long long window = effective_window(scene, ctx, H.n());
  Strictness strictness = effective_strictness(scene, ctx);
  CheckReport whelix = verify_whelix(H, window, strictness);
  CheckReport geometric = verify_geometric(H, window);

  Json out;
  out["command"] = "helix verify";
  out["window"] = window;
  out["strictness"] = to_string(strictness);
  out["passed"] = whelix.passed && geometric.passed;
  Json wj;
  wj["passed"] = whelix.passed;
  wj["details"] = whelix.details;
  out["whelix"] = wj;
  Json gj;
  gj["passed"] = geometric.passed;
  gj["details"] = geometric.details;
  out["geometric"] = gj;
  return {out["passed"].get<bool>() ? kExitOk : kExitCheckFailed, out};
}

CmdResult cmd_helix_quiver(const Scene& scene, const CmdContext& ctx) {
  HelixSpec H = scene.make_helix();
  long long window = effective_window(scene, ctx, H.n());
  QuiverDescription quiver = rolled_up_quiver(H, window);

  Json out;
  out["command"] = "helix quiver";
  out["window"] = window;
  out["quiver"] = quiver.to_json();
  if (ctx.dot_path) {
    std::ofstream dot(*ctx.dot_path);
    if (!dot)
      throw validation_error("cannot write DOT file \"" + *ctx.dot_path +
                             "\"");
    dot << quiver.to_dot();
    out["dot_path"] = *ctx.dot_path;
  }
  return {kExitOk, out};
}

CmdResult cmd_helix_tilting(const Scene& scene, const CmdContext& ctx) {
  HelixSpec H = scene.make_helix();
  long long L = effective_L(scene, ctx);
  long long thread_index = ctx.thread_index.value_or(1);
  CheckReport report = check_tilting_hypothesis(H, thread_index, L);

  Json out;
  out["command"] = "helix tilting";
  out["thread_index"] = thread_index;
  out["L"] = L;
  out["passed"] = report.passed;
  out["details"] = report.details;
  return {report.passed ? kExitOk : kExitCheckFailed, out};
}

CmdResult cmd_descent_orbits(const Scene& scene, const CmdContext& ctx) {
  (void)ctx;
  GaloisModel G = scene.make_galois();

  Json out;
  out["command"] = "descent orbits";
  out["group_order"] = static_cast<long long>(G.group_order());
  Json orbits = Json::array();
  for (const std::vector<std::string>& orbit : G.orbits()) {
    Json o;
    o["labels"] = orbit;
    std::optional<long long> scene_value = orbit_scene_multiplicity(
        scene.galois->multiplicities, orbit);
    try {
      MultiplicityResult m = minimal_multiplicity(scene.variety, G, orbit,
                                                  std::nullopt, scene_value);
      o["multiplicity"] = m.d;
      o["provenance"] = m.provenance;
    } catch (const undetermined_error&) {
      o["multiplicity"] = nullptr;
      o["provenance"] = "undetermined";
    }
    orbits.push_back(o);
  }
  out["orbits"] = orbits;
  return {kExitOk, out};
}

CmdResult cmd_descent_thm612(const Scene& scene, const CmdContext& ctx) {
  (void)ctx;
  GaloisModel G = scene.make_galois();
  FormalBundle E = scene.galois_bundle();
  DescentVerdict verdict = check_descent_blocks(
      scene.variety, E, G, scene.galois->multiplicities);

  Json out;
  out["command"] = "descent thm612";
  out.update(verdict.report);
  return {exit_for(verdict.status), out};
}

CmdResult cmd_descent_thm613(const Scene& scene, const CmdContext& ctx) {
  (void)ctx;
  GaloisModel G = scene.make_galois();
  FormalBundle E = scene.galois_bundle();
  if (scene.galois->full_collection.empty())
    throw validation_error(
        "thm613 needs scene.galois.full_collection (the block-structured "
        "candidate collection)");
  DescentVerdict verdict = check_block_inclusion(
      scene.variety, E, G, scene.galois->full_collection);

  Json out;
  out["command"] = "descent thm613";
  out.update(verdict.report);
  return {exit_for(verdict.status), out};
}

CmdResult cmd_descent_thm614(const Scene& scene, const CmdContext& ctx) {
  (void)ctx;
  GaloisModel G = scene.make_galois();
  FormalBundle E = scene.galois_bundle();
  DescentVerdict verdict =
      check_singleton_orbit_decomposition(scene.variety, E, G);

  Json out;
  out["command"] = "descent thm614";
  out.update(verdict.report);
  return {exit_for(verdict.status), out};
}

CmdResult cmd_descent_asdecomp(const Scene& scene, const CmdContext& ctx) {
  FormalBundle E;
  if (ctx.bundle_name) {
    E = scene.named_bundle(*ctx.bundle_name);
  } else if (scene.galois &&
             (scene.galois->bundle_name || scene.galois->bundle_literal)) {
    E = scene.galois_bundle();
  } else {
    throw validation_error(
        "asdecomp needs --bundle NAME or a scene.galois.bundle");
  }
  AsDecomposition result = decompose_as_bundle(scene.variety, E);

  Json out;
  out["command"] = "descent asdecomp";
  out["bundle"] = bundle_to_json(E);
  out.update(result.report);
  return {result.ok ? kExitOk : kExitCheckFailed, out};
}

CmdResult cmd_brauer_class(const std::string& a, const std::string& b,
                           const CmdContext& ctx) {
  (void)ctx;
  QuaternionSymbol q(parse_rational(a), parse_rational(b));
  BrauerClass c = BrauerClass::from_quaternion(q);

  Json out;
  out["command"] = "brauer class";
  out["symbol"] = q.to_json();
  out.update(class_summary(c));
  return {kExitOk, out};
}

CmdResult cmd_brauer_index(const std::vector<std::string>& args,
                           const CmdContext& ctx) {
  (void)ctx;
  BrauerClass c = BrauerClass::zero();
  if (args.size() == 2) {
    c = BrauerClass::from_quaternion(
        QuaternionSymbol(parse_rational(args[0]), parse_rational(args[1])));
  } else if (args.size() == 1) {
    c = BrauerClass::from_json(parse_inline_json(args[0], "the class"));
  } else {
    throw validation_error(
        "brauer index takes either A B (a quaternion symbol) or one JSON "
        "class");
  }
  Json out;
  out["command"] = "brauer index";
  out.update(class_summary(c));
  return {kExitOk, out};
}

CmdResult cmd_brauer_tensor(const std::string& j1, const std::string& j2,
                            const CmdContext& ctx) {
  (void)ctx;
  BrauerClass a = BrauerClass::from_json(
      parse_inline_json(j1, "the first class"));
  BrauerClass b = BrauerClass::from_json(
      parse_inline_json(j2, "the second class"));
  BrauerClass c = a.tensor(b);

  Json out;
  out["command"] = "brauer tensor";
  out.update(class_summary(c));
  return {kExitOk, out};
}

CmdResult run_guarded(const std::function<CmdResult()>& body) {
  try {
    return body();
  } catch (const undetermined_error& e) {
    Json out;
    out["error"] = e.what();
    out["kind"] = "undetermined";
    return {kExitHypothesisNotMet, out};
  } catch (const validation_error& e) {
    Json out;
    out["error"] = e.what();
    out["kind"] = "validation";
    return {kExitInvalid, out};
  } catch (const Json::exception& e) {
    Json out;
    out["error"] = e.what();
    out["kind"] = "validation";
    return {kExitInvalid, out};
  } catch (const std::exception& e) {
    Json out;
    out["error"] = e.what();
    out["kind"] = "error";
    return {kExitInvalid, out};
  }
}

Scene load_scene_or_throw(const std::optional<std::string>& path) {
  if (!path)
    throw validation_error("a scene file is required (--scene PATH)");
  return Scene::from_file(*path);
}

}  // namespace whelix
