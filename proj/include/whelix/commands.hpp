#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "whelix/scene.hpp"

namespace whelix {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitHypothesisNotMet = 3;

struct CmdResult {
  int exit_code = kExitOk;
  Json output;
};

struct CmdContext {
  std::optional<long long> window;
  std::optional<long long> L;
  std::optional<long long> thread_index;
  std::optional<std::string> dot_path;
  std::optional<std::string> bundle_name;
  std::optional<long long> seed;
  std::optional<std::string> strictness;
  bool strong = false;
  bool full = false;
};

CmdResult cmd_check_collection(const Scene& scene,
                               const std::vector<std::string>& names,
                               const CmdContext& ctx);

CmdResult cmd_helix_verify(const Scene& scene, const CmdContext& ctx);
CmdResult cmd_helix_quiver(const Scene& scene, const CmdContext& ctx);
CmdResult cmd_helix_tilting(const Scene& scene, const CmdContext& ctx);

CmdResult cmd_descent_orbits(const Scene& scene, const CmdContext& ctx);
CmdResult cmd_descent_thm612(const Scene& scene, const CmdContext& ctx);
CmdResult cmd_descent_thm613(const Scene& scene, const CmdContext& ctx);
CmdResult cmd_descent_thm614(const Scene& scene, const CmdContext& ctx);
CmdResult cmd_descent_asdecomp(const Scene& scene, const CmdContext& ctx);

CmdResult cmd_brauer_class(const std::string& a, const std::string& b,
                           const CmdContext& ctx);
CmdResult cmd_brauer_index(const std::vector<std::string>& args,
                           const CmdContext& ctx);
CmdResult cmd_brauer_tensor(const std::string& j1, const std::string& j2,
                            const CmdContext& ctx);

// Wraps a command body: catches validation/undetermined errors and turns
// them into the documented exit codes with an {"error": ...} payload.
CmdResult run_guarded(const std::function<CmdResult()>& body);

Scene load_scene_or_throw(const std::optional<std::string>& path);

}  // namespace whelix
