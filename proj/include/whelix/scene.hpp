#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "whelix/descent.hpp"
#include "whelix/helix.hpp"

namespace whelix {

// Scene-file sections; see README for the schema. Parsing validates shapes
// and value ranges and reports the JSON path of the offending field.
struct HelixScene {
  std::vector<std::string> thread;  // bundle names, in order
  int d = 0;
};

struct GaloisScene {
  std::map<std::string, Summand> labels;
  std::vector<std::vector<std::string>> generators;  // cycle strings
  std::optional<std::string> bundle_name;
  std::optional<Json> bundle_literal;
  std::vector<std::vector<std::string>> full_collection;
  std::map<std::string, long long> multiplicities;
};

struct SceneOptions {
  std::optional<long long> window;
  long long L = 10;
  Strictness strictness = Strictness::weak;
};

struct Scene {
  VarietyModel variety{std::vector<Factor>{Factor{}}};
  std::map<std::string, FormalBundle> bundles;
  std::vector<std::string> collection;  // optional default for check-collection
  std::optional<HelixScene> helix;
  std::optional<GaloisScene> galois;
  SceneOptions options;

  static Scene from_json(const Json& j);
  static Scene from_file(const std::string& path);

  const FormalBundle& named_bundle(const std::string& name) const;
  HelixSpec make_helix() const;
  GaloisModel make_galois() const;
  FormalBundle galois_bundle() const;
  long long window_or_default(long long n) const;  // default 3n
};

}  // namespace whelix
