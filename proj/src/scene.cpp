#include "whelix/scene.hpp"

#include <fstream>
#include <set>

namespace whelix {

namespace {

void require_object(const Json& j, const std::string& path) {
  if (!j.is_object())
    throw validation_error(path + " must be an object");
}

void check_keys(const Json& j, const std::string& path,
                const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key))
      throw validation_error(path + " has unknown field \"" + key + "\"");
  }
}

long long positive_integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 1)
    throw validation_error(path + " must be a positive integer");
  return j.get<long long>();
}

std::vector<std::string> string_list(const Json& j, const std::string& path) {
  if (!j.is_array())
    throw validation_error(path + " must be an array of strings");
  std::vector<std::string> out;
  for (const Json& e : j) {
    if (!e.is_string())
      throw validation_error(path + " must contain only strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

Scene Scene::from_json(const Json& j) {
  require_object(j, "scene");
  check_keys(j, "scene",
             {"variety", "bundles", "collection", "helix", "galois",
              "options"});
  if (!j.contains("variety"))
    throw validation_error("scene.variety is required");

  Scene scene;
  scene.variety = VarietyModel::from_json(j["variety"]);

  if (j.contains("bundles")) {
    require_object(j["bundles"], "scene.bundles");
    for (const auto& [name, literal] : j["bundles"].items()) {
      if (name.empty())
        throw validation_error("scene.bundles has an empty name");
      try {
        scene.bundles.emplace(name, bundle_from_json(scene.variety, literal));
      } catch (const validation_error& e) {
        throw validation_error("scene.bundles." + name + ": " + e.what());
      }
    }
  }

  if (j.contains("collection")) {
    scene.collection = string_list(j["collection"], "scene.collection");
    for (const std::string& name : scene.collection)
      if (!scene.bundles.count(name))
        throw validation_error("scene.collection names unknown bundle \"" +
                               name + "\"");
  }

  if (j.contains("helix")) {
    const Json& h = j["helix"];
    require_object(h, "scene.helix");
    check_keys(h, "scene.helix", {"thread", "d"});
    if (!h.contains("thread") || !h.contains("d"))
      throw validation_error("scene.helix needs \"thread\" and \"d\"");
    HelixScene helix;
    helix.thread = string_list(h["thread"], "scene.helix.thread");
    if (helix.thread.empty())
      throw validation_error("scene.helix.thread must be nonempty");
    for (const std::string& name : helix.thread)
      if (!scene.bundles.count(name))
        throw validation_error("scene.helix.thread names unknown bundle \"" +
                               name + "\"");
    helix.d = static_cast<int>(positive_integer(h["d"], "scene.helix.d"));
    scene.helix = std::move(helix);
  }

  if (j.contains("galois")) {
    const Json& g = j["galois"];
    require_object(g, "scene.galois");
    check_keys(g, "scene.galois",
               {"labels", "generators", "bundle", "full_collection",
                "multiplicities"});
    if (!g.contains("labels"))
      throw validation_error("scene.galois.labels is required");
    require_object(g["labels"], "scene.galois.labels");
    GaloisScene galois;
    for (const auto& [name, lit] : g["labels"].items()) {
      const std::string path = "scene.galois.labels." + name;
      require_object(lit, path);
      check_keys(lit, path, {"degree"});
      if (!lit.contains("degree"))
        throw validation_error(path + " needs a \"degree\"");
      MultiDegree degree = MultiDegree::from_json(
          lit["degree"], scene.variety.num_factors());
      // Labels live on the split form, so their end classes are trivial.
      galois.labels.emplace(name,
                            Summand(std::move(degree), BrauerClass::zero()));
    }
    if (g.contains("generators")) {
      if (!g["generators"].is_array())
        throw validation_error("scene.galois.generators must be an array");
      for (const Json& gen : g["generators"])
        galois.generators.push_back(
            string_list(gen, "scene.galois.generators[]"));
    }
    if (g.contains("bundle")) {
      if (g["bundle"].is_string()) {
        std::string name = g["bundle"].get<std::string>();
        if (!scene.bundles.count(name))
          throw validation_error("scene.galois.bundle names unknown bundle \"" +
                                 name + "\"");
        galois.bundle_name = std::move(name);
      } else {
        try {
          bundle_from_json(scene.variety, g["bundle"]);
        } catch (const validation_error& e) {
          throw validation_error(std::string("scene.galois.bundle: ") +
                                 e.what());
        }
        galois.bundle_literal = g["bundle"];
      }
    }
    if (g.contains("full_collection")) {
      if (!g["full_collection"].is_array())
        throw validation_error(
            "scene.galois.full_collection must be an array of label arrays");
      for (const Json& block : g["full_collection"]) {
        std::vector<std::string> labels =
            string_list(block, "scene.galois.full_collection[]");
        for (const std::string& label : labels)
          if (!galois.labels.count(label))
            throw validation_error(
                "scene.galois.full_collection names unknown label \"" + label +
                "\"");
        galois.full_collection.push_back(std::move(labels));
      }
    }
    if (g.contains("multiplicities")) {
      require_object(g["multiplicities"], "scene.galois.multiplicities");
      for (const auto& [key, value] : g["multiplicities"].items()) {
        const std::string prefix = "orbit_of_";
        if (key.rfind(prefix, 0) != 0)
          throw validation_error(
              "scene.galois.multiplicities keys must look like "
              "\"orbit_of_<label>\", got \"" + key + "\"");
        std::string label = key.substr(prefix.size());
        if (!galois.labels.count(label))
          throw validation_error(
              "scene.galois.multiplicities names unknown label \"" + label +
              "\"");
        galois.multiplicities[label] = positive_integer(
            value, "scene.galois.multiplicities." + key);
      }
    }
    scene.galois = std::move(galois);
  }

  if (j.contains("options")) {
    const Json& o = j["options"];
    require_object(o, "scene.options");
    check_keys(o, "scene.options", {"window", "L", "strictness"});
    if (o.contains("window"))
      scene.options.window = positive_integer(o["window"],
                                              "scene.options.window");
    if (o.contains("L"))
      scene.options.L = positive_integer(o["L"], "scene.options.L");
    if (o.contains("strictness")) {
      if (!o["strictness"].is_string())
        throw validation_error("scene.options.strictness must be a string");
      scene.options.strictness =
          strictness_from_string(o["strictness"].get<std::string>());
    }
  }
  return scene;
}

Scene Scene::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open scene file \"" + path + "\"");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw validation_error("scene file \"" + path +
                           "\" is not valid JSON: " + e.what());
  }
  return from_json(j);
}

const FormalBundle& Scene::named_bundle(const std::string& name) const {
  auto it = bundles.find(name);
  if (it == bundles.end())
    throw validation_error("unknown bundle \"" + name + "\"");
  return it->second;
}

HelixSpec Scene::make_helix() const {
  if (!helix)
    throw validation_error("scene has no helix section");
  std::vector<FormalBundle> thread;
  for (const std::string& name : helix->thread)
    thread.push_back(named_bundle(name));
  return HelixSpec(variety, std::move(thread), helix->d);
}

GaloisModel Scene::make_galois() const {
  if (!galois)
    throw validation_error("scene has no galois section");
  return GaloisModel(variety, galois->labels, galois->generators);
}

FormalBundle Scene::galois_bundle() const {
  if (!galois)
    throw validation_error("scene has no galois section");
  if (galois->bundle_name) return named_bundle(*galois->bundle_name);
  if (galois->bundle_literal)
    return bundle_from_json(variety, *galois->bundle_literal);
  throw validation_error("scene.galois.bundle is required for this command");
}

long long Scene::window_or_default(long long n) const {
  if (options.window) return *options.window;
  return 3 * n;
}

}  // namespace whelix
