#include "whelix/descent.hpp"

#include <algorithm>
#include <sstream>

namespace whelix {

namespace {

constexpr size_t kGroupClosureCap = 100000;

FormalBundle label_bundle(const Summand& s, long long mult = 1) {
  return FormalBundle::single(s, mult);
}

std::vector<size_t> compose(const std::vector<size_t>& f,
                            const std::vector<size_t>& g) {
  std::vector<size_t> h(f.size());
  for (size_t i = 0; i < f.size(); ++i) h[i] = f[g[i]];
  return h;
}

}  // namespace

GaloisModel::GaloisModel(
    const VarietyModel& X, std::map<std::string, Summand> labels,
    const std::vector<std::vector<std::string>>& generator_cycles)
    : labels_(std::move(labels)) {
  if (labels_.empty())
    throw validation_error("the action needs at least one label");
  std::map<MultiDegree, std::string> degree_owner;
  for (const auto& [name, s] : labels_) {
    X.check_degree(s.degree());
    auto [it, inserted] = degree_owner.emplace(s.degree(), name);
    if (!inserted)
      throw validation_error("labels \"" + it->second + "\" and \"" + name +
                             "\" denote the same split degree " +
                             s.degree().str());
  }
  for (const auto& [name, s] : labels_) order_.push_back(name);

  std::map<std::string, size_t> index_of;
  for (size_t i = 0; i < order_.size(); ++i) index_of[order_[i]] = i;

  for (const auto& cycles : generator_cycles) {
    std::vector<size_t> perm(order_.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::vector<bool> moved(order_.size(), false);
    for (const std::string& cycle : cycles) {
      if (cycle.size() < 2 || cycle.front() != '(' || cycle.back() != ')')
        throw validation_error("cycle must look like \"(a b c)\", got \"" +
                               cycle + "\"");
      std::istringstream in(cycle.substr(1, cycle.size() - 2));
      std::vector<size_t> members;
      std::string tok;
      while (in >> tok) {
        auto it = index_of.find(tok);
        if (it == index_of.end())
          throw validation_error("cycle names unknown label \"" + tok + "\"");
        if (moved[it->second])
          throw validation_error("label \"" + tok +
                                 "\" appears twice in one generator");
        moved[it->second] = true;
        members.push_back(it->second);
      }
      if (members.empty())
        throw validation_error("empty cycle \"" + cycle + "\"");
      for (size_t i = 0; i < members.size(); ++i)
        perm[members[i]] = members[(i + 1) % members.size()];
    }
    generators_.push_back(std::move(perm));
  }

  // Admissibility: a genuine semilinear action cannot change any Ext table.
  std::vector<std::vector<std::vector<long long>>> ext_table(
      order_.size(), std::vector<std::vector<long long>>(order_.size()));
  for (size_t s = 0; s < order_.size(); ++s)
    for (size_t t = 0; t < order_.size(); ++t)
      ext_table[s][t] = ext_dims(X, label_bundle(labels_.at(order_[s])),
                                 label_bundle(labels_.at(order_[t])));
  for (size_t g = 0; g < generators_.size(); ++g)
    for (size_t s = 0; s < order_.size(); ++s)
      for (size_t t = 0; t < order_.size(); ++t)
        if (ext_table[s][t] !=
            ext_table[generators_[g][s]][generators_[g][t]])
          throw validation_error(
              "generator " + std::to_string(g) +
              " does not preserve Ext tables: (" + order_[s] + ", " +
              order_[t] + ") maps to (" + order_[generators_[g][s]] + ", " +
              order_[generators_[g][t]] + ") with a different table");

  std::vector<size_t> identity(order_.size());
  for (size_t i = 0; i < identity.size(); ++i) identity[i] = i;
  std::set<std::vector<size_t>> seen{identity};
  std::vector<std::vector<size_t>> frontier{identity};
  while (!frontier.empty()) {
    std::vector<std::vector<size_t>> next;
    for (const auto& el : frontier)
      for (const auto& gen : generators_) {
        std::vector<size_t> prod = compose(gen, el);
        if (seen.insert(prod).second) {
          if (seen.size() > kGroupClosureCap)
            throw validation_error("generated group exceeds the closure cap");
          next.push_back(std::move(prod));
        }
      }
    frontier = std::move(next);
  }
  closure_.assign(seen.begin(), seen.end());
}

const Summand& GaloisModel::summand_of(const std::string& label) const {
  auto it = labels_.find(label);
  if (it == labels_.end())
    throw validation_error("unknown label \"" + label + "\"");
  return it->second;
}

bool GaloisModel::has_label(const std::string& label) const {
  return labels_.count(label) > 0;
}

std::vector<std::vector<std::string>> GaloisModel::orbits() const {
  std::set<std::string> all(order_.begin(), order_.end());
  return orbits_of(all);
}

std::vector<std::string> GaloisModel::orbit_of(const std::string& label) const {
  summand_of(label);  // validates
  std::map<std::string, size_t> index_of;
  for (size_t i = 0; i < order_.size(); ++i) index_of[order_[i]] = i;
  std::set<size_t> seen{index_of.at(label)};
  std::vector<size_t> frontier{index_of.at(label)};
  while (!frontier.empty()) {
    std::vector<size_t> next;
    for (size_t i : frontier)
      for (const auto& gen : generators_)
        if (seen.insert(gen[i]).second) next.push_back(gen[i]);
    frontier = std::move(next);
  }
  std::vector<std::string> orbit;
  for (size_t i : seen) orbit.push_back(order_[i]);
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

std::vector<std::vector<std::string>> GaloisModel::orbits_of(
    const std::set<std::string>& subset) const {
  std::vector<std::vector<std::string>> result;
  std::set<std::string> done;
  for (const std::string& label : subset) {
    if (done.count(label)) continue;
    std::vector<std::string> orbit = orbit_of(label);
    for (const std::string& member : orbit) {
      if (!subset.count(member))
        throw validation_error("label set is not closed under the action: the "
                               "orbit of \"" +
                               label + "\" contains \"" + member + "\"");
      done.insert(member);
    }
    result.push_back(std::move(orbit));
  }
  std::sort(result.begin(), result.end());
  return result;
}

MultiplicityResult minimal_multiplicity(
    const VarietyModel& X, const GaloisModel& G,
    const std::vector<std::string>& orbit,
    const std::optional<BrauerClass>& hint,
    const std::optional<long long>& scene_value) {
  if (orbit.empty()) throw validation_error("empty orbit");
  for (const std::string& label : orbit) G.summand_of(label);

  if (hint) return {hint->index(), "brauer-hint"};
  if (orbit.size() == 1) {
    const Summand& s = G.summand_of(orbit[0]);
    if (!s.end_class().is_split()) return {1, "as-bundle"};
    return {X.degree_class(s.degree()).index(), "variety"};
  }
  if (scene_value) {
    if (*scene_value < 1)
      throw validation_error("scene multiplicity must be >= 1");
    return {*scene_value, "scene"};
  }
  throw undetermined_error("multiplicity undetermined for the orbit of \"" +
                           orbit[0] + "\": no Brauer hint, no descended "
                           "structure, no scene value");
}

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::affirmative: return "affirmative";
    case VerdictStatus::negative: return "negative";
    case VerdictStatus::hypothesis_not_met: return "hypothesis_not_met";
  }
  return "negative";
}

namespace {

// Match each split degree of E to its label; errors if a degree has no label.
std::map<std::string, long long> match_labels(const VarietyModel& X,
                                              const FormalBundle& E,
                                              const GaloisModel& G) {
  (void)X;
  std::map<MultiDegree, std::string> by_degree;
  for (const auto& [name, s] : G.labels()) by_degree[s.degree()] = name;
  std::map<std::string, long long> counts;
  for (const auto& [degree, count] : E.split_degree_counts()) {
    auto it = by_degree.find(degree);
    if (it == by_degree.end())
      throw validation_error("no label for split degree " + degree.str());
    counts[it->second] = count;
  }
  return counts;
}

void require_orbit_multiplicities_equal(
    const std::map<std::string, long long>& counts,
    const std::vector<std::vector<std::string>>& orbits) {
  for (const auto& orbit : orbits) {
    long long c = counts.at(orbit[0]);
    for (const std::string& label : orbit)
      if (counts.at(label) != c)
        throw validation_error(
            "split multiplicities differ inside the orbit of \"" + orbit[0] +
            "\"; the split form is not stable under the action");
  }
}

Json labels_json(const std::vector<std::string>& labels) {
  Json arr = Json::array();
  for (const std::string& l : labels) arr.push_back(l);
  return arr;
}

}  // namespace

DescentVerdict check_singleton_orbit_decomposition(const VarietyModel& X,
                                                   const FormalBundle& E,
                                                   const GaloisModel& G) {
  if (E.empty()) throw validation_error("empty bundle");
  DescentVerdict verdict;
  verdict.report["theorem"] = "singleton-orbit decomposition";

  std::vector<long long> self = ext_dims(X, E, E);
  verdict.report["rigid"] = Json{{"ok", self[1] == 0}, {"ext1_dim", self[1]}};
  if (self[1] != 0) {
    verdict.status = VerdictStatus::hypothesis_not_met;
    verdict.report["status"] = to_string(verdict.status);
    verdict.report["reason"] = "bundle is not rigid";
    return verdict;
  }

  std::map<std::string, long long> counts = match_labels(X, E, G);
  std::set<std::string> present;
  for (const auto& [label, c] : counts) {
    (void)c;
    present.insert(label);
  }
  std::vector<std::vector<std::string>> orbits = G.orbits_of(present);
  require_orbit_multiplicities_equal(counts, orbits);

  for (const auto& orbit : orbits)
    if (orbit.size() > 1) {
      verdict.status = VerdictStatus::hypothesis_not_met;
      verdict.report["status"] = to_string(verdict.status);
      verdict.report["reason"] = "an orbit has more than one element";
      verdict.report["orbit"] = labels_json(orbit);
      return verdict;
    }

  Json decomposition = Json::array();
  for (const auto& orbit : orbits) {
    const Summand& s = G.summand_of(orbit[0]);
    FormalBundle V = s.end_class().is_split()
                         ? as_bundle(X, s.degree())
                         : FormalBundle::single(s);
    long long per_copy = V.split_rank();
    long long available = counts.at(orbit[0]);
    MultiplicityResult mult =
        minimal_multiplicity(X, G, orbit, std::nullopt, std::nullopt);
    if (available % per_copy != 0) {
      verdict.status = VerdictStatus::negative;
      verdict.report["status"] = to_string(verdict.status);
      verdict.report["reason"] = "split multiplicity is not a multiple of the "
                                 "descended indecomposable's rank";
      verdict.report["witness"] = Json{{"degree", s.degree().to_json()},
                                       {"count", available},
                                       {"indecomposable_rank", per_copy}};
      return verdict;
    }
    ExcClass cls = classify_exceptionality(X, V);
    if (cls != ExcClass::exceptional && cls != ExcClass::weak_exceptional) {
      verdict.status = VerdictStatus::negative;
      verdict.report["status"] = to_string(verdict.status);
      verdict.report["reason"] = "descended summand is not weak exceptional";
      verdict.report["witness"] = Json{{"degree", s.degree().to_json()},
                                       {"classification", to_string(cls)}};
      return verdict;
    }
    decomposition.push_back(Json{{"label", orbit[0]},
                                 {"bundle", bundle_to_json(V)},
                                 {"copies", available / per_copy},
                                 {"classification", to_string(cls)},
                                 {"multiplicity", mult.d},
                                 {"provenance", mult.provenance}});
  }
  verdict.status = VerdictStatus::affirmative;
  verdict.report["status"] = to_string(verdict.status);
  verdict.report["decomposition"] = decomposition;
  return verdict;
}

DescentVerdict check_descent_blocks(
    const VarietyModel& X, const FormalBundle& E, const GaloisModel& G,
    const std::map<std::string, long long>& scene_multiplicities) {
  if (E.empty()) throw validation_error("empty bundle");
  DescentVerdict verdict;
  verdict.report["theorem"] = "descent blocks";

  std::vector<long long> self = ext_dims(X, E, E);
  bool rigid = self[1] == 0;
  verdict.report["rigid"] = Json{{"ok", rigid}, {"ext1_dim", self[1]}};

  std::map<std::string, long long> counts = match_labels(X, E, G);
  std::set<std::string> present;
  for (const auto& [label, c] : counts) {
    (void)c;
    present.insert(label);
  }
  std::vector<std::vector<std::string>> orbits = G.orbits_of(present);
  require_orbit_multiplicities_equal(counts, orbits);

  bool all_ok = true;
  Json orbit_reports = Json::array();
  Json first_failure;
  for (const auto& orbit : orbits) {
    std::vector<FormalBundle> members;
    for (const std::string& label : orbit)
      members.push_back(label_bundle(G.summand_of(label)));
    BlockCheck block = check_split_semisimple_block(X, members);

    std::optional<long long> scene_value;
    for (const std::string& label : orbit) {
      auto it = scene_multiplicities.find(label);
      if (it == scene_multiplicities.end()) continue;
      if (scene_value && *scene_value != it->second)
        throw validation_error("conflicting scene multiplicities for the "
                               "orbit of \"" + orbit[0] + "\"");
      scene_value = it->second;
    }
    Json mult_json(nullptr);
    Json provenance_json(nullptr);
    Json bundle_json(nullptr);
    try {
      MultiplicityResult mult =
          minimal_multiplicity(X, G, orbit, std::nullopt, scene_value);
      mult_json = mult.d;
      provenance_json = mult.provenance;
      FormalBundle descended;
      for (const std::string& label : orbit)
        descended = descended.direct_sum(
            label_bundle(G.summand_of(label), mult.d));
      bundle_json = bundle_to_json(descended);
    } catch (const undetermined_error&) {
      // The block verdict does not depend on d; report it as unknown.
    }
    orbit_reports.push_back(Json{{"labels", labels_json(orbit)},
                                 {"multiplicity", mult_json},
                                 {"provenance", provenance_json},
                                 {"block", block.to_json()},
                                 {"bundle", bundle_json}});
    if (!block.ok && all_ok) {
      all_ok = false;
      first_failure = Json{{"labels", labels_json(orbit)},
                           {"failure", block.failure},
                           {"witness", block.witness}};
    }
  }
  verdict.report["orbits"] = orbit_reports;
  if (!first_failure.is_null()) verdict.report["first_failure"] = first_failure;

  if (!rigid) {
    verdict.status = VerdictStatus::hypothesis_not_met;
    verdict.report["reason"] = "bundle is not rigid";
  } else {
    verdict.status =
        all_ok ? VerdictStatus::affirmative : VerdictStatus::negative;
  }
  verdict.report["status"] = to_string(verdict.status);
  verdict.report["conclusion"] =
      all_ok && rigid
          ? "bundle is a direct sum of separable exceptional bundles"
          : (rigid ? "some minimal descent orbit is not a split semisimple "
                     "block"
                   : "theorem hypothesis not met");
  return verdict;
}

DescentVerdict check_block_inclusion(
    const VarietyModel& X, const FormalBundle& E, const GaloisModel& G,
    const std::vector<std::vector<std::string>>& blocks) {
  if (E.empty()) throw validation_error("empty bundle");
  DescentVerdict verdict;
  verdict.report["theorem"] = "block inclusion";

  ExcClass cls = classify_exceptionality(X, E);
  verdict.report["classification"] = to_string(cls);
  if (cls != ExcClass::exceptional && cls != ExcClass::weak_exceptional &&
      cls != ExcClass::separable_exceptional &&
      cls != ExcClass::semi_exceptional) {
    verdict.status = VerdictStatus::hypothesis_not_met;
    verdict.report["status"] = to_string(verdict.status);
    verdict.report["reason"] = "bundle is not separable exceptional";
    return verdict;
  }

  if (blocks.empty()) throw validation_error("no blocks supplied");
  std::set<std::string> used;
  for (const auto& block : blocks) {
    if (block.empty()) throw validation_error("empty block supplied");
    for (const std::string& label : block) {
      G.summand_of(label);
      if (!used.insert(label).second)
        throw validation_error("label \"" + label +
                               "\" appears in more than one block");
    }
  }

  bool all_ok = true;

  // (a) every block is a union of orbits (invariant as a set).
  Json invariance_failures = Json::array();
  const std::vector<std::string>& order = G.label_order();
  std::map<std::string, size_t> index_of;
  for (size_t i = 0; i < order.size(); ++i) index_of[order[i]] = i;
  for (size_t b = 0; b < blocks.size(); ++b) {
    std::set<size_t> block_set;
    for (const std::string& label : blocks[b])
      block_set.insert(index_of.at(label));
    for (const auto& el : G.group_elements())
      for (size_t i : block_set)
        if (!block_set.count(el[i])) {
          all_ok = false;
          invariance_failures.push_back(
              Json{{"block", b},
                   {"label", order[i]},
                   {"maps_to", order[el[i]]}});
        }
  }
  verdict.report["invariance_failures"] = invariance_failures;

  // (b) each block is a split semisimple block.
  Json block_reports = Json::array();
  for (size_t b = 0; b < blocks.size(); ++b) {
    std::vector<FormalBundle> members;
    for (const std::string& label : blocks[b])
      members.push_back(label_bundle(G.summand_of(label)));
    BlockCheck check = check_split_semisimple_block(X, members);
    if (!check.ok) all_ok = false;
    block_reports.push_back(Json{{"block", b}, {"check", check.to_json()}});
  }
  verdict.report["block_checks"] = block_reports;

  // (c) all Ext from any later block to any earlier block vanish.
  Json semi_failures = Json::array();
  for (size_t u = 0; u < blocks.size(); ++u)
    for (size_t v = u + 1; v < blocks.size(); ++v)
      for (const std::string& later : blocks[v])
        for (const std::string& earlier : blocks[u]) {
          std::vector<long long> ext =
              ext_dims(X, label_bundle(G.summand_of(later)),
                       label_bundle(G.summand_of(earlier)));
          for (size_t r = 0; r < ext.size(); ++r)
            if (ext[r] != 0) {
              all_ok = false;
              semi_failures.push_back(Json{{"later_block", v},
                                           {"earlier_block", u},
                                           {"from", later},
                                           {"to", earlier},
                                           {"r", r},
                                           {"dim", ext[r]}});
            }
        }
  verdict.report["semiorthogonality_failures"] = semi_failures;

  // (d) numerical fullness.
  long long total = 0;
  for (const auto& block : blocks) total += static_cast<long long>(block.size());
  bool k0_ok = total == X.k0_rank();
  if (!k0_ok) all_ok = false;
  verdict.report["k0"] = Json{{"member_count", total},
                              {"k0_rank", X.k0_rank()},
                              {"criterion", "numerically consistent"},
                              {"ok", k0_ok}};

  // (e) every orbit of E sits inside a single block.
  std::map<std::string, long long> counts = match_labels(X, E, G);
  std::set<std::string> present;
  for (const auto& [label, c] : counts) {
    (void)c;
    present.insert(label);
  }
  std::vector<std::vector<std::string>> orbits = G.orbits_of(present);
  require_orbit_multiplicities_equal(counts, orbits);
  Json inclusion_failures = Json::array();
  for (const auto& orbit : orbits) {
    bool contained = false;
    for (const auto& block : blocks) {
      std::set<std::string> block_set(block.begin(), block.end());
      bool inside = true;
      for (const std::string& label : orbit)
        if (!block_set.count(label)) inside = false;
      if (inside) {
        contained = true;
        break;
      }
    }
    if (!contained) {
      all_ok = false;
      inclusion_failures.push_back(labels_json(orbit));
    }
  }
  verdict.report["orbit_inclusion_failures"] = inclusion_failures;

  Json induced = Json::array();
  for (const auto& block : blocks) induced.push_back(labels_json(block));
  verdict.report["induced_collection"] = induced;

  verdict.status =
      all_ok ? VerdictStatus::affirmative : VerdictStatus::negative;
  verdict.report["status"] = to_string(verdict.status);
  return verdict;
}

AsDecomposition decompose_as_bundle(const VarietyModel& X,
                                    const FormalBundle& E) {
  if (X.num_factors() != 1 || X.factor(0).dim != 1)
    throw validation_error(
        "AS-decomposition requires a one-factor dimension-1 model");
  if (E.empty()) throw validation_error("empty bundle");

  AsDecomposition result;
  Json parts = Json::array();
  Json failures = Json::array();
  for (const auto& [degree, count] : E.split_degree_counts()) {
    long long rank = X.degree_class(degree).index();
    if (count % rank != 0) {
      failures.push_back(Json{{"twist_index", degree[0]},
                              {"count", count},
                              {"indecomposable_rank", rank}});
      continue;
    }
    result.parts.emplace_back(degree[0], count / rank);
    parts.push_back(Json{{"twist_index", degree[0]},
                         {"count", count / rank},
                         {"split_rank_each", rank}});
  }
  result.ok = failures.empty();
  if (!result.ok) result.parts.clear();
  result.report = Json{{"ok", result.ok}, {"parts", parts}};
  if (!result.ok) {
    result.report["failures"] = failures;
    result.report["reason"] = "not defined over the base field";
  }
  return result;
}

}  // namespace whelix
