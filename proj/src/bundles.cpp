#include "whelix/bundles.hpp"

#include <algorithm>

namespace whelix {

Summand::Summand(MultiDegree degree, BrauerClass end_class)
    : degree_(std::move(degree)), end_class_(std::move(end_class)) {}

Summand Summand::dual() const { return Summand(-degree_, end_class_.inverse()); }

Summand Summand::shifted(const MultiDegree& d) const {
  return Summand(degree_ + d, end_class_);
}

FormalBundle::FormalBundle(
    const std::vector<std::pair<Summand, long long>>& parts) {
  for (const auto& [s, m] : parts) {
    if (m < 1) throw validation_error("summand multiplicity must be >= 1");
    parts_[s] += m;
  }
}

FormalBundle FormalBundle::single(Summand s, long long mult) {
  return FormalBundle({{std::move(s), mult}});
}

FormalBundle FormalBundle::direct_sum(const FormalBundle& other) const {
  FormalBundle r = *this;
  for (const auto& [s, m] : other.parts_) r.parts_[s] += m;
  return r;
}

FormalBundle FormalBundle::dual() const {
  FormalBundle r;
  for (const auto& [s, m] : parts_) r.parts_[s.dual()] += m;
  return r;
}

long long FormalBundle::split_rank() const {
  long long rank = 0;
  for (const auto& [s, m] : parts_) rank += m * s.rank_multiplier();
  return rank;
}

std::map<MultiDegree, long long> FormalBundle::split_degree_counts() const {
  std::map<MultiDegree, long long> counts;
  for (const auto& [s, m] : parts_)
    counts[s.degree()] += m * s.rank_multiplier();
  return counts;
}

bool defined_over_base(const VarietyModel& X, const FormalBundle& E) {
  for (const auto& [s, m] : E.parts()) {
    (void)m;
    if (!(s.end_class() == X.degree_class(s.degree()))) return false;
  }
  return true;
}

FormalBundle as_bundle(const VarietyModel& X, const MultiDegree& d) {
  return FormalBundle::single(Summand(d, X.degree_class(d)));
}

FormalBundle box_product(const VarietyModel& X, const MultiDegree& d) {
  X.check_degree(d);
  long long split = 1;
  for (size_t f = 0; f < X.num_factors(); ++f)
    split *= X.factor(f).twist.power(d[f]).index();
  BrauerClass total = X.degree_class(d);
  long long inner = total.index();
  if (split % inner != 0)
    throw validation_error("factor indices are not compatible with the total "
                           "index for degree " + d.str());
  return FormalBundle::single(Summand(d, total), split / inner);
}

FormalBundle twist_by(const VarietyModel& X, const FormalBundle& E,
                      const MultiDegree& d) {
  X.check_degree(d);
  for (size_t f = 0; f < X.num_factors(); ++f) {
    long long p = X.factor(f).twist.period();
    if (p > 1 && d[f] % p != 0)
      throw validation_error(
          "O" + d.str() + " does not exist over the base field: factor " +
          std::to_string(f) + " requires a degree multiple of " +
          std::to_string(p));
  }
  FormalBundle r;
  std::vector<std::pair<Summand, long long>> parts;
  for (const auto& [s, m] : E.parts()) parts.emplace_back(s.shifted(d), m);
  return FormalBundle(parts);
}

std::vector<long long> ext_dims(const VarietyModel& X, const FormalBundle& E,
                                const FormalBundle& F) {
  std::vector<long long> total(X.dimension() + 1, 0);
  for (const auto& [s, ms] : E.parts())
    for (const auto& [t, mt] : F.parts()) {
      long long scale = ms * mt * s.rank_multiplier() * t.rank_multiplier();
      std::vector<long long> h = cohomology_dims(X, t.degree() - s.degree());
      for (size_t r = 0; r < h.size(); ++r) total[r] += scale * h[r];
    }
  return total;
}

Json EndAlgebraDescription::to_json() const {
  Json arr = Json::array();
  for (const auto& [m, cls] : blocks)
    arr.push_back(Json{{"size", m}, {"class", cls.to_json()}});
  return Json{{"blocks", arr}, {"has_radical", has_radical}};
}

EndAlgebraDescription end_algebra(const VarietyModel& X,
                                  const FormalBundle& E) {
  EndAlgebraDescription desc;
  for (const auto& [s, m] : E.parts()) desc.blocks.emplace_back(m, s.end_class());
  for (const auto& [s, ms] : E.parts())
    for (const auto& [t, mt] : E.parts()) {
      (void)ms;
      (void)mt;
      if (s == t) continue;
      if (cohomology_dims(X, t.degree() - s.degree())[0] > 0) {
        desc.has_radical = true;
        return desc;
      }
    }
  return desc;
}

bool is_rigid(const VarietyModel& X, const FormalBundle& E) {
  return ext_dims(X, E, E)[1] == 0;
}

std::string to_string(ExcClass c) {
  switch (c) {
    case ExcClass::exceptional: return "exceptional";
    case ExcClass::weak_exceptional: return "weak_exceptional";
    case ExcClass::separable_exceptional: return "separable_exceptional";
    case ExcClass::semi_exceptional: return "semi_exceptional";
    case ExcClass::none: return "none";
  }
  return "none";
}

ExcClass classify_exceptionality(const VarietyModel& X,
                                 const FormalBundle& E) {
  if (E.empty()) return ExcClass::none;
  std::vector<long long> self = ext_dims(X, E, E);
  for (size_t r = 1; r < self.size(); ++r)
    if (self[r] != 0) return ExcClass::none;
  EndAlgebraDescription desc = end_algebra(X, E);
  if (desc.has_radical) return ExcClass::none;
  if (desc.blocks.size() == 1 && desc.blocks[0].first == 1)
    return desc.blocks[0].second.is_split() ? ExcClass::exceptional
                                            : ExcClass::weak_exceptional;
  // Several blocks or a matrix block: End is semisimple but not division.
  // Over this base field semisimple algebras are separable, so the stronger
  // of the two remaining labels applies.
  return ExcClass::separable_exceptional;
}

Json BlockCheck::to_json() const {
  Json j{{"ok", ok}};
  if (!ok) {
    j["failure"] = failure;
    j["witness"] = witness;
  }
  return j;
}

BlockCheck check_split_semisimple_block(
    const VarietyModel& X, const std::vector<FormalBundle>& members) {
  if (members.empty())
    throw validation_error("block must have at least one member");
  FormalBundle sum;
  for (const FormalBundle& m : members) sum = sum.direct_sum(m);

  for (const auto& [s, ms] : sum.parts())
    for (const auto& [t, mt] : sum.parts()) {
      (void)ms;
      (void)mt;
      if (s == t) continue;
      long long hom = cohomology_dims(X, t.degree() - s.degree())[0] *
                      s.rank_multiplier() * t.rank_multiplier();
      if (hom > 0)
        return BlockCheck{false,
                          "cross_hom",
                          Json{{"from", s.degree().to_json()},
                               {"to", t.degree().to_json()},
                               {"dim", hom}}};
    }
  for (const auto& [s, ms] : sum.parts())
    for (const auto& [t, mt] : sum.parts()) {
      (void)ms;
      (void)mt;
      std::vector<long long> h = cohomology_dims(X, t.degree() - s.degree());
      for (size_t r = 1; r < h.size(); ++r)
        if (h[r] != 0)
          return BlockCheck{
              false, "higher_ext",
              Json{{"from", s.degree().to_json()},
                   {"to", t.degree().to_json()},
                   {"r", r},
                   {"dim", h[r] * s.rank_multiplier() * t.rank_multiplier()}}};
    }
  for (const auto& [s, m] : sum.parts()) {
    (void)m;
    if (!s.end_class().is_split())
      return BlockCheck{false, "nonsplit_end",
                        Json{{"degree", s.degree().to_json()},
                             {"class", s.end_class().to_json()}}};
  }
  return BlockCheck{true, "", Json::object()};
}

bool is_split_semisimple_block(const VarietyModel& X,
                               const std::vector<FormalBundle>& members) {
  return check_split_semisimple_block(X, members).ok;
}

Strictness strictness_from_string(const std::string& s) {
  if (s == "weak") return Strictness::weak;
  if (s == "separable") return Strictness::separable;
  throw validation_error("strictness must be \"weak\" or \"separable\", got \"" +
                         s + "\"");
}

std::string to_string(Strictness s) {
  return s == Strictness::weak ? "weak" : "separable";
}

namespace {

bool meets_strictness(ExcClass c, Strictness s) {
  switch (c) {
    case ExcClass::exceptional:
    case ExcClass::weak_exceptional:
      return true;
    case ExcClass::separable_exceptional:
    case ExcClass::semi_exceptional:
      return s == Strictness::separable;
    case ExcClass::none:
      return false;
  }
  return false;
}

}  // namespace

CheckReport check_collection(const VarietyModel& X,
                             const std::vector<FormalBundle>& members,
                             const CollectionOptions& opts) {
  if (members.empty())
    throw validation_error("collection must have at least one member");
  CheckReport report;
  report.passed = true;

  Json member_reports = Json::array();
  for (size_t i = 0; i < members.size(); ++i) {
    ExcClass c = classify_exceptionality(X, members[i]);
    bool ok = meets_strictness(c, opts.strictness);
    if (!ok) report.passed = false;
    member_reports.push_back(
        Json{{"index", i}, {"classification", to_string(c)}, {"ok", ok}});
  }
  report.details["strictness"] = to_string(opts.strictness);
  report.details["members"] = member_reports;

  Json semi_failures = Json::array();
  for (size_t j = 0; j < members.size(); ++j)
    for (size_t i = 0; i < j; ++i) {
      std::vector<long long> ext = ext_dims(X, members[j], members[i]);
      for (size_t r = 0; r < ext.size(); ++r)
        if (ext[r] != 0)
          semi_failures.push_back(Json{
              {"later", j}, {"earlier", i}, {"r", r}, {"dim", ext[r]}});
    }
  if (!semi_failures.empty()) report.passed = false;
  report.details["semiorthogonality_failures"] = semi_failures;

  if (opts.require_strong) {
    Json strong_failures = Json::array();
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t j = i + 1; j < members.size(); ++j) {
        std::vector<long long> ext = ext_dims(X, members[i], members[j]);
        for (size_t r = 1; r < ext.size(); ++r)
          if (ext[r] != 0)
            strong_failures.push_back(Json{
                {"from", i}, {"to", j}, {"r", r}, {"dim", ext[r]}});
      }
    if (!strong_failures.empty()) report.passed = false;
    report.details["strong_failures"] = strong_failures;
  }

  if (opts.require_full) {
    long long expected = X.k0_rank();
    bool ok = static_cast<long long>(members.size()) == expected;
    if (!ok) report.passed = false;
    report.details["fullness"] =
        Json{{"criterion", "numerically consistent"},
             {"member_count", members.size()},
             {"k0_rank", expected},
             {"ok", ok}};
  }
  return report;
}

Json bundle_to_json(const FormalBundle& E) {
  Json arr = Json::array();
  for (const auto& [s, m] : E.parts())
    arr.push_back(Json{{"degree", s.degree().to_json()},
                       {"mult", m},
                       {"end", s.end_class().to_json()}});
  return Json{{"summands", arr}};
}

FormalBundle bundle_from_json(const VarietyModel& X, const Json& j) {
  if (!j.is_object() || !j.contains("summands") || !j["summands"].is_array() ||
      j["summands"].empty())
    throw validation_error("bundle must be {\"summands\": [...]} (nonempty)");
  std::vector<std::pair<Summand, long long>> parts;
  for (const Json& sj : j["summands"]) {
    if (!sj.is_object() || !sj.contains("degree"))
      throw validation_error("summand must carry a \"degree\"");
    MultiDegree deg = MultiDegree::from_json(sj["degree"], X.num_factors());
    long long mult = 1;
    if (sj.contains("mult")) {
      if (!sj["mult"].is_number_integer() || sj["mult"].get<long long>() < 1)
        throw validation_error("summand \"mult\" must be a positive integer");
      mult = sj["mult"].get<long long>();
    }
    int modes = (sj.contains("end") ? 1 : 0) +
                (sj.contains("geometric") ? 1 : 0) +
                (sj.contains("twist_index") ? 1 : 0);
    if (modes > 1)
      throw validation_error(
          "summand may carry at most one of \"end\", \"geometric\", "
          "\"twist_index\"");
    BrauerClass end = X.degree_class(deg);
    if (sj.contains("end")) {
      end = BrauerClass::from_json(sj["end"]);
    } else if (sj.contains("geometric")) {
      if (!sj["geometric"].is_boolean() || !sj["geometric"].get<bool>())
        throw validation_error("\"geometric\" must be true when present");
      end = BrauerClass::zero();
    } else if (sj.contains("twist_index")) {
      if (!sj["twist_index"].is_number_integer())
        throw validation_error("\"twist_index\" must be an integer");
      long long ti = sj["twist_index"].get<long long>();
      std::optional<size_t> twisted;
      for (size_t f = 0; f < X.num_factors(); ++f)
        if (!X.factor(f).twist.is_split()) {
          if (twisted)
            throw validation_error(
                "\"twist_index\" is ambiguous: several twisted factors");
          twisted = f;
        }
      if (!twisted)
        throw validation_error(
            "\"twist_index\" given but the variety has no twisted factor");
      if (deg[*twisted] != ti)
        throw validation_error(
            "\"twist_index\" " + std::to_string(ti) +
            " does not match the degree at the twisted factor (" +
            std::to_string(deg[*twisted]) + ")");
      // end stays the variety-forced class: this names the indecomposable
      // whose split form is O(degree)^index.
    }
    parts.emplace_back(Summand(std::move(deg), std::move(end)), mult);
  }
  return FormalBundle(parts);
}

}  // namespace whelix
