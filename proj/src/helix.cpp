#include "whelix/helix.hpp"

#include <algorithm>
#include <utility>

namespace whelix {

namespace {

// Columns beyond this are not materialized; a surjectivity certificate must
// apply instead (it always does for the bundle classes in scope).
constexpr long long kMaxDenseColumns = 5000;

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long euler_pairing(const VarietyModel& X, const FormalBundle& E,
                        const FormalBundle& F) {
  std::vector<long long> ext = ext_dims(X, E, F);
  long long chi = 0;
  for (size_t r = 0; r < ext.size(); ++r) chi += (r % 2 ? -1 : 1) * ext[r];
  return chi;
}

const Summand& sole_summand(const FormalBundle& E, const char* what) {
  if (E.parts().size() != 1)
    throw validation_error(std::string("monomial model unavailable: ") + what +
                           " must be a single-summand bundle");
  return E.parts().begin()->first;
}

long long rational_matrix_rank(std::vector<std::vector<Rat>> M) {
  const size_t rows = M.size();
  if (rows == 0) return 0;
  const size_t cols = M[0].size();
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t pivot = rank;
    while (pivot < rows && M[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(M[rank], M[pivot]);
    const Rat lead = M[rank][c];
    for (size_t cc = c; cc < cols; ++cc)
      if (M[rank][cc] != 0) M[rank][cc] /= lead;
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || M[r][c] == 0) continue;
      const Rat f = M[r][c];
      for (size_t cc = c; cc < cols; ++cc)
        if (M[rank][cc] != 0) M[r][cc] -= f * M[rank][cc];
    }
    ++rank;
  }
  return static_cast<long long>(rank);
}

bool componentwise_at_least(const MultiDegree& d, long long bound) {
  for (size_t f = 0; f < d.size(); ++f)
    if (d[f] < bound) return false;
  return true;
}

}  // namespace

HelixSpec::HelixSpec(VarietyModel X, std::vector<FormalBundle> thread, int d)
    : X_(std::move(X)), thread_(std::move(thread)), d_(d) {
  if (thread_.empty()) throw validation_error("helix thread must be nonempty");
  if (d_ != X_.dimension() + 1)
    throw validation_error(
        "sheaf helices require d = dim X + 1 = " +
        std::to_string(X_.dimension() + 1) + ", got d = " + std::to_string(d_));
  for (size_t i = 0; i < thread_.size(); ++i) {
    if (thread_[i].empty())
      throw validation_error("thread member " + std::to_string(i + 1) +
                             " is empty");
    if (!defined_over_base(X_, thread_[i]))
      throw validation_error("thread member " + std::to_string(i + 1) +
                             " is not defined over the base field");
  }
}

FormalBundle extend(const HelixSpec& H, long long i) {
  const long long n = H.n();
  const long long q = floor_div(i - 1, n);
  const long long r = i - q * n;  // in [1, n]
  const FormalBundle& base = H.thread()[static_cast<size_t>(r - 1)];
  if (q == 0) return base;
  return twist_by(H.variety(), base,
                  H.variety().anticanonical_class() * q);
}

CheckReport verify_whelix(const HelixSpec& H, long long window,
                          Strictness strictness) {
  const long long n = H.n();
  if (window < n)
    throw validation_error("window must be >= thread length");
  const VarietyModel& X = H.variety();
  CheckReport report;
  report.passed = true;

  long long k0 = X.k0_rank();
  bool k0_ok = (n == k0);
  if (!k0_ok) report.passed = false;
  report.details["k0"] = Json{{"thread_length", n},
                              {"k0_rank", k0},
                              {"criterion", "numerically consistent"},
                              {"ok", k0_ok}};
  report.details["strictness"] = to_string(strictness);
  report.details["window"] = window;

  Json exc_failures = Json::array();
  Json semi_failures = Json::array();
  Json gram_failures = Json::array();
  long long threads_checked = 0;

  auto meets = [&](ExcClass c) {
    switch (c) {
      case ExcClass::exceptional:
      case ExcClass::weak_exceptional:
        return true;
      case ExcClass::separable_exceptional:
      case ExcClass::semi_exceptional:
        return strictness == Strictness::separable;
      case ExcClass::none:
        return false;
    }
    return false;
  };

  for (long long l = -window; l <= window; ++l) {
    std::vector<FormalBundle> members;
    members.reserve(static_cast<size_t>(n));
    for (long long t = 1; t <= n; ++t) members.push_back(extend(H, l + t));
    ++threads_checked;

    for (long long t = 0; t < n; ++t) {
      ExcClass c = classify_exceptionality(X, members[static_cast<size_t>(t)]);
      if (!meets(c)) {
        report.passed = false;
        exc_failures.push_back(Json{{"thread_start", l + 1},
                                    {"position", t + 1},
                                    {"classification", to_string(c)}});
      }
    }
    for (long long j = 1; j <= n; ++j)
      for (long long i = 1; i < j; ++i) {
        std::vector<long long> ext =
            ext_dims(X, members[static_cast<size_t>(j - 1)],
                     members[static_cast<size_t>(i - 1)]);
        for (size_t r = 0; r < ext.size(); ++r)
          if (ext[r] != 0) {
            report.passed = false;
            semi_failures.push_back(Json{{"thread_start", l + 1},
                                         {"later", j},
                                         {"earlier", i},
                                         {"r", r},
                                         {"dim", ext[r]}});
          }
      }
    for (long long a = 1; a <= n; ++a)
      for (long long b = 1; b <= n; ++b) {
        long long chi = euler_pairing(X, members[static_cast<size_t>(a - 1)],
                                      members[static_cast<size_t>(b - 1)]);
        long long expected_diag =
            members[static_cast<size_t>(a - 1)].split_rank();
        bool bad = (a > b && chi != 0) ||
                   (a == b && chi != expected_diag * expected_diag);
        if (bad) {
          report.passed = false;
          gram_failures.push_back(Json{{"thread_start", l + 1},
                                       {"row", a},
                                       {"col", b},
                                       {"chi", chi}});
        }
      }
  }
  report.details["threads_checked"] = threads_checked;
  report.details["exceptionality_failures"] = exc_failures;
  report.details["semiorthogonality_failures"] = semi_failures;
  report.details["gram_failures"] = gram_failures;
  return report;
}

CheckReport verify_geometric(const HelixSpec& H, long long window) {
  const long long n = H.n();
  if (window < n)
    throw validation_error("window must be >= thread length");
  const VarietyModel& X = H.variety();
  CheckReport report;
  report.passed = true;
  report.details["window"] = window;

  Json failures = Json::array();
  for (long long i = 1; i <= n; ++i)
    for (long long j = i + 1; j <= i + window; ++j) {
      std::vector<long long> ext =
          ext_dims(X, extend(H, i), extend(H, j));
      for (size_t r = 1; r < ext.size(); ++r)
        if (ext[r] != 0) {
          report.passed = false;
          failures.push_back(
              Json{{"i", i}, {"j", j}, {"r", r}, {"dim", ext[r]}});
        }
    }
  report.details["failures"] = failures;

  // Spot-check that shifting both indices one period down does not change
  // the Ext table (the twist by omega is an equivalence).
  bool periodicity_ok = true;
  for (long long i = 1; i <= n && periodicity_ok; ++i)
    for (long long j = i + 1; j <= i + std::min(window, 2 * n); ++j)
      if (ext_dims(X, extend(H, i), extend(H, j)) !=
          ext_dims(X, extend(H, i - n), extend(H, j - n))) {
        periodicity_ok = false;
        report.passed = false;
        break;
      }
  report.details["periodicity_spot_check"] = periodicity_ok;

  // Past the window every degree difference grows by the anticanonical class
  // each period; once all boundary differences sit inside the vanishing range
  // (every component >= -dim of its factor), larger gaps stay inside it.
  bool closure = true;
  for (long long i = 1; i <= n && closure; ++i)
    for (long long j = i + std::max(window - n, static_cast<long long>(0)) + 1;
         j <= i + window && closure; ++j) {
      FormalBundle Vi = extend(H, i);
      FormalBundle Vj = extend(H, j);
      for (const auto& [s, ms] : Vi.parts())
        for (const auto& [t, mt] : Vj.parts()) {
          (void)ms;
          (void)mt;
          MultiDegree diff = t.degree() - s.degree();
          for (size_t f = 0; f < X.num_factors(); ++f)
            if (diff[f] < -static_cast<long long>(X.factor(f).dim))
              closure = false;
        }
    }
  report.details["closure"] =
      Json{{"applies", closure},
           {"note", closure ? "verified in window + closure argument applies"
                            : "verified in window only"}};
  return report;
}

long long helix_hom_dim(const HelixSpec& H, long long i, long long j) {
  if (i > j) throw validation_error("helix_hom_dim requires i <= j");
  return ext_dims(H.variety(), extend(H, i), extend(H, j))[0];
}

long long arrow_count(const HelixSpec& H, long long i, long long j) {
  if (i >= j) throw validation_error("arrow_count requires i < j");
  const VarietyModel& X = H.variety();
  FormalBundle Vi = extend(H, i);
  FormalBundle Vj = extend(H, j);
  const Summand& si = sole_summand(Vi, "arrow_count source");
  const Summand& sj = sole_summand(Vj, "arrow_count target");
  const long long mi = Vi.parts().begin()->second;
  const long long mj = Vj.parts().begin()->second;
  const long long scale =
      mi * mj * si.rank_multiplier() * sj.rank_multiplier();

  MultiDegree diff = sj.degree() - si.degree();
  const long long h0 = cohomology_dims(X, diff)[0];
  if (h0 == 0) return 0;
  if (!componentwise_at_least(diff, 0))
    throw validation_error(
        "monomial model unavailable: nonzero Hom with a negative degree "
        "component");

  struct Intermediate {
    MultiDegree d1, d2;
    long long h1, h2;
  };
  std::vector<Intermediate> mids;
  long long columns = 0;
  for (long long l = i + 1; l < j; ++l) {
    FormalBundle Vl = extend(H, l);
    const Summand& sl = sole_summand(Vl, "arrow_count intermediate");
    MultiDegree d1 = sl.degree() - si.degree();
    MultiDegree d2 = sj.degree() - sl.degree();
    long long h1 = cohomology_dims(X, d1)[0];
    long long h2 = cohomology_dims(X, d2)[0];
    if (h1 == 0 || h2 == 0) continue;
    mids.push_back({d1, d2, h1, h2});
    columns += h1 * h2;
  }
  if (mids.empty()) return scale * h0;

  if (columns > kMaxDenseColumns) {
    // Any surviving intermediate has componentwise non-negative differences
    // on both sides (nonzero Hom forces that), and multiplication of
    // multihomogeneous polynomial spaces of non-negative multidegrees is
    // surjective, so the composition map is already onto through a single
    // intermediate: the cokernel vanishes.
    return 0;
  }

  std::vector<Monomial> target = hom_monomial_basis(X, diff);
  std::map<Monomial, size_t> row_of;
  for (size_t r = 0; r < target.size(); ++r) row_of[target[r]] = r;

  std::vector<std::vector<Rat>> M(
      target.size(), std::vector<Rat>(static_cast<size_t>(columns), Rat(0)));
  size_t col = 0;
  for (const Intermediate& mid : mids) {
    std::vector<Monomial> b1 = hom_monomial_basis(X, mid.d1);
    std::vector<Monomial> b2 = hom_monomial_basis(X, mid.d2);
    for (const Monomial& m1 : b1)
      for (const Monomial& m2 : b2) {
        M[row_of.at(compose_monomials(m1, m2))][col] = Rat(1);
        ++col;
      }
  }
  const long long rank = rational_matrix_rank(std::move(M));
  return scale * (h0 - rank);
}

std::string QuiverDescription::to_dot() const {
  std::string dot = "digraph helix {\n";
  for (int v = 0; v < vertices; ++v)
    dot += "  v" + std::to_string(v) + ";\n";
  for (const auto& [edge, count] : arrows) {
    std::string line = "  v" + std::to_string(edge.first) + " -> v" +
                       std::to_string(edge.second) + " [label=\"" +
                       std::to_string(count) + "\"];\n";
    for (long long c = 0; c < count; ++c) dot += line;
  }
  dot += "}\n";
  return dot;
}

Json QuiverDescription::to_json() const {
  Json arr = Json::array();
  for (const auto& [edge, count] : arrows)
    arr.push_back(
        Json{{"from", edge.first}, {"to", edge.second}, {"count", count}});
  return Json{{"vertices", vertices}, {"arrows", arr}};
}

QuiverDescription rolled_up_quiver(const HelixSpec& H, long long window) {
  const long long n = H.n();
  if (window < n)
    throw validation_error("window must be >= thread length");
  const VarietyModel& X = H.variety();

  // Tail certificate: once every boundary-gap degree difference is
  // componentwise non-negative, each longer gap factors through the
  // one-period-down member with surjective multiplication, so all arrow
  // counts past the window vanish.
  for (long long i = 1; i <= n; ++i)
    for (long long g = std::max(window - n, static_cast<long long>(0)) + 1;
         g <= window; ++g) {
      FormalBundle Vi = extend(H, i);
      FormalBundle Vj = extend(H, i + g);
      const Summand& si = sole_summand(Vi, "quiver member");
      const Summand& sj = sole_summand(Vj, "quiver member");
      if (!componentwise_at_least(sj.degree() - si.degree(), 0))
        throw validation_error(
            "window too small: the tail certificate fails at gap " +
            std::to_string(g));
    }

  QuiverDescription quiver;
  quiver.vertices = static_cast<int>(n);
  for (long long i = 1; i <= n; ++i)
    for (long long g = 1; g <= window; ++g) {
      long long a = arrow_count(H, i, i + g);
      if (a == 0) continue;
      int from = static_cast<int>((i - 1) % n);
      int to = static_cast<int>((i + g - 1) % n);
      quiver.arrows[{from, to}] += a;
    }
  return quiver;
}

CheckReport check_tilting_hypothesis(const HelixSpec& H,
                                     long long thread_index, long long L) {
  if (L < 1) throw validation_error("L must be >= 1");
  const long long n = H.n();
  const VarietyModel& X = H.variety();
  std::vector<FormalBundle> members;
  for (long long t = 0; t < n; ++t)
    members.push_back(extend(H, thread_index + t));

  std::vector<MultiDegree> diffs;
  for (const FormalBundle& E : members)
    for (const FormalBundle& F : members)
      for (const auto& [s, ms] : E.parts())
        for (const auto& [t, mt] : F.parts()) {
          (void)ms;
          (void)mt;
          diffs.push_back(t.degree() - s.degree());
        }

  CheckReport report;
  report.passed = true;
  report.details["L"] = L;
  report.details["thread_index"] = thread_index;
  Json failures = Json::array();
  MultiDegree antik = X.anticanonical_class();
  for (long long l = 1; l <= L; ++l)
    for (const MultiDegree& diff : diffs) {
      std::vector<long long> h = cohomology_dims(X, diff + antik * l);
      for (size_t i = 1; i < h.size(); ++i)
        if (h[i] != 0) {
          report.passed = false;
          failures.push_back(Json{
              {"i", i}, {"l", l}, {"degree", (diff + antik * l).to_json()}});
        }
    }
  report.details["failures"] = failures;

  // Once every twisted degree component clears -dim(factor), raising l only
  // adds positive amounts, so the vanishing persists for all larger l.
  std::optional<long long> cleared_at;
  for (long long l = 1; l <= L && !cleared_at; ++l) {
    bool clear = true;
    for (const MultiDegree& diff : diffs) {
      MultiDegree d = diff + antik * l;
      for (size_t f = 0; f < X.num_factors(); ++f)
        if (d[f] < -static_cast<long long>(X.factor(f).dim)) clear = false;
    }
    if (clear) cleared_at = l;
  }
  report.details["threshold_cleared_at"] =
      cleared_at ? Json(*cleared_at) : Json(nullptr);
  // The hypothesis quantifies over every l > 0, so the check only passes
  // when the finite range is clean AND the threshold certifies the rest.
  report.details["certified_beyond_L"] = cleared_at.has_value();
  if (!cleared_at) report.passed = false;
  return report;
}

}  // namespace whelix
