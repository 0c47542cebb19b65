#include "whelix/geometry.hpp"

#include <algorithm>

namespace whelix {

namespace {

void check_same_arity(const MultiDegree& a, const MultiDegree& b) {
  if (a.size() != b.size())
    throw validation_error("multidegree arity mismatch: " + a.str() + " vs " +
                           b.str());
}

}  // namespace

MultiDegree MultiDegree::operator+(const MultiDegree& o) const {
  check_same_arity(*this, o);
  MultiDegree r = *this;
  for (size_t i = 0; i < parts.size(); ++i) r.parts[i] += o.parts[i];
  return r;
}

MultiDegree MultiDegree::operator-(const MultiDegree& o) const {
  check_same_arity(*this, o);
  MultiDegree r = *this;
  for (size_t i = 0; i < parts.size(); ++i) r.parts[i] -= o.parts[i];
  return r;
}

MultiDegree MultiDegree::operator*(long long s) const {
  MultiDegree r = *this;
  for (auto& p : r.parts) p *= s;
  return r;
}

std::string MultiDegree::str() const {
  std::string s = "(";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts[i]);
  }
  return s + ")";
}

Json MultiDegree::to_json() const {
  Json arr = Json::array();
  for (long long p : parts) arr.push_back(p);
  return arr;
}

MultiDegree MultiDegree::from_json(const Json& j, size_t expected_size) {
  if (!j.is_array())
    throw validation_error("degree must be an array of integers");
  std::vector<long long> parts;
  for (const Json& e : j) {
    if (!e.is_number_integer())
      throw validation_error("degree entries must be integers");
    parts.push_back(e.get<long long>());
  }
  if (parts.size() != expected_size)
    throw validation_error("degree has " + std::to_string(parts.size()) +
                           " entries, variety has " +
                           std::to_string(expected_size) + " factors");
  return MultiDegree(std::move(parts));
}

VarietyModel::VarietyModel(std::vector<Factor> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty())
    throw validation_error("variety needs at least one factor");
  for (size_t i = 0; i < factors_.size(); ++i) {
    const Factor& f = factors_[i];
    if (f.dim < 1)
      throw validation_error("factor " + std::to_string(i) +
                             ": dimension must be >= 1");
    long long p = f.twist.period();
    if ((f.dim + 1) % p != 0)
      throw validation_error(
          "factor " + std::to_string(i) + ": twist period " +
          std::to_string(p) + " does not divide " + std::to_string(f.dim + 1) +
          " (no such twisted form exists)");
  }
}

int VarietyModel::dimension() const {
  int d = 0;
  for (const Factor& f : factors_) d += f.dim;
  return d;
}

long long VarietyModel::k0_rank() const {
  long long r = 1;
  for (const Factor& f : factors_) r *= f.dim + 1;
  return r;
}

MultiDegree VarietyModel::canonical_class() const {
  std::vector<long long> parts;
  for (const Factor& f : factors_) parts.push_back(-(f.dim + 1));
  return MultiDegree(std::move(parts));
}

MultiDegree VarietyModel::anticanonical_class() const {
  return -canonical_class();
}

BrauerClass VarietyModel::degree_class(const MultiDegree& d) const {
  check_degree(d);
  BrauerClass c = BrauerClass::zero();
  for (size_t i = 0; i < factors_.size(); ++i)
    c = c.tensor(factors_[i].twist.power(d[i]));
  return c;
}

void VarietyModel::check_degree(const MultiDegree& d) const {
  if (d.size() != factors_.size())
    throw validation_error("degree " + d.str() + " has wrong arity for a " +
                           std::to_string(factors_.size()) +
                           "-factor variety");
}

Json VarietyModel::to_json() const {
  Json arr = Json::array();
  for (const Factor& f : factors_) {
    Json fj{{"dim", f.dim}};
    if (!f.twist.is_split()) fj["twist"] = f.twist.to_json();
    arr.push_back(fj);
  }
  return Json{{"factors", arr}};
}

VarietyModel VarietyModel::from_json(const Json& j) {
  if (!j.is_object() || !j.contains("factors") || !j["factors"].is_array())
    throw validation_error("variety must be {\"factors\": [...]}");
  std::vector<Factor> factors;
  for (const Json& fj : j["factors"]) {
    if (!fj.is_object() || !fj.contains("dim") ||
        !fj["dim"].is_number_integer())
      throw validation_error("factor must be {\"dim\": n, \"twist\"?: ...}");
    Factor f;
    f.dim = fj["dim"].get<int>();
    if (fj.contains("twist")) f.twist = BrauerClass::from_json(fj["twist"]);
    factors.push_back(std::move(f));
  }
  return VarietyModel(std::move(factors));
}

long long binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

// [h^0, ..., h^n] of O(a) on projective n-space: h^0 = C(n+a, n) for a >= 0,
// h^n = C(-a-1, n) for a <= -n-1, everything else zero.
std::vector<long long> factor_cohomology(int n, long long a) {
  std::vector<long long> h(n + 1, 0);
  if (a >= 0) h[0] = binomial(n + a, n);
  if (a <= -n - 1) h[n] = binomial(-a - 1, n);
  return h;
}

}  // namespace

std::vector<long long> cohomology_dims(const VarietyModel& X,
                                       const MultiDegree& d) {
  X.check_degree(d);
  std::vector<long long> acc{1};
  for (size_t i = 0; i < X.num_factors(); ++i) {
    std::vector<long long> h = factor_cohomology(X.factor(i).dim, d[i]);
    std::vector<long long> next(acc.size() + h.size() - 1, 0);
    for (size_t a = 0; a < acc.size(); ++a)
      for (size_t b = 0; b < h.size(); ++b) next[a + b] += acc[a] * h[b];
    acc = std::move(next);
  }
  return acc;
}

long long euler_char(const VarietyModel& X, const MultiDegree& d) {
  std::vector<long long> h = cohomology_dims(X, d);
  long long chi = 0;
  for (size_t i = 0; i < h.size(); ++i) chi += (i % 2 ? -1 : 1) * h[i];
  return chi;
}

namespace {

const char kFactorLetters[] = {'x', 'y', 'z', 'w', 'u', 'v', 's', 't'};

std::string variable_name(size_t factor, size_t index) {
  char letter = kFactorLetters[factor % std::size(kFactorLetters)];
  std::string name(1, letter);
  if (factor >= std::size(kFactorLetters))
    name += std::to_string(factor / std::size(kFactorLetters));
  return name + std::to_string(index);
}

void enumerate_exponents(int nvars, long long deg, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
  if (nvars == 1) {
    cur.push_back(static_cast<int>(deg));
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (long long e = deg; e >= 0; --e) {
    cur.push_back(static_cast<int>(e));
    enumerate_exponents(nvars - 1, deg - e, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::string Monomial::str() const {
  std::string s;
  for (size_t f = 0; f < exps.size(); ++f) {
    for (size_t i = 0; i < exps[f].size(); ++i) {
      int e = exps[f][i];
      if (e == 0) continue;
      if (!s.empty()) s += "*";
      s += variable_name(f, i);
      if (e > 1) s += "^" + std::to_string(e);
    }
  }
  return s.empty() ? "1" : s;
}

std::vector<Monomial> hom_monomial_basis(const VarietyModel& X,
                                         const MultiDegree& d) {
  X.check_degree(d);
  for (size_t i = 0; i < d.size(); ++i)
    if (d[i] < 0) return {};
  std::vector<std::vector<std::vector<int>>> per_factor;
  for (size_t i = 0; i < X.num_factors(); ++i) {
    std::vector<std::vector<int>> exps;
    std::vector<int> cur;
    enumerate_exponents(X.factor(i).dim + 1, d[i], cur, exps);
    per_factor.push_back(std::move(exps));
  }
  std::vector<Monomial> basis{Monomial{}};
  for (const auto& choices : per_factor) {
    std::vector<Monomial> next;
    next.reserve(basis.size() * choices.size());
    for (const Monomial& m : basis)
      for (const auto& e : choices) {
        Monomial ext = m;
        ext.exps.push_back(e);
        next.push_back(std::move(ext));
      }
    basis = std::move(next);
  }
  return basis;
}

Monomial compose_monomials(const Monomial& m1, const Monomial& m2) {
  if (m1.exps.size() != m2.exps.size())
    throw validation_error("monomials live on different varieties");
  Monomial r = m1;
  for (size_t f = 0; f < r.exps.size(); ++f) {
    if (r.exps[f].size() != m2.exps[f].size())
      throw validation_error("monomials live on different varieties");
    for (size_t i = 0; i < r.exps[f].size(); ++i) r.exps[f][i] += m2.exps[f][i];
  }
  return r;
}

}  // namespace whelix
