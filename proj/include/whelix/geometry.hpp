#pragma once

#include <string>
#include <vector>

#include "whelix/brauer.hpp"
#include "whelix/common.hpp"

namespace whelix {

// A multidegree: one integer per factor of the ambient product variety.
struct MultiDegree {
  std::vector<long long> parts;

  MultiDegree() = default;
  explicit MultiDegree(std::vector<long long> p) : parts(std::move(p)) {}

  size_t size() const { return parts.size(); }
  long long operator[](size_t i) const { return parts[i]; }

  MultiDegree operator+(const MultiDegree& o) const;
  MultiDegree operator-(const MultiDegree& o) const;
  MultiDegree operator*(long long s) const;
  MultiDegree operator-() const { return *this * -1; }

  friend bool operator==(const MultiDegree& a, const MultiDegree& b) = default;
  friend bool operator<(const MultiDegree& a, const MultiDegree& b) {
    return a.parts < b.parts;
  }

  std::string str() const;
  Json to_json() const;
  static MultiDegree from_json(const Json& j, size_t expected_size);
};

// One projective-space factor, possibly twisted by a Brauer class (making it
// the split form of a Severi--Brauer variety of that class).
struct Factor {
  int dim = 1;
  BrauerClass twist = BrauerClass::zero();

  friend bool operator==(const Factor& a, const Factor& b) = default;
};

// A product of (possibly twisted) projective spaces over the rationals.
// Invariant: each factor has dim >= 1 and the twist period divides dim + 1
// (otherwise no such twisted form exists).
class VarietyModel {
 public:
  explicit VarietyModel(std::vector<Factor> factors);

  size_t num_factors() const { return factors_.size(); }
  const Factor& factor(size_t i) const { return factors_.at(i); }
  int dimension() const;
  // Rank of the Grothendieck group of the split form: product of (dim + 1).
  long long k0_rank() const;
  MultiDegree canonical_class() const;      // (-dim_f - 1) per factor
  MultiDegree anticanonical_class() const;  // (dim_f + 1) per factor

  // Brauer class of the endomorphism algebra of the indecomposable bundle
  // with the given split degree: tensor over factors of twist^(deg_f).
  BrauerClass degree_class(const MultiDegree& d) const;

  void check_degree(const MultiDegree& d) const;  // arity check

  Json to_json() const;
  static VarietyModel from_json(const Json& j);

  friend bool operator==(const VarietyModel& a, const VarietyModel& b) = default;

 private:
  std::vector<Factor> factors_;
};

// Dimensions [h^0, ..., h^dim] of the cohomology of the line bundle O(d) on
// the split form, by the projective-space formula on each factor and the
// Kuenneth convolution across factors.
std::vector<long long> cohomology_dims(const VarietyModel& X,
                                       const MultiDegree& d);

long long euler_char(const VarietyModel& X, const MultiDegree& d);

// A monomial in the homogeneous coordinates of the product, one exponent
// vector per factor.
struct Monomial {
  std::vector<std::vector<int>> exps;

  std::string str() const;
  friend bool operator==(const Monomial& a, const Monomial& b) = default;
  friend bool operator<(const Monomial& a, const Monomial& b) {
    return a.exps < b.exps;
  }
};

// Monomial basis of Hom(O, O(d)) = H^0(O(d)), ordered factor-major with the
// first coordinate's exponent decreasing (x0^2, x0*x1, x0*x2, x1^2, ...).
// Empty when some component of d is negative.
std::vector<Monomial> hom_monomial_basis(const VarietyModel& X,
                                         const MultiDegree& d);

// Product of two monomials on the same variety (exponent-wise sum).
Monomial compose_monomials(const Monomial& m1, const Monomial& m2);

// Exact binomial coefficient, 0 when k < 0 or k > n. n small (desk scale).
long long binomial(long long n, long long k);

}  // namespace whelix
