#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "whelix/geometry.hpp"

namespace whelix {

// An indecomposable summand: over the separable closure it becomes
// O(degree)^(rank_multiplier), and its endomorphism ring over the base field
// is the division algebra of end_class. The rank multiplier is derived:
// it equals the index of end_class.
class Summand {
 public:
  Summand(MultiDegree degree, BrauerClass end_class);

  const MultiDegree& degree() const { return degree_; }
  const BrauerClass& end_class() const { return end_class_; }
  long long rank_multiplier() const { return end_class_.index(); }

  Summand dual() const;
  Summand shifted(const MultiDegree& d) const;

  friend bool operator==(const Summand& a, const Summand& b) = default;
  friend bool operator<(const Summand& a, const Summand& b) {
    if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
    return a.end_class_ < b.end_class_;
  }

 private:
  MultiDegree degree_;
  BrauerClass end_class_;
};

// A finite formal direct sum of summands with positive multiplicities, kept
// in canonical sorted form. Immutable value semantics. The empty bundle is
// allowed only as a sentinel.
class FormalBundle {
 public:
  FormalBundle() = default;
  explicit FormalBundle(
      const std::vector<std::pair<Summand, long long>>& parts);
  static FormalBundle single(Summand s, long long mult = 1);

  bool empty() const { return parts_.empty(); }
  const std::map<Summand, long long>& parts() const { return parts_; }

  FormalBundle direct_sum(const FormalBundle& other) const;
  FormalBundle dual() const;

  // Total number of line-bundle summands of the split form.
  long long split_rank() const;
  // Split form as a multiset: degree -> number of O(degree) summands.
  std::map<MultiDegree, long long> split_degree_counts() const;

  friend bool operator==(const FormalBundle& a, const FormalBundle& b) = default;

 private:
  std::map<Summand, long long> parts_;
};

// True when every summand's end class matches the one the variety forces for
// its degree, i.e. the data describes an honest bundle over the base field.
bool defined_over_base(const VarietyModel& X, const FormalBundle& E);

// The indecomposable bundle whose split form is O(d)^(index of the degree
// class). On an untwisted variety this is the line bundle O(d).
FormalBundle as_bundle(const VarietyModel& X, const MultiDegree& d);

// External product across factors of the per-factor indecomposables of
// degrees d_f: split form O(d)^(prod of factor indices), decomposed into its
// indecomposable summands over the base field.
FormalBundle box_product(const VarietyModel& X, const MultiDegree& d);

// Tensor by the line bundle O(d). Each twisted factor requires its period to
// divide d_f, otherwise O(d) does not exist over the base field (error).
FormalBundle twist_by(const VarietyModel& X, const FormalBundle& E,
                      const MultiDegree& d);

// Dimensions [Ext^0, ..., Ext^dim] of Ext(E, F) after base change to the
// separable closure.
std::vector<long long> ext_dims(const VarietyModel& X, const FormalBundle& E,
                                const FormalBundle& F);

// End(E) modulo its radical: one matrix block of size m over the division
// algebra of each distinct summand class, plus a flag recording whether a
// radical is present (some nonzero Hom between distinct summands).
struct EndAlgebraDescription {
  std::vector<std::pair<long long, BrauerClass>> blocks;  // (m, class)
  bool has_radical = false;

  Json to_json() const;
};

EndAlgebraDescription end_algebra(const VarietyModel& X,
                                  const FormalBundle& E);

bool is_rigid(const VarietyModel& X, const FormalBundle& E);

enum class ExcClass {
  exceptional,
  weak_exceptional,
  separable_exceptional,
  semi_exceptional,
  none,
};

std::string to_string(ExcClass c);

// Strongest applicable label:
//   exceptional            End = base field
//   weak_exceptional       End a division algebra
//   separable_exceptional  End semisimple (= separable over this base field)
// plus vanishing higher self-Ext in all cases; otherwise none. The
// semi_exceptional label exists for callers that distinguish semisimple from
// separable over larger fields; here the two coincide and the classifier
// returns the stronger name.
ExcClass classify_exceptionality(const VarietyModel& X, const FormalBundle& E);

// Detailed verdict for the split-semisimple-block predicate.
struct BlockCheck {
  bool ok = false;
  std::string failure;  // "", "cross_hom", "higher_ext", "nonsplit_end"
  Json witness;

  Json to_json() const;
};

// Decides whether the members form a completely orthogonal split block:
// no Hom between distinct summands, no higher Ext anywhere, and every end
// class split, so End(sum) is a product of matrix algebras over the base
// field. Multiplicities do not affect the verdict.
BlockCheck check_split_semisimple_block(const VarietyModel& X,
                                        const std::vector<FormalBundle>& members);

bool is_split_semisimple_block(const VarietyModel& X,
                               const std::vector<FormalBundle>& members);

enum class Strictness { weak, separable };

Strictness strictness_from_string(const std::string& s);
std::string to_string(Strictness s);

struct CheckReport {
  bool passed = false;
  Json details;
};

struct CollectionOptions {
  bool require_strong = false;
  bool require_full = false;
  Strictness strictness = Strictness::weak;
};

// Verifies an ordered collection: every member exceptional at the requested
// strictness, no Ext from later members to earlier ones, and (on request)
// strongness and the numerical fullness criterion.
CheckReport check_collection(const VarietyModel& X,
                             const std::vector<FormalBundle>& members,
                             const CollectionOptions& opts);

Json bundle_to_json(const FormalBundle& E);
FormalBundle bundle_from_json(const VarietyModel& X, const Json& j);

}  // namespace whelix
