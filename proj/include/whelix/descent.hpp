#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "whelix/bundles.hpp"

namespace whelix {

// A finite group action on the labeled summands of a split form, given by
// generator permutations in cycle notation. Construction validates that the
// labels denote pairwise distinct split summands, that the generators are
// well-formed permutations generating a finite group (closure under a size
// cap), and that every generator preserves the Ext tables between labels —
// inadmissible actions are rejected.
class GaloisModel {
 public:
  GaloisModel(const VarietyModel& X, std::map<std::string, Summand> labels,
              const std::vector<std::vector<std::string>>& generator_cycles);

  const std::map<std::string, Summand>& labels() const { return labels_; }
  const Summand& summand_of(const std::string& label) const;
  bool has_label(const std::string& label) const;

  // Orbit partition of all labels; orbits and their members sorted by least
  // label so the output is deterministic.
  std::vector<std::vector<std::string>> orbits() const;
  std::vector<std::vector<std::string>> orbits_of(
      const std::set<std::string>& subset) const;
  std::vector<std::string> orbit_of(const std::string& label) const;

  size_t group_order() const { return closure_.size(); }

  // Label permutations of the full group closure (identity included).
  const std::vector<std::vector<size_t>>& group_elements() const {
    return closure_;
  }
  const std::vector<std::string>& label_order() const { return order_; }

 private:
  std::map<std::string, Summand> labels_;
  std::vector<std::string> order_;               // sorted label names
  std::vector<std::vector<size_t>> generators_;  // as index permutations
  std::vector<std::vector<size_t>> closure_;
};

struct MultiplicityResult {
  long long d = 1;
  std::string provenance;  // "brauer-hint", "variety", "as-bundle", "scene"
};

// The multiplicity d with which a descent orbit's geometric summands occur
// in the minimal descended bundle. Sourced, in order, from: an explicit
// Brauer hint (d = its index); for singleton orbits, the variety's own
// degree class (or d = 1 when the label already denotes a summand defined
// over the base field); a scene-supplied value. Never invented: throws
// undetermined_error when no source applies.
MultiplicityResult minimal_multiplicity(
    const VarietyModel& X, const GaloisModel& G,
    const std::vector<std::string>& orbit,
    const std::optional<BrauerClass>& hint,
    const std::optional<long long>& scene_value);

enum class VerdictStatus {
  affirmative,
  negative,
  hypothesis_not_met,
};

std::string to_string(VerdictStatus s);

struct DescentVerdict {
  VerdictStatus status = VerdictStatus::negative;
  Json report;
};

// Rigid bundle whose summand orbits are all singletons: returns its
// decomposition into descended indecomposables with division endomorphism
// algebras (each re-verified weak exceptional). Non-singleton orbits:
// hypothesis not met. Split multiplicities that do not divide out mean no
// such bundle exists over the base field: negative verdict.
DescentVerdict check_singleton_orbit_decomposition(const VarietyModel& X,
                                                   const FormalBundle& E,
                                                   const GaloisModel& G);

// Rigid bundle: decides whether E is a direct sum of separable exceptional
// bundles by testing each minimal descent orbit B_i^(+d) for being a split
// semisimple block. Reports the first failing orbit and the violated
// condition. Scene multiplicities are keyed by any member label of an orbit.
DescentVerdict check_descent_blocks(
    const VarietyModel& X, const FormalBundle& E, const GaloisModel& G,
    const std::map<std::string, long long>& scene_multiplicities);

// Separable exceptional bundle E and a block-structured full collection:
// checks the inclusion criteria — blocks invariant under the action, each a
// split semisimple block, mutually semiorthogonal in order, member count
// equal to the K0 rank, and every orbit of E contained in one block.
DescentVerdict check_block_inclusion(
    const VarietyModel& X, const FormalBundle& E, const GaloisModel& G,
    const std::vector<std::vector<std::string>>& blocks);

struct AsDecomposition {
  bool ok = false;
  // (twist index i, count of W_i) for each degree present, ascending.
  std::vector<std::pair<long long, long long>> parts;
  Json report;
};

// On a one-factor dimension-1 model: groups the split form O(i)^(m_i) into
// copies of the indecomposables W_i (split rank = index of the i-th power of
// the twist). Counts that do not divide mean the split form is not the base
// change of any bundle over the base field: not ok, with a witness.
AsDecomposition decompose_as_bundle(const VarietyModel& X,
                                    const FormalBundle& E);

}  // namespace whelix
