#pragma once

#include <map>
#include <string>
#include <vector>

#include "whelix/bundles.hpp"

namespace whelix {

// A helix of type (n, d) on X, presented by one thread (V_1, ..., V_n) and
// extended in both directions by the rule V_{l-n} = V_l (x) omega_X. This
// artifact restricts to sheaf helices, which forces d = dim X + 1; every
// thread member must be an honest bundle over the base field.
class HelixSpec {
 public:
  HelixSpec(VarietyModel X, std::vector<FormalBundle> thread, int d);

  const VarietyModel& variety() const { return X_; }
  const std::vector<FormalBundle>& thread() const { return thread_; }
  int n() const { return static_cast<int>(thread_.size()); }
  int d() const { return d_; }

 private:
  VarietyModel X_;
  std::vector<FormalBundle> thread_;
  int d_;
};

// V_i for any integer i (thread positions are 1-based: V_1..V_n are the
// given thread, V_{i+n} = V_i (x) omega^{-1}).
FormalBundle extend(const HelixSpec& H, long long i);

// Checks every thread in [-window, window]: member exceptionality at the
// given strictness, semiorthogonality inside the thread, and the numerical
// fullness criterion (n = K0 rank, Euler Gram matrix unitriangular up to the
// rank multipliers). Fullness is only ever certified as numerically
// consistent. window must be >= n.
CheckReport verify_whelix(const HelixSpec& H, long long window,
                          Strictness strictness);

// Checks Ext^r(V_i, V_j) = 0 for r != 0 over all i < j with j - i <= window
// (i in one period), spot-checks translation invariance, and reports whether
// the positivity of degree differences just past the window makes the check
// conclusive for every larger gap.
CheckReport verify_geometric(const HelixSpec& H, long long window);

long long helix_hom_dim(const HelixSpec& H, long long i, long long j);

// Dimension of the cokernel of the composition map
//   (+)_{i<l<j} Hom(V_i, V_l) (x) Hom(V_l, V_j) -> Hom(V_i, V_j),
// computed as an exact rank over the rationals in the monomial model; split
// rank multipliers scale the count block-diagonally.
long long arrow_count(const HelixSpec& H, long long i, long long j);

struct QuiverDescription {
  int vertices = 0;
  // (from, to) -> arrow count, vertices 0..n-1, only nonzero counts stored.
  std::map<std::pair<int, int>, long long> arrows;

  std::string to_dot() const;
  Json to_json() const;
};

// Rolled-up quiver on Z/n: vertex residues, arrow counts n_{ij} summing
// arrow_count over all gaps <= window; gaps just past the window must carry a
// surjectivity certificate proving the tail vanishes (else: window too
// small).
QuiverDescription rolled_up_quiver(const HelixSpec& H, long long window);

// Cohomological criterion for the thread sum T at thread_index to be
// tilting-compatible: H^i(X, T^dual (x) T (x) omega^{-l}) = 0 for all i != 0
// and l = 1..L, plus the monotonicity threshold that certifies every l > L
// once the minimum twisted degree clears the vanishing range.
CheckReport check_tilting_hypothesis(const HelixSpec& H, long long thread_index,
                                     long long L);

}  // namespace whelix
