#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "whelix/common.hpp"

namespace whelix {

// A place of the rational numbers: a finite prime or the real place.
class Place {
 public:
  static Place finite(long long p);
  static Place infinite();
  static Place from_string(const std::string& s);  // "2", "17", "inf"

  bool is_infinite() const { return infinite_; }
  long long prime() const;
  std::string str() const;

  friend bool operator==(const Place& a, const Place& b) = default;
  // Finite places in ascending order, the real place last.
  friend bool operator<(const Place& a, const Place& b) {
    if (a.infinite_ != b.infinite_) return !a.infinite_;
    return a.p_ < b.p_;
  }

 private:
  Place(bool infinite, long long p) : infinite_(infinite), p_(p) {}
  bool infinite_;
  long long p_;
};

// A quaternion algebra (a, b) given by two nonzero rational slots.
struct QuaternionSymbol {
  QuaternionSymbol(Rat a_in, Rat b_in);
  Rat a;
  Rat b;

  Json to_json() const;
  static QuaternionSymbol from_json(const Json& j);
};

// Hilbert symbol (a, b)_v in {+1, -1}. At p = 2 this is decided by brute
// force over Z/32 with primitive-solution filtering, at odd p by the tame
// formula with Legendre symbols, at the real place by sign analysis.
int hilbert_symbol(const Rat& a, const Rat& b, const Place& v);

// An element of the Brauer group of the rationals, stored as its finite map
// of local invariants in Q/Z. Canonical form: each invariant reduced to
// [0, 1), zero invariants stripped. Construction validates that every finite
// place is prime, the real invariant is 0 or 1/2, and the invariants sum to
// an integer (reciprocity).
class BrauerClass {
 public:
  static BrauerClass zero();
  static BrauerClass from_invariants(
      const std::vector<std::pair<Place, Rat>>& invs);
  static BrauerClass from_quaternion(const QuaternionSymbol& q);

  BrauerClass tensor(const BrauerClass& other) const;
  BrauerClass power(long long e) const;  // e-fold tensor power, e may be < 0
  BrauerClass inverse() const { return power(-1); }

  // Order in the Brauer group: lcm of the invariant denominators.
  long long period() const;
  // Schur index of the division algebra in the class. Over the rationals the
  // index equals the period.
  long long index() const { return period(); }
  bool is_split() const { return invariants_.empty(); }

  const std::map<Place, Rat>& invariants() const { return invariants_; }

  Json to_json() const;
  static BrauerClass from_json(const Json& j);

  friend bool operator==(const BrauerClass& a, const BrauerClass& b) = default;
  friend bool operator<(const BrauerClass& a, const BrauerClass& b);

 private:
  BrauerClass() = default;
  std::map<Place, Rat> invariants_;
};

// Distinct prime divisors of |n|, ascending. n must be nonzero.
std::vector<long long> prime_factors(const Int& n);

bool is_prime(long long p);

}  // namespace whelix
