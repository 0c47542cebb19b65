#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace whelix {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// All machine-readable output goes through ordered_json so reruns are
// byte-identical: keys keep insertion order, values are ints and strings only.
using Json = nlohmann::ordered_json;

// Invalid input data (malformed scenes, broken invariants, precondition
// violations). The CLI maps this to exit code 2.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A question the given data cannot decide (e.g. a descent multiplicity with no
// source for it). The CLI maps this to exit code 3.
struct undetermined_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses "p" or "p/q" with optional leading minus; no decimals, no whitespace.
Rat parse_rational(const std::string& text);

// Inverse of parse_rational: "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rat& r);

// Representative of r + Z in [0, 1).
Rat mod_one(const Rat& r);

// Checked narrowing; throws validation_error on overflow.
long long to_ll(const Int& n);

}  // namespace whelix
