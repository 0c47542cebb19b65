#include "whelix/common.hpp"

#include <cctype>
#include <limits>

namespace whelix {

Rat parse_rational(const std::string& text) {
  auto bad = [&] {
    throw validation_error("not a rational: '" + text +
                           "' (expected p or p/q, no decimals)");
  };
  if (text.empty()) bad();
  size_t pos = 0;
  bool neg = false;
  if (text[pos] == '-' || text[pos] == '+') {
    neg = text[pos] == '-';
    ++pos;
  }
  auto read_digits = [&](Int& out) {
    if (pos >= text.size() || !isdigit(static_cast<unsigned char>(text[pos])))
      bad();
    out = 0;
    while (pos < text.size() &&
           isdigit(static_cast<unsigned char>(text[pos]))) {
      out = out * 10 + (text[pos] - '0');
      ++pos;
    }
  };
  Int num, den = 1;
  read_digits(num);
  if (pos < text.size()) {
    if (text[pos] != '/') bad();
    ++pos;
    read_digits(den);
    if (pos != text.size()) bad();
    if (den == 0) throw validation_error("zero denominator in '" + text + "'");
  }
  Rat r(num, den);
  return neg ? -r : r;
}

std::string format_rational(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

Rat mod_one(const Rat& r) {
  Int num = numerator(r), den = denominator(r);  // den > 0 canonically
  Int q = num / den;
  if (num % den != 0 && num < 0) --q;
  return r - Rat(q);
}

long long to_ll(const Int& n) {
  if (n > std::numeric_limits<long long>::max() ||
      n < std::numeric_limits<long long>::min())
    throw validation_error("integer out of range: " + n.str());
  return n.convert_to<long long>();
}

}  // namespace whelix
