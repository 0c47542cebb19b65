#include "whelix/brauer.hpp"

#include <cctype>
#include <numeric>
#include <set>

namespace whelix {

Place Place::finite(long long p) {
  if (!is_prime(p))
    throw validation_error("finite place must be prime, got " +
                           std::to_string(p));
  return Place(false, p);
}

Place Place::infinite() { return Place(true, 0); }

Place Place::from_string(const std::string& s) {
  if (s == "inf") return infinite();
  for (char c : s)
    if (!isdigit(static_cast<unsigned char>(c)))
      throw validation_error("not a place: '" + s + "' (expected a prime or 'inf')");
  if (s.empty() || s.size() > 18)
    throw validation_error("not a place: '" + s + "'");
  return finite(std::stoll(s));
}

long long Place::prime() const {
  if (infinite_) throw validation_error("the real place has no prime");
  return p_;
}

std::string Place::str() const {
  return infinite_ ? "inf" : std::to_string(p_);
}

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<long long> prime_factors(const Int& n_in) {
  if (n_in == 0) throw validation_error("prime_factors of zero");
  Int n = n_in < 0 ? Int(-n_in) : n_in;
  std::vector<long long> out;
  for (long long d = 2; Int(d) * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(to_ll(n));
  return out;
}

QuaternionSymbol::QuaternionSymbol(Rat a_in, Rat b_in)
    : a(std::move(a_in)), b(std::move(b_in)) {
  if (a == 0 || b == 0)
    throw validation_error("quaternion symbol slots must be nonzero");
}

Json QuaternionSymbol::to_json() const {
  return Json{{"a", format_rational(a)}, {"b", format_rational(b)}};
}

QuaternionSymbol QuaternionSymbol::from_json(const Json& j) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b") ||
      !j["a"].is_string() || !j["b"].is_string())
    throw validation_error(
        "quaternion symbol must be {\"a\": \"p/q\", \"b\": \"r/s\"}");
  return QuaternionSymbol(parse_rational(j["a"].get<std::string>()),
                          parse_rational(j["b"].get<std::string>()));
}

namespace {

// Square-class representative of x in Q_2^*: 2^(v mod 2) * (odd part mod 8),
// one of {1,3,5,7,2,6,10,14}.
int square_class_rep_two(const Rat& x) {
  Int n = numerator(x) * denominator(x);
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  int u = static_cast<int>((n % 8).convert_to<long long>());
  if (u < 0) u += 8;
  return (v % 2 ? 2 : 1) * u;
}

// Brute force over Z/32 with primitive-solution filtering. For coefficients
// of 2-adic valuation <= 1 a primitive zero of z^2 - a x^2 - b y^2 mod 32
// always lifts (some coordinate has partial-derivative valuation <= 2, and
// 5 >= 2*2 + 1), and an anisotropic form has none; so the search is exact.
int hilbert_at_two(const Rat& a, const Rat& b) {
  int aa = square_class_rep_two(a);
  int bb = square_class_rep_two(b);
  for (int z = 0; z < 32; ++z)
    for (int x = 0; x < 32; ++x)
      for (int y = 0; y < 32; ++y) {
        if (z % 2 == 0 && x % 2 == 0 && y % 2 == 0) continue;
        int val = (z * z - aa * x * x - bb * y * y) % 32;
        if (val < 0) val += 32;
        if (val == 0) return 1;
      }
  return -1;
}

long long mod_pow(long long base, long long exp, long long mod) {
  unsigned __int128 acc = 1, b = static_cast<unsigned long long>(base % mod);
  while (exp > 0) {
    if (exp & 1) acc = acc * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<long long>(acc);
}

int legendre(long long x, long long p) {
  x %= p;
  if (x < 0) x += p;
  long long r = mod_pow(x, (p - 1) / 2, p);
  return r == p - 1 ? -1 : 1;
}

// p-adic valuation and unit-part residue mod p of a nonzero rational.
std::pair<long long, long long> val_and_unit(const Rat& x, long long p) {
  Int num = numerator(x), den = denominator(x);
  long long v = 0;
  while (num % p == 0) {
    num /= p;
    ++v;
  }
  while (den % p == 0) {
    den /= p;
    --v;
  }
  long long n = to_ll(num % p), d = to_ll(den % p);
  if (n < 0) n += p;
  if (d < 0) d += p;
  long long u = static_cast<long long>(
      static_cast<unsigned __int128>(n) * mod_pow(d, p - 2, p) % p);
  return {v, u};
}

// Tame formula at an odd prime: for a = p^alpha u, b = p^beta w,
// (a,b)_p = (-1)^(alpha beta (p-1)/2) (u|p)^beta (w|p)^alpha.
int hilbert_at_odd(const Rat& a, const Rat& b, long long p) {
  auto [alpha, u] = val_and_unit(a, p);
  auto [beta, w] = val_and_unit(b, p);
  int s = 1;
  if ((alpha & 1) && (beta & 1) && (((p - 1) / 2) & 1)) s = -s;
  if (beta & 1) s *= legendre(u, p);
  if (alpha & 1) s *= legendre(w, p);
  return s;
}

}  // namespace

int hilbert_symbol(const Rat& a, const Rat& b, const Place& v) {
  if (a == 0 || b == 0)
    throw validation_error("hilbert symbol arguments must be nonzero");
  if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;
  long long p = v.prime();
  return p == 2 ? hilbert_at_two(a, b) : hilbert_at_odd(a, b, p);
}

BrauerClass BrauerClass::zero() { return BrauerClass(); }

BrauerClass BrauerClass::from_invariants(
    const std::vector<std::pair<Place, Rat>>& invs) {
  BrauerClass c;
  Rat sum = 0;
  for (const auto& [place, inv] : invs) {
    Rat r = mod_one(inv);
    if (place.is_infinite() && r != 0 && r != Rat(1, 2))
      throw validation_error("real invariant must be 0 or 1/2, got " +
                             format_rational(inv));
    if (c.invariants_.count(place))
      throw validation_error("duplicate place " + place.str());
    sum += r;
    if (r != 0) c.invariants_.emplace(place, r);
  }
  if (denominator(sum) != 1)
    throw validation_error("invariants do not sum to an integer (sum " +
                           format_rational(sum) + ")");
  return c;
}

BrauerClass BrauerClass::from_quaternion(const QuaternionSymbol& q) {
  std::set<long long> primes{2};
  for (const Rat& r : {q.a, q.b}) {
    for (long long p : prime_factors(numerator(r))) primes.insert(p);
    for (long long p : prime_factors(denominator(r))) primes.insert(p);
  }
  std::vector<std::pair<Place, Rat>> invs;
  for (long long p : primes)
    if (hilbert_symbol(q.a, q.b, Place::finite(p)) == -1)
      invs.emplace_back(Place::finite(p), Rat(1, 2));
  if (hilbert_symbol(q.a, q.b, Place::infinite()) == -1)
    invs.emplace_back(Place::infinite(), Rat(1, 2));
  return from_invariants(invs);
}

BrauerClass BrauerClass::tensor(const BrauerClass& other) const {
  std::map<Place, Rat> merged = invariants_;
  for (const auto& [place, inv] : other.invariants_) merged[place] += inv;
  std::vector<std::pair<Place, Rat>> invs(merged.begin(), merged.end());
  return from_invariants(invs);
}

BrauerClass BrauerClass::power(long long e) const {
  std::vector<std::pair<Place, Rat>> invs;
  for (const auto& [place, inv] : invariants_)
    invs.emplace_back(place, inv * e);
  return from_invariants(invs);
}

long long BrauerClass::period() const {
  long long l = 1;
  for (const auto& [place, inv] : invariants_)
    l = std::lcm(l, to_ll(denominator(inv)));
  return l;
}

Json BrauerClass::to_json() const {
  Json arr = Json::array();
  for (const auto& [place, inv] : invariants_)
    arr.push_back(Json{{"place", place.str()},
                       {"num", to_ll(numerator(inv))},
                       {"den", to_ll(denominator(inv))}});
  return Json{{"invariants", arr}};
}

BrauerClass BrauerClass::from_json(const Json& j) {
  if (!j.is_object() || !j.contains("invariants") || !j["invariants"].is_array())
    throw validation_error("brauer class must be {\"invariants\": [...]}");
  std::vector<std::pair<Place, Rat>> invs;
  for (const Json& e : j["invariants"]) {
    if (!e.is_object() || !e.contains("place") || !e.contains("num") ||
        !e.contains("den") || !e["place"].is_string() ||
        !e["num"].is_number_integer() || !e["den"].is_number_integer())
      throw validation_error(
          "invariant must be {\"place\": ..., \"num\": ..., \"den\": ...}");
    long long den = e["den"].get<long long>();
    if (den <= 0) throw validation_error("invariant denominator must be positive");
    invs.emplace_back(Place::from_string(e["place"].get<std::string>()),
                      Rat(e["num"].get<long long>(), den));
  }
  return from_invariants(invs);
}

bool operator<(const BrauerClass& a, const BrauerClass& b) {
  return a.invariants_ < b.invariants_;
}

}  // namespace whelix
