#include "massforge/exactnum.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace massforge {

std::string int_string(const Integer& n) { return n.str(); }

std::string rat_string(const Rat& r) {
  Integer n = rat_num(r), d = rat_den(r);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

namespace {

std::string strip_ws(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

Integer parse_int_body(const std::string& t) {
  if (t.empty()) throw SchemaError("empty integer literal");
  size_t i = 0;
  if (t[0] == '+' || t[0] == '-') i = 1;
  if (i == t.size()) throw SchemaError("sign without digits: '" + t + "'");
  for (size_t j = i; j < t.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(t[j])))
      throw SchemaError("bad integer literal: '" + t + "'");
  return Integer(t);
}

}  // namespace

Integer parse_int(const std::string& s) { return parse_int_body(strip_ws(s)); }

Rat parse_rat(const std::string& s) {
  std::string t = strip_ws(s);
  auto slash = t.find('/');
  if (slash == std::string::npos) return Rat(parse_int_body(t));
  Integer n = parse_int_body(strip_ws(t.substr(0, slash)));
  Integer d = parse_int_body(strip_ws(t.substr(slash + 1)));
  if (d == 0) throw SchemaError("zero denominator in '" + s + "'");
  return Rat(n, d);
}

Rat rat_div(const Rat& a, const Rat& b) {
  if (b == 0) throw DomainError("division by zero");
  return a / b;
}

Integer isqrt_floor(const Integer& n) {
  if (n < 0) throw DomainError("isqrt of negative");
  if (n == 0) return 0;
  // boost's sqrt on cpp_int is already the floor square root.
  return boost::multiprecision::sqrt(n);
}

std::optional<Integer> try_exact_sqrt_int(const Integer& n) {
  if (n < 0) return std::nullopt;
  Integer r = isqrt_floor(n);
  if (r * r == n) return r;
  return std::nullopt;
}

std::optional<Rat> try_exact_sqrt(const Rat& r) {
  auto n = try_exact_sqrt_int(rat_num(r));
  if (!n) return std::nullopt;
  auto d = try_exact_sqrt_int(rat_den(r));
  if (!d) return std::nullopt;
  return Rat(*n, *d);
}

Rat exact_sqrt(const Rat& r) {
  auto s = try_exact_sqrt(r);
  if (!s) throw DomainError("not a perfect square: " + rat_string(r));
  return *s;
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod_u64(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

u64 powmod_u64(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

bool mr_witness(u64 a, u64 n, u64 d, int s) {
  u64 x = powmod_u64(a % n, d, n);
  if (x == 1 || x == n - 1 || a % n == 0) return false;
  for (int i = 1; i < s; ++i) {
    x = mulmod_u64(x, x, n);
    if (x == n - 1) return false;
  }
  return true;  // a witnesses compositeness
}

}  // namespace

bool is_prime_u64(const Integer& n) {
  if (n < 0) return false;
  if (n >= Integer(1) << 64)
    throw DomainError("primality test limited to 64-bit inputs, got " + n.str());
  u64 v = static_cast<u64>(n);
  if (v < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (v == p) return true;
    if (v % p == 0) return false;
  }
  u64 d = v - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // This base set is deterministic for all 64-bit integers.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
    if (mr_witness(a, v, d, s)) return false;
  return true;
}

Rat Factorization::value() const {
  if (sign == 0) return 0;
  Rat v = sign;
  for (const auto& [p, e] : powers) {
    Integer pw = boost::multiprecision::pow(p, static_cast<unsigned>(e < 0 ? -e : e));
    if (e >= 0)
      v *= Rat(pw);
    else
      v /= Rat(pw);
  }
  return v;
}

void Factorization::mul_pow(const Integer& p, long e) {
  if (sign == 0 || e == 0) return;
  auto it = powers.find(p);
  if (it == powers.end()) {
    powers.emplace(p, e);
  } else {
    it->second += e;
    if (it->second == 0) powers.erase(it);
  }
}

Factorization& Factorization::operator*=(const Factorization& o) {
  if (o.sign == 0 || sign == 0) {
    sign = 0;
    powers.clear();
    return *this;
  }
  sign *= o.sign;
  for (const auto& [p, e] : o.powers) mul_pow(p, e);
  return *this;
}

Factorization Factorization::inverse() const {
  if (sign == 0) throw DomainError("inverse of zero");
  Factorization r;
  r.sign = sign;
  for (const auto& [p, e] : powers) r.powers.emplace(p, -e);
  return r;
}

std::string Factorization::to_string() const {
  if (sign == 0) return "0";
  std::ostringstream os;
  if (sign < 0) os << "-";
  if (powers.empty()) {
    os << "1";
    return os.str();
  }
  bool first = true;
  for (const auto& [p, e] : powers) {
    if (!first) os << " * ";
    first = false;
    os << p.str();
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

Factorization factor_integer(const Integer& n) {
  Factorization f;
  if (n == 0) {
    f.sign = 0;
    return f;
  }
  Integer m = n;
  if (m < 0) {
    f.sign = -1;
    m = -m;
  }
  constexpr long kTrialBound = 1000000;
  for (Integer p = 2; p <= kTrialBound && p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p == 0) {
      long e = 0;
      while (m % p == 0) m /= p, ++e;
      f.mul_pow(p, e);
    }
  }
  if (m > 1) {
    if (m <= kTrialBound * Integer(kTrialBound) || (m < (Integer(1) << 64) && is_prime_u64(m))) {
      // Below the square of the trial bound a surviving cofactor is prime.
      f.mul_pow(m, 1);
    } else {
      throw DomainError("cannot certify factorization: cofactor " + m.str() +
                        " is outside the supported range (trial division to 10^6 "
                        "plus 64-bit deterministic primality)");
    }
  }
  return f;
}

Factorization factor_rational(const Rat& r) {
  Factorization f = factor_integer(rat_num(r));
  if (f.sign == 0) return f;
  f *= factor_integer(rat_den(r)).inverse();
  return f;
}

long valuation_int(const Integer& p, Integer n) {
  if (n == 0) throw DomainError("valuation of zero");
  if (p < 2) throw DomainError("valuation base must be >= 2");
  long v = 0;
  while (n % p == 0) n /= p, ++v;
  return v;
}

long valuation_rat(const Integer& p, const Rat& r) {
  if (r == 0) throw DomainError("valuation of zero");
  return valuation_int(p, rat_num(r)) - valuation_int(p, rat_den(r));
}

}  // namespace massforge
