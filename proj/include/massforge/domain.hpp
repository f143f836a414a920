#pragma once
// Coefficient domains for lattice arithmetic: the rational integers and
// polynomial rings over finite fields, each optionally localized away from a
// finite set of primes.  Both expose the same small interface -- integrality
// test, canonical associates, Euclidean divmod with canonical residues --
// which is exactly what the generic Hermite-form code needs to produce a
// unique matrix per lattice.
//
// Canonical choices:
//   Z[1/S]:    units are +-1 times products of inverted primes; the canonical
//              associate of a nonzero element is its positive S-free part,
//              and canonical residues modulo (b) are {0, ..., b0-1} for the
//              S-free generator b0.
//   Fq[t][1/S]: units are nonzero constants times products of inverted monic
//              irreducibles; canonical associate = monic S-free part;
//              canonical residues modulo (b) are polynomials of degree
//              strictly below deg(b0).

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "massforge/exactnum.hpp"
#include "massforge/gf.hpp"

namespace massforge {

namespace detail {

// Modular inverse of a modulo m > 1; requires gcd(a, m) = 1.
inline Integer inv_mod(Integer a, const Integer& m) {
  a %= m;
  if (a < 0) a += m;
  Integer r0 = m, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1) throw DomainError("inv_mod: arguments are not coprime");
  s0 %= m;
  if (s0 < 0) s0 += m;
  return s0;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The rational integers, localized at `inverted` (plain Z when empty).

struct ZDom {
  using Fel = Rat;

  std::vector<Integer> inverted;  // distinct primes made invertible

  ZDom() = default;
  explicit ZDom(std::vector<Integer> inv) : inverted(std::move(inv)) {
    std::sort(inverted.begin(), inverted.end());
    inverted.erase(std::unique(inverted.begin(), inverted.end()),
                   inverted.end());
    for (const auto& p : inverted)
      if (p < 2) throw DomainError("inverted primes must be >= 2");
  }

  Fel fzero() const { return Rat(0); }
  Fel fone() const { return Rat(1); }
  Fel from_int(long n) const { return Rat(n); }

  bool is_zero(const Fel& a) const { return a == 0; }

  // Positive part of n with every inverted prime divided out.
  Integer sfree(Integer n) const {
    if (n == 0) return n;
    if (n < 0) n = -n;
    for (const auto& p : inverted)
      while (n % p == 0) n /= p;
    return n;
  }

  bool is_integral(const Fel& a) const { return sfree(rat_den(a)) == 1; }

  bool is_unit(const Fel& a) const {
    return a != 0 && sfree(rat_num(a)) == 1 && sfree(rat_den(a)) == 1;
  }

  // u*a for the unique unit u making the result positive and S-free in both
  // numerator and denominator; 0 maps to 0.
  Fel canon_gen(const Fel& a) const {
    if (a == 0) return fzero();
    return Rat(sfree(rat_num(a)), sfree(rat_den(a)));
  }

  // Canonical generator of the denominator ideal (fone for integral input).
  Fel den_gen(const Fel& a) const { return Rat(sfree(rat_den(a))); }

  // gcd / lcm of the ideals generated by a and b, as canonical generators.
  Fel gen_gcd(const Fel& a, const Fel& b) const {
    Integer x = rat_num(canon_gen(a)), y = rat_num(canon_gen(b));
    if (x == 0) return Rat(y);
    if (y == 0) return Rat(x);
    return Rat(boost::multiprecision::gcd(x, y));
  }
  Fel gen_lcm(const Fel& a, const Fel& b) const {
    Integer x = rat_num(canon_gen(a)), y = rat_num(canon_gen(b));
    if (x == 0 || y == 0) return fzero();
    return Rat(x / boost::multiprecision::gcd(x, y) * y);
  }

  // a = q*b + r with r the canonical representative of a mod the ideal (b):
  // an ordinary integer in [0, b0) where b0 = canon_gen(b).  Both arguments
  // must be integral.
  std::pair<Fel, Fel> divmod(const Fel& a, const Fel& b) const {
    if (b == 0) throw DomainError("divmod by zero");
    if (!is_integral(a) || !is_integral(b))
      throw DomainError("divmod needs integral arguments");
    Integer b0 = rat_num(canon_gen(b));
    if (b0 == 1) return {a / b, fzero()};
    Integer n = rat_num(a) % b0;
    if (n < 0) n += b0;
    Integer r = n * detail::inv_mod(rat_den(a), b0) % b0;
    return {(a - Rat(r)) / b, Rat(r)};
  }

  std::string str(const Fel& a) const { return rat_string(a); }
  Fel parse_el(const std::string& s) const { return parse_rat(s); }
};

// ---------------------------------------------------------------------------
// Rational functions over a finite field, kept in lowest terms with a monic
// denominator.  Zero is {num = 0, den = 1}.

struct FqRat {
  GFPtr F;
  poly::Poly num, den;

  FqRat() = default;
  FqRat(GFPtr f, poly::Poly n, poly::Poly d = poly::one())
      : F(std::move(f)), num(std::move(n)), den(std::move(d)) {
    num = poly::trim(num);
    den = poly::trim(den);
    if (poly::is_zero(den)) throw DomainError("division by zero polynomial");
    if (poly::is_zero(num)) {
      den = poly::one();
      return;
    }
    auto g = poly::gcd(*F, num, den);
    if (poly::deg(g) > 0) {
      num = poly::divmod(*F, num, g).first;
      den = poly::divmod(*F, den, g).first;
    }
    auto l = poly::lead(den);
    if (l != F->one()) {
      auto li = F->inv(l);
      num = poly::scale(*F, li, num);
      den = poly::scale(*F, li, den);
    }
  }

  bool is_zero() const { return poly::is_zero(num); }

  FqRat operator+(const FqRat& o) const {
    return FqRat(F,
                 poly::add(*F, poly::mul(*F, num, o.den),
                           poly::mul(*F, o.num, den)),
                 poly::mul(*F, den, o.den));
  }
  FqRat operator-(const FqRat& o) const {
    return FqRat(F,
                 poly::sub(*F, poly::mul(*F, num, o.den),
                           poly::mul(*F, o.num, den)),
                 poly::mul(*F, den, o.den));
  }
  FqRat operator-() const { return FqRat(F, poly::neg(*F, num), den); }
  FqRat operator*(const FqRat& o) const {
    return FqRat(F, poly::mul(*F, num, o.num), poly::mul(*F, den, o.den));
  }
  FqRat operator/(const FqRat& o) const {
    if (o.is_zero()) throw DomainError("division by zero");
    return FqRat(F, poly::mul(*F, num, o.den), poly::mul(*F, den, o.num));
  }
  FqRat& operator+=(const FqRat& o) { return *this = *this + o; }
  FqRat& operator-=(const FqRat& o) { return *this = *this - o; }
  FqRat& operator*=(const FqRat& o) { return *this = *this * o; }
  FqRat& operator/=(const FqRat& o) { return *this = *this / o; }

  bool operator==(const FqRat& o) const {
    return poly::eq(num, o.num) && poly::eq(den, o.den);
  }
  bool operator!=(const FqRat& o) const { return !(*this == o); }

  std::string str(const std::string& var = "t") const {
    if (poly::deg(den) <= 0) return poly::to_string(*F, num, var);
    return "(" + poly::to_string(*F, num, var) + ")/(" +
           poly::to_string(*F, den, var) + ")";
  }
};

// ---------------------------------------------------------------------------
// Fq[t] localized at `inverted` (the full polynomial ring when empty).

struct FqtDom {
  using Fel = FqRat;

  GFPtr F;
  std::vector<poly::Poly> inverted;  // distinct monic irreducibles

  explicit FqtDom(GFPtr f, std::vector<poly::Poly> inv = {})
      : F(std::move(f)), inverted(std::move(inv)) {
    for (auto& p : inverted) {
      p = poly::trim(p);
      if (poly::deg(p) < 1 || poly::lead(p) != F->one() ||
          !poly::is_irreducible(*F, p))
        throw DomainError("inverted elements must be monic irreducible");
    }
    std::sort(inverted.begin(), inverted.end(), poly::less);
    inverted.erase(std::unique(inverted.begin(), inverted.end(), poly::eq),
                   inverted.end());
  }

  Fel fzero() const { return FqRat(F, {}); }
  Fel fone() const { return FqRat(F, poly::one()); }
  Fel from_int(long n) const {
    return FqRat(F, poly::constant(*F, F->from_int(n)));
  }

  bool is_zero(const Fel& a) const { return a.is_zero(); }

  // Monic part of n with every inverted irreducible divided out.
  poly::Poly sfree(poly::Poly n) const {
    n = poly::trim(n);
    if (poly::is_zero(n)) return n;
    for (const auto& p : inverted) {
      while (poly::deg(n) >= poly::deg(p)) {
        auto [q, r] = poly::divmod(*F, n, p);
        if (!poly::is_zero(r)) break;
        n = q;
      }
    }
    return poly::monic(*F, n);
  }

  bool is_integral(const Fel& a) const { return poly::deg(sfree(a.den)) == 0; }

  bool is_unit(const Fel& a) const {
    return !a.is_zero() && poly::deg(sfree(a.num)) == 0 && is_integral(a);
  }

  Fel canon_gen(const Fel& a) const {
    if (a.is_zero()) return fzero();
    return FqRat(F, sfree(a.num), sfree(a.den));
  }

  Fel den_gen(const Fel& a) const { return FqRat(F, sfree(a.den)); }

  Fel gen_gcd(const Fel& a, const Fel& b) const {
    auto x = canon_gen(a).num, y = canon_gen(b).num;
    if (poly::is_zero(x)) return FqRat(F, y);
    if (poly::is_zero(y)) return FqRat(F, x);
    return FqRat(F, poly::gcd(*F, x, y));
  }
  Fel gen_lcm(const Fel& a, const Fel& b) const {
    auto x = canon_gen(a).num, y = canon_gen(b).num;
    if (poly::is_zero(x) || poly::is_zero(y)) return fzero();
    auto g = poly::gcd(*F, x, y);
    return FqRat(F, poly::mul(*F, poly::divmod(*F, x, g).first, y));
  }

  // a = q*b + r with r the unique representative of a mod (b) of degree
  // strictly below deg(b0), b0 = canon_gen(b).  Arguments must be integral.
  std::pair<Fel, Fel> divmod(const Fel& a, const Fel& b) const {
    if (b.is_zero()) throw DomainError("divmod by zero");
    if (!is_integral(a) || !is_integral(b))
      throw DomainError("divmod needs integral arguments");
    auto b0 = canon_gen(b).num;
    if (poly::deg(b0) == 0) return {a / b, fzero()};
    auto n = poly::mod(*F, a.num, b0);
    auto dinv = poly::invmod(*F, a.den, b0);
    auto r = poly::mod(*F, poly::mul(*F, n, dinv), b0);
    Fel rr(F, r);
    return {(a - rr) / b, rr};
  }

  std::string str(const Fel& a) const { return a.str(); }

  Fel parse_el(const std::string& s) const {
    auto strip = [](std::string t) {
      auto drop = [&t](char c) {
        t.erase(std::remove(t.begin(), t.end(), c), t.end());
      };
      drop(' ');
      while (t.size() >= 2 && t.front() == '(' && t.back() == ')')
        t = t.substr(1, t.size() - 2);
      return t;
    };
    auto slash = s.find('/');
    if (slash == std::string::npos)
      return FqRat(F, poly::parse(*F, strip(s)));
    auto n = poly::parse(*F, strip(s.substr(0, slash)));
    auto d = poly::parse(*F, strip(s.substr(slash + 1)));
    if (poly::is_zero(d)) throw SchemaError("zero denominator in '" + s + "'");
    return FqRat(F, n, d);
  }
};

}  // namespace massforge
