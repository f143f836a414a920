#include "massforge/gf.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace massforge {

GFPtr GF::prime(std::int64_t p) {
  if (p < 2) throw DomainError("field characteristic must be >= 2");
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
  auto f = std::make_shared<GF>();
  f->p = p;
  f->q = p;
  f->deg_abs = 1;
  return f;
}

GFPtr GF::extension(const GFPtr& base, std::vector<std::int64_t> modulus) {
  if (!base) throw DomainError("extension needs a base field");
  if (modulus.size() < 2) throw DomainError("extension modulus must have degree >= 1");
  if (modulus.back() != base->one()) throw DomainError("extension modulus must be monic");
  auto f = std::make_shared<GF>();
  f->base = base;
  f->p = base->p;
  f->mod = std::move(modulus);
  int d = static_cast<int>(f->mod.size()) - 1;
  f->deg_abs = base->deg_abs * d;
  f->q = 1;
  for (int i = 0; i < d; ++i) {
    if (f->q > (std::int64_t(1) << 42) / base->q)
      throw DomainError("finite field too large");
    f->q *= base->q;
  }
  return f;
}

std::vector<GF::El> GF::digits(El a) const {
  if (!base) return {a};
  int d = static_cast<int>(mod.size()) - 1;
  std::vector<El> out(d);
  for (int i = 0; i < d; ++i) {
    out[i] = a % base->q;
    a /= base->q;
  }
  return out;
}

GF::El GF::from_digits(const std::vector<El>& dg) const {
  if (!base) return dg.empty() ? 0 : dg[0];
  El a = 0;
  for (int i = static_cast<int>(dg.size()) - 1; i >= 0; --i) a = a * base->q + dg[i];
  return a;
}

GF::El GF::add(El a, El b) const {
  if (!base) return (a + b) % p;
  auto da = digits(a), db = digits(b);
  for (size_t i = 0; i < da.size(); ++i) da[i] = base->add(da[i], db[i]);
  return from_digits(da);
}

GF::El GF::neg(El a) const {
  if (!base) return (p - a % p) % p;
  auto da = digits(a);
  for (auto& c : da) c = base->neg(c);
  return from_digits(da);
}

GF::El GF::sub(El a, El b) const { return add(a, neg(b)); }

GF::El GF::mul(El a, El b) const {
  if (!base) return (a * b) % p;
  auto da = digits(a), db = digits(b);
  int d = static_cast<int>(mod.size()) - 1;
  // Schoolbook product, then reduction by the monic modulus.
  std::vector<El> prod(2 * d - 1, 0);
  for (int i = 0; i < d; ++i) {
    if (da[i] == 0) continue;
    for (int j = 0; j < d; ++j)
      if (db[j] != 0) prod[i + j] = base->add(prod[i + j], base->mul(da[i], db[j]));
  }
  for (int k = 2 * d - 2; k >= d; --k) {
    El c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (int j = 0; j < d; ++j)
      prod[k - d + j] = base->sub(prod[k - d + j], base->mul(c, mod[j]));
  }
  prod.resize(d);
  return from_digits(prod);
}

GF::El GF::pow(El a, Integer e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  El r = one();
  while (e > 0) {
    if ((e & 1) != 0) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

GF::El GF::inv(El a) const {
  if (a == 0) throw DomainError("inverse of zero in finite field");
  return pow(a, Integer(q) - 2);
}

GF::El GF::from_int(const Integer& n) const {
  Integer m = n % p;
  if (m < 0) m += p;
  return static_cast<El>(m);  // prime-subfield digit is the low digit in every tower
}

bool GF::is_square(El a) const {
  if (p == 2 || a == 0) return true;
  return pow(a, (Integer(q) - 1) / 2) == one();
}

GFPtr GF::make(std::int64_t p, int deg) {
  GFPtr f = prime(p);
  if (deg == 1) return f;
  for (const Poly& m : poly::monic_irreducibles(*f, deg)) {
    std::vector<std::int64_t> mod(m.begin(), m.end());
    mod.resize(deg + 1, 0);
    mod[deg] = 1;
    return extension(f, mod);
  }
  throw DomainError("no irreducible polynomial found (unreachable)");
}

namespace poly {

Poly trim(Poly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }
bool is_zero(const Poly& f) { return f.empty(); }
Poly one() { return {1}; }
Poly x() { return {0, 1}; }
Poly constant(const GF& F, GF::El c) { return c == F.zero() ? Poly{} : Poly{c}; }

Poly add(const GF& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    GF::El x = i < a.size() ? a[i] : 0;
    GF::El y = i < b.size() ? b[i] : 0;
    r[i] = F.add(x, y);
  }
  return trim(std::move(r));
}

Poly neg(const GF& F, const Poly& a) {
  Poly r = a;
  for (auto& c : r) c = F.neg(c);
  return r;
}

Poly sub(const GF& F, const Poly& a, const Poly& b) { return add(F, a, neg(F, b)); }

Poly mul(const GF& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  return trim(std::move(r));
}

Poly scale(const GF& F, GF::El c, const Poly& a) {
  if (c == 0) return {};
  Poly r = a;
  for (auto& v : r) v = F.mul(c, v);
  return trim(std::move(r));
}

std::pair<Poly, Poly> divmod(const GF& F, const Poly& a, const Poly& b) {
  if (b.empty()) throw DomainError("polynomial division by zero");
  Poly rem = a, quot;
  GF::El lb = F.inv(b.back());
  int db = deg(b);
  if (deg(rem) >= db) quot.assign(rem.size() - b.size() + 1, 0);
  while (deg(rem) >= db) {
    int k = deg(rem) - db;
    GF::El c = F.mul(rem.back(), lb);
    quot[k] = c;
    for (size_t i = 0; i < b.size(); ++i)
      rem[k + i] = F.sub(rem[k + i], F.mul(c, b[i]));
    rem = trim(std::move(rem));
  }
  return {trim(std::move(quot)), rem};
}

Poly mod(const GF& F, const Poly& a, const Poly& b) { return divmod(F, a, b).second; }

GF::El lead(const Poly& a) { return a.empty() ? 0 : a.back(); }

Poly monic(const GF& F, const Poly& a) {
  if (a.empty()) return a;
  return scale(F, F.inv(a.back()), a);
}

Poly gcd(const GF& F, Poly a, Poly b) {
  while (!b.empty()) {
    Poly r = mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

std::tuple<Poly, Poly, Poly> egcd(const GF& F, const Poly& a, const Poly& b) {
  // Invariants: r0 = u0*a + v0*b, r1 = u1*a + v1*b.
  Poly r0 = a, r1 = b, u0 = one(), u1 = {}, v0 = {}, v1 = one();
  while (!is_zero(r1)) {
    auto [q, r] = divmod(F, r0, r1);
    Poly u2 = sub(F, u0, mul(F, q, u1));
    Poly v2 = sub(F, v0, mul(F, q, v1));
    r0 = std::move(r1);
    r1 = std::move(r);
    u0 = std::move(u1);
    u1 = std::move(u2);
    v0 = std::move(v1);
    v1 = std::move(v2);
  }
  if (is_zero(r0)) return {r0, u0, v0};
  GF::El c = F.inv(lead(r0));
  return {scale(F, c, r0), scale(F, c, u0), scale(F, c, v0)};
}

Poly invmod(const GF& F, const Poly& a, const Poly& m) {
  auto [g, u, v] = egcd(F, mod(F, a, m), m);
  (void)v;
  if (!eq(g, one())) throw DomainError("polynomial not invertible modulo modulus");
  return mod(F, u, m);
}

Poly powmod(const GF& F, Poly a, Integer e, const Poly& m) {
  Poly r = one();
  a = mod(F, a, m);
  while (e > 0) {
    if ((e & 1) != 0) r = mod(F, mul(F, r, a), m);
    a = mod(F, mul(F, a, a), m);
    e >>= 1;
  }
  return r;
}

GF::El eval(const GF& F, const Poly& a, GF::El x0) {
  GF::El r = 0;
  for (int i = deg(a); i >= 0; --i) r = F.add(F.mul(r, x0), a[i]);
  return r;
}

bool eq(const Poly& a, const Poly& b) { return a == b; }

bool less(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

std::int64_t enc(const GF& F, const Poly& a) {
  std::int64_t code = 0;
  for (int i = deg(a); i >= 0; --i) code = code * F.q + a[i];
  return code;
}

Poly dec(const GF& F, std::int64_t code) {
  Poly f;
  while (code > 0) {
    f.push_back(code % F.q);
    code /= F.q;
  }
  return f;
}

bool is_irreducible(const GF& F, const Poly& f) {
  int d = deg(f);
  if (d <= 0) return false;
  if (d == 1) return true;
  // Rabin: x^(q^d) == x mod f, and gcd(x^(q^(d/l)) - x, f) = 1 for primes l|d.
  Integer qd = 1;
  for (int i = 0; i < d; ++i) qd *= F.q;
  Poly xp = powmod(F, x(), qd, f);
  if (!eq(xp, mod(F, x(), f))) return false;
  for (int l = 2; l <= d; ++l) {
    if (d % l != 0) continue;
    bool lprime = true;
    for (int t = 2; t * t <= l; ++t)
      if (l % t == 0) lprime = false;
    if (!lprime) continue;
    Integer qe = 1;
    for (int i = 0; i < d / l; ++i) qe *= F.q;
    Poly g = sub(F, powmod(F, x(), qe, f), mod(F, x(), f));
    if (deg(gcd(F, g, f)) != 0) return false;
  }
  return true;
}

std::vector<Poly> monic_irreducibles(const GF& F, int d) {
  std::vector<Poly> out;
  std::int64_t count = 1;
  for (int i = 0; i < d; ++i) {
    if (count > (std::int64_t(1) << 40) / F.q) throw DomainError("irreducible enumeration too large");
    count *= F.q;
  }
  for (std::int64_t low = 0; low < count; ++low) {
    Poly f = dec(F, low);
    f.resize(d + 1, 0);
    f[d] = 1;
    if (is_irreducible(F, f)) out.push_back(std::move(f));
  }
  return out;
}

std::vector<std::pair<Poly, long>> factor(const GF& F, Poly f) {
  if (is_zero(f)) throw DomainError("factoring the zero polynomial");
  f = monic(F, f);
  std::vector<std::pair<Poly, long>> out;
  for (int d = 1; 2 * d <= deg(f); ++d) {
    if (deg(f) < 2 * d) break;
    for (const Poly& pi : monic_irreducibles(F, d)) {
      if (deg(f) < deg(pi)) break;
      long e = 0;
      while (true) {
        auto [q, r] = divmod(F, f, pi);
        if (!is_zero(r)) break;
        f = q;
        ++e;
      }
      if (e > 0) out.emplace_back(pi, e);
    }
  }
  if (deg(f) >= 1) out.emplace_back(f, 1);  // remaining factor is irreducible
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return less(a.first, b.first); });
  return out;
}

std::string to_string(const GF&, const Poly& f, const std::string& var) {
  if (is_zero(f)) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = deg(f); i >= 0; --i) {
    if (f[i] == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || f[i] != 1) os << f[i];
    if (i >= 1) {
      os << var;
      if (i >= 2) os << "^" << i;
    }
  }
  return os.str();
}

Poly parse(const GF& F, const std::string& s) {
  // Terms separated by + / - at the top level; each term [coef][*][t[^exp]].
  Poly out;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  skip_ws();
  if (i == s.size()) throw SchemaError("empty polynomial literal");
  bool any = false;
  while (i < s.size()) {
    skip_ws();
    std::int64_t sign = 1;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign = -sign;
      ++i;
      skip_ws();
    }
    if (i == s.size()) {
      if (any) throw SchemaError("dangling sign in polynomial '" + s + "'");
      break;
    }
    Integer coef = 1;
    bool saw_digits = false;
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      std::string digits;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
      coef = Integer(digits);
      saw_digits = true;
      skip_ws();
      if (i < s.size() && s[i] == '*') {
        ++i;
        skip_ws();
      }
    }
    long e = 0;
    if (i < s.size() && s[i] == 't') {
      ++i;
      e = 1;
      skip_ws();
      if (i < s.size() && s[i] == '^') {
        ++i;
        skip_ws();
        std::string digits;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
        if (digits.empty() || digits.size() > 3)
          throw SchemaError("bad exponent in polynomial '" + s + "'");
        e = std::stol(digits);
        if (e > 64) throw SchemaError("polynomial exponent too large in '" + s + "'");
      }
      skip_ws();
    } else if (!saw_digits) {
      throw SchemaError("bad polynomial term in '" + s + "'");
    }
    if (out.size() < static_cast<size_t>(e + 1)) out.resize(e + 1, 0);
    GF::El c = F.from_int(sign < 0 ? -coef : coef);
    out[e] = F.add(out[e], c);
    any = true;
  }
  if (!any) throw SchemaError("empty polynomial literal");
  return trim(std::move(out));
}

}  // namespace poly

}  // namespace massforge
