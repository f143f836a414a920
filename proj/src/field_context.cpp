#include "massforge/field_context.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>

namespace massforge {

namespace {

int kind_rank(Place::Kind k) {
  switch (k) {
    case Place::Kind::RealInf:
    case Place::Kind::FfInf:
      return 0;
    case Place::Kind::RatPrime:
      return 1;
    case Place::Kind::FfPrime:
      return 2;
    case Place::Kind::Opaque:
      return 3;
  }
  return 4;
}

Rat rat_pow(const Integer& p, long e) {
  Integer n = 1;
  for (long i = 0; i < (e < 0 ? -e : e); ++i) n *= p;
  return e < 0 ? Rat(1, n) : Rat(n);
}

Integer int_pow(const Integer& base, long e) {
  Integer r = 1;
  for (long i = 0; i < e; ++i) r *= base;
  return r;
}

// x mod m for a rational with denominator coprime to m (m prime), in [0, m).
Integer rat_mod(const Rat& x, const Integer& m) {
  Integer n = rat_num(x) % m;
  if (n < 0) n += m;
  Integer d = rat_den(x) % m;
  if (d < 0) d += m;
  if (d == 0) throw DomainError("rat_mod: denominator not a unit");
  Integer dinv = boost::multiprecision::powm(d, m - 2, m);
  return (n * dinv) % m;
}

// Legendre symbol of a p-unit rational at an odd prime.
int legendre(const Rat& u, const Integer& p) {
  Integer r = rat_mod(u, p);
  Integer s = boost::multiprecision::powm(r, (p - 1) / 2, p);
  if (s == 1) return 1;
  if (s == p - 1) return -1;
  throw DomainError("legendre: argument not a unit at " + int_string(p));
}

// u mod 8 for an odd rational (denominators are self-inverse mod 8).
Integer odd_mod8(const Rat& u) {
  Integer n = rat_num(u) % 8;
  if (n < 0) n += 8;
  Integer d = rat_den(u) % 8;
  if (d < 0) d += 8;
  return (n * d) % 8;
}

// (u-1)/2 mod 2 for odd u.
long eps2(const Integer& m8) { return (m8 == 3 || m8 == 7) ? 1 : 0; }
// (u^2-1)/8 mod 2 for odd u.
long omega2(const Integer& m8) { return (m8 == 3 || m8 == 5) ? 1 : 0; }

// pi-adic valuation and pi-free part of a nonzero polynomial.
std::pair<long, poly::Poly> strip_pi(const GF& F, poly::Poly f,
                                     const poly::Poly& pi) {
  long k = 0;
  while (true) {
    auto [q, r] = poly::divmod(F, f, pi);
    if (!poly::is_zero(r)) break;
    f = q;
    ++k;
  }
  return {k, f};
}

}  // namespace

bool operator==(const Place& x, const Place& y) {
  return x.kind == y.kind && x.label == y.label;
}

bool operator<(const Place& x, const Place& y) {
  int rx = kind_rank(x.kind), ry = kind_rank(y.kind);
  if (rx != ry) return rx < ry;
  switch (x.kind) {
    case Place::Kind::RatPrime:
      return x.p < y.p;
    case Place::Kind::FfPrime:
      return poly::less(x.pi, y.pi);
    default:
      return x.label < y.label;
  }
}

FieldContext FieldContext::rationals(const std::vector<std::string>& extra_S) {
  FieldContext ctx;
  ctx.kind = FieldKind::Rationals;
  Place inf;
  inf.kind = Place::Kind::RealInf;
  inf.qv = 0;
  inf.label = "infty";
  ctx.S.push_back(inf);
  std::vector<Place> fin;
  for (const auto& s : extra_S) {
    Place v = ctx.parse_place(s);
    if (v.is_real()) continue;
    fin.push_back(v);
  }
  std::sort(fin.begin(), fin.end());
  fin.erase(std::unique(fin.begin(), fin.end()), fin.end());
  for (auto& v : fin) ctx.S.push_back(std::move(v));
  return ctx;
}

FieldContext FieldContext::function_field(const Integer& q,
                                          const std::vector<std::string>& extra_S) {
  FieldContext ctx;
  ctx.kind = FieldKind::FunctionField;
  if (q < 2) throw SchemaError("constant field size must be at least 2");
  auto fac = factor_integer(q);
  if (fac.powers.size() != 1)
    throw SchemaError("constant field size must be a prime power, got " +
                      int_string(q));
  Integer p = fac.powers.begin()->first;
  long deg = fac.powers.begin()->second;
  if (p > (Integer(1) << 20))
    throw SchemaError("constant field characteristic too large");
  ctx.q = q;
  ctx.F = GF::make(static_cast<std::int64_t>(p), static_cast<int>(deg));
  Place inf;
  inf.kind = Place::Kind::FfInf;
  inf.qv = q;
  inf.label = "infty";
  ctx.S.push_back(inf);
  std::vector<Place> fin;
  for (const auto& s : extra_S) {
    Place v = ctx.parse_place(s);
    if (v.kind == Place::Kind::FfInf) continue;
    fin.push_back(v);
  }
  std::sort(fin.begin(), fin.end());
  fin.erase(std::unique(fin.begin(), fin.end()), fin.end());
  for (auto& v : fin) ctx.S.push_back(std::move(v));
  return ctx;
}

FieldContext FieldContext::custom(Integer h, std::vector<Rat> zeta,
                                  std::vector<Place> places_in_S,
                                  std::vector<Place> other_places) {
  FieldContext ctx;
  ctx.kind = FieldKind::Custom;
  ctx.h = std::move(h);
  ctx.zeta_table = std::move(zeta);
  if (places_in_S.empty())
    throw SchemaError("custom field context requires a nonempty S");
  ctx.S = std::move(places_in_S);
  ctx.extra_places = std::move(other_places);
  if (ctx.h < 1) throw SchemaError("class number must be positive");
  for (const auto& z : ctx.zeta_table)
    if (z <= 0) throw SchemaError("zeta magnitudes must be positive");
  for (std::size_t i = 1; i < ctx.S.size(); ++i)
    if (ctx.S[i].qv <= 0 && !ctx.S[i].is_real())
      throw SchemaError("custom place '" + ctx.S[i].label +
                        "' needs a residue field size");
  for (const auto& v : ctx.extra_places) {
    if (v.is_real() || v.qv <= 0)
      throw SchemaError("custom place '" + v.label +
                        "' outside S needs a residue field size");
    if (ctx.in_S(v))
      throw SchemaError("custom place '" + v.label + "' listed twice");
  }
  return ctx;
}

Rat FieldContext::zeta_abs(long i) const {
  if (i < 1) throw DomainError("zeta_abs: index must be >= 1");
  switch (kind) {
    case FieldKind::Rationals:
      if (i == 1) return Rat(1, 12);
      throw DomainError(
          "zeta_abs: only the value at -1 is built in over the rationals");
    case FieldKind::FunctionField: {
      Integer a = int_pow(q, i) - 1;
      Integer b = int_pow(q, i + 1) - 1;
      return Rat(1, a * b);
    }
    case FieldKind::Custom:
      if (static_cast<std::size_t>(i) <= zeta_table.size())
        return zeta_table[static_cast<std::size_t>(i) - 1];
      throw DomainError("zeta_abs: custom table has no entry at -" +
                        std::to_string(i));
  }
  throw DomainError("zeta_abs: bad field kind");
}

Integer FieldContext::unit_count() const {
  if (S.size() != 1)
    throw DomainError("unit group of A is infinite unless |S| = 1");
  switch (kind) {
    case FieldKind::Rationals:
      return 2;
    case FieldKind::FunctionField:
      return q - 1;
    case FieldKind::Custom:
      throw DomainError("unit count unavailable for a custom field");
  }
  throw DomainError("unit count: bad field kind");
}

bool FieldContext::in_S(const Place& v) const {
  for (const auto& w : S)
    if (w == v) return true;
  return false;
}

Place FieldContext::parse_place(const std::string& s) const {
  if (s.empty()) throw SchemaError("empty place literal");
  if (s == "infty" || s == "inf" || s == "oo") {
    return S.empty() ? Place{} : S.front();
  }
  switch (kind) {
    case FieldKind::Rationals: {
      Integer p = parse_int(s);
      if (p < 2 || !is_prime_u64(p))
        throw SchemaError("place '" + s + "' is not a prime");
      Place v;
      v.kind = Place::Kind::RatPrime;
      v.p = p;
      v.qv = p;
      v.label = int_string(p);
      return v;
    }
    case FieldKind::FunctionField: {
      poly::Poly f = poly::monic(*F, poly::parse(*F, s));
      if (poly::deg(f) < 1)
        throw SchemaError("place '" + s + "' is not a finite place");
      if (!poly::is_irreducible(*F, f))
        throw SchemaError("place '" + s + "' is not irreducible");
      Place v;
      v.kind = Place::Kind::FfPrime;
      v.pi = f;
      v.deg = static_cast<int>(poly::deg(f));
      v.qv = int_pow(q, v.deg);
      v.label = poly::to_string(*F, f);
      return v;
    }
    case FieldKind::Custom: {
      for (const auto& v : S)
        if (v.label == s) return v;
      for (const auto& v : extra_places)
        if (v.label == s) return v;
      throw SchemaError("unknown place '" + s + "' in custom field context");
    }
  }
  throw SchemaError("bad field kind");
}

ZDom FieldContext::zdom() const {
  if (kind != FieldKind::Rationals)
    throw DomainError("integer coefficient domain requires the rational field");
  std::vector<Integer> inverted;
  for (const auto& v : S)
    if (v.kind == Place::Kind::RatPrime) inverted.push_back(v.p);
  return ZDom(inverted);
}

FqtDom FieldContext::fdom() const {
  if (kind != FieldKind::FunctionField)
    throw DomainError("polynomial coefficient domain requires a function field");
  std::vector<poly::Poly> inverted;
  for (const auto& v : S)
    if (v.kind == Place::Kind::FfPrime) inverted.push_back(v.pi);
  return FqtDom(F, inverted);
}

int hilbert_symbol(const Rat& a, const Rat& b, const Place& v) {
  if (a == 0 || b == 0)
    throw DomainError("hilbert symbol requires nonzero arguments");
  if (v.kind == Place::Kind::RealInf) return (a < 0 && b < 0) ? -1 : 1;
  if (v.kind != Place::Kind::RatPrime)
    throw DomainError("hilbert symbol: unsupported place for the rationals");
  const Integer& p = v.p;
  long al = valuation_rat(p, a);
  long be = valuation_rat(p, b);
  Rat u = a * rat_pow(p, -al);
  Rat w = b * rat_pow(p, -be);
  if (p == 2) {
    Integer u8 = odd_mod8(u), w8 = odd_mod8(w);
    long e = eps2(u8) * eps2(w8) + al * omega2(w8) + be * omega2(u8);
    return (e % 2) ? -1 : 1;
  }
  int s = 1;
  if ((al * be) % 2) s *= legendre(Rat(-1), p);
  if (be % 2) s *= legendre(u, p);
  if (al % 2) s *= legendre(w, p);
  return s;
}

int hilbert_symbol(const FqRat& a, const FqRat& b, const Place& v) {
  const GFPtr& Fp = a.F;
  const GF& F = *Fp;
  if (F.p == 2)
    throw DomainError("hilbert symbols need odd characteristic");
  if (poly::is_zero(a.num) || poly::is_zero(b.num))
    throw DomainError("hilbert symbol requires nonzero arguments");
  if (v.kind == Place::Kind::FfInf) {
    long al = poly::deg(a.den) - poly::deg(a.num);
    long be = poly::deg(b.den) - poly::deg(b.num);
    GF::El ua = F.mul(poly::lead(a.num), F.inv(poly::lead(a.den)));
    GF::El ub = F.mul(poly::lead(b.num), F.inv(poly::lead(b.den)));
    GF::El r = F.one();
    if ((al * be) % 2) r = F.neg(r);
    if (be % 2) r = F.mul(r, ua);
    if (al % 2) r = F.mul(r, ub);
    return F.is_square(r) ? 1 : -1;
  }
  if (v.kind != Place::Kind::FfPrime)
    throw DomainError("hilbert symbol: unsupported place for a function field");
  const poly::Poly& pi = v.pi;
  auto [ka_n, an] = strip_pi(F, a.num, pi);
  auto [ka_d, ad] = strip_pi(F, a.den, pi);
  auto [kb_n, bn] = strip_pi(F, b.num, pi);
  auto [kb_d, bd] = strip_pi(F, b.den, pi);
  long al = ka_n - ka_d;
  long be = kb_n - kb_d;
  poly::Poly ra =
      poly::mod(F, poly::mul(F, an, poly::invmod(F, ad, pi)), pi);
  poly::Poly rb =
      poly::mod(F, poly::mul(F, bn, poly::invmod(F, bd, pi)), pi);
  poly::Poly r = poly::one();
  if ((al * be) % 2) r = poly::constant(F, F.neg(F.one()));
  if (be % 2) r = poly::mod(F, poly::mul(F, r, ra), pi);
  if (al % 2) r = poly::mod(F, poly::mul(F, r, rb), pi);
  Integer expo = (v.qv - 1) / 2;
  poly::Poly s = poly::powmod(F, r, expo, pi);
  if (poly::eq(s, poly::one())) return 1;
  if (poly::eq(s, poly::constant(F, F.neg(F.one())))) return -1;
  throw DomainError("hilbert symbol: quadratic character did not evaluate");
}

namespace {

template <class El, class SymbolFn, class CandidatesFn>
std::vector<Place> ramified_common(const El& a, const El& b,
                                   CandidatesFn&& candidates,
                                   SymbolFn&& symbol) {
  std::vector<Place> cand = candidates();
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::vector<Place> out;
  for (const auto& v : cand)
    if (symbol(a, b, v) == -1) out.push_back(v);
  if (out.size() % 2 != 0)
    throw DomainError("ramified place count came out odd; bad symbol input");
  return out;
}

}  // namespace

std::vector<Place> ramified_places(const FieldContext& ctx, const Rat& a,
                                   const Rat& b) {
  if (ctx.kind != FieldKind::Rationals)
    throw DomainError("rational ramification data needs the rational field");
  auto candidates = [&] {
    std::vector<Place> cand;
    cand.push_back(ctx.infinite_place());
    auto add_prime = [&](const Integer& p) {
      Place v;
      v.kind = Place::Kind::RatPrime;
      v.p = p;
      v.qv = p;
      v.label = int_string(p);
      cand.push_back(v);
    };
    add_prime(2);
    for (const auto& [p, e] : factor_rational(a).powers) add_prime(p);
    for (const auto& [p, e] : factor_rational(b).powers) add_prime(p);
    return cand;
  };
  return ramified_common(a, b, candidates,
                         [](const Rat& x, const Rat& y, const Place& v) {
                           return hilbert_symbol(x, y, v);
                         });
}

std::vector<Place> ramified_places(const FieldContext& ctx, const FqRat& a,
                                   const FqRat& b) {
  if (!ctx.is_ff())
    throw DomainError("function field ramification data needs F_q(t)");
  const GF& F = *ctx.F;
  auto candidates = [&] {
    std::vector<Place> cand;
    cand.push_back(ctx.infinite_place());
    auto add_poly_factors = [&](const poly::Poly& f) {
      if (poly::deg(f) < 1) return;
      for (const auto& [g, e] : poly::factor(F, f)) {
        Place v;
        v.kind = Place::Kind::FfPrime;
        v.pi = g;
        v.deg = static_cast<int>(poly::deg(g));
        v.qv = int_pow(ctx.q, v.deg);
        v.label = poly::to_string(F, g);
        cand.push_back(v);
      }
    };
    add_poly_factors(a.num);
    add_poly_factors(a.den);
    add_poly_factors(b.num);
    add_poly_factors(b.den);
    return cand;
  };
  return ramified_common(a, b, candidates,
                         [](const FqRat& x, const FqRat& y, const Place& v) {
                           return hilbert_symbol(x, y, v);
                         });
}

GF::El first_nonsquare(const GFPtr& Fp) {
  const GF& F = *Fp;
  if (F.p == 2) throw DomainError("every element is a square in char 2");
  for (GF::El e = 1; e < F.q; ++e)
    if (!F.is_square(e)) return e;
  throw DomainError("no nonsquare found; field of size 1?");
}

}  // namespace massforge
