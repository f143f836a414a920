#pragma once

// Orders (unital full-rank closed lattices) in a quaternion algebra over the
// fraction field of a coefficient domain: verification, trace forms and
// discriminants, residue algebras at finite places, local profiles,
// step-by-step enlargement to maximal orders, and level structures.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "massforge/finite_algebra.hpp"
#include "massforge/gf.hpp"
#include "massforge/lattice.hpp"
#include "massforge/local_invariants.hpp"
#include "massforge/quaternion.hpp"

namespace massforge {

// ---------------------------------------------------------------------------
// A finite place of the coefficient domain in concrete terms: a uniformizer
// generator, the residue field, and reduction/lift maps for coordinates.

template <class Dom>
struct LocalSpot {
  typename Dom::Fel gen;
  Integer qv = 0;
  GFPtr kappa;
  std::function<GF::El(const typename Dom::Fel&)> down;
  std::function<typename Dom::Fel(GF::El)> up;
  std::string label;
};

inline LocalSpot<ZDom> make_spot(const ZDom& D, const Integer& p) {
  if (p < 2 || !is_prime_u64(p))
    throw DomainError("spot generator " + int_string(p) + " is not prime");
  if (D.is_unit(Rat(p)))
    throw DomainError("prime " + int_string(p) + " is inverted in the domain");
  if (p > (Integer(1) << 30))
    throw DomainError("residue prime too large: " + int_string(p));
  LocalSpot<ZDom> s;
  s.gen = Rat(p);
  s.qv = p;
  s.kappa = GF::prime(static_cast<std::int64_t>(p));
  Integer pc = p;
  s.down = [pc](const Rat& x) -> GF::El {
    Integer n = rat_num(x) % pc;
    if (n < 0) n += pc;
    Integer d = rat_den(x) % pc;
    if (d < 0) d += pc;
    if (d == 0) throw DomainError("coordinate not integral at the spot");
    Integer dinv = boost::multiprecision::powm(d, pc - 2, pc);
    return static_cast<GF::El>((n * dinv) % pc);
  };
  s.up = [](GF::El e) { return Rat(Integer(e)); };
  s.label = int_string(p);
  return s;
}

inline LocalSpot<FqtDom> make_spot(const FqtDom& D, const poly::Poly& pi_in) {
  const GF& F = *D.F;
  poly::Poly pi = poly::monic(F, pi_in);
  long d = poly::deg(pi);
  if (d < 1) throw DomainError("spot generator must be non-constant");
  if (!poly::is_irreducible(F, pi))
    throw DomainError("spot generator " + poly::to_string(F, pi) +
                      " is not irreducible");
  if (D.is_unit(FqRat(D.F, pi)))
    throw DomainError("place " + poly::to_string(F, pi) +
                      " is inverted in the domain");
  LocalSpot<FqtDom> s;
  s.gen = FqRat(D.F, pi);
  Integer qv = 1;
  for (long i = 0; i < d; ++i) qv *= F.q;
  s.qv = qv;
  GFPtr base = D.F;
  if (d == 1) {
    s.kappa = base;
    s.down = [base, pi](const FqRat& x) -> GF::El {
      const GF& FF = *base;
      poly::Poly r = poly::mod(
          FF, poly::mul(FF, x.num, poly::invmod(FF, x.den, pi)), pi);
      return poly::is_zero(r) ? FF.zero() : r[0];
    };
    s.up = [base](GF::El e) {
      return FqRat(base, poly::constant(*base, e));
    };
  } else {
    GFPtr kap = GF::extension(base, pi);
    s.kappa = kap;
    s.down = [base, kap, pi, d](const FqRat& x) -> GF::El {
      const GF& FF = *base;
      poly::Poly r = poly::mod(
          FF, poly::mul(FF, x.num, poly::invmod(FF, x.den, pi)), pi);
      std::vector<GF::El> digits(static_cast<std::size_t>(d), 0);
      for (std::size_t i = 0; i < r.size(); ++i) digits[i] = r[i];
      return kap->from_digits(digits);
    };
    s.up = [base, kap](GF::El e) {
      auto digits = kap->digits(e);
      poly::Poly r(digits.begin(), digits.end());
      return FqRat(base, poly::trim(std::move(r)));
    };
  }
  s.label = poly::to_string(F, pi);
  return s;
}

inline long spot_val(const ZDom&, const LocalSpot<ZDom>& v, const Rat& x) {
  if (x == 0) throw DomainError("valuation of zero");
  return valuation_rat(rat_num(v.gen), x);
}

inline long spot_val(const FqtDom& D, const LocalSpot<FqtDom>& v,
                     const FqRat& x) {
  if (poly::is_zero(x.num)) throw DomainError("valuation of zero");
  const GF& F = *D.F;
  const poly::Poly pi = v.gen.num;
  auto strip = [&](poly::Poly f) {
    long k = 0;
    while (true) {
      auto [q, r] = poly::divmod(F, f, pi);
      if (!poly::is_zero(r)) break;
      f = q;
      ++k;
    }
    return k;
  };
  return strip(x.num) - strip(x.den);
}

// Power of the spot generator as a domain element.
template <class Dom>
typename Dom::Fel spot_pow(const Dom& D, const LocalSpot<Dom>& v, long e) {
  typename Dom::Fel out = D.fone();
  for (long i = 0; i < (e < 0 ? -e : e); ++i) out = out * v.gen;
  if (e < 0) out = D.fone() / out;
  return out;
}

template <class Dom>
VecT<Dom> vec_scale_row(const Dom& D, const typename Dom::Fel& c,
                        const VecT<Dom>& row) {
  VecT<Dom> out(row.size(), D.fzero());
  for (std::size_t i = 0; i < row.size(); ++i) out[i] = c * row[i];
  return out;
}

// Support of a discriminant generator: the primes of the domain dividing it.
inline std::vector<Integer> disc_support(const ZDom& D, const Rat& g) {
  std::vector<Integer> out;
  Rat c = D.canon_gen(g);
  for (const auto& [p, e] : factor_rational(c).powers)
    if (e != 0) out.push_back(p);
  return out;
}

inline std::vector<poly::Poly> disc_support(const FqtDom& D, const FqRat& g) {
  std::vector<poly::Poly> out;
  FqRat c = D.canon_gen(g);
  if (poly::deg(c.num) < 1) return out;
  for (const auto& [f, e] : poly::factor(*D.F, c.num))
    if (e != 0) out.push_back(f);
  return out;
}

// Exact square root of a canonical ideal generator.
inline Rat ideal_sqrt(const ZDom& D, const Rat& g) {
  Rat c = D.canon_gen(g);
  if (rat_den(c) != 1)
    throw DomainError("ideal square root: generator not integral");
  auto r = try_exact_sqrt_int(rat_num(c));
  if (!r) throw DomainError("ideal square root: generator is not a square");
  return Rat(*r);
}

inline FqRat ideal_sqrt(const FqtDom& D, const FqRat& g) {
  FqRat c = D.canon_gen(g);
  if (poly::deg(c.den) != 0)
    throw DomainError("ideal square root: generator not integral");
  const GF& F = *D.F;
  poly::Poly root = poly::one();
  if (poly::deg(c.num) > 0) {
    for (const auto& [f, e] : poly::factor(F, c.num)) {
      if (e % 2 != 0)
        throw DomainError("ideal square root: generator is not a square");
      for (long i = 0; i < e / 2; ++i) root = poly::mul(F, root, f);
    }
  }
  return FqRat(D.F, root);
}

// ---------------------------------------------------------------------------
// Basic order predicates and invariants.  Bases are 4x4 coordinate matrices,
// rows are elements in the 1,i,j,k coordinates.

template <class Dom>
bool verify_order(const QAlg<Dom>& A, const MatT<Dom>& B,
                  std::string* why = nullptr) {
  const Dom& D = A.D;
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (B.size() != 4) return fail("basis must have 4 rows");
  for (const auto& row : B)
    if (row.size() != 4) return fail("basis rows must have 4 entries");
  MatT<Dom> Binv;
  try {
    Binv = mat_inv(D, B);
  } catch (const DomainError&) {
    return fail("basis is singular");
  }
  if (!in_span(D, Binv, A.one())) return fail("unity is not in the lattice");
  for (int r = 0; r < 4; ++r)
    for (int s = 0; s < 4; ++s) {
      auto prod = A.mul(B[r], B[s]);
      if (!in_span(D, Binv, prod))
        return fail("lattice is not closed under multiplication (rows " +
                    std::to_string(r) + "," + std::to_string(s) + ")");
    }
  if (why) why->clear();
  return true;
}

template <class Dom>
MatT<Dom> trace_gram(const QAlg<Dom>& A, const MatT<Dom>& B) {
  MatT<Dom> G = make_mat(A.D, 4, 4);
  for (int r = 0; r < 4; ++r)
    for (int s = r; s < 4; ++s) {
      auto t = A.trd(A.mul(B[r], B[s]));
      G[r][s] = t;
      G[s][r] = t;
    }
  return G;
}

template <class Dom>
typename Dom::Fel disc_T(const QAlg<Dom>& A, const MatT<Dom>& B) {
  return A.D.canon_gen(det(A.D, trace_gram(A, B)));
}

template <class Dom>
typename Dom::Fel reduced_disc(const QAlg<Dom>& A, const MatT<Dom>& B) {
  return ideal_sqrt(A.D, disc_T(A, B));
}

// Index ideal generator [X1 : X2] (a unit when the lattices agree; integral
// when X2 is contained in X1).
template <class Dom>
typename Dom::Fel chi(const Dom& D, const MatT<Dom>& X1, const MatT<Dom>& X2) {
  return D.canon_gen(det(D, mat_mul(D, X2, mat_inv(D, X1))));
}

// Lattice spanned by all pairwise products.
template <class Dom>
MatT<Dom> lattice_mul(const QAlg<Dom>& A, const MatT<Dom>& L1,
                      const MatT<Dom>& L2) {
  MatT<Dom> rows;
  for (const auto& x : L1)
    for (const auto& y : L2) rows.push_back(A.mul(x, y));
  return lattice_canon(A.D, rows);
}

// {x : x * M is contained in N}.
template <class Dom>
MatT<Dom> left_transporter(const QAlg<Dom>& A, const MatT<Dom>& N,
                           const MatT<Dom>& M) {
  const Dom& D = A.D;
  auto Ninv = mat_inv(D, N);
  MatT<Dom> stacked = make_mat(D, 4, 0);
  for (const auto& g : M) {
    auto C = mat_mul(D, A.right_mul(g), Ninv);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) stacked[r].push_back(C[r][c]);
  }
  return preimage_lattice(D, stacked);
}

// {x : M * x is contained in N}.
template <class Dom>
MatT<Dom> right_transporter(const QAlg<Dom>& A, const MatT<Dom>& N,
                            const MatT<Dom>& M) {
  const Dom& D = A.D;
  auto Ninv = mat_inv(D, N);
  MatT<Dom> stacked = make_mat(D, 4, 0);
  for (const auto& g : M) {
    auto C = mat_mul(D, A.left_mul(g), Ninv);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) stacked[r].push_back(C[r][c]);
  }
  return preimage_lattice(D, stacked);
}

template <class Dom>
MatT<Dom> left_order(const QAlg<Dom>& A, const MatT<Dom>& I) {
  return left_transporter(A, I, I);
}

template <class Dom>
MatT<Dom> right_order(const QAlg<Dom>& A, const MatT<Dom>& I) {
  return right_transporter(A, I, I);
}

// Smallest multiplicatively closed lattice containing L (bounded rounds).
// Sets *ok to false if the closure did not stabilize.
template <class Dom>
MatT<Dom> ring_closure(const QAlg<Dom>& A, MatT<Dom> L, int max_rounds,
                       bool* ok) {
  const Dom& D = A.D;
  *ok = false;
  L = lattice_canon(D, L);
  for (int round = 0; round < max_rounds; ++round) {
    MatT<Dom> rows = L;
    for (const auto& x : L)
      for (const auto& y : L) rows.push_back(A.mul(x, y));
    auto next = lattice_canon(D, rows);
    if (lattice_eq(D, next, L)) {
      *ok = true;
      return L;
    }
    L = std::move(next);
  }
  return L;
}

// ---------------------------------------------------------------------------
// Residue algebra at a spot: structure constants of R/vR over kappa(v).

template <class Dom>
FiniteAlgebra residue_algebra(const QAlg<Dom>& A, const MatT<Dom>& B,
                              const LocalSpot<Dom>& v) {
  const Dom& D = A.D;
  auto Binv = mat_inv(D, B);
  std::vector<std::vector<std::vector<GF::El>>> sc(
      4, std::vector<std::vector<GF::El>>(4, std::vector<GF::El>(4, 0)));
  for (int r = 0; r < 4; ++r)
    for (int s = 0; s < 4; ++s) {
      auto coords = vec_mat(D, A.mul(B[r], B[s]), Binv);
      for (int k = 0; k < 4; ++k) sc[r][s][k] = v.down(coords[k]);
    }
  auto unity_coords = vec_mat(D, A.one(), Binv);
  std::vector<GF::El> unity(4, 0);
  for (int k = 0; k < 4; ++k) unity[k] = v.down(unity_coords[k]);
  return make_algebra(v.kappa, 4, std::move(sc), std::move(unity), false);
}

// ---------------------------------------------------------------------------
// Local norm image: the index in A_v^x / squares of the subgroup generated by
// reduced norms of local units.  Units are detected through the reduced norm
// (conjugation keeps elements inside a quaternion order).

template <class Dom>
Integer norm_index_odd(const QAlg<Dom>& A, const MatT<Dom>& B,
                       const LocalSpot<Dom>& v) {
  const GF& kap = *v.kappa;
  if (kap.p == 2) throw DomainError("odd-place norm scan got residue char 2");
  Integer bound = v.qv * v.qv * v.qv * v.qv;
  if (bound > (Integer(1) << 22))
    throw DomainError("norm scan too large at place " + v.label +
                      "; supply local data instead");
  std::uint64_t total = static_cast<std::uint64_t>(bound);
  std::uint64_t q = static_cast<std::uint64_t>(kap.q);
  bool saw_nonsquare = false;
  bool saw_unit = false;
  for (std::uint64_t n = 1; n < total && !saw_nonsquare; ++n) {
    // Coordinates of a residue class, lifted through the spot.
    std::uint64_t m = n;
    VecT<Dom> x(4, A.D.fzero());
    for (int i = 0; i < 4; ++i) {
      GF::El digit = static_cast<GF::El>(m % q);
      m /= q;
      if (digit != 0) {
        auto lift = v.up(digit);
        for (int c = 0; c < 4; ++c) x[c] = x[c] + lift * B[i][c];
      }
    }
    auto nr = A.nrd(x);
    GF::El r = A.D.is_zero(nr) ? kap.zero() : v.down(nr);
    if (r == kap.zero()) continue;  // not a local unit
    saw_unit = true;
    if (!kap.is_square(r)) saw_nonsquare = true;
  }
  if (!saw_unit) throw DomainError("no local units found at " + v.label);
  return saw_nonsquare ? Integer(1) : Integer(2);
}

inline Integer norm_index_even(const QAlg<ZDom>& A, const MatT<ZDom>& B,
                               const LocalSpot<ZDom>&) {
  // Residue characteristic 2 over the integers: scan units of R/8R and track
  // their norms inside the odd classes mod 8.
  bool seen[8] = {false, false, false, false, false, false, false, false};
  for (std::uint64_t n = 0; n < 4096; ++n) {
    std::uint64_t m = n;
    VecT<ZDom> x(4, Rat(0));
    for (int i = 0; i < 4; ++i) {
      long digit = static_cast<long>(m % 8);
      m /= 8;
      if (digit)
        for (int c = 0; c < 4; ++c) x[c] = x[c] + Rat(digit) * B[i][c];
    }
    Rat nr = A.nrd(x);
    if (rat_den(nr) != 1) throw DomainError("norm scan: non-integral norm");
    Integer r = rat_num(nr) % 8;
    if (r < 0) r += 8;
    if (r % 2 == 1) seen[static_cast<std::size_t>(r)] = true;
  }
  int count = 0;
  for (int r : {1, 3, 5, 7})
    if (seen[r]) ++count;
  // The image is a subgroup of the four odd classes mod 8.
  if (count == 0 || 4 % count != 0)
    throw DomainError("norm image mod 8 is not a subgroup");
  return Integer(4 / count);
}

inline Integer norm_index_at(const QAlg<ZDom>& A, const MatT<ZDom>& B,
                             const LocalSpot<ZDom>& v) {
  if (v.qv == 2) return norm_index_even(A, B, v);
  return norm_index_odd(A, B, v);
}

inline Integer norm_index_at(const QAlg<FqtDom>& A, const MatT<FqtDom>& B,
                             const LocalSpot<FqtDom>& v) {
  return norm_index_odd(A, B, v);
}

// ---------------------------------------------------------------------------
// Local profile of an order at a spot.

template <class Dom>
LocalOrderProfile profile_at(const QAlg<Dom>& A, const MatT<Dom>& B,
                             const LocalSpot<Dom>& v, long d_v,
                             bool eichler_hint = false) {
  const Dom& D = A.D;
  LocalOrderProfile P;
  P.place = v.label;
  P.q = v.qv;
  P.d = d_v;
  long dval = spot_val(D, v, disc_T(A, B)) / 2;
  Integer da = 1;
  for (long i = 0; i < dval; ++i) da *= v.qv;
  P.disc_abs = da;
  auto res = residue_algebra(A, B, v);
  auto info = kappa_invariants(res);
  // kappa is an algebra over the residue field of the place.
  P.kappa_size = info.kappa_size;
  P.kappa_units = info.kappa_units;
  P.norm_index = norm_index_at(A, B, v);
  switch (info.cls) {
    case KappaClass::Matrix:
      if (dval == 0) P.normalizer_index = Integer(1);
      break;
    case KappaClass::FieldExt:
      if (dval == 1 && d_v == 2) P.normalizer_index = Integer(2);
      P.eichler = -1;
      break;
    case KappaClass::SplitPair:
      if (eichler_hint) P.normalizer_index = Integer(2);
      P.eichler = 1;
      break;
    case KappaClass::BaseField:
      P.eichler = 0;
      break;
    case KappaClass::Other:
      break;
  }
  return P;
}

// ---------------------------------------------------------------------------
// Enlargement at one spot until the local discriminant exponent reaches the
// target (0 at split places, 1 at ramified places for quaternion algebras).

namespace detail {

// One idealizer step: pass to the multiplier order of v*R + rad(R/vR).
template <class Dom>
MatT<Dom> idealizer_step(const QAlg<Dom>& A, const MatT<Dom>& B,
                         const LocalSpot<Dom>& v) {
  const Dom& D = A.D;
  auto res = residue_algebra(A, B, v);
  auto rad = jacobson_radical(res);
  MatT<Dom> rows;
  for (const auto& row : B) rows.push_back(vec_scale_row(D, v.gen, row));
  for (const auto& rv : rad) {
    VecT<Dom> amb(4, D.fzero());
    for (int i = 0; i < 4; ++i) {
      if (rv[i] == 0) continue;
      auto lift = v.up(rv[i]);
      for (int c = 0; c < 4; ++c) amb[c] = amb[c] + lift * B[i][c];
    }
    rows.push_back(std::move(amb));
  }
  auto I = lattice_canon(D, rows);
  auto OL = left_order(A, I);
  if (!D.is_unit(chi(D, OL, B))) return OL;
  auto OR_ = right_order(A, I);
  if (!D.is_unit(chi(D, OR_, B))) return OR_;
  return B;  // stalled
}

// Fallback for stalls: look for a strictly larger order generated by R and a
// single element with one power of the uniformizer in its denominator.
template <class Dom>
MatT<Dom> line_search_step(const QAlg<Dom>& A, const MatT<Dom>& B,
                           const LocalSpot<Dom>& v) {
  const Dom& D = A.D;
  const GF& kap = *v.kappa;
  std::uint64_t q = static_cast<std::uint64_t>(kap.q);
  Integer bound = v.qv * v.qv * v.qv * v.qv;
  if (bound > (Integer(1) << 22))
    throw DomainError("enlargement search too large at " + v.label);
  std::uint64_t total = static_cast<std::uint64_t>(bound);
  auto inv_gen = D.fone() / v.gen;
  long base_val = spot_val(D, v, disc_T(A, B));
  for (std::uint64_t n = 1; n < total; ++n) {
    std::uint64_t m = n;
    std::vector<GF::El> w(4, 0);
    for (int i = 0; i < 4; ++i) {
      w[i] = static_cast<GF::El>(m % q);
      m /= q;
    }
    // Scalar-normalize candidate lines.
    int lead = 0;
    while (lead < 4 && w[lead] == 0) ++lead;
    if (w[lead] != kap.one()) continue;
    VecT<Dom> x(4, D.fzero());
    for (int i = 0; i < 4; ++i) {
      if (w[i] == 0) continue;
      auto lift = v.up(w[i]);
      for (int c = 0; c < 4; ++c) x[c] = x[c] + lift * B[i][c];
    }
    for (int c = 0; c < 4; ++c) x[c] = x[c] * inv_gen;
    MatT<Dom> rows = B;
    rows.push_back(x);
    bool ok = false;
    auto L = ring_closure(A, rows, 8, &ok);
    if (!ok) continue;
    std::string why;
    if (!verify_order(A, L, &why)) continue;
    long val = spot_val(D, v, disc_T(A, L));
    if (val < base_val) return L;
  }
  return B;
}

}  // namespace detail

template <class Dom>
MatT<Dom> p_maximalize(const QAlg<Dom>& A, MatT<Dom> B, const LocalSpot<Dom>& v,
                       long target_disc_val) {
  const Dom& D = A.D;
  std::string why;
  if (!verify_order(A, B, &why))
    throw DomainError("enlargement needs an order: " + why);
  long val = spot_val(D, v, disc_T(A, B)) / 2;
  long guard = 2 * val + 6;
  while (val > target_disc_val && guard-- > 0) {
    auto next = detail::idealizer_step(A, B, v);
    if (D.is_unit(chi(D, next, B))) next = detail::line_search_step(A, B, v);
    if (D.is_unit(chi(D, next, B)))
      throw DomainError("could not enlarge the order at " + v.label);
    B = std::move(next);
    val = spot_val(D, v, disc_T(A, B)) / 2;
  }
  if (val > target_disc_val)
    throw DomainError("enlargement did not converge at " + v.label);
  return B;
}

// The lattice spanned by 1, i, j, k; an order whenever a and b are integral.
template <class Dom>
MatT<Dom> standard_order(const QAlg<Dom>& A) {
  if (!A.D.is_integral(A.a) || !A.D.is_integral(A.b))
    throw DomainError("standard order needs integral structure constants");
  return identity_mat(A.D, 4);
}

// Enlarge an order until each listed spot reaches its target discriminant
// exponent (0 where the algebra splits, 1 where it ramifies).
template <class Dom>
MatT<Dom> maximalize(const QAlg<Dom>& A, MatT<Dom> B,
                     const std::vector<std::pair<LocalSpot<Dom>, long>>& targets) {
  for (const auto& [v, tgt] : targets) B = p_maximalize(A, B, v, tgt);
  return B;
}

// ---------------------------------------------------------------------------
// Level structure at a split spot: the sublattice of a maximal order whose
// corner entry vanishes to order e, cut out by a lifted idempotent.

namespace detail {

template <class Dom>
VecT<Dom> reduce_coords(const Dom& D, const VecT<Dom>& x,
                        const typename Dom::Fel& modulus) {
  VecT<Dom> out(4, D.fzero());
  for (int i = 0; i < 4; ++i) out[i] = D.divmod(x[i], modulus).second;
  return out;
}

// A rank-one idempotent of O/vO, Hensel-lifted to precision gen^prec, in
// O-basis coordinates.
template <class Dom>
VecT<Dom> lift_idempotent(const QAlg<Dom>& A, const MatT<Dom>& B,
                          const LocalSpot<Dom>& v, long prec) {
  const Dom& D = A.D;
  auto res = residue_algebra(A, B, v);
  if (res.size() > (Integer(1) << 22))
    throw DomainError("residue algebra too large for idempotent search at " +
                      v.label);
  std::uint64_t total = static_cast<std::uint64_t>(res.size());
  std::vector<GF::El> seed;
  for (std::uint64_t n = 1; n < total; ++n) {
    auto x = element_at(res, n);
    auto xx = alg_mul(res, x, x);
    if (xx != x) continue;
    bool unit = (x == res.unity);
    if (!unit) {
      seed = x;
      break;
    }
  }
  if (seed.empty())
    throw DomainError("no nontrivial idempotent in the residue algebra at " +
                      v.label);
  // Coordinates (in basis B) of the lifted idempotent.
  VecT<Dom> e(4, D.fzero());
  for (int i = 0; i < 4; ++i) e[i] = v.up(seed[i]);
  auto Binv = mat_inv(D, B);
  auto to_amb = [&](const VecT<Dom>& coords) {
    return vec_mat(D, coords, B);
  };
  auto to_coords = [&](const VecT<Dom>& amb) { return vec_mat(D, amb, Binv); };
  long have = 1;
  while (have < prec) {
    have *= 2;
    auto modulus = spot_pow(D, v, have);
    // e <- 3e^2 - 2e^3 in the algebra, reduced mod gen^have.
    auto ea = to_amb(e);
    auto e2 = A.mul(ea, ea);
    auto e3 = A.mul(e2, ea);
    VecT<Dom> upd(4, D.fzero());
    auto three = D.from_int(3), two = D.from_int(2);
    for (int c = 0; c < 4; ++c) upd[c] = three * e2[c] - two * e3[c];
    e = reduce_coords(D, to_coords(upd), modulus);
  }
  // Sanity: e^2 = e to the requested precision.
  auto ea = to_amb(e);
  auto diff = to_coords(A.mul(ea, ea));
  for (int c = 0; c < 4; ++c) {
    auto r = diff[c] - e[c];
    if (!D.is_zero(r) && spot_val(D, v, r) < prec)
      throw DomainError("idempotent lift failed at " + v.label);
  }
  return e;
}

}  // namespace detail

template <class Dom>
MatT<Dom> level_structure(const QAlg<Dom>& A, const MatT<Dom>& B,
                          const LocalSpot<Dom>& v, long e) {
  const Dom& D = A.D;
  if (e < 1) throw DomainError("level exponent must be positive");
  auto idem = detail::lift_idempotent(A, B, v, e + 1);
  auto Binv = mat_inv(D, B);
  auto ea = vec_mat(D, idem, B);
  auto one_minus = A.add(A.one(), A.scale(D.fzero() - D.fone(), ea));
  // Phi: coordinates of x -> e * x * (1 - e) in the order basis.
  MatT<Dom> Phi = make_mat(D, 4, 4);
  for (int i = 0; i < 4; ++i) {
    auto img = A.mul(A.mul(ea, B[i]), one_minus);
    Phi[i] = vec_mat(D, img, Binv);
  }
  auto modulus = spot_pow(D, v, e);
  auto C = kernel_mod(D, Phi, modulus);
  auto out = lattice_canon(D, mat_mul(D, C, B));
  std::string why;
  if (!verify_order(A, out, &why))
    throw DomainError("level structure is not an order: " + why);
  return out;
}

}  // namespace massforge
