#pragma once

// The base global field and its bookkeeping: which field we work over (Q, a
// rational function field F_q(t), or an opaque custom field supplying its own
// constants), the finite set S of places at infinity-plus-inverted-primes, the
// coefficient ring A of S-integers, special zeta values, and Hilbert symbols.

#include <string>
#include <vector>

#include "massforge/domain.hpp"
#include "massforge/exactnum.hpp"
#include "massforge/gf.hpp"

namespace massforge {

enum class FieldKind { Rationals, FunctionField, Custom };

struct Place {
  enum class Kind { RealInf, FfInf, RatPrime, FfPrime, Opaque };
  Kind kind = Kind::RealInf;
  Integer p = 0;     // RatPrime: the prime
  poly::Poly pi;     // FfPrime: monic irreducible
  int deg = 1;       // FfPrime: deg(pi)
  Integer qv = 0;    // residue field size (0 for the real place)
  std::string label;

  bool is_real() const { return kind == Kind::RealInf; }
  bool finite_prime() const {
    return kind == Kind::RatPrime || kind == Kind::FfPrime;
  }
};

bool operator==(const Place& x, const Place& y);
bool operator<(const Place& x, const Place& y);

struct FieldContext {
  FieldKind kind = FieldKind::Rationals;
  Integer q = 0;  // function field: size of the constant field
  GFPtr F;        // function field: the constant field
  std::vector<Place> S;  // nonempty; S[0] is the infinite place
  Integer h = 1;  // class number of A
  std::vector<Rat> zeta_table;  // custom fields: |zeta(-1)|, |zeta(-2)|, ...
  std::vector<Place> extra_places;  // custom fields: declared places not in S

  static FieldContext rationals(const std::vector<std::string>& extra_S = {});
  static FieldContext function_field(const Integer& q,
                                     const std::vector<std::string>& extra_S = {});
  static FieldContext custom(Integer h, std::vector<Rat> zeta,
                             std::vector<Place> places_in_S,
                             std::vector<Place> other_places = {});

  bool is_ff() const { return kind == FieldKind::FunctionField; }

  // |zeta_K(-i)| for i >= 1.
  Rat zeta_abs(long i) const;

  Integer class_number() const { return h; }

  // |A^x| for the unnormalized mass; requires |S| = 1.
  Integer unit_count() const;

  long s_size() const { return static_cast<long>(S.size()); }
  const Place& infinite_place() const { return S.front(); }
  bool in_S(const Place& v) const;

  Place parse_place(const std::string& s) const;

  // Coefficient domains for the ring A of S-integers.
  ZDom zdom() const;
  FqtDom fdom() const;
};

// Hilbert symbols (+1 or -1) of the quaternion algebra (a,b) at a place.
int hilbert_symbol(const Rat& a, const Rat& b, const Place& v);
int hilbert_symbol(const FqRat& a, const FqRat& b, const Place& v);

// All places where (a,b) ramifies, infinite place first; always even in number.
std::vector<Place> ramified_places(const FieldContext& ctx, const Rat& a,
                                   const Rat& b);
std::vector<Place> ramified_places(const FieldContext& ctx, const FqRat& a,
                                   const FqRat& b);

// Smallest nonsquare in the constant field of a function field context
// (requires odd q); handy for building algebras with prescribed ramification.
GF::El first_nonsquare(const GFPtr& F);

}  // namespace massforge
