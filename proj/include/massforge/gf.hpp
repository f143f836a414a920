#pragma once

// Finite fields built as explicit towers: a prime field F_p, or an extension
// Base[x]/(m(x)) over an already-constructed field. Elements are encoded as
// integer indices 0..q-1 (mixed-radix digit vectors over the base field), so
// exhaustive scans over a field or an algebra are plain index loops.
//
// Residue fields of places come out of this naturally: F_p for a rational
// prime, and F_q[t]/(pi) for a place pi of F_q(t), built as an extension of
// the coefficient field with modulus pi itself.
//
// Polynomials over a finite field are coefficient vectors (ascending degree)
// with all operations taking the field as an explicit argument.

#include <cstdint>
#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "massforge/exactnum.hpp"

namespace massforge {

struct GF;
using GFPtr = std::shared_ptr<const GF>;

struct GF {
  GFPtr base;                       // null for a prime field
  std::int64_t p = 0;               // characteristic
  std::vector<std::int64_t> mod;    // monic modulus over base (ascending, size deg+1); empty for prime
  std::int64_t q = 0;               // field size
  int deg_abs = 1;                  // degree over F_p

  static GFPtr prime(std::int64_t p);
  // Extension by a monic irreducible modulus given over `base` (coefficients
  // are base-field element indices). Irreducibility is the caller's contract;
  // make() below constructs one deterministically.
  static GFPtr extension(const GFPtr& base, std::vector<std::int64_t> modulus);
  // F_{p^deg} with the lexicographically first monic irreducible modulus.
  static GFPtr make(std::int64_t p, int deg);

  using El = std::int64_t;

  El zero() const { return 0; }
  El one() const { return 1; }  // index 1 encodes the digit vector (1,0,...)
  El add(El a, El b) const;
  El sub(El a, El b) const;
  El neg(El a) const;
  El mul(El a, El b) const;
  El inv(El a) const;  // DomainError on zero
  El pow(El a, Integer e) const;
  El from_int(const Integer& n) const;  // n mod p embedded through the prime subfield
  bool is_square(El a) const;           // every element is a square in char 2

  std::vector<El> digits(El a) const;          // over base (prime field: single digit)
  El from_digits(const std::vector<El>& d) const;
};

// --- polynomials over a finite field -------------------------------------

// Coefficients ascending; normalized form has no trailing zeros (zero poly is
// the empty vector).
using Poly = std::vector<std::int64_t>;

namespace poly {

using ::massforge::Poly;

Poly trim(Poly f);
int deg(const Poly& f);  // -1 for zero
bool is_zero(const Poly& f);
Poly one();
Poly x();
Poly constant(const GF& F, GF::El c);
Poly add(const GF& F, const Poly& a, const Poly& b);
Poly sub(const GF& F, const Poly& a, const Poly& b);
Poly neg(const GF& F, const Poly& a);
Poly mul(const GF& F, const Poly& a, const Poly& b);
Poly scale(const GF& F, GF::El c, const Poly& a);
// (quotient, remainder) with deg r < deg b; b != 0.
std::pair<Poly, Poly> divmod(const GF& F, const Poly& a, const Poly& b);
Poly mod(const GF& F, const Poly& a, const Poly& b);
Poly monic(const GF& F, const Poly& a);  // zero stays zero
GF::El lead(const Poly& a);
Poly gcd(const GF& F, Poly a, Poly b);  // monic (or zero)
// (g, u, v) with u*a + v*b = g, g the monic gcd.
std::tuple<Poly, Poly, Poly> egcd(const GF& F, const Poly& a, const Poly& b);
// Inverse of a modulo m (gcd must be 1).
Poly invmod(const GF& F, const Poly& a, const Poly& m);
Poly powmod(const GF& F, Poly a, Integer e, const Poly& m);
GF::El eval(const GF& F, const Poly& a, GF::El x0);
bool eq(const Poly& a, const Poly& b);
// Total order (by degree, then coefficient indices high-to-low); used for
// canonical maps keyed by monic polynomials.
bool less(const Poly& a, const Poly& b);
std::int64_t enc(const GF& F, const Poly& a);       // sum c_i q^i (for bounded-degree enumeration)
Poly dec(const GF& F, std::int64_t code);

bool is_irreducible(const GF& F, const Poly& f);  // deterministic (Rabin's test)
// All monic irreducibles of exact degree d, ascending in enc order.
std::vector<Poly> monic_irreducibles(const GF& F, int d);
// Monic factorization by trial division against enumerated irreducibles of
// ascending degree; input must be nonzero. Returns map in poly::less order.
std::vector<std::pair<Poly, long>> factor(const GF& F, Poly f);

std::string to_string(const GF& F, const Poly& f, const std::string& var = "t");
// Parses "t^2+2t+1", "2", "t", with coefficients read mod p into the prime
// subfield (extension coefficient literals are not needed by the inputs this
// project accepts). Throws SchemaError.
Poly parse(const GF& F, const std::string& s);

}  // namespace poly

}  // namespace massforge
