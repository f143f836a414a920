#pragma once

// Exact numeric substrate: arbitrary-precision integers and canonical
// rationals (boost::multiprecision), plus the handful of number-theoretic
// helpers the rest of the engine needs: integer square roots, exact rational
// square roots, deterministic primality for word-sized inputs, and a
// factored-rational type used for ideal bookkeeping and report traces.
//
// Everything here is exact; there is no floating point anywhere in this
// project.

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace massforge {

// Expression templates are off so that `auto x = a * b` is always a value,
// never a lazy expression holding references into mutated storage.
using Integer =
    boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                  boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<
        boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

// Raised for mathematically invalid requests (not a perfect square, input
// outside the supported factorization range, enumeration cap exceeded, ...).
// The CLI maps this to exit code 3.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised for malformed input (unparsable numbers, bad JSON shapes, unknown
// place labels, ...). The CLI maps this to exit code 2.
struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

inline Integer rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Integer rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

std::string int_string(const Integer& n);

// Canonical serialization: "n" for integers, "n/d" otherwise, lowest terms,
// denominator positive, sign on the numerator.
std::string rat_string(const Rat& r);

// Accepts optional surrounding whitespace, an optional sign, and either "n"
// or "n/d" with d != 0. Result is canonicalized. Throws SchemaError.
Rat parse_rat(const std::string& s);
Integer parse_int(const std::string& s);

// Checked division; the raw operator on boost rationals is UB on zero.
Rat rat_div(const Rat& a, const Rat& b);

// floor(sqrt(n)) for n >= 0.
Integer isqrt_floor(const Integer& n);

std::optional<Integer> try_exact_sqrt_int(const Integer& n);
std::optional<Rat> try_exact_sqrt(const Rat& r);

// Throwing variant used where a square is a structural invariant.
Rat exact_sqrt(const Rat& r);

// Deterministic Miller-Rabin, valid for 0 <= n < 2^64. Larger inputs raise
// DomainError: this project never needs to certify big primes.
bool is_prime_u64(const Integer& n);

// A nonzero rational kept as sign * prod p^e (e may be negative), or zero.
// Map keys are primes in increasing order; exponents are never zero.
struct Factorization {
  int sign = 1;  // -1, 0, +1; when 0 the power map is empty
  std::map<Integer, long> powers;

  Rat value() const;
  bool is_one() const { return sign == 1 && powers.empty(); }
  void mul_pow(const Integer& p, long e);
  Factorization& operator*=(const Factorization& o);
  Factorization inverse() const;
  // "2^4 * 3^-1" style; "1", "-1", "0" for the degenerate cases.
  std::string to_string() const;
};

// Trial division up to 10^6, then a deterministic word-sized primality check
// on the cofactor. Inputs whose factorization cannot be certified that way
// (a composite cofactor with no factor below the trial bound, or a cofactor
// of 64 bits or more) raise DomainError with a message naming the cofactor.
Factorization factor_integer(const Integer& n);
Factorization factor_rational(const Rat& r);

// Largest e with p^e | n (n != 0), and the p-free part of a rational.
long valuation_int(const Integer& p, Integer n);
long valuation_rat(const Integer& p, const Rat& r);  // r != 0

}  // namespace massforge
