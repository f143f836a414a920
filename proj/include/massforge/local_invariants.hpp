#pragma once

// Per-place invariants of an order in a central division algebra: the local
// discriminant, the semisimple residue data, and the derived local mass
// factor, plus unit-index comparisons between local orders.

#include <optional>
#include <string>

#include "massforge/exactnum.hpp"
#include "massforge/finite_algebra.hpp"

namespace massforge {

struct LocalOrderProfile {
  std::string place;  // label of the underlying place
  Integer q = 0;      // residue field size of the place
  long d = 1;         // local index of the algebra there (1 = split)
  Integer disc_abs = 1;    // absolute norm of the local discriminant
  Integer kappa_size = 1;  // |R_v / rad(R_v)|
  Integer kappa_units = 1;
  Integer norm_index = 1;  // [A_v^x : Nr(R_v^x)] modulo squares
  std::optional<Integer> normalizer_index;  // [N(R_v) : K_v^x R_v^x]
  std::optional<int> eichler;               // -1, 0, +1 when defined
};

// (1 - q^-1)(1 - q^-2) ... (1 - q^-n).
Rat unit_density(const Integer& q, long n);

// The local mass factor of a profile, for an algebra of degree n:
// disc | * unit density / (kappa_units / kappa_size).  Equals 1 at a place
// where the order is split maximal.
Rat lambda_v(const LocalOrderProfile& P, long n);

// The local factor of a maximal order at a place of local index d (d | n):
// the product of (q^i - 1) over 1 <= i <= n-1 with i not divisible by d.
// In particular 1 when d = 1, and q - 1 for a ramified quaternion place.
Rat lambda_max(const Integer& q, long d, long n);

// Profile of a maximal local order where the algebra has local index d.
LocalOrderProfile maximal_profile(std::string place, const Integer& q, long d,
                                  long n);

// [Rmax_v^x : R_v^x] as a ratio of discriminants and residue unit densities.
Rat local_unit_index(const LocalOrderProfile& R, const LocalOrderProfile& Rmax);

// The quaternionic residue symbol of a non-split-maximal local order:
// +1, -1, 0 for a split pair, a quadratic field extension, the base field.
int eichler_from_kappa(const KappaInfo& info);

}  // namespace massforge
