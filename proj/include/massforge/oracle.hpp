#pragma once

// Definition-level brute force over Z: unit groups of definite quaternion
// orders, right ideal classes by prime-neighbor search, conjugacy types and
// normalizers.  Everything here works from lattices and the reduced norm
// form alone, so the closed formulas elsewhere can be tested against it.

#include <array>
#include <optional>
#include <vector>

#include "massforge/domain.hpp"
#include "massforge/exactnum.hpp"
#include "massforge/lattice.hpp"
#include "massforge/quaternion.hpp"

namespace massforge {
namespace oracle {

using ZQ = QAlg<ZDom>;
using ZMat = MatT<ZDom>;
using ZVec = VecT<ZDom>;

// Exact Gram matrix of the reduced norm form on the rows of B:
// G[l][m] = scalar part of B_l * conj(B_m); norm(sum x_l B_l) = x G x^T.
ZMat norm_gram(const ZQ& A, const ZMat& B);

// All integer coefficient rows x with x G x^T = target, in lexicographic
// order of (x3, x2, x1, x0), by exact enumeration on the square-completed
// form.  Throws DomainError when G is not positive definite.  The parallel
// variant fans the outermost coordinate out across threads and returns the
// identical list.
std::vector<std::array<Integer, 4>> vectors_of_norm(const ZMat& G,
                                                    const Rat& target);
std::vector<std::array<Integer, 4>> vectors_of_norm_serial(const ZMat& G,
                                                           const Rat& target);

// Whether some x with x G x^T = target exists (early-exit search).
bool has_vector_of_norm(const ZMat& G, const Rat& target);

// Number of elements of the order with reduced norm 1; this is the whole
// unit group when the form is definite.
Integer enumerate_units(const ZQ& A, const ZMat& B);

// [B^x : Z^x] = |units| / 2.
Integer unit_index(const ZQ& A, const ZMat& B);

struct IdealClassRecord {
  ZMat ideal;             // canonical basis of the right ideal
  ZMat left_order_basis;  // canonical basis of its left order
  Integer unit_index{1};  // of the left order
  Rat norm{1};            // reduced ideal norm relative to the base order
};

struct ClassSetOptions {
  std::optional<Integer> neighbor_prime;  // default: smallest not dividing disc
  long max_classes = 4096;
  long max_expansions = 100000;
};

// Complete set of right ideal classes of the order, grown by prime-neighbor
// search from the order itself.  Termination is certified by the mass
// target: the walk keeps expanding until sum 1/unit_index reaches it, and a
// shortfall after exhaustion (or any overshoot) is a hard error.
std::vector<IdealClassRecord> right_ideal_classes(
    const ZQ& A, const ZMat& R, const Rat& mass_target,
    const ClassSetOptions& opts = {});

// True iff J = gI for some g: looks for an element of the colon lattice
// {x : xI <= J} of reduced norm N(J)/N(I).
bool ideal_isomorphic(const ZQ& A, const ZMat& I, const ZMat& J);

// Sum of 1/unit_index over the records.
Rat mass_of_classes(const std::vector<IdealClassRecord>& classes);

// right_ideal_classes followed by mass_of_classes; equals mass_target or
// throws.
Rat mass_by_enumeration(const ZQ& A, const ZMat& R, const Rat& mass_target,
                        const ClassSetOptions& opts = {});

struct TypeRecord {
  ZMat order_basis;
  Integer classes_in_type{1};
  Integer normalizer_order{1};  // [N(R_i) : Q^x]
};

struct TypeSummary {
  std::vector<TypeRecord> types;
  Rat type_mass{0};  // sum of 1 / normalizer_order
};

// Groups the left orders of the class records under conjugacy and counts
// each normalizer modulo Q^x.
TypeSummary types_by_enumeration(const ZQ& A,
                                 const std::vector<IdealClassRecord>& classes);

// True iff g O1 g^-1 = O2 for some g in the algebra.
bool orders_conjugate(const ZQ& A, const ZMat& O1, const ZMat& O2);

// [N(O) : Q^x], by searching primitive lattice elements whose reduced norm
// is supported on the discriminant (exponents <= 2) and keeping those that
// conjugate O to itself; the found set must close under multiplication.
Integer normalizer_order(const ZQ& A, const ZMat& O);

}  // namespace oracle
}  // namespace massforge
