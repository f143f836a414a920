#pragma once

// Finite-dimensional associative algebras over a finite field, given by
// structure constants; Jacobson radical, the semisimple quotient, and the
// invariants of that quotient (size, unit count, shape classification).

#include <cstdint>
#include <optional>
#include <vector>

#include "massforge/exactnum.hpp"
#include "massforge/gf.hpp"

namespace massforge {

// Small dense matrices over a finite field, row-vector convention.
namespace gfmat {

using Mat = std::vector<std::vector<GF::El>>;

Mat make(std::size_t r, std::size_t c);
Mat identity(const GF& F, std::size_t n);
Mat mul(const GF& F, const Mat& A, const Mat& B);
std::vector<GF::El> vec_mul(const GF& F, const std::vector<GF::El>& v,
                            const Mat& M);
// Reduced row echelon form in place; returns pivot column indices.
std::vector<std::size_t> rref(const GF& F, Mat& M);
std::size_t rank(const GF& F, Mat M);
bool invertible(const GF& F, const Mat& M);
std::optional<Mat> inverse(const GF& F, Mat M);
// Basis of {x : x * M = 0} as rows.
Mat left_kernel(const GF& F, const Mat& M);
// Row span membership test against an rref basis.
bool in_row_span(const GF& F, const Mat& rref_rows,
                 const std::vector<GF::El>& v);

}  // namespace gfmat

struct FiniteAlgebra {
  GFPtr F;
  int dim = 0;
  // sc[i][j] is the coordinate vector of e_i * e_j.
  std::vector<std::vector<std::vector<GF::El>>> sc;
  std::vector<GF::El> unity;

  Integer size() const;
};

FiniteAlgebra make_algebra(GFPtr F, int dim,
                           std::vector<std::vector<std::vector<GF::El>>> sc,
                           std::vector<GF::El> unity, bool validate = true);

std::vector<GF::El> alg_mul(const FiniteAlgebra& A,
                            const std::vector<GF::El>& x,
                            const std::vector<GF::El>& y);
gfmat::Mat left_mul_matrix(const FiniteAlgebra& A, const std::vector<GF::El>& x);
bool alg_is_unit(const FiniteAlgebra& A, const std::vector<GF::El>& x);
bool alg_is_nilpotent(const FiniteAlgebra& A, std::vector<GF::El> x);
bool alg_commutative(const FiniteAlgebra& A);

// Element of index n under the mixed-radix coordinate enumeration.
std::vector<GF::El> element_at(const FiniteAlgebra& A, std::uint64_t n);

// Basis rows of the Jacobson radical. Uses the trace form of the regular
// representation when the characteristic exceeds the dimension, otherwise an
// exhaustive scan (the algebra must then have at most 2^20 elements).
std::vector<std::vector<GF::El>> jacobson_radical(const FiniteAlgebra& A);

// The quotient by a radical given as basis rows.
FiniteAlgebra quotient_by_radical(const FiniteAlgebra& A,
                                  const std::vector<std::vector<GF::El>>& rad);

enum class KappaClass { BaseField, FieldExt, SplitPair, Matrix, Other };

struct KappaInfo {
  long rad_dim = 0;
  long kappa_dim = 0;
  Integer kappa_size = 1;
  Integer kappa_units = 1;
  KappaClass cls = KappaClass::Other;
};

// Radical + quotient + classification in one pass.
KappaInfo kappa_invariants(const FiniteAlgebra& A);

// Unit count by scanning every element; guarded by the 2^20 size bound.
Integer count_units_exhaustive(const FiniteAlgebra& A);

}  // namespace massforge
