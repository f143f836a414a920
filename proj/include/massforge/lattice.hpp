#pragma once
// Exact linear algebra over the fraction field of a coefficient domain, and
// canonical Hermite bases for the full-rank modules ("lattices") the order
// machinery works with.  Everything is templated on the domain so the same
// code serves Z, Z[1/S], Fq[t] and its localizations.
//
// Conventions: vectors are rows; a lattice is the row span (over the domain)
// of a matrix whose rows hold coordinates with respect to some fixed ambient
// basis.  lattice_canon returns the unique Hermite basis of that span, so two
// generating sets span the same module iff their canonical forms are equal.

#include <string>
#include <utility>
#include <vector>

#include "massforge/exactnum.hpp"

namespace massforge {

template <class Dom>
using VecT = std::vector<typename Dom::Fel>;

template <class Dom>
using MatT = std::vector<std::vector<typename Dom::Fel>>;

template <class Dom>
MatT<Dom> make_mat(const Dom& D, std::size_t rows, std::size_t cols) {
  return MatT<Dom>(rows, VecT<Dom>(cols, D.fzero()));
}

template <class Dom>
MatT<Dom> identity_mat(const Dom& D, std::size_t n) {
  auto M = make_mat(D, n, n);
  for (std::size_t i = 0; i < n; ++i) M[i][i] = D.fone();
  return M;
}

template <class Dom>
MatT<Dom> transpose(const Dom& D, const MatT<Dom>& M) {
  if (M.empty()) return {};
  auto T = make_mat(D, M[0].size(), M.size());
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < M[i].size(); ++j) T[j][i] = M[i][j];
  return T;
}

template <class Dom>
VecT<Dom> vec_mat(const Dom& D, const VecT<Dom>& v, const MatT<Dom>& M) {
  VecT<Dom> out(M.empty() ? 0 : M[0].size(), D.fzero());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (D.is_zero(v[i])) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += v[i] * M[i][j];
  }
  return out;
}

template <class Dom>
MatT<Dom> mat_mul(const Dom& D, const MatT<Dom>& A, const MatT<Dom>& B) {
  MatT<Dom> C;
  C.reserve(A.size());
  for (const auto& row : A) C.push_back(vec_mat(D, row, B));
  return C;
}

template <class Dom>
MatT<Dom> mat_scale(const Dom& D, const typename Dom::Fel& c,
                    const MatT<Dom>& M) {
  auto R = M;
  for (auto& row : R)
    for (auto& e : row) e = e * c;
  (void)D;
  return R;
}

template <class Dom>
MatT<Dom> mat_stack(const MatT<Dom>& A, const MatT<Dom>& B) {
  auto R = A;
  R.insert(R.end(), B.begin(), B.end());
  return R;
}

template <class Dom>
bool mat_eq(const MatT<Dom>& A, const MatT<Dom>& B) {
  if (A.size() != B.size()) return false;
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (A[i].size() != B[i].size()) return false;
    for (std::size_t j = 0; j < A[i].size(); ++j)
      if (!(A[i][j] == B[i][j])) return false;
  }
  return true;
}

template <class Dom>
typename Dom::Fel det(const Dom& D, MatT<Dom> M) {
  const std::size_t n = M.size();
  for (const auto& row : M)
    if (row.size() != n) throw DomainError("det of non-square matrix");
  auto d = D.fone();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && D.is_zero(M[piv][c])) ++piv;
    if (piv == n) return D.fzero();
    if (piv != c) {
      std::swap(M[piv], M[c]);
      d = -d;
    }
    d = d * M[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (D.is_zero(M[r][c])) continue;
      auto f = M[r][c] / M[c][c];
      for (std::size_t j = c; j < n; ++j) M[r][j] -= f * M[c][j];
    }
  }
  return d;
}

template <class Dom>
MatT<Dom> mat_inv(const Dom& D, MatT<Dom> M) {
  const std::size_t n = M.size();
  for (const auto& row : M)
    if (row.size() != n) throw DomainError("inverse of non-square matrix");
  auto I = identity_mat(D, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && D.is_zero(M[piv][c])) ++piv;
    if (piv == n) throw DomainError("matrix is singular");
    std::swap(M[piv], M[c]);
    std::swap(I[piv], I[c]);
    auto inv = D.fone() / M[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      M[c][j] *= inv;
      I[c][j] *= inv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || D.is_zero(M[r][c])) continue;
      auto f = M[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        M[r][j] -= f * M[c][j];
        I[r][j] -= f * I[c][j];
      }
    }
  }
  return I;
}

// Row Hermite form of a matrix with integral entries: pivot entries are
// canonical associates, entries above each pivot are canonical residues, zero
// rows are dropped.  The result is the unique such basis of the row span.
template <class Dom>
MatT<Dom> hnf_rows(const Dom& D, MatT<Dom> M) {
  if (M.empty()) return M;
  const std::size_t cols = M[0].size();
  for (const auto& row : M)
    for (const auto& e : row)
      if (!D.is_integral(e)) throw DomainError("hnf_rows needs integral entries");
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < M.size(); ++c) {
    std::size_t piv = rank;
    while (piv < M.size() && D.is_zero(M[piv][c])) ++piv;
    if (piv == M.size()) continue;
    std::swap(M[piv], M[rank]);
    for (std::size_t r = rank + 1; r < M.size(); ++r) {
      while (!D.is_zero(M[r][c])) {
        auto [q, rem] = D.divmod(M[rank][c], M[r][c]);
        (void)rem;
        for (std::size_t j = 0; j < cols; ++j) M[rank][j] -= q * M[r][j];
        std::swap(M[rank], M[r]);
      }
    }
    auto u = M[rank][c] / D.canon_gen(M[rank][c]);
    for (std::size_t j = 0; j < cols; ++j) M[rank][j] /= u;
    for (std::size_t r = 0; r < rank; ++r) {
      if (D.is_zero(M[r][c])) continue;
      auto q = D.divmod(M[r][c], M[rank][c]).first;
      for (std::size_t j = 0; j < cols; ++j) M[r][j] -= q * M[rank][j];
    }
    ++rank;
  }
  M.resize(rank);
  return M;
}

// Canonical basis of the module generated by the rows of M, which may have
// non-integral entries: clear denominators, take the Hermite form, scale back.
template <class Dom>
MatT<Dom> lattice_canon(const Dom& D, const MatT<Dom>& M) {
  auto c = D.fone();
  for (const auto& row : M)
    for (const auto& e : row) c = D.gen_lcm(c, D.den_gen(e));
  if (c == D.fone()) return hnf_rows(D, M);
  auto H = hnf_rows(D, mat_scale(D, c, M));
  return mat_scale(D, D.fone() / c, H);
}

template <class Dom>
bool lattice_eq(const Dom& D, const MatT<Dom>& A, const MatT<Dom>& B) {
  return mat_eq<Dom>(lattice_canon(D, A), lattice_canon(D, B));
}

// Generalized index [sup : sub] as a canonical ideal generator: the module
// index when sub is contained in sup, and more generally the determinant
// ratio.  Both arguments must be full-rank square bases.
template <class Dom>
typename Dom::Fel lattice_index(const Dom& D, const MatT<Dom>& sup,
                                const MatT<Dom>& sub) {
  auto ds = det(D, sup);
  if (D.is_zero(ds)) throw DomainError("lattice_index: degenerate lattice");
  return D.canon_gen(det(D, sub) / ds);
}

// Coordinates of v in the basis with precomputed inverse Binv.
template <class Dom>
VecT<Dom> coords_in(const Dom& D, const MatT<Dom>& Binv, const VecT<Dom>& v) {
  return vec_mat(D, v, Binv);
}

template <class Dom>
bool in_span(const Dom& D, const MatT<Dom>& Binv, const VecT<Dom>& v) {
  for (const auto& x : coords_in(D, Binv, v))
    if (!D.is_integral(x)) return false;
  return true;
}

// Does every row of A lie in the module spanned by the rows of B?  Binv is
// the inverse of a full-rank square basis of B.
template <class Dom>
bool rows_in_span(const Dom& D, const MatT<Dom>& Binv, const MatT<Dom>& A) {
  for (const auto& row : A)
    if (!in_span(D, Binv, row)) return false;
  return true;
}

// Basis of {x : x * A has all entries integral} for A of full row rank.
// Columns of A are first replaced by a Hermite basis K of their span; the
// answer is then the row span of (K^T)^{-1}.
template <class Dom>
MatT<Dom> preimage_lattice(const Dom& D, const MatT<Dom>& A) {
  auto K = lattice_canon(D, transpose(D, A));
  if (K.size() != A.size())
    throw DomainError("preimage_lattice: matrix does not have full row rank");
  return lattice_canon(D, mat_inv(D, transpose(D, K)));
}

// Dual of a full-rank lattice with respect to the standard dot product:
// {x : x.b integral for every basis row b}.  An involution on lattices.
template <class Dom>
MatT<Dom> dual_lattice(const Dom& D, const MatT<Dom>& B) {
  return lattice_canon(D, mat_inv(D, transpose(D, B)));
}

template <class Dom>
MatT<Dom> lattice_intersect(const Dom& D, const MatT<Dom>& A,
                            const MatT<Dom>& B) {
  return dual_lattice(
      D, lattice_canon(D, mat_stack<Dom>(dual_lattice(D, A), dual_lattice(D, B))));
}

// {x integral : x * T = 0 modulo the ideal (m)}, for an integral matrix T.
// Realized as the dual of the span of the standard functionals together with
// the columns of T/m.
template <class Dom>
MatT<Dom> kernel_mod(const Dom& D, const MatT<Dom>& T,
                     const typename Dom::Fel& m) {
  if (D.is_zero(m)) throw DomainError("kernel_mod: zero modulus");
  const std::size_t n = T.size();
  auto F = mat_stack<Dom>(identity_mat(D, n),
                          mat_scale(D, D.fone() / m, transpose(D, T)));
  return dual_lattice(D, lattice_canon(D, F));
}

template <class Dom>
std::string mat_str(const Dom& D, const MatT<Dom>& M) {
  std::string s = "[";
  for (std::size_t i = 0; i < M.size(); ++i) {
    s += i ? "; " : "";
    for (std::size_t j = 0; j < M[i].size(); ++j)
      s += (j ? ", " : "") + D.str(M[i][j]);
  }
  return s + "]";
}

}  // namespace massforge
