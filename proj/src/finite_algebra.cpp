#include "massforge/finite_algebra.hpp"

#include <algorithm>

namespace massforge {

namespace gfmat {

Mat make(std::size_t r, std::size_t c) {
  return Mat(r, std::vector<GF::El>(c, 0));
}

Mat identity(const GF& F, std::size_t n) {
  Mat I = make(n, n);
  for (std::size_t i = 0; i < n; ++i) I[i][i] = F.one();
  return I;
}

Mat mul(const GF& F, const Mat& A, const Mat& B) {
  std::size_t r = A.size(), m = B.size(), c = B.empty() ? 0 : B[0].size();
  Mat C = make(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      if (A[i][k] == 0) continue;
      for (std::size_t j = 0; j < c; ++j)
        C[i][j] = F.add(C[i][j], F.mul(A[i][k], B[k][j]));
    }
  return C;
}

std::vector<GF::El> vec_mul(const GF& F, const std::vector<GF::El>& v,
                            const Mat& M) {
  std::size_t m = M.size(), c = M.empty() ? 0 : M[0].size();
  std::vector<GF::El> out(c, 0);
  for (std::size_t k = 0; k < m; ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < c; ++j)
      out[j] = F.add(out[j], F.mul(v[k], M[k][j]));
  }
  return out;
}

std::vector<std::size_t> rref(const GF& F, Mat& M) {
  std::vector<std::size_t> pivots;
  std::size_t rows = M.size(), cols = rows ? M[0].size() : 0, r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && M[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(M[sel], M[r]);
    GF::El inv = F.inv(M[r][c]);
    for (auto& e : M[r]) e = F.mul(e, inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || M[i][c] == 0) continue;
      GF::El f = M[i][c];
      for (std::size_t j = 0; j < cols; ++j)
        M[i][j] = F.sub(M[i][j], F.mul(f, M[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  M.resize(r);
  return pivots;
}

std::size_t rank(const GF& F, Mat M) { return rref(F, M).size(); }

bool invertible(const GF& F, const Mat& M) {
  return !M.empty() && M.size() == M[0].size() && rank(F, M) == M.size();
}

std::optional<Mat> inverse(const GF& F, Mat M) {
  std::size_t n = M.size();
  Mat aug = make(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = M[i][j];
    aug[i][n + i] = F.one();
  }
  auto piv = rref(F, aug);
  if (piv.size() != n || piv.back() != n - 1) return std::nullopt;
  Mat inv = make(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

Mat left_kernel(const GF& F, const Mat& M) {
  // Row-reduce the transpose augmented with an identity; kernel rows are the
  // identity parts of the zero rows.
  std::size_t rows = M.size(), cols = rows ? M[0].size() : 0;
  Mat aug = make(rows, cols + rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug[i][j] = M[i][j];
    aug[i][cols + i] = F.one();
  }
  // Eliminate on the first `cols` columns only.
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && aug[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(aug[sel], aug[r]);
    GF::El inv = F.inv(aug[r][c]);
    for (auto& e : aug[r]) e = F.mul(e, inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || aug[i][c] == 0) continue;
      GF::El f = aug[i][c];
      for (std::size_t j = 0; j < cols + rows; ++j)
        aug[i][j] = F.sub(aug[i][j], F.mul(f, aug[r][j]));
    }
    ++r;
  }
  Mat ker;
  for (std::size_t i = r; i < rows; ++i)
    ker.emplace_back(aug[i].begin() + cols, aug[i].end());
  return ker;
}

bool in_row_span(const GF& F, const Mat& rref_rows,
                 const std::vector<GF::El>& v) {
  std::vector<GF::El> w = v;
  for (const auto& row : rref_rows) {
    std::size_t lead = 0;
    while (lead < row.size() && row[lead] == 0) ++lead;
    if (lead == row.size()) continue;
    if (w[lead] == 0) continue;
    GF::El f = w[lead];
    for (std::size_t j = 0; j < w.size(); ++j)
      w[j] = F.sub(w[j], F.mul(f, row[j]));
  }
  for (auto e : w)
    if (e != 0) return false;
  return true;
}

}  // namespace gfmat

Integer FiniteAlgebra::size() const {
  Integer s = 1;
  for (int i = 0; i < dim; ++i) s *= F->q;
  return s;
}

std::vector<GF::El> alg_mul(const FiniteAlgebra& A,
                            const std::vector<GF::El>& x,
                            const std::vector<GF::El>& y) {
  const GF& F = *A.F;
  std::vector<GF::El> out(A.dim, 0);
  for (int i = 0; i < A.dim; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < A.dim; ++j) {
      if (y[j] == 0) continue;
      GF::El c = F.mul(x[i], y[j]);
      const auto& row = A.sc[i][j];
      for (int k = 0; k < A.dim; ++k)
        if (row[k] != 0) out[k] = F.add(out[k], F.mul(c, row[k]));
    }
  }
  return out;
}

gfmat::Mat left_mul_matrix(const FiniteAlgebra& A,
                           const std::vector<GF::El>& x) {
  gfmat::Mat M = gfmat::make(A.dim, A.dim);
  for (int j = 0; j < A.dim; ++j) {
    std::vector<GF::El> e(A.dim, 0);
    e[j] = A.F->one();
    M[j] = alg_mul(A, x, e);
  }
  return M;
}

bool alg_is_unit(const FiniteAlgebra& A, const std::vector<GF::El>& x) {
  return gfmat::invertible(*A.F, left_mul_matrix(A, x));
}

bool alg_is_nilpotent(const FiniteAlgebra& A, std::vector<GF::El> x) {
  long m = 1;
  while (m <= A.dim) {
    x = alg_mul(A, x, x);
    m *= 2;
  }
  for (auto e : x)
    if (e != 0) return false;
  return true;
}

bool alg_commutative(const FiniteAlgebra& A) {
  for (int i = 0; i < A.dim; ++i)
    for (int j = i + 1; j < A.dim; ++j)
      if (A.sc[i][j] != A.sc[j][i]) return false;
  return true;
}

std::vector<GF::El> element_at(const FiniteAlgebra& A, std::uint64_t n) {
  std::vector<GF::El> x(A.dim, 0);
  std::uint64_t q = static_cast<std::uint64_t>(A.F->q);
  for (int i = 0; i < A.dim; ++i) {
    x[i] = static_cast<GF::El>(n % q);
    n /= q;
  }
  return x;
}

FiniteAlgebra make_algebra(GFPtr F, int dim,
                           std::vector<std::vector<std::vector<GF::El>>> sc,
                           std::vector<GF::El> unity, bool validate) {
  FiniteAlgebra A;
  A.F = std::move(F);
  A.dim = dim;
  A.sc = std::move(sc);
  A.unity = std::move(unity);
  if (dim <= 0 || A.sc.size() != static_cast<std::size_t>(dim) ||
      A.unity.size() != static_cast<std::size_t>(dim))
    throw DomainError("finite algebra: inconsistent dimensions");
  for (const auto& row : A.sc) {
    if (row.size() != static_cast<std::size_t>(dim))
      throw DomainError("finite algebra: inconsistent structure constants");
    for (const auto& v : row)
      if (v.size() != static_cast<std::size_t>(dim))
        throw DomainError("finite algebra: inconsistent structure constants");
  }
  if (validate) {
    for (int i = 0; i < dim; ++i) {
      std::vector<GF::El> e(dim, 0);
      e[i] = A.F->one();
      if (alg_mul(A, A.unity, e) != e || alg_mul(A, e, A.unity) != e)
        throw DomainError("finite algebra: unity fails");
    }
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) {
          std::vector<GF::El> ei(dim, 0), ej(dim, 0), ek(dim, 0);
          ei[i] = ej[j] = ek[k] = A.F->one();
          auto lhs = alg_mul(A, alg_mul(A, ei, ej), ek);
          auto rhs = alg_mul(A, ei, alg_mul(A, ej, ek));
          if (lhs != rhs)
            throw DomainError("finite algebra: associativity fails");
        }
  }
  return A;
}

namespace {

// Trace of the regular representation pairing: T[i][j] = tr(L_i L_j).
std::vector<std::vector<GF::El>> trace_form(const FiniteAlgebra& A) {
  const GF& F = *A.F;
  std::vector<gfmat::Mat> L(A.dim);
  for (int i = 0; i < A.dim; ++i) {
    std::vector<GF::El> e(A.dim, 0);
    e[i] = F.one();
    L[i] = left_mul_matrix(A, e);
  }
  auto T = gfmat::make(A.dim, A.dim);
  for (int i = 0; i < A.dim; ++i)
    for (int j = i; j < A.dim; ++j) {
      GF::El tr = 0;
      for (int r = 0; r < A.dim; ++r)
        for (int s = 0; s < A.dim; ++s)
          tr = F.add(tr, F.mul(L[i][r][s], L[j][s][r]));
      T[i][j] = T[j][i] = tr;
    }
  return T;
}

}  // namespace

std::vector<std::vector<GF::El>> jacobson_radical(const FiniteAlgebra& A) {
  const GF& F = *A.F;
  if (Integer(F.p) > Integer(A.dim)) {
    auto T = trace_form(A);
    return gfmat::left_kernel(F, T);
  }
  if (A.size() > (Integer(1) << 20))
    throw DomainError(
        "jacobson radical: algebra too large for the exhaustive path");
  std::uint64_t total = static_cast<std::uint64_t>(A.size());
  gfmat::Mat span;  // rref basis of confirmed radical elements
  auto unity = A.unity;
  for (std::uint64_t n = 1; n < total; ++n) {
    auto x = element_at(A, n);
    // Scalar-normalize: only inspect vectors whose first nonzero coord is 1.
    int lead = 0;
    while (lead < A.dim && x[lead] == 0) ++lead;
    if (x[lead] != F.one()) continue;
    if (gfmat::in_row_span(F, span, x)) continue;
    if (!alg_is_nilpotent(A, x)) continue;
    // x lies in the radical iff 1 + y*x is a unit for every y.
    bool ok = true;
    for (std::uint64_t m = 1; m < total && ok; ++m) {
      auto y = element_at(A, m);
      auto z = alg_mul(A, y, x);
      for (int i = 0; i < A.dim; ++i) z[i] = F.add(z[i], unity[i]);
      if (!alg_is_unit(A, z)) ok = false;
    }
    if (!ok) continue;
    span.push_back(x);
    gfmat::rref(F, span);
  }
  return span;
}

FiniteAlgebra quotient_by_radical(const FiniteAlgebra& A,
                                  const std::vector<std::vector<GF::El>>& rad) {
  const GF& F = *A.F;
  // Complete the radical to a basis of A by standard vectors.
  gfmat::Mat basis = rad;
  gfmat::rref(F, basis);
  std::size_t r = basis.size();
  if (r != rad.size())
    throw DomainError("radical basis rows must be independent");
  std::vector<int> extra;
  for (int i = 0; i < A.dim && basis.size() < static_cast<std::size_t>(A.dim);
       ++i) {
    std::vector<GF::El> e(A.dim, 0);
    e[i] = F.one();
    if (gfmat::in_row_span(F, basis, e)) continue;
    extra.push_back(i);
    basis.push_back(e);
    gfmat::rref(F, basis);
  }
  std::size_t k = extra.size();  // quotient dimension
  // New basis: radical rows first, then the chosen standard vectors.
  gfmat::Mat P = rad;
  for (int i : extra) {
    std::vector<GF::El> e(A.dim, 0);
    e[i] = F.one();
    P.push_back(e);
  }
  auto Pinv = gfmat::inverse(F, P);
  if (!Pinv) throw DomainError("radical basis completion failed");
  auto to_quotient = [&](const std::vector<GF::El>& x) {
    auto c = gfmat::vec_mul(F, x, *Pinv);
    return std::vector<GF::El>(c.begin() + r, c.end());
  };
  std::vector<std::vector<std::vector<GF::El>>> sc(
      k, std::vector<std::vector<GF::El>>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<GF::El> ei(A.dim, 0), ej(A.dim, 0);
      ei[extra[i]] = F.one();
      ej[extra[j]] = F.one();
      sc[i][j] = to_quotient(alg_mul(A, ei, ej));
    }
  auto unity = to_quotient(A.unity);
  return make_algebra(A.F, static_cast<int>(k), std::move(sc), std::move(unity),
                      false);
}

Integer count_units_exhaustive(const FiniteAlgebra& A) {
  if (A.size() > (Integer(1) << 20))
    throw DomainError("unit count: algebra too large for exhaustive scan");
  std::uint64_t total = static_cast<std::uint64_t>(A.size());
  Integer count = 0;
  for (std::uint64_t n = 1; n < total; ++n)
    if (alg_is_unit(A, element_at(A, n))) ++count;
  return count;
}

KappaInfo kappa_invariants(const FiniteAlgebra& A) {
  const GF& F = *A.F;
  auto rad = jacobson_radical(A);
  auto kappa = quotient_by_radical(A, rad);
  KappaInfo info;
  info.rad_dim = static_cast<long>(rad.size());
  info.kappa_dim = kappa.dim;
  info.kappa_size = kappa.size();
  Integer q = F.q;
  bool comm = alg_commutative(kappa);
  bool has_zero_divisor = false;
  {
    std::uint64_t total = static_cast<std::uint64_t>(kappa.size());
    if (kappa.size() <= (Integer(1) << 20)) {
      for (std::uint64_t n = 1; n < total; ++n)
        if (!alg_is_unit(kappa, element_at(kappa, n))) {
          has_zero_divisor = true;
          break;
        }
    } else {
      throw DomainError("semisimple quotient too large to classify");
    }
  }
  if (kappa.dim == 1) {
    info.cls = KappaClass::BaseField;
    info.kappa_units = q - 1;
  } else if (comm && kappa.dim == 2 && !has_zero_divisor) {
    info.cls = KappaClass::FieldExt;
    info.kappa_units = q * q - 1;
  } else if (comm && kappa.dim == 2 && has_zero_divisor) {
    info.cls = KappaClass::SplitPair;
    info.kappa_units = (q - 1) * (q - 1);
  } else if (!comm && kappa.dim == 4 && has_zero_divisor) {
    info.cls = KappaClass::Matrix;
    info.kappa_units = (q * q - 1) * (q * q - q);
  } else {
    info.cls = KappaClass::Other;
    info.kappa_units = count_units_exhaustive(kappa);
  }
  return info;
}

}  // namespace massforge
