#pragma once

// Quaternion algebra (a,b | K) over the fraction field of a coefficient
// domain: basis 1, i, j, k with i^2 = a, j^2 = b, k = ij = -ji.  Elements are
// coordinate rows (x0, x1, x2, x3).  The derived products: k^2 = -ab,
// ik = aj, ki = -aj, jk = -bi, kj = bi.

#include <array>
#include <string>

#include "massforge/exactnum.hpp"
#include "massforge/lattice.hpp"

namespace massforge {

template <class Dom>
struct QAlg {
  using Fel = typename Dom::Fel;
  Dom D;
  Fel a, b;

  QAlg(Dom dom, Fel a_, Fel b_) : D(std::move(dom)), a(std::move(a_)), b(std::move(b_)) {
    if (D.is_zero(a) || D.is_zero(b))
      throw DomainError("quaternion algebra: a and b must be nonzero");
  }

  VecT<Dom> el(Fel x0, Fel x1, Fel x2, Fel x3) const {
    return {std::move(x0), std::move(x1), std::move(x2), std::move(x3)};
  }
  VecT<Dom> one() const { return el(D.fone(), D.fzero(), D.fzero(), D.fzero()); }
  VecT<Dom> zero_el() const { return {D.fzero(), D.fzero(), D.fzero(), D.fzero()}; }

  VecT<Dom> mul(const VecT<Dom>& x, const VecT<Dom>& y) const {
    const Fel& x0 = x[0];
    const Fel& x1 = x[1];
    const Fel& x2 = x[2];
    const Fel& x3 = x[3];
    const Fel& y0 = y[0];
    const Fel& y1 = y[1];
    const Fel& y2 = y[2];
    const Fel& y3 = y[3];
    VecT<Dom> z(4, D.fzero());
    z[0] = x0 * y0 + a * (x1 * y1) + b * (x2 * y2) - a * b * (x3 * y3);
    z[1] = x0 * y1 + x1 * y0 - b * (x2 * y3) + b * (x3 * y2);
    z[2] = x0 * y2 + x2 * y0 + a * (x1 * y3) - a * (x3 * y1);
    z[3] = x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1;
    return z;
  }

  VecT<Dom> add(const VecT<Dom>& x, const VecT<Dom>& y) const {
    VecT<Dom> z(4, D.fzero());
    for (int i = 0; i < 4; ++i) z[i] = x[i] + y[i];
    return z;
  }

  VecT<Dom> scale(const Fel& c, const VecT<Dom>& x) const {
    VecT<Dom> z(4, D.fzero());
    for (int i = 0; i < 4; ++i) z[i] = c * x[i];
    return z;
  }

  VecT<Dom> conj(const VecT<Dom>& x) const {
    return {x[0], -x[1], -x[2], -x[3]};
  }

  Fel trd(const VecT<Dom>& x) const { return x[0] + x[0]; }

  Fel nrd(const VecT<Dom>& x) const {
    return x[0] * x[0] - a * (x[1] * x[1]) - b * (x[2] * x[2]) +
           a * b * (x[3] * x[3]);
  }

  VecT<Dom> inverse(const VecT<Dom>& x) const {
    Fel n = nrd(x);
    if (D.is_zero(n)) throw DomainError("quaternion inverse of a zero divisor");
    return scale(D.fone() / n, conj(x));
  }

  bool eq(const VecT<Dom>& x, const VecT<Dom>& y) const {
    for (int i = 0; i < 4; ++i)
      if (!D.is_zero(x[i] - y[i])) return false;
    return true;
  }

  bool is_zero_el(const VecT<Dom>& x) const {
    for (int i = 0; i < 4; ++i)
      if (!D.is_zero(x[i])) return false;
    return true;
  }

  // Matrix of y -> g*y in the coordinate basis, acting on coordinate rows:
  // coords(g*y) = coords(y) * left_mul(g).
  MatT<Dom> left_mul(const VecT<Dom>& g) const {
    MatT<Dom> M = make_mat(D, 4, 4);
    for (int i = 0; i < 4; ++i) {
      VecT<Dom> e = zero_el();
      e[i] = D.fone();
      M[i] = mul(g, e);
    }
    return M;
  }

  // Matrix of y -> y*g acting on coordinate rows: coords(y*g) = coords(y) * right_mul(g).
  MatT<Dom> right_mul(const VecT<Dom>& g) const {
    MatT<Dom> M = make_mat(D, 4, 4);
    for (int i = 0; i < 4; ++i) {
      VecT<Dom> e = zero_el();
      e[i] = D.fone();
      M[i] = mul(e, g);
    }
    return M;
  }

  std::string el_str(const VecT<Dom>& x) const {
    static const char* names[4] = {"", "i", "j", "k"};
    std::string out;
    for (int i = 0; i < 4; ++i) {
      if (D.is_zero(x[i])) continue;
      if (!out.empty()) out += " + ";
      out += D.str(x[i]);
      out += names[i];
    }
    return out.empty() ? D.str(D.fzero()) : out;
  }
};

}  // namespace massforge
