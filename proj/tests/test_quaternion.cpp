#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "massforge/domain.hpp"
#include "massforge/quaternion.hpp"

using namespace massforge;

namespace {

ZDom Z;

VecT<ZDom> rnd_el(const QAlg<ZDom>& A, unsigned* state) {
  auto next = [&] {
    *state = *state * 1103515245u + 12345u;
    return static_cast<long>((*state >> 16) % 11) - 5;
  };
  return A.el(Rat(next()), Rat(next()), Rat(next()), Rat(next()));
}

}  // namespace

TEST_CASE("hamilton multiplication table") {
  QAlg<ZDom> A(Z, Rat(-1), Rat(-1));
  auto i = A.el(Rat(0), Rat(1), Rat(0), Rat(0));
  auto j = A.el(Rat(0), Rat(0), Rat(1), Rat(0));
  auto k = A.el(Rat(0), Rat(0), Rat(0), Rat(1));
  CHECK(A.eq(A.mul(i, i), A.scale(Rat(-1), A.one())));
  CHECK(A.eq(A.mul(j, j), A.scale(Rat(-1), A.one())));
  CHECK(A.eq(A.mul(k, k), A.scale(Rat(-1), A.one())));
  CHECK(A.eq(A.mul(i, j), k));
  CHECK(A.eq(A.mul(j, i), A.scale(Rat(-1), k)));
  CHECK(A.eq(A.mul(j, k), i));
  CHECK(A.eq(A.mul(k, i), j));
  auto x = A.el(Rat(1), Rat(1), Rat(1), Rat(1));
  CHECK(A.nrd(x) == Rat(4));
  CHECK(A.trd(x) == Rat(2));
}

TEST_CASE("general symbols") {
  QAlg<ZDom> A(Z, Rat(2), Rat(5));
  auto i = A.el(Rat(0), Rat(1), Rat(0), Rat(0));
  auto j = A.el(Rat(0), Rat(0), Rat(1), Rat(0));
  auto k = A.mul(i, j);
  CHECK(A.eq(A.mul(i, i), A.scale(Rat(2), A.one())));
  CHECK(A.eq(A.mul(j, j), A.scale(Rat(5), A.one())));
  // k^2 = -ab
  CHECK(A.eq(A.mul(k, k), A.scale(Rat(-10), A.one())));
  // ik = aj, jk = -bi
  CHECK(A.eq(A.mul(i, k), A.scale(Rat(2), j)));
  CHECK(A.eq(A.mul(j, k), A.scale(Rat(-5), i)));
  CHECK_THROWS_AS(QAlg<ZDom>(Z, Rat(0), Rat(1)), DomainError);
}

TEST_CASE("algebra identities on random elements") {
  QAlg<ZDom> A(Z, Rat(-2), Rat(-7));
  unsigned state = 12345;
  for (int trial = 0; trial < 100; ++trial) {
    auto x = rnd_el(A, &state);
    auto y = rnd_el(A, &state);
    auto z = rnd_el(A, &state);
    // Associativity.
    CHECK(A.eq(A.mul(A.mul(x, y), z), A.mul(x, A.mul(y, z))));
    // Conjugation is an anti-automorphism.
    CHECK(A.eq(A.conj(A.mul(x, y)), A.mul(A.conj(y), A.conj(x))));
    // Reduced norm is multiplicative; trace is linear.
    CHECK(A.nrd(A.mul(x, y)) == A.nrd(x) * A.nrd(y));
    CHECK(A.trd(A.add(x, y)) == A.trd(x) + A.trd(y));
    // x satisfies its reduced characteristic polynomial.
    auto sq = A.mul(x, x);
    auto expect = A.add(A.scale(A.trd(x), x), A.scale(-A.nrd(x), A.one()));
    CHECK(A.eq(sq, expect));
    // nrd(x) = x * conj(x).
    CHECK(A.eq(A.mul(x, A.conj(x)), A.scale(A.nrd(x), A.one())));
  }
}

TEST_CASE("inverses in a definite algebra") {
  QAlg<ZDom> A(Z, Rat(-1), Rat(-1));
  unsigned state = 999;
  for (int trial = 0; trial < 50; ++trial) {
    auto x = rnd_el(A, &state);
    if (A.is_zero_el(x)) continue;
    auto xi = A.inverse(x);
    CHECK(A.eq(A.mul(x, xi), A.one()));
    CHECK(A.eq(A.mul(xi, x), A.one()));
  }
  CHECK_THROWS_AS(A.inverse(A.zero_el()), DomainError);
}

TEST_CASE("multiplication operators act on coordinate rows") {
  QAlg<ZDom> A(Z, Rat(-1), Rat(-11));
  unsigned state = 777;
  for (int trial = 0; trial < 30; ++trial) {
    auto g = rnd_el(A, &state);
    auto y = rnd_el(A, &state);
    auto L = A.left_mul(g);
    auto R = A.right_mul(g);
    CHECK(A.eq(vec_mat(Z, y, L), A.mul(g, y)));
    CHECK(A.eq(vec_mat(Z, y, R), A.mul(y, g)));
    // det of either multiplication matrix is nrd^2.
    auto n = A.nrd(g);
    CHECK(det(Z, L) == n * n);
    CHECK(det(Z, R) == n * n);
  }
}

TEST_CASE("function field quaternions") {
  auto F = GF::prime(3);
  FqtDom D(F);
  auto t = D.parse_el("t");
  auto m1 = D.parse_el("-1");
  QAlg<FqtDom> A(D, m1, t);
  auto i = A.el(D.fzero(), D.fone(), D.fzero(), D.fzero());
  auto j = A.el(D.fzero(), D.fzero(), D.fone(), D.fzero());
  auto k = A.mul(i, j);
  CHECK(A.eq(A.mul(i, i), A.scale(m1, A.one())));
  CHECK(A.eq(A.mul(j, j), A.scale(t, A.one())));
  CHECK(A.eq(A.mul(k, k), A.scale(t, A.one())));  // -ab = t
  CHECK(A.eq(A.mul(i, j), A.scale(m1, A.mul(j, i))));
  auto x = A.el(D.fone(), t, D.parse_el("t+1"), D.fzero());
  auto y = A.el(t, D.fone(), D.fzero(), D.parse_el("2"));
  CHECK(A.nrd(A.mul(x, y)) == A.nrd(x) * A.nrd(y));
  CHECK(A.eq(A.conj(A.mul(x, y)), A.mul(A.conj(y), A.conj(x))));
  CHECK(A.eq(A.mul(x, A.inverse(x)), A.one()));
}
