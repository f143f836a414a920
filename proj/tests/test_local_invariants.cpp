#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "massforge/local_invariants.hpp"

using namespace massforge;

TEST_CASE("unit density") {
  CHECK(unit_density(Integer(2), 1) == Rat(1, 2));
  CHECK(unit_density(Integer(2), 2) == Rat(3, 8));
  CHECK(unit_density(Integer(3), 2) == Rat(2, 3) * Rat(8, 9));
  CHECK(unit_density(Integer(5), 1) == Rat(4, 5));
}

TEST_CASE("maximal local factors") {
  // Split places contribute nothing.
  CHECK(lambda_max(Integer(2), 1, 2) == 1);
  CHECK(lambda_max(Integer(5), 1, 4) == 1);
  // Ramified quaternion places contribute q - 1.
  CHECK(lambda_max(Integer(2), 2, 2) == 1);
  CHECK(lambda_max(Integer(3), 2, 2) == 2);
  CHECK(lambda_max(Integer(11), 2, 2) == 10);
  // Fully ramified degree n: product of q^i - 1, i < n.
  CHECK(lambda_max(Integer(2), 3, 3) == Rat(3 * 1));       // (2-1)(4-1)
  CHECK(lambda_max(Integer(3), 3, 3) == Rat(2 * 8));       // (3-1)(9-1)
  CHECK(lambda_max(Integer(2), 4, 4) == Rat(1 * 3 * 7));
  // Intermediate index d | n skips the multiples of d.
  CHECK(lambda_max(Integer(2), 2, 4) == Rat(1 * 7));       // skip i = 2
  CHECK(lambda_max(Integer(3), 2, 6) == Rat(2 * 26 * 242));  // i = 1, 3, 5
}

TEST_CASE("maximal profiles evaluate to the closed-form factor") {
  for (long q : {2, 3, 4, 5, 7, 9}) {
    for (long n = 1; n <= 6; ++n) {
      for (long d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        auto P = maximal_profile("v", Integer(q), d, n);
        CHECK(lambda_v(P, n) == lambda_max(Integer(q), d, n));
      }
    }
  }
}

TEST_CASE("maximal quaternion profile fields") {
  auto P = maximal_profile("2", Integer(2), 2, 2);
  CHECK(P.q == 2);
  CHECK(P.d == 2);
  CHECK(P.disc_abs == 2);
  CHECK(P.kappa_size == 4);
  CHECK(P.kappa_units == 3);
  CHECK(P.norm_index == 1);
  REQUIRE(P.normalizer_index.has_value());
  CHECK(*P.normalizer_index == 2);
  REQUIRE(P.eichler.has_value());
  CHECK(*P.eichler == -1);

  auto S = maximal_profile("7", Integer(7), 1, 2);
  CHECK(S.disc_abs == 1);
  CHECK(lambda_v(S, 2) == 1);
  CHECK(*S.normalizer_index == 1);
  CHECK(!S.eichler.has_value());  // undefined at split maximal places

  // Degree 4, local index 2: kappa = M_2(F_q), normalizer index d = 2.
  auto T = maximal_profile("3", Integer(3), 2, 4);
  CHECK(T.disc_abs == Integer(3) * 3 * 3 * 3);  // q^{m^2 d(d-1)/2}, m = d = 2
  CHECK(T.kappa_size == Integer(6561));         // |M_2(F_9)|
  CHECK(T.kappa_units == Integer(5760));        // |GL_2(F_9)|
  CHECK(*T.normalizer_index == 2);
}

TEST_CASE("non-maximal quaternion profiles") {
  // The 2-adic data of the order Z + Zi + Zj + Zk in (-1,-1).
  LocalOrderProfile lip;
  lip.place = "2";
  lip.q = 2;
  lip.d = 2;
  lip.disc_abs = 4;
  lip.kappa_size = 2;
  lip.kappa_units = 1;
  lip.eichler = 0;
  CHECK(lambda_v(lip, 2) == 3);

  // A level-q pair of residue fields inside M_2.
  for (long q : {2, 3, 5, 13}) {
    LocalOrderProfile eich;
    eich.place = "p";
    eich.q = q;
    eich.d = 1;
    eich.disc_abs = q;
    eich.kappa_size = Integer(q) * q;
    eich.kappa_units = Integer(q - 1) * (q - 1);
    eich.eichler = 1;
    CHECK(lambda_v(eich, 2) == q + 1);
  }
}

TEST_CASE("local unit indices") {
  auto hur = maximal_profile("2", Integer(2), 2, 2);
  LocalOrderProfile lip;
  lip.place = "2";
  lip.q = 2;
  lip.d = 2;
  lip.disc_abs = 4;
  lip.kappa_size = 2;
  lip.kappa_units = 1;
  CHECK(local_unit_index(lip, hur) == 3);
  CHECK(local_unit_index(hur, hur) == 1);
  // The index is the ratio of the local mass factors.
  CHECK(local_unit_index(lip, hur) == lambda_v(lip, 2) / lambda_v(hur, 2));
}

TEST_CASE("eichler symbol from residue data") {
  KappaInfo split;
  split.cls = KappaClass::SplitPair;
  CHECK(eichler_from_kappa(split) == 1);
  KappaInfo field;
  field.cls = KappaClass::FieldExt;
  CHECK(eichler_from_kappa(field) == -1);
  KappaInfo base;
  base.cls = KappaClass::BaseField;
  CHECK(eichler_from_kappa(base) == 0);
  KappaInfo mat;
  mat.cls = KappaClass::Matrix;
  CHECK_THROWS_AS(eichler_from_kappa(mat), DomainError);
}
