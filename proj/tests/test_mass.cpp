#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "massforge/mass.hpp"

using namespace massforge;

namespace {

AlgebraSpec bp(const FieldContext& ctx, const std::string& p) {
  return quaternion_algebra({ctx.parse_place("infty"), ctx.parse_place(p)});
}

LocalOrderProfile lipschitz_profile() {
  LocalOrderProfile P;
  P.place = "2";
  P.q = 2;
  P.d = 2;
  P.disc_abs = 4;
  P.kappa_size = 2;
  P.kappa_units = 1;
  P.norm_index = 1;
  P.eichler = 0;
  return P;
}

LocalOrderProfile level_profile(long q) {
  LocalOrderProfile P;
  P.place = std::to_string(q);
  P.q = q;
  P.d = 1;
  P.disc_abs = q;
  P.kappa_size = q * q;
  P.kappa_units = (q - 1) * (q - 1);
  P.norm_index = 1;
  P.normalizer_index = 2;
  P.eichler = 1;
  return P;
}

bool has_trace(const MassReport& rep, const std::string& label, const Rat& v) {
  return std::any_of(rep.trace.begin(), rep.trace.end(), [&](const TraceEntry& e) {
    return e.label == label && e.value == v;
  });
}

}  // namespace

TEST_CASE("algebra construction and validation") {
  auto ctx = FieldContext::rationals();
  auto alg = bp(ctx, "2");
  CHECK(alg.n == 2);
  CHECK(alg.local_index(ctx.parse_place("2")) == 2);
  CHECK(alg.local_index(ctx.parse_place("3")) == 1);
  CHECK(alg.is_ramified(ctx.parse_place("infty")));

  // Quaternion algebras ramify at an even number of places.
  CHECK_THROWS_AS(quaternion_algebra({ctx.parse_place("infty")}), DomainError);
  CHECK_THROWS_AS(quaternion_algebra({ctx.parse_place("2"), ctx.parse_place("2")}),
                  DomainError);

  // General invariants: must sum to an integer with order lcm n.
  auto d2 = division_algebra(ctx, 2, {{"infty", Rat(1, 2)}, {"7", Rat(1, 2)}});
  CHECK(d2.local_index(ctx.parse_place("7")) == 2);
  CHECK_THROWS_AS(division_algebra(ctx, 2, {{"2", Rat(1, 2)}}), DomainError);
  CHECK_THROWS_AS(
      division_algebra(ctx, 4, {{"2", Rat(1, 2)}, {"3", Rat(1, 2)}}),
      DomainError);
  CHECK_THROWS_AS(
      division_algebra(ctx, 3, {{"infty", Rat(1, 3)}, {"2", Rat(2, 3)}}),
      DomainError);  // real invariants are 0 or 1/2

  // Definite means local index n everywhere on S.
  CHECK_NOTHROW(require_definite(ctx, alg));
  CHECK_THROWS_AS(require_definite(ctx, quaternion_algebra({ctx.parse_place("2"),
                                                            ctx.parse_place("11")})),
                  DomainError);
  auto ctx3 = FieldContext::rationals({"3"});
  CHECK_THROWS_AS(require_definite(ctx3, bp(ctx3, "2")), DomainError);

  // Degree > 2 needs a function field.
  auto ff2 = FieldContext::function_field(2);
  auto cubic = division_algebra(ff2, 3, {{"infty", Rat(1, 3)}, {"t", Rat(2, 3)}});
  CHECK_NOTHROW(require_definite(ff2, cubic));
  auto nf3 = division_algebra(ctx, 3, {{"2", Rat(1, 3)}, {"3", Rat(2, 3)}});
  CHECK_THROWS_AS(require_definite(ctx, nf3), DomainError);
}

TEST_CASE("hurwitz quaternion mass report") {
  auto ctx = FieldContext::rationals();
  auto rep = evaluate_mass(ctx, bp(ctx, "2"), {});
  CHECK(rep.mass_dr == Rat(1, 12));
  CHECK(rep.mass_gad == Rat(1, 12));
  CHECK(rep.mass_g1 == Rat(1, 24));
  CHECK(rep.c_su == Rat(2));
  CHECK(rep.c_ad == Rat(1));
  CHECK(rep.norm_index_global == 1);
  REQUIRE(rep.type_mass.has_value());
  CHECK(*rep.type_mass == Rat(1, 24));
  CHECK(*rep.type_mass_mult == Rat(1, 6));
  REQUIRE(rep.korner.has_value());
  CHECK(*rep.korner == Rat(1, 12));
  REQUIRE(rep.unnormalized.has_value());
  CHECK(*rep.unnormalized == Rat(1, 24));
  CHECK(has_trace(rep, "h", Rat(1)));
  CHECK(has_trace(rep, "zeta(-1)", Rat(1, 12)));
  CHECK(has_trace(rep, "lambda(2)", Rat(1)));
  CHECK(mass_of(ctx, bp(ctx, "2"), {}) == Rat(1, 12));
}

TEST_CASE("maximal orders across small primes") {
  auto ctx = FieldContext::rationals();
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 29L}) {
    auto alg = bp(ctx, std::to_string(p));
    auto rep = evaluate_mass(ctx, alg, {});
    CHECK(rep.mass_dr == Rat(p - 1, 12));
    auto mm = maximal_masses(ctx, alg);
    CHECK(mm.mass_dr == rep.mass_dr);
    CHECK(mm.mass_gad == rep.mass_gad);
    CHECK(mm.mass_g1 == rep.mass_g1);
  }
  auto rep11 = evaluate_mass(ctx, bp(ctx, "11"), {});
  CHECK(rep11.mass_dr == Rat(5, 6));
  CHECK(*rep11.type_mass == Rat(5, 12));
  CHECK(evaluate_mass(ctx, bp(ctx, "29"), {}).mass_dr == Rat(7, 3));
}

TEST_CASE("non-maximal profiles drive the same engine") {
  auto ctx = FieldContext::rationals();
  auto alg = bp(ctx, "2");
  auto rep = evaluate_mass(ctx, alg, {lipschitz_profile()});
  CHECK(rep.mass_dr == Rat(1, 4));
  CHECK(has_trace(rep, "lambda(2)", Rat(3)));
  REQUIRE(rep.korner.has_value());
  CHECK(*rep.korner == Rat(1, 4));
  // No normalizer index at 2, so no type mass.
  CHECK(!rep.type_mass.has_value());

  // Dropping the residue symbol silences the closed form but not the engine.
  auto blind = lipschitz_profile();
  blind.eichler.reset();
  auto rep2 = evaluate_mass(ctx, alg, {blind});
  CHECK(rep2.mass_dr == Rat(1, 4));
  CHECK(!rep2.korner.has_value());

  // Level 2 structure inside the algebra ramified at 11.
  auto rep3 = evaluate_mass(ctx, bp(ctx, "11"), {level_profile(2)});
  CHECK(rep3.mass_dr == Rat(5, 2));
  CHECK(*rep3.korner == Rat(5, 2));
  CHECK(*rep3.type_mass == Rat(5, 8));

  // (p-1)(q+1)/12 across a small grid.
  for (long p : {3L, 5L, 7L})
    for (long q : {2L, 3L, 5L}) {
      if (p == q) continue;
      auto m = mass_of(ctx, bp(ctx, std::to_string(p)), {level_profile(q)});
      CHECK(m == Rat((p - 1) * (q + 1), 12));
    }

  // Local data at a place of S is rejected.
  auto ctx2 = FieldContext::rationals({"2"});
  CHECK_THROWS_AS(evaluate_mass(ctx2, bp(ctx2, "2"), {lipschitz_profile()}),
                  DomainError);
  // So is duplicate local data.
  CHECK_THROWS_AS(
      evaluate_mass(ctx, alg, {lipschitz_profile(), lipschitz_profile()}),
      DomainError);
  // Without the maximal-elsewhere assumption, ramified places need data.
  CHECK_THROWS_AS(evaluate_mass(ctx, bp(ctx, "11"), {}, false), DomainError);
}

TEST_CASE("enlarging S") {
  auto s1 = FieldContext::rationals();
  auto s2 = FieldContext::rationals({"2"});
  auto r1 = evaluate_mass(s1, bp(s1, "2"), {});
  auto r2 = evaluate_mass(s2, bp(s2, "2"), {});
  CHECK(r1.mass_dr == Rat(1, 12));
  CHECK(r2.mass_dr == Rat(1, 24));
  CHECK(r2.c_ad == Rat(1, 2));
  CHECK(r1.c_su == Rat(2));
  CHECK(r2.c_su == Rat(1));
  // The norm-one mass does not depend on S.
  CHECK(r1.mass_g1 == Rat(1, 24));
  CHECK(r2.mass_g1 == Rat(1, 24));
  CHECK(!r2.unnormalized.has_value());
  auto mm2 = maximal_masses(s2, bp(s2, "2"));
  CHECK(mm2.mass_dr == Rat(1, 24));
  CHECK(mm2.mass_g1 == Rat(1, 24));
}

TEST_CASE("branch constants") {
  auto q = FieldContext::rationals();
  CHECK(c_factor(q, 2, Integer(1)) == Rat(2));
  CHECK(c_factor(q, 2, Integer(2)) == Rat(4));
  CHECK(c_factor(FieldContext::rationals({"2"}), 2, Integer(1)) == Rat(1));
  auto f3 = FieldContext::function_field(3);
  CHECK(c_factor(f3, 2, Integer(1)) == Rat(1));
  CHECK(c_factor(FieldContext::function_field(3, {"t"}), 2, Integer(1)) ==
        Rat(1, 2));
  CHECK(c_factor(f3, 3, Integer(2)) == Rat(2));
  CHECK_THROWS_AS(c_factor(q, 2, Integer(0)), DomainError);
}

TEST_CASE("global norm index scales the branch constant") {
  auto ctx = FieldContext::rationals();
  // 2 i, 2 j, 2 k over the integers: local norm index 2 at the place 2.
  LocalOrderProfile P;
  P.place = "2";
  P.q = 2;
  P.d = 2;
  P.disc_abs = 32;
  P.kappa_size = 2;
  P.kappa_units = 1;
  P.norm_index = 2;
  P.eichler = 0;
  auto rep = evaluate_mass(ctx, bp(ctx, "2"), {P});
  CHECK(rep.mass_dr == Rat(2));
  CHECK(rep.norm_index_global == 2);
  CHECK(rep.c_su == Rat(4));
  CHECK(rep.mass_gad / rep.mass_g1 == Rat(4));
}

TEST_CASE("order comparison ratios") {
  auto ctx = FieldContext::rationals();
  auto alg = bp(ctx, "2");
  auto cmp = compare_orders(ctx, alg, {lipschitz_profile()}, {});
  CHECK(cmp.mass_ratio == Rat(3));
  REQUIRE(cmp.local_factors.size() == 1);
  CHECK(cmp.local_factors[0].first == "2");
  CHECK(cmp.local_factors[0].second == Rat(3));

  auto self = compare_orders(ctx, alg, {lipschitz_profile()}, {lipschitz_profile()});
  CHECK(self.mass_ratio == Rat(1));
  CHECK(self.local_factors.empty());

  auto inv = compare_orders(ctx, alg, {}, {lipschitz_profile()});
  CHECK(inv.mass_ratio == Rat(1, 3));
}

TEST_CASE("function field masses") {
  auto f3 = FieldContext::function_field(3);
  auto alg = bp(f3, "t");
  auto rep = evaluate_mass(f3, alg, {});
  CHECK(rep.mass_dr == Rat(1, 4));
  CHECK(rep.c_su == Rat(1));
  CHECK(rep.mass_g1 == Rat(1, 4));
  REQUIRE(rep.korner.has_value());
  CHECK(*rep.korner == Rat(1, 4));
  REQUIRE(rep.unnormalized.has_value());
  CHECK(*rep.unnormalized == Rat(1, 8));
  CHECK(unnormalized_mass(f3, rep.mass_dr) == Rat(1, 8));
  CHECK(has_trace(rep, "lambda(infty)", Rat(2)));
  CHECK(has_trace(rep, "lambda(t)", Rat(2)));
  auto mm = maximal_masses(f3, alg);
  CHECK(mm.mass_dr == Rat(1, 4));

  // 1/(q+1) for the algebra ramified at t and infinity.
  for (long q : {2L, 3L, 4L, 5L, 7L, 9L}) {
    auto ctx = FieldContext::function_field(q);
    CHECK(mass_of(ctx, bp(ctx, "t"), {}) == Rat(1, q + 1));
  }

  // Degree 3 over F_2(t).
  auto f2 = FieldContext::function_field(2);
  auto cubic = division_algebra(f2, 3, {{"infty", Rat(1, 3)}, {"t", Rat(2, 3)}});
  auto rc = evaluate_mass(f2, cubic, {});
  CHECK(rc.mass_dr == Rat(1, 7));
  CHECK(rc.mass_g1 == Rat(1, 7));
  auto mmc = maximal_masses(f2, cubic);
  CHECK(mmc.mass_dr == Rat(1, 7));
  // Ramification confined to a place of S still needs index n there;
  // an invariant of order 3 at t alone cannot give a division algebra.
  CHECK_THROWS_AS(division_algebra(f2, 3, {{"t", Rat(1, 3)}}), DomainError);
}

TEST_CASE("custom field contexts") {
  // A stand-in field with class number 2 and a scripted zeta value.
  Place inf;
  inf.kind = Place::Kind::RealInf;
  inf.label = "infty";
  Place p2;
  p2.kind = Place::Kind::Opaque;
  p2.label = "P2";
  p2.qv = 2;
  auto ctx = FieldContext::custom(Integer(2), {Rat(1, 12)}, {inf}, {p2});
  auto alg = quaternion_algebra({inf, p2});
  auto rep = evaluate_mass(ctx, alg, {});
  CHECK(rep.mass_dr == Rat(2) * Rat(1, 12) * Rat(1));
  CHECK(rep.mass_gad == Rat(1, 12));
  CHECK(!rep.unnormalized.has_value());
}
