#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "massforge/field_context.hpp"

using namespace massforge;

TEST_CASE("rational context") {
  auto ctx = FieldContext::rationals();
  CHECK(ctx.kind == FieldKind::Rationals);
  CHECK(ctx.S.size() == 1);
  CHECK(ctx.infinite_place().is_real());
  CHECK(ctx.h == 1);
  CHECK(ctx.zeta_abs(1) == Rat(1, 12));
  CHECK(ctx.unit_count() == 2);
  CHECK(!ctx.is_ff());

  auto p = ctx.parse_place("7");
  CHECK(p.kind == Place::Kind::RatPrime);
  CHECK(p.qv == 7);
  CHECK(p.finite_prime());
  CHECK(!ctx.in_S(p));
  CHECK(ctx.in_S(ctx.parse_place("infty")));
  CHECK_THROWS_AS(ctx.parse_place("6"), SchemaError);
  CHECK_THROWS_AS(ctx.zeta_abs(2), DomainError);
}

TEST_CASE("rational context with enlarged S") {
  auto ctx = FieldContext::rationals({"2"});
  CHECK(ctx.S.size() == 2);
  CHECK(ctx.in_S(ctx.parse_place("2")));
  CHECK(!ctx.in_S(ctx.parse_place("3")));
  CHECK_THROWS_AS(ctx.unit_count(), DomainError);  // infinite unit group
  auto D = ctx.zdom();
  CHECK(D.is_unit(Rat(1, 2)));
  CHECK(!D.is_unit(Rat(1, 3)));
}

TEST_CASE("function field context") {
  auto ctx = FieldContext::function_field(Integer(4));
  CHECK(ctx.is_ff());
  CHECK(ctx.q == 4);
  CHECK(ctx.S.size() == 1);
  CHECK(ctx.infinite_place().kind == Place::Kind::FfInf);
  CHECK(ctx.infinite_place().qv == 4);
  CHECK(ctx.h == 1);
  CHECK(ctx.zeta_abs(1) == Rat(1, 45));   // (4-1)(16-1)
  CHECK(ctx.zeta_abs(2) == Rat(1, 945));  // (16-1)(64-1)
  CHECK(ctx.unit_count() == 3);

  auto v = ctx.parse_place("t");
  CHECK(v.kind == Place::Kind::FfPrime);
  CHECK(v.deg == 1);
  CHECK(v.qv == 4);
  // t^2+t+1 has roots in F_4, so it is reducible there and rejected.
  CHECK_THROWS_AS(ctx.parse_place("t^2+t+1"), SchemaError);
}

TEST_CASE("function field places") {
  auto ctx2 = FieldContext::function_field(Integer(2));
  auto w = ctx2.parse_place("t^2+t+1");
  CHECK(w.deg == 2);
  CHECK(w.qv == 4);
  CHECK_THROWS_AS(ctx2.parse_place("t^2+1"), SchemaError);  // (t+1)^2
  CHECK_THROWS_AS(FieldContext::function_field(Integer(6)), SchemaError);

  auto ctx3 = FieldContext::function_field(Integer(3), {"t"});
  CHECK(ctx3.S.size() == 2);
  CHECK(ctx3.in_S(ctx3.parse_place("t")));
  auto D = ctx3.fdom();
  CHECK(D.is_unit(D.parse_el("1/t")));
}

TEST_CASE("custom context") {
  Place inf;
  inf.kind = Place::Kind::RealInf;
  inf.label = "infty";
  Place v2;
  v2.kind = Place::Kind::Opaque;
  v2.label = "P2";
  v2.qv = 2;
  Place v5;
  v5.kind = Place::Kind::Opaque;
  v5.label = "P5";
  v5.qv = 25;
  auto ctx = FieldContext::custom(Integer(2), {Rat(1, 12), Rat(7, 120)}, {inf},
                                  {v2, v5});
  CHECK(ctx.kind == FieldKind::Custom);
  CHECK(ctx.h == 2);
  CHECK(ctx.zeta_abs(1) == Rat(1, 12));
  CHECK(ctx.zeta_abs(2) == Rat(7, 120));
  CHECK_THROWS_AS(ctx.zeta_abs(3), DomainError);
  CHECK_THROWS_AS(ctx.unit_count(), DomainError);
  CHECK(ctx.parse_place("P5").qv == 25);
  CHECK(ctx.parse_place("infty").is_real());
  CHECK_THROWS_AS(ctx.parse_place("P3"), SchemaError);
  CHECK_THROWS_AS(FieldContext::custom(Integer(1), {}, {}), SchemaError);
}

TEST_CASE("hilbert symbols over Q") {
  auto ctx = FieldContext::rationals();
  auto at = [&](const char* s) { return ctx.parse_place(s); };
  CHECK(hilbert_symbol(Rat(-1), Rat(-1), at("infty")) == -1);
  CHECK(hilbert_symbol(Rat(-1), Rat(-1), at("2")) == -1);
  CHECK(hilbert_symbol(Rat(-1), Rat(-1), at("3")) == 1);
  CHECK(hilbert_symbol(Rat(-1), Rat(-1), at("5")) == 1);
  CHECK(hilbert_symbol(Rat(2), Rat(3), at("infty")) == 1);
  CHECK(hilbert_symbol(Rat(-1), Rat(3), at("3")) == -1);   // -1 nonsquare mod 3
  CHECK(hilbert_symbol(Rat(-1), Rat(5), at("5")) == 1);    // -1 = 4 mod 5
  CHECK(hilbert_symbol(Rat(2), Rat(7), at("7")) == 1);     // 2 = 9 mod 7
  CHECK(hilbert_symbol(Rat(3), Rat(7), at("7")) == -1);
  CHECK(hilbert_symbol(Rat(1, 2), Rat(-6), at("2")) ==
        hilbert_symbol(Rat(2), Rat(-6), at("2")));  // squares drop out
}

TEST_CASE("ramified places over Q") {
  auto ctx = FieldContext::rationals();
  auto ram = ramified_places(ctx, Rat(-1), Rat(-1));
  REQUIRE(ram.size() == 2);
  CHECK(ram[0].is_real());
  CHECK(ram[1].qv == 2);

  auto ram11 = ramified_places(ctx, Rat(-1), Rat(-11));
  REQUIRE(ram11.size() == 2);
  CHECK(ram11[0].is_real());
  CHECK(ram11[1].qv == 11);

  auto ram23 = ramified_places(ctx, Rat(-1), Rat(-23));
  // (-1,-23) ramifies at infty and 23 only; the symbol at 2 is trivial.
  REQUIRE(ram23.size() == 2);
  CHECK(ram23[0].is_real());
  CHECK(ram23[1].qv == 23);

  // Split algebras: no ramification.
  CHECK(ramified_places(ctx, Rat(1), Rat(5)).empty());
  CHECK(ramified_places(ctx, Rat(2), Rat(2)).empty());
}

TEST_CASE("hilbert reciprocity spot checks") {
  auto ctx = FieldContext::rationals();
  // The ramification locus of (a,b) is always even, for a, b running over a
  // small grid including 2-adic subtleties.
  for (long a : {-1, 2, -2, 3, -3, 5, 6, -6, 10}) {
    for (long b : {-1, 2, -2, 3, -3, 5, 6, -6, 10}) {
      if (a == 1 || b == 1) continue;
      auto ram = ramified_places(ctx, Rat(a), Rat(b));
      CHECK(ram.size() % 2 == 0);
    }
  }
}

TEST_CASE("hilbert symbols over function fields") {
  auto ctx = FieldContext::function_field(Integer(3));
  auto D = ctx.fdom();
  FqRat t = D.parse_el("t");
  FqRat m1 = D.parse_el("-1");
  // -1 is a nonsquare in F_3, so (-1, t) ramifies exactly at t and infty.
  auto ram = ramified_places(ctx, m1, t);
  REQUIRE(ram.size() == 2);
  CHECK(ram[0].kind == Place::Kind::FfInf);
  CHECK(ram[1].label == "t");
  CHECK(hilbert_symbol(m1, t, ctx.parse_place("t")) == -1);
  CHECK(hilbert_symbol(m1, t, ctx.parse_place("t+1")) == 1);

  // Squares are trivial everywhere.
  CHECK(hilbert_symbol(D.parse_el("t^2"), t, ctx.parse_place("t")) == 1);

  // Char 2 function fields refuse quaternion symbols.
  auto ctx2 = FieldContext::function_field(Integer(2));
  auto D2 = ctx2.fdom();
  CHECK_THROWS_AS(
      hilbert_symbol(D2.parse_el("t"), D2.parse_el("t+1"), ctx2.parse_place("t")),
      DomainError);
}

TEST_CASE("first nonsquare") {
  CHECK(first_nonsquare(GF::prime(3)) == 2);
  auto F5 = GF::prime(5);
  auto c = first_nonsquare(F5);
  CHECK(!F5->is_square(c));
  CHECK_THROWS_AS(first_nonsquare(GF::prime(2)), DomainError);
}
