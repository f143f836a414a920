#include "massforge/mass.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace massforge {

namespace {

Rat rat_int_pow(const Integer& base, long e) {
  Rat out{1};
  Rat b = e >= 0 ? Rat(base) : Rat(1, base);
  long k = e >= 0 ? e : -e;
  for (long i = 0; i < k; ++i) out *= b;
  return out;
}

bool number_field_like(const FieldContext& ctx) {
  for (const auto& v : ctx.S)
    if (v.is_real()) return true;
  return false;
}

long real_count(const FieldContext& ctx) {
  long n = 0;
  for (const auto& v : ctx.S)
    if (v.is_real()) ++n;
  return n;
}

// One finite place outside S that contributes a nontrivial local factor:
// either user-supplied data or a synthesized maximal order at a ramified
// place.
struct PlanEntry {
  std::string label;
  Integer qv;
  long d = 1;
  const LocalOrderProfile* prof = nullptr;  // null: maximal fallback
};

std::vector<PlanEntry> local_plan(const FieldContext& ctx,
                                  const AlgebraSpec& alg,
                                  const std::vector<LocalOrderProfile>& profiles,
                                  bool assume_maximal_elsewhere) {
  std::vector<PlanEntry> plan;
  std::set<std::string> seen;
  for (const auto& P : profiles) {
    Place v = ctx.parse_place(P.place);
    if (v.is_real())
      throw DomainError("local order data makes no sense at a real place");
    if (ctx.in_S(v))
      throw DomainError("place '" + v.label +
                        "' lies in S; its local factor is fixed there");
    if (!seen.insert(v.label).second)
      throw DomainError("duplicate local data at place '" + v.label + "'");
    if (P.q != v.qv)
      throw DomainError("residue size mismatch at place '" + v.label +
                        "': profile says " + int_string(P.q) + ", place has " +
                        int_string(v.qv));
    long d = alg.local_index(v);
    if (P.d != d)
      throw DomainError("local index mismatch at place '" + v.label +
                        "': profile says " + std::to_string(P.d) +
                        ", algebra has " + std::to_string(d));
    plan.push_back({v.label, v.qv, d, &P});
  }
  for (const auto& rp : alg.ramified) {
    if (rp.place.is_real() || ctx.in_S(rp.place)) continue;
    if (seen.count(rp.place.label)) continue;
    if (!assume_maximal_elsewhere)
      throw DomainError("no local data at the ramified place '" +
                        rp.place.label + "'");
    plan.push_back({rp.place.label, rp.place.qv, rp.d, nullptr});
  }
  return plan;
}

Rat plan_lambda(const PlanEntry& e, long n) {
  if (e.prof) return lambda_v(*e.prof, n);
  return lambda_v(maximal_profile(e.label, e.qv, e.d, n), n);
}

}  // namespace

long AlgebraSpec::local_index(const Place& v) const {
  for (const auto& rp : ramified)
    if (rp.place == v) return rp.d;
  return 1;
}

AlgebraSpec quaternion_algebra(const std::vector<Place>& ram) {
  if (ram.size() % 2 != 0)
    throw DomainError("a quaternion algebra ramifies at an even number of places");
  AlgebraSpec alg;
  alg.n = 2;
  for (const auto& v : ram) alg.ramified.push_back({v, 1, 2});
  std::sort(alg.ramified.begin(), alg.ramified.end(),
            [](const RamifiedPlace& x, const RamifiedPlace& y) {
              return x.place < y.place;
            });
  for (std::size_t i = 1; i < alg.ramified.size(); ++i)
    if (alg.ramified[i].place == alg.ramified[i - 1].place)
      throw DomainError("duplicate ramified place '" +
                        alg.ramified[i].place.label + "'");
  return alg;
}

AlgebraSpec division_algebra(
    const FieldContext& ctx, long n,
    const std::vector<std::pair<std::string, Rat>>& invariants) {
  if (n < 2) throw DomainError("the degree must be at least 2");
  AlgebraSpec alg;
  alg.n = n;
  Rat sum{0};
  for (const auto& [label, frac] : invariants) {
    Place v = ctx.parse_place(label);
    sum += frac;
    Integer den = rat_den(frac);
    Integer num = ((rat_num(frac) % den) + den) % den;
    if (num == 0) continue;  // trivial invariant: unramified
    if (den > Integer(n))
      throw DomainError("invariant order at '" + v.label +
                        "' exceeds the degree");
    long d = static_cast<long>(den);
    long r = static_cast<long>(num);
    if (n % d != 0)
      throw DomainError("invariant order at '" + v.label +
                        "' does not divide the degree");
    if (v.is_real() && d != 2)
      throw DomainError("a real place carries the invariant 1/2 or 0");
    alg.ramified.push_back({v, r, d});
  }
  std::sort(alg.ramified.begin(), alg.ramified.end(),
            [](const RamifiedPlace& x, const RamifiedPlace& y) {
              return x.place < y.place;
            });
  for (std::size_t i = 1; i < alg.ramified.size(); ++i)
    if (alg.ramified[i].place == alg.ramified[i - 1].place)
      throw DomainError("duplicate invariant at place '" +
                        alg.ramified[i].place.label + "'");
  if (rat_den(sum) != 1)
    throw DomainError("local invariants must sum to an integer, got " +
                      rat_string(sum));
  long l = 1;
  for (const auto& rp : alg.ramified) l = std::lcm(l, rp.d);
  if (l != n)
    throw DomainError(
        "not a division algebra: the invariant orders have lcm " +
        std::to_string(l) + ", need " + std::to_string(n));
  return alg;
}

void require_definite(const FieldContext& ctx, const AlgebraSpec& alg) {
  if (alg.n < 2) throw DomainError("the degree must be at least 2");
  if (number_field_like(ctx) && alg.n != 2)
    throw DomainError(
        "definiteness over a number field forces a quaternion algebra");
  for (const auto& v : ctx.S) {
    long d = alg.local_index(v);
    if (d != alg.n)
      throw DomainError("not definite: the place '" + v.label +
                        "' of S has local index " + std::to_string(d) +
                        ", need " + std::to_string(alg.n));
  }
}

Rat c_factor(const FieldContext& ctx, long n, const Integer& norm_index_global) {
  if (norm_index_global < 1)
    throw DomainError("the norm index must be positive");
  Rat c{norm_index_global};
  if (number_field_like(ctx))
    return c * rat_int_pow(2, real_count(ctx) + 1 - ctx.s_size());
  return c * rat_int_pow(n, 1 - ctx.s_size());
}

MassReport evaluate_mass(const FieldContext& ctx, const AlgebraSpec& alg,
                         const std::vector<LocalOrderProfile>& profiles,
                         bool assume_maximal_elsewhere) {
  require_definite(ctx, alg);
  const long n = alg.n;
  MassReport rep;

  Rat mass{ctx.class_number()};
  rep.trace.push_back({"h", Rat(ctx.class_number())});

  rep.c_ad = rat_int_pow(n, 1 - ctx.s_size());
  mass *= rep.c_ad;
  rep.trace.push_back({"n^-(|S|-1)", rep.c_ad});

  for (long i = 1; i <= n - 1; ++i) {
    Rat z = ctx.zeta_abs(i);
    mass *= z;
    rep.trace.push_back({"zeta(-" + std::to_string(i) + ")", z});
  }

  // Places of S contribute the factor of the maximal local order of the
  // division part; real places contribute nothing.
  for (const auto& v : ctx.S) {
    if (v.is_real()) continue;
    Rat lam = lambda_max(v.qv, n, n);
    mass *= lam;
    rep.trace.push_back({"lambda(" + v.label + ")", lam});
  }

  auto plan = local_plan(ctx, alg, profiles, assume_maximal_elsewhere);
  for (const auto& e : plan) {
    Rat lam = plan_lambda(e, n);
    mass *= lam;
    rep.trace.push_back({"lambda(" + e.label + ")", lam});
    if (e.prof) rep.norm_index_global *= e.prof->norm_index;
  }

  rep.mass_dr = mass;
  rep.mass_gad = mass / Rat(ctx.class_number());
  rep.c_su = c_factor(ctx, n, rep.norm_index_global);
  rep.mass_g1 = rep.mass_gad / rep.c_su;

  // Mass of the types: divide the adjoint mass by the product of local
  // normalizer indices, when each one is known.  The multiplied reading is
  // reported alongside for comparison.
  bool have_normalizers = true;
  Integer nprod{1};
  for (const auto& e : plan) {
    if (e.prof) {
      if (!e.prof->normalizer_index) {
        have_normalizers = false;
        break;
      }
      nprod *= *e.prof->normalizer_index;
    } else {
      nprod *= Integer(e.d);
    }
  }
  if (have_normalizers) {
    rep.type_mass = rep.mass_gad / Rat(nprod);
    rep.type_mass_mult = rep.mass_gad * Rat(nprod);
  }

  if (n == 2)
    rep.korner = korner_mass(ctx, alg, profiles, assume_maximal_elsewhere);

  if (ctx.s_size() == 1 && ctx.kind != FieldKind::Custom)
    rep.unnormalized = rep.mass_dr / Rat(ctx.unit_count());

  return rep;
}

Rat mass_of(const FieldContext& ctx, const AlgebraSpec& alg,
            const std::vector<LocalOrderProfile>& profiles,
            bool assume_maximal_elsewhere) {
  return evaluate_mass(ctx, alg, profiles, assume_maximal_elsewhere).mass_dr;
}

MaximalMasses maximal_masses(const FieldContext& ctx, const AlgebraSpec& alg) {
  require_definite(ctx, alg);
  const long n = alg.n;
  Rat zp{1};
  for (long i = 1; i <= n - 1; ++i) zp *= ctx.zeta_abs(i);
  Rat lp{1};
  for (const auto& rp : alg.ramified) {
    if (rp.place.is_real()) continue;
    lp *= lambda_max(rp.place.qv, rp.d, n);
  }
  MaximalMasses out;
  out.mass_gad = rat_int_pow(n, 1 - ctx.s_size()) * zp * lp;
  out.mass_dr = Rat(ctx.class_number()) * out.mass_gad;
  if (number_field_like(ctx))
    out.mass_g1 = rat_int_pow(2, -real_count(ctx)) * zp * lp;
  else
    out.mass_g1 = zp * lp;
  return out;
}

std::optional<Rat> korner_mass(const FieldContext& ctx, const AlgebraSpec& alg,
                               const std::vector<LocalOrderProfile>& profiles,
                               bool assume_maximal_elsewhere) {
  if (alg.n != 2)
    throw DomainError("the Eichler-symbol closed form needs degree 2");
  require_definite(ctx, alg);
  Rat out = Rat(ctx.class_number()) * ctx.zeta_abs(1) *
            rat_int_pow(2, 1 - ctx.s_size());
  auto place_factor = [](const Integer& q, const Integer& disc_abs, int e) {
    Rat f{disc_abs};
    f *= Rat(1) - Rat(1, q * q);
    f /= Rat(1) - Rat(e, q);
    return f;
  };
  // Non-real places of S carry the maximal order of the local division
  // algebra: discriminant of norm q_v, residue field quadratic over kappa(v).
  for (const auto& v : ctx.S) {
    if (v.is_real()) continue;
    out *= place_factor(v.qv, v.qv, -1);
  }
  auto plan = local_plan(ctx, alg, profiles, assume_maximal_elsewhere);
  for (const auto& e : plan) {
    if (e.prof) {
      const auto& P = *e.prof;
      if (P.d == 1 && P.disc_abs == 1) continue;  // split maximal
      if (!P.eichler) return std::nullopt;
      out *= place_factor(P.q, P.disc_abs, *P.eichler);
    } else {
      out *= place_factor(e.qv, e.qv, -1);
    }
  }
  return out;
}

OrderComparison compare_orders(const FieldContext& ctx, const AlgebraSpec& alg,
                               const std::vector<LocalOrderProfile>& r_profiles,
                               const std::vector<LocalOrderProfile>& r2_profiles) {
  auto plan1 = local_plan(ctx, alg, r_profiles, true);
  auto plan2 = local_plan(ctx, alg, r2_profiles, true);
  std::map<std::string, const PlanEntry*> m1, m2;
  for (const auto& e : plan1) m1[e.label] = &e;
  for (const auto& e : plan2) m2[e.label] = &e;
  std::set<std::string> labels;
  for (const auto& [k, v] : m1) labels.insert(k);
  for (const auto& [k, v] : m2) labels.insert(k);

  OrderComparison cmp;
  Rat product{1};
  for (const auto& label : labels) {
    auto it1 = m1.find(label);
    auto it2 = m2.find(label);
    const PlanEntry* e = it1 != m1.end() ? it1->second : it2->second;
    LocalOrderProfile p1 = it1 != m1.end() && it1->second->prof
                               ? *it1->second->prof
                               : maximal_profile(label, e->qv, e->d, alg.n);
    LocalOrderProfile p2 = it2 != m2.end() && it2->second->prof
                               ? *it2->second->prof
                               : maximal_profile(label, e->qv, e->d, alg.n);
    Rat f = local_unit_index(p1, p2);
    if (f != 1) cmp.local_factors.push_back({label, f});
    product *= f;
  }
  cmp.mass_ratio = mass_of(ctx, alg, r_profiles) / mass_of(ctx, alg, r2_profiles);
  if (cmp.mass_ratio != product)
    throw DomainError("mass ratio " + rat_string(cmp.mass_ratio) +
                      " disagrees with the local unit-index product " +
                      rat_string(product));
  return cmp;
}

Rat unnormalized_mass(const FieldContext& ctx, const Rat& mass_dr) {
  return mass_dr / Rat(ctx.unit_count());
}

}  // namespace massforge
