// massforge: exact mass computations for orders in definite quaternion and
// division algebras, with lattice-level verification over Z.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "massforge/json_io.hpp"
#include "massforge/local_invariants.hpp"
#include "massforge/mass.hpp"
#include "massforge/oracle.hpp"
#include "massforge/orders.hpp"
#include "massforge/parallel.hpp"

namespace mf = massforge;
using nlohmann::json;

namespace {

mf::MassReport report_of(const mf::ResolvedProblem& rp) {
  return mf::evaluate_mass(rp.ctx, rp.alg, rp.profiles,
                           rp.assume_maximal_elsewhere);
}

int cmd_mass(const std::string& input, bool as_json) {
  auto spec = mf::parse_problem_file(input);
  auto rp = mf::resolve_problem(spec);
  auto rep = report_of(rp);
  if (as_json || spec.options.format == "json")
    std::cout << mf::report_json(rep).dump(2) << "\n";
  else
    std::cout << mf::report_text(rep);
  return 0;
}

int cmd_local(const std::string& input, const std::string& place) {
  auto spec = mf::parse_problem_file(input);
  auto rp = mf::resolve_problem(spec);
  mf::Place pl = rp.ctx.parse_place(place);
  if (!pl.finite_prime() && rp.ctx.kind != mf::FieldKind::Custom)
    throw mf::DomainError("local data lives at finite places");
  long d = rp.alg.local_index(pl);
  mf::LocalOrderProfile P;
  if (rp.zorder) {
    auto spot = mf::make_spot(rp.zalg->D, mf::parse_int(place));
    P = mf::profile_at(*rp.zalg, *rp.zorder, spot, d);
  } else if (rp.forder) {
    const mf::GF& F = *rp.falg->D.F;
    auto spot = mf::make_spot(rp.falg->D, mf::poly::parse(F, place));
    P = mf::profile_at(*rp.falg, *rp.forder, spot, d);
  } else {
    P = mf::maximal_profile(pl.label, pl.qv, d, rp.alg.n);
    for (const auto& q : rp.profiles)
      if (q.place == pl.label) P = q;
  }
  json out = mf::profile_json(P);
  out["lambda"] = mf::rat_string(mf::lambda_v(P, rp.alg.n));
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& input, long long neighbor) {
  auto spec = mf::parse_problem_file(input);
  auto rp = mf::resolve_problem(spec);
  if (rp.ctx.kind != mf::FieldKind::Rationals || rp.ctx.S.size() != 1)
    throw mf::DomainError(
        "class enumeration runs over the rational field with S = {infty}");
  if (!rp.zorder)
    throw mf::DomainError("class enumeration needs a concrete order basis");
  auto rep = report_of(rp);
  mf::oracle::ClassSetOptions opts;
  if (neighbor >= 2)
    opts.neighbor_prime = mf::Integer(neighbor);
  else if (spec.options.neighbor_prime)
    opts.neighbor_prime = spec.options.neighbor_prime;
  auto classes =
      mf::oracle::right_ideal_classes(*rp.zalg, *rp.zorder, rep.mass_dr, opts);
  mf::Rat got = mf::oracle::mass_of_classes(classes);
  json out;
  json cl = json::array();
  for (const auto& rec : classes)
    cl.push_back(json{{"unit_index", mf::int_string(rec.unit_index)},
                      {"norm", mf::rat_string(rec.norm)}});
  out["classes"] = cl;
  out["class_count"] = classes.size();
  out["mass_enumerated"] = mf::rat_string(got);
  out["mass_formula"] = mf::rat_string(rep.mass_dr);
  out["match"] = (got == rep.mass_dr);
  std::cout << out.dump(2) << "\n";
  return 0;
}

template <class Dom>
json maximalized_json(const mf::FieldContext& ctx, const mf::AlgebraSpec& alg,
                      const mf::QAlg<Dom>& A, mf::MatT<Dom> B) {
  const Dom& D = A.D;
  std::vector<std::pair<mf::LocalSpot<Dom>, long>> targets;
  for (const auto& g : mf::disc_support(D, mf::disc_T(A, B))) {
    auto spot = mf::make_spot(D, g);
    mf::Place pl = ctx.parse_place(spot.label);
    targets.push_back({spot, alg.local_index(pl) > 1 ? 1 : 0});
  }
  B = mf::maximalize(A, B, targets);
  B = mf::lattice_canon(D, B);
  json out;
  out["reduced_disc"] = D.str(mf::reduced_disc(A, B));
  json rows = json::array();
  for (const auto& row : B)
    for (const auto& e : row) rows.push_back(D.str(e));
  out["basis"] = rows;
  return out;
}

int cmd_maximalize(const std::string& input) {
  auto spec = mf::parse_problem_file(input);
  auto rp = mf::resolve_problem(spec);
  json out;
  if (rp.zorder)
    out = maximalized_json(rp.ctx, rp.alg, *rp.zalg, *rp.zorder);
  else if (rp.forder)
    out = maximalized_json(rp.ctx, rp.alg, *rp.falg, *rp.forder);
  else
    throw mf::DomainError("maximalize needs a concrete order basis");
  std::cout << out.dump(2) << "\n";
  return 0;
}

std::pair<long, long> parse_range(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos)
    throw mf::SchemaError("range must look like 2..13");
  try {
    long a = std::stol(s.substr(0, dots));
    long b = std::stol(s.substr(dots + 2));
    if (a < 2 || b < a) throw mf::SchemaError("empty range '" + s + "'");
    return {a, b};
  } catch (const std::logic_error&) {
    throw mf::SchemaError("range must look like 2..13");
  }
}

std::string mass_row(long param, const mf::MassReport& rep) {
  std::ostringstream os;
  os << param << "\t" << mf::rat_string(rep.mass_dr) << "\t"
     << mf::rat_string(rep.mass_gad) << "\t" << mf::rat_string(rep.mass_g1);
  return os.str();
}

// Profile of the level-q Eichler structure at a split place: the residue ring
// is a split pair of residue fields sitting inside M_2.
mf::LocalOrderProfile eichler_level_profile(long q) {
  mf::LocalOrderProfile P;
  P.place = mf::int_string(q);
  P.q = q;
  P.d = 1;
  P.disc_abs = q;
  P.kappa_size = mf::Integer(q) * q;
  P.kappa_units = mf::Integer(q - 1) * (q - 1);
  P.norm_index = 1;
  P.normalizer_index = 2;
  P.eichler = 1;
  return P;
}

int cmd_table(const std::string& family, const std::string& range, long prime,
              const std::string& out_path) {
  auto [lo, hi] = parse_range(range);
  std::vector<long> params;
  std::function<std::string(std::size_t)> row_fn;

  if (family == "maximal-Bp-infty") {
    for (long x = lo; x <= hi; ++x)
      if (mf::is_prime_u64(x)) params.push_back(x);
    row_fn = [&params](std::size_t i) {
      long p = params[i];
      auto ctx = mf::FieldContext::rationals({});
      auto alg = mf::quaternion_algebra(
          {ctx.parse_place("infty"), ctx.parse_place(mf::int_string(p))});
      return mass_row(p, mf::evaluate_mass(ctx, alg, {}));
    };
  } else if (family == "eichler") {
    if (prime < 2 || !mf::is_prime_u64(prime))
      throw mf::SchemaError("the eichler family needs a prime -p");
    for (long x = lo; x <= hi; ++x)
      if (x != prime && mf::is_prime_u64(x)) params.push_back(x);
    row_fn = [&params, prime](std::size_t i) {
      long q = params[i];
      auto ctx = mf::FieldContext::rationals({});
      auto alg = mf::quaternion_algebra(
          {ctx.parse_place("infty"), ctx.parse_place(mf::int_string(prime))});
      return mass_row(
          q, mf::evaluate_mass(ctx, alg, {eichler_level_profile(q)}));
    };
  } else if (family == "fq-maximal") {
    for (long x = lo; x <= hi; ++x)
      if (mf::factor_integer(x).powers.size() == 1) params.push_back(x);
    row_fn = [&params](std::size_t i) {
      long q = params[i];
      auto ctx = mf::FieldContext::function_field(q, {});
      auto alg = mf::quaternion_algebra(
          {ctx.parse_place("infty"), ctx.parse_place("t")});
      return mass_row(q, mf::evaluate_mass(ctx, alg, {}));
    };
  } else {
    throw mf::SchemaError("unknown family '" + family + "'");
  }

  auto rows = mf::ordered_parallel_map<std::string>(params.size(), row_fn);
  std::ostringstream body;
  body << "# param\tmass_dr\tmass_gad\tmass_g1\n";
  for (const auto& r : rows) body << r << "\n";
  if (out_path == "-") {
    std::cout << body.str();
  } else {
    std::ofstream out(out_path);
    if (!out) throw mf::DomainError("cannot write '" + out_path + "'");
    out << body.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact mass formulas for orders in definite division algebras over "
      "global fields"};
  app.require_subcommand(1);

  std::string input = "-", place, family, range, out_path = "-";
  bool as_json = false;
  long table_p = 2;
  long long neighbor = 0;

  auto* mass = app.add_subcommand("mass", "evaluate the mass of an order");
  mass->add_option("-i,--input", input, "problem file (JSON, '-' for stdin)")
      ->required();
  mass->add_flag("--json", as_json, "emit JSON instead of text");

  auto* local = app.add_subcommand(
      "local", "local invariants of an order at one finite place");
  local->add_option("-i,--input", input, "problem file")->required();
  local->add_option("-p,--place", place, "place label, e.g. 2 or t^2+1")
      ->required();

  auto* verify = app.add_subcommand(
      "verify", "enumerate right ideal classes and check the mass");
  verify->add_option("-i,--input", input, "problem file")->required();
  verify->add_option("--neighbor-prime", neighbor,
                     "prime used to grow the class graph");

  auto* maxi =
      app.add_subcommand("maximalize", "grow an order to a maximal one");
  maxi->add_option("-i,--input", input, "problem file")->required();

  auto* table =
      app.add_subcommand("table", "tabulate masses for a parametric family");
  table
      ->add_option("--family", family,
                   "maximal-Bp-infty, eichler, or fq-maximal")
      ->required();
  table->add_option("--range", range, "parameter range, e.g. 2..13")
      ->required();
  table->add_option("-p,--prime", table_p,
                    "ramified prime for the eichler family");
  table->add_option("-o,--output", out_path, "output path ('-' for stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*mass) return cmd_mass(input, as_json);
    if (*local) return cmd_local(input, place);
    if (*verify) return cmd_verify(input, neighbor);
    if (*maxi) return cmd_maximalize(input);
    if (*table) return cmd_table(family, range, table_p, out_path);
  } catch (const mf::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const mf::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
