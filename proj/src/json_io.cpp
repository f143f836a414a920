#include "massforge/json_io.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "massforge/orders.hpp"

namespace massforge {

namespace {

using nlohmann::json;

const json& need(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw SchemaError(std::string("missing field '") + key + "'");
  return *it;
}

std::string need_string(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_string())
    throw SchemaError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::string string_or_number(const json& v, const char* what) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw SchemaError(std::string(what) + " must be a string or integer");
}

Integer get_integer(const json& v, const char* what) {
  if (v.is_number_integer()) return Integer(v.get<long long>());
  if (v.is_string()) return parse_int(v.get<std::string>());
  throw SchemaError(std::string(what) + " must be an integer or string");
}

Rat get_rat(const json& v, const char* what) {
  if (v.is_number_integer()) return Rat(v.get<long long>());
  if (v.is_string()) return parse_rat(v.get<std::string>());
  throw SchemaError(std::string(what) + " must be a rational string");
}

long get_small(const json& v, const char* what) {
  Integer n = get_integer(v, what);
  if (n < -(Integer(1) << 30) || n > (Integer(1) << 30))
    throw SchemaError(std::string(what) + " out of range");
  return static_cast<long>(n);
}

FieldContext parse_field(const json& j) {
  if (!j.is_object()) throw SchemaError("'field' must be an object");
  std::string kind = need_string(j, "kind");
  std::vector<std::string> S;
  if (j.count("S")) {
    const json& s = j.at("S");
    if (!s.is_array()) throw SchemaError("'S' must be an array of places");
    for (const auto& e : s) S.push_back(string_or_number(e, "place in S"));
  }
  if (kind == "Q") return FieldContext::rationals(S);
  if (kind == "Fq(t)")
    return FieldContext::function_field(get_integer(need(j, "q"), "'q'"), S);
  if (kind == "custom") {
    if (!S.empty())
      throw SchemaError("custom fields mark S membership per place");
    Integer h = get_integer(need(j, "h"), "'h'");
    std::vector<Rat> zeta;
    if (j.count("zeta")) {
      const json& z = j.at("zeta");
      if (!z.is_array()) throw SchemaError("'zeta' must be an array");
      for (const auto& e : z) zeta.push_back(get_rat(e, "zeta value"));
    }
    const json& pl = need(j, "places");
    if (!pl.is_array() || pl.empty())
      throw SchemaError("'places' must be a nonempty array");
    std::vector<Place> in_s, extra;
    for (const auto& e : pl) {
      if (!e.is_object()) throw SchemaError("each place must be an object");
      Place v;
      v.label = need_string(e, "label");
      bool real = e.value("real", false);
      v.kind = real ? Place::Kind::RealInf : Place::Kind::Opaque;
      if (e.count("q")) v.qv = get_integer(e.at("q"), "place residue size");
      if (e.value("in_S", false))
        in_s.push_back(v);
      else
        extra.push_back(v);
    }
    return FieldContext::custom(h, zeta, in_s, extra);
  }
  throw SchemaError("unknown field kind '" + kind + "'");
}

AlgebraInput parse_algebra(const json& j) {
  if (!j.is_object()) throw SchemaError("'algebra' must be an object");
  AlgebraInput a;
  if (j.count("a") || j.count("b")) {
    a.symbols = true;
    a.a = string_or_number(need(j, "a"), "'a'");
    a.b = string_or_number(need(j, "b"), "'b'");
    return a;
  }
  a.symbols = false;
  a.n = get_small(need(j, "n"), "'n'");
  const json& inv = need(j, "invariants");
  if (!inv.is_object()) throw SchemaError("'invariants' must be an object");
  for (auto it = inv.begin(); it != inv.end(); ++it)
    a.invariants.push_back({it.key(), get_rat(it.value(), "invariant")});
  return a;
}

OrderInput parse_order(const json& j) {
  if (!j.is_object()) throw SchemaError("'order' must be an object");
  OrderInput o;
  std::string kind = need_string(j, "kind");
  if (kind == "basis") {
    o.kind = OrderKind::Basis;
    const json& m = need(j, "matrix");
    if (!m.is_array() || m.size() != 16)
      throw SchemaError("'matrix' must be an array of 16 entries");
    for (const auto& e : m)
      o.basis.push_back(string_or_number(e, "matrix entry"));
  } else if (kind == "maximal") {
    o.kind = OrderKind::Maximal;
  } else if (kind == "eichler") {
    o.kind = OrderKind::Eichler;
    o.level = string_or_number(need(j, "level"), "'level'");
  } else if (kind == "local_data") {
    o.kind = OrderKind::LocalData;
    const json& ps = need(j, "profiles");
    if (!ps.is_array()) throw SchemaError("'profiles' must be an array");
    for (const auto& e : ps) o.profiles.push_back(profile_from_json(e));
  } else {
    throw SchemaError("unknown order kind '" + kind + "'");
  }
  return o;
}

ProblemOptions parse_options(const json& j) {
  ProblemOptions o;
  if (j.is_null()) return o;
  if (!j.is_object()) throw SchemaError("'options' must be an object");
  if (j.count("verify")) {
    if (!j.at("verify").is_boolean())
      throw SchemaError("'verify' must be a boolean");
    o.verify = j.at("verify").get<bool>();
  }
  if (j.count("neighbor_prime"))
    o.neighbor_prime = get_integer(j.at("neighbor_prime"), "'neighbor_prime'");
  if (j.count("format")) {
    o.format = need_string(j, "format");
    if (o.format != "text" && o.format != "json")
      throw SchemaError("'format' must be 'text' or 'json'");
  }
  return o;
}

// The target reduced-discriminant exponents that make an order maximal:
// 1 at ramified places, 0 elsewhere.
template <class Dom>
std::vector<std::pair<LocalSpot<Dom>, long>> maximal_targets(
    const ResolvedProblem& rp, const QAlg<Dom>& A, const MatT<Dom>& B) {
  std::vector<std::pair<LocalSpot<Dom>, long>> out;
  for (const auto& g : disc_support(A.D, disc_T(A, B))) {
    auto spot = make_spot(A.D, g);
    Place pl = rp.ctx.parse_place(spot.label);
    out.push_back({spot, rp.alg.local_index(pl) > 1 ? 1 : 0});
  }
  return out;
}

void build_rational_order(ResolvedProblem& rp, const ProblemSpec& spec) {
  const QAlg<ZDom>& A = *rp.zalg;
  const ZDom& D = A.D;
  MatT<ZDom> B;
  if (spec.order.kind == OrderKind::Basis) {
    B = make_mat(D, 4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        B[i][j] = parse_rat(spec.order.basis[static_cast<std::size_t>(4 * i + j)]);
    std::string why;
    if (!verify_order(A, B, &why))
      throw DomainError("the given basis is not an order: " + why);
  } else {
    B = standard_order(A);
    B = maximalize(A, B, maximal_targets(rp, A, B));
    if (spec.order.kind == OrderKind::Eichler) {
      Integer N = parse_int(spec.order.level);
      if (N < 1) throw SchemaError("level must be a positive integer");
      auto fac = factor_integer(N);
      for (const auto& [p, e] : fac.powers) {
        Place pl = rp.ctx.parse_place(int_string(p));
        if (rp.alg.local_index(pl) != 1)
          throw DomainError("level must be supported on split places; '" +
                            pl.label + "' ramifies");
        B = level_structure(A, B, make_spot(D, p), e);
      }
    }
  }
  rp.zorder = lattice_canon(D, B);
}

void build_function_field_order(ResolvedProblem& rp, const ProblemSpec& spec) {
  const QAlg<FqtDom>& A = *rp.falg;
  const FqtDom& D = A.D;
  const GF& F = *D.F;
  MatT<FqtDom> B;
  if (spec.order.kind == OrderKind::Basis) {
    B = make_mat(D, 4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        B[i][j] =
            D.parse_el(spec.order.basis[static_cast<std::size_t>(4 * i + j)]);
    std::string why;
    if (!verify_order(A, B, &why))
      throw DomainError("the given basis is not an order: " + why);
  } else {
    B = standard_order(A);
    B = maximalize(A, B, maximal_targets(rp, A, B));
    if (spec.order.kind == OrderKind::Eichler) {
      poly::Poly L = poly::monic(F, poly::parse(F, spec.order.level));
      if (poly::deg(L) < 1)
        throw SchemaError("level must be a non-constant polynomial");
      for (const auto& [pi, e] : poly::factor(F, L)) {
        Place pl = rp.ctx.parse_place(poly::to_string(F, pi));
        if (rp.alg.local_index(pl) != 1)
          throw DomainError("level must be supported on split places; '" +
                            pl.label + "' ramifies");
        B = level_structure(A, B, make_spot(D, pi), e);
      }
    }
  }
  rp.forder = lattice_canon(D, B);
}

}  // namespace

ProblemSpec parse_problem(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw SchemaError("problem spec must be an object");
    ProblemSpec spec;
    spec.field = parse_field(need(j, "field"));
    spec.algebra = parse_algebra(need(j, "algebra"));
    spec.order = parse_order(need(j, "order"));
    spec.options =
        parse_options(j.count("options") ? j.at("options") : json(nullptr));
    return spec;
  } catch (const json::exception& e) {
    throw SchemaError(e.what());
  }
}

ProblemSpec parse_problem_text(const std::string& text) {
  try {
    return parse_problem(json::parse(text));
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

ProblemSpec parse_problem_file(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot read '" + path + "'");
    buf << in.rdbuf();
  }
  return parse_problem_text(buf.str());
}

ResolvedProblem resolve_problem(const ProblemSpec& spec) {
  ResolvedProblem rp;
  rp.ctx = spec.field;
  const AlgebraInput& ain = spec.algebra;
  if (ain.symbols) {
    switch (rp.ctx.kind) {
      case FieldKind::Rationals: {
        ZDom D = rp.ctx.zdom();
        Rat a = parse_rat(ain.a), b = parse_rat(ain.b);
        rp.zalg.emplace(D, a, b);
        rp.alg = quaternion_algebra(ramified_places(rp.ctx, a, b));
        break;
      }
      case FieldKind::FunctionField: {
        FqtDom D = rp.ctx.fdom();
        FqRat a = D.parse_el(ain.a), b = D.parse_el(ain.b);
        rp.falg.emplace(D, a, b);
        rp.alg = quaternion_algebra(ramified_places(rp.ctx, a, b));
        break;
      }
      case FieldKind::Custom:
        throw SchemaError(
            "custom field contexts take invariant-specified algebras");
    }
  } else {
    rp.alg = division_algebra(rp.ctx, ain.n, ain.invariants);
  }
  require_definite(rp.ctx, rp.alg);

  if (spec.order.kind == OrderKind::LocalData) {
    rp.profiles = spec.order.profiles;
    return rp;
  }
  if (!ain.symbols) {
    if (spec.order.kind == OrderKind::Maximal) return rp;  // closed-form route
    throw DomainError(
        "basis and level orders need a quaternion algebra given by symbols");
  }
  if (rp.zalg)
    build_rational_order(rp, spec);
  else
    build_function_field_order(rp, spec);
  rp.profiles = profiles_of(rp, spec.order.kind == OrderKind::Eichler);
  return rp;
}

std::vector<LocalOrderProfile> profiles_of(const ResolvedProblem& rp,
                                           bool eichler_hint) {
  std::vector<LocalOrderProfile> out;
  if (rp.zorder) {
    const QAlg<ZDom>& A = *rp.zalg;
    for (const auto& p : disc_support(A.D, disc_T(A, *rp.zorder))) {
      auto spot = make_spot(A.D, p);
      Place pl = rp.ctx.parse_place(spot.label);
      out.push_back(
          profile_at(A, *rp.zorder, spot, rp.alg.local_index(pl), eichler_hint));
    }
  } else if (rp.forder) {
    const QAlg<FqtDom>& A = *rp.falg;
    for (const auto& pi : disc_support(A.D, disc_T(A, *rp.forder))) {
      auto spot = make_spot(A.D, pi);
      Place pl = rp.ctx.parse_place(spot.label);
      out.push_back(
          profile_at(A, *rp.forder, spot, rp.alg.local_index(pl), eichler_hint));
    }
  }
  return out;
}

nlohmann::json profile_json(const LocalOrderProfile& P) {
  json j;
  j["place"] = P.place;
  j["q"] = int_string(P.q);
  j["d"] = P.d;
  j["disc_abs"] = int_string(P.disc_abs);
  j["kappa_size"] = int_string(P.kappa_size);
  j["kappa_units"] = int_string(P.kappa_units);
  j["norm_index"] = int_string(P.norm_index);
  if (P.normalizer_index) j["normalizer_index"] = int_string(*P.normalizer_index);
  if (P.eichler) j["eichler"] = *P.eichler;
  return j;
}

LocalOrderProfile profile_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("each profile must be an object");
  LocalOrderProfile P;
  P.place = need_string(j, "place");
  P.q = get_integer(need(j, "q"), "profile residue size");
  P.d = get_small(need(j, "d"), "profile local index");
  if (j.count("disc_abs")) P.disc_abs = get_integer(j.at("disc_abs"), "disc_abs");
  if (j.count("kappa_size"))
    P.kappa_size = get_integer(j.at("kappa_size"), "kappa_size");
  if (j.count("kappa_units"))
    P.kappa_units = get_integer(j.at("kappa_units"), "kappa_units");
  if (j.count("norm_index"))
    P.norm_index = get_integer(j.at("norm_index"), "norm_index");
  if (j.count("normalizer_index"))
    P.normalizer_index =
        get_integer(j.at("normalizer_index"), "normalizer_index");
  if (j.count("eichler")) {
    long e = get_small(j.at("eichler"), "eichler");
    if (e < -1 || e > 1) throw SchemaError("eichler symbol must be -1, 0 or 1");
    P.eichler = static_cast<int>(e);
  }
  return P;
}

nlohmann::json report_json(const MassReport& rep) {
  json j;
  j["mass_dr"] = rat_string(rep.mass_dr);
  j["mass_gad"] = rat_string(rep.mass_gad);
  j["mass_g1"] = rat_string(rep.mass_g1);
  j["c"] = rat_string(rep.c_su);
  j["c_ad"] = rat_string(rep.c_ad);
  j["norm_index"] = int_string(rep.norm_index_global);
  if (rep.type_mass) j["type_mass"] = rat_string(*rep.type_mass);
  if (rep.type_mass_mult) {
    j["type_mass_multiplied_reading"] = rat_string(*rep.type_mass_mult);
    j["type_mass_note"] =
        "division convention; the multiplied reading is shown for comparison "
        "only";
  }
  if (rep.korner) j["korner"] = rat_string(*rep.korner);
  if (rep.unnormalized) j["unnormalized"] = rat_string(*rep.unnormalized);
  json tr = json::array();
  for (const auto& t : rep.trace)
    tr.push_back(json{{"label", t.label}, {"value", rat_string(t.value)}});
  j["trace"] = tr;
  return j;
}

MassReport report_from_json(const nlohmann::json& j) {
  MassReport rep;
  rep.mass_dr = get_rat(need(j, "mass_dr"), "mass_dr");
  rep.mass_gad = get_rat(need(j, "mass_gad"), "mass_gad");
  rep.mass_g1 = get_rat(need(j, "mass_g1"), "mass_g1");
  rep.c_su = get_rat(need(j, "c"), "c");
  rep.c_ad = get_rat(need(j, "c_ad"), "c_ad");
  rep.norm_index_global = get_integer(need(j, "norm_index"), "norm_index");
  if (j.count("type_mass")) rep.type_mass = get_rat(j.at("type_mass"), "type_mass");
  if (j.count("type_mass_multiplied_reading"))
    rep.type_mass_mult =
        get_rat(j.at("type_mass_multiplied_reading"), "type_mass alternative");
  if (j.count("korner")) rep.korner = get_rat(j.at("korner"), "korner");
  if (j.count("unnormalized"))
    rep.unnormalized = get_rat(j.at("unnormalized"), "unnormalized");
  if (j.count("trace")) {
    for (const auto& e : j.at("trace"))
      rep.trace.push_back(
          {need_string(e, "label"), get_rat(need(e, "value"), "trace value")});
  }
  return rep;
}

bool reports_equal(const MassReport& x, const MassReport& y) {
  if (x.mass_dr != y.mass_dr || x.mass_gad != y.mass_gad ||
      x.mass_g1 != y.mass_g1 || x.c_su != y.c_su || x.c_ad != y.c_ad ||
      x.norm_index_global != y.norm_index_global)
    return false;
  if (x.type_mass != y.type_mass || x.type_mass_mult != y.type_mass_mult ||
      x.korner != y.korner || x.unnormalized != y.unnormalized)
    return false;
  if (x.trace.size() != y.trace.size()) return false;
  for (std::size_t i = 0; i < x.trace.size(); ++i)
    if (x.trace[i].label != y.trace[i].label ||
        x.trace[i].value != y.trace[i].value)
      return false;
  return true;
}

std::string report_text(const MassReport& rep) {
  std::ostringstream os;
  auto line = [&](const std::string& k, const std::string& v) {
    os << std::left << std::setw(14) << k << " " << v << "\n";
  };
  line("mass_dr", rat_string(rep.mass_dr));
  line("mass_gad", rat_string(rep.mass_gad));
  line("mass_g1", rat_string(rep.mass_g1));
  line("c", rat_string(rep.c_su));
  line("c_ad", rat_string(rep.c_ad));
  line("norm_index", int_string(rep.norm_index_global));
  if (rep.type_mass) line("type_mass", rat_string(*rep.type_mass));
  if (rep.type_mass_mult)
    os << "type_mass under the multiplied reading (for comparison only): "
       << rat_string(*rep.type_mass_mult) << "\n";
  if (rep.korner) line("korner", rat_string(*rep.korner));
  if (rep.unnormalized) line("unnormalized", rat_string(*rep.unnormalized));
  os << "trace:\n";
  for (const auto& t : rep.trace)
    os << "  " << std::left << std::setw(14) << t.label << " "
       << rat_string(t.value) << "\n";
  return os.str();
}

}  // namespace massforge
