#pragma once

// JSON input and output: problem specifications (field + algebra + order +
// options), their resolution into engine inputs (building concrete orders
// when a basis, maximal, or level order is asked for), and report
// serialization.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "massforge/field_context.hpp"
#include "massforge/lattice.hpp"
#include "massforge/local_invariants.hpp"
#include "massforge/mass.hpp"
#include "massforge/quaternion.hpp"

namespace massforge {

enum class OrderKind { Basis, Maximal, Eichler, LocalData };

struct AlgebraInput {
  bool symbols = false;  // true: quaternion (a, b); false: degree + invariants
  std::string a, b;
  long n = 2;
  std::vector<std::pair<std::string, Rat>> invariants;
};

struct OrderInput {
  OrderKind kind = OrderKind::Maximal;
  std::vector<std::string> basis;  // 16 rational strings, row-major
  std::string level;               // Eichler level (integer or polynomial)
  std::vector<LocalOrderProfile> profiles;
};

struct ProblemOptions {
  bool verify = false;
  std::optional<Integer> neighbor_prime;
  std::string format = "text";  // or "json"
};

struct ProblemSpec {
  FieldContext field;
  AlgebraInput algebra;
  OrderInput order;
  ProblemOptions options;
};

// Everything the engine and oracle need, with concrete lattices when the
// order was given as a basis / maximal / level order over Q or Fq(t).
struct ResolvedProblem {
  FieldContext ctx;
  AlgebraSpec alg;
  std::vector<LocalOrderProfile> profiles;
  bool assume_maximal_elsewhere = true;

  std::optional<QAlg<ZDom>> zalg;
  std::optional<MatT<ZDom>> zorder;
  std::optional<QAlg<FqtDom>> falg;
  std::optional<MatT<FqtDom>> forder;

  bool concrete() const { return zorder.has_value() || forder.has_value(); }
};

// Parsing; throws SchemaError on malformed input.
ProblemSpec parse_problem(const nlohmann::json& j);
ProblemSpec parse_problem_text(const std::string& text);
ProblemSpec parse_problem_file(const std::string& path);  // "-" reads stdin

// Turns the parsed spec into engine inputs, building orders as needed;
// throws DomainError on mathematically invalid requests.
ResolvedProblem resolve_problem(const ProblemSpec& spec);

// Local profiles of a concrete order at every finite place dividing its
// trace discriminant (outside S); exactly the engine's profile input.
std::vector<LocalOrderProfile> profiles_of(const ResolvedProblem& rp,
                                           bool eichler_hint = false);

// Profile serialization (both directions).
nlohmann::json profile_json(const LocalOrderProfile& P);
LocalOrderProfile profile_from_json(const nlohmann::json& j);

// Report serialization; parse(print(r)) == r.
nlohmann::json report_json(const MassReport& rep);
MassReport report_from_json(const nlohmann::json& j);
bool reports_equal(const MassReport& x, const MassReport& y);

// Aligned text rendering of a report (same values as the JSON form).
std::string report_text(const MassReport& rep);

}  // namespace massforge
