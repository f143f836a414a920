#pragma once

// The mass engine.  Evaluates the exact mass of a definite order from a
// field context, the ramification data of the algebra, and per-place local
// order profiles, together with the derived masses (adjoint, norm-one,
// type) and the closed-form cross-checks.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "massforge/exactnum.hpp"
#include "massforge/field_context.hpp"
#include "massforge/local_invariants.hpp"

namespace massforge {

// One ramified place of the algebra with its reduced local invariant r/d.
struct RamifiedPlace {
  Place place;
  long r = 1;
  long d = 2;  // order of the invariant; the local index
};

// A central division algebra of degree n, described by where it ramifies.
struct AlgebraSpec {
  long n = 2;
  std::vector<RamifiedPlace> ramified;  // sorted, no duplicates

  long local_index(const Place& v) const;  // 1 when unramified
  bool is_ramified(const Place& v) const { return local_index(v) > 1; }
};

// Degree-2 algebra ramified exactly at the given places.
AlgebraSpec quaternion_algebra(const std::vector<Place>& ram);

// General constructor from labeled invariants; validates that the
// invariants sum to an integer and that their orders have lcm exactly n.
AlgebraSpec division_algebra(const FieldContext& ctx, long n,
                             const std::vector<std::pair<std::string, Rat>>& invariants);

// Definite <=> the local index at every place of S equals n.  Throws
// DomainError when violated, and rejects degree > 2 outside function fields.
void require_definite(const FieldContext& ctx, const AlgebraSpec& alg);

struct TraceEntry {
  std::string label;
  Rat value;
};

struct MassReport {
  Rat mass_dr{0};      // mass of the order itself
  Rat mass_gad{0};     // adjoint-group mass; mass_dr = h * mass_gad
  Rat mass_g1{0};      // norm-one mass; mass_gad = c_su * mass_g1
  Rat c_su{1};         // branch constant times the global norm index
  Rat c_ad{1};         // n^{-(|S|-1)}
  Integer norm_index_global{1};
  std::optional<Rat> type_mass;       // mass_gad / (normalizer index product)
  std::optional<Rat> type_mass_mult;  // the multiplied reading, for comparison
  std::optional<Rat> korner;          // degree-2 closed form via Eichler symbols
  std::optional<Rat> unnormalized;    // mass_dr / |A^x| when A^x is finite
  std::vector<TraceEntry> trace;      // every factor of mass_dr, labeled
};

// Central evaluator.  `profiles` lists local data at finite places outside
// S; an absent place counts as maximal there (split places contribute 1;
// ramified places fall back to the maximal local order when
// assume_maximal_elsewhere is set, and are an error otherwise).
MassReport evaluate_mass(const FieldContext& ctx, const AlgebraSpec& alg,
                         const std::vector<LocalOrderProfile>& profiles,
                         bool assume_maximal_elsewhere = true);

// Just the principal mass.
Rat mass_of(const FieldContext& ctx, const AlgebraSpec& alg,
            const std::vector<LocalOrderProfile>& profiles,
            bool assume_maximal_elsewhere = true);

// Closed-form maximal-order masses, computed independently of the profile
// pipeline: the ramified-place factors are products of (q_v^i - 1) rather
// than discriminant/residue-ring data.
struct MaximalMasses {
  Rat mass_dr{0};
  Rat mass_gad{0};
  Rat mass_g1{0};
};
MaximalMasses maximal_masses(const FieldContext& ctx, const AlgebraSpec& alg);

// Ratio between the adjoint and norm-one masses: the branch constant times
// the global norm index.
Rat c_factor(const FieldContext& ctx, long n, const Integer& norm_index_global);

// Degree-2 closed form driven by Eichler symbols; empty when the symbol is
// undefined at a place that needs one.
std::optional<Rat> korner_mass(const FieldContext& ctx, const AlgebraSpec& alg,
                               const std::vector<LocalOrderProfile>& profiles,
                               bool assume_maximal_elsewhere = true);

struct OrderComparison {
  Rat mass_ratio{1};  // Mass(R) / Mass(R2)
  std::vector<std::pair<std::string, Rat>> local_factors;
};

// Mass ratio of two orders in the same algebra, cross-checked against the
// product of local unit indices; throws DomainError when the two routes
// disagree.
OrderComparison compare_orders(const FieldContext& ctx, const AlgebraSpec& alg,
                               const std::vector<LocalOrderProfile>& r_profiles,
                               const std::vector<LocalOrderProfile>& r2_profiles);

// mass_dr / |A^x|; requires |S| = 1 over a built-in field kind.
Rat unnormalized_mass(const FieldContext& ctx, const Rat& mass_dr);

}  // namespace massforge
