#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "shardkit/compartments.hpp"

namespace shardkit {

// Monotone formula over shareholder ids.
struct AccessFormula {
  enum class Op { kLiteral, kAnd, kOr, kThreshold };

  Op op = Op::kLiteral;
  std::string id;  // literals
  std::size_t k = 0;  // thresholds
  std::vector<AccessFormula> children;

  static AccessFormula literal(std::string id);
  static AccessFormula all_of(std::vector<AccessFormula> children);
  static AccessFormula any_of(std::vector<AccessFormula> children);
  static AccessFormula at_least(std::size_t k, std::vector<AccessFormula> children);
};

// And/Or need two or more children, thresholds 1 <= k <= children.
void validate_formula(const AccessFormula& f);
std::set<std::string> literals(const AccessFormula& f);
bool evaluate_formula(const AccessFormula& f, const std::set<std::string>& subset);

inline constexpr std::size_t kMaxUniverse = 20;

using Clause = std::set<std::string>;

// Minimal authorized sets; an antichain.
struct MinimalClauseSet {
  std::set<Clause> clauses;
};

MinimalClauseSet minimal_clauses(const AccessFormula& f, const std::vector<std::string>& universe = {});
// Or of Ands, collapsing one-element levels.
AccessFormula formula_from_clauses(const MinimalClauseSet& clauses);

struct EquivalenceResult {
  bool equivalent = true;
  std::optional<std::set<std::string>> counterexample;  // first differing subset
  std::uint64_t subsets_checked = 0;
};

// Universe defaults to the union of scheme holders and formula literals.
// Subsets are visited in increasing bitmask order over the sorted universe.
EquivalenceResult verify_equivalence(const SchemeNode& scheme, const AccessFormula& f,
                                     const std::vector<std::string>& universe = {});

inline constexpr std::uint64_t kMaxPerfectnessPrime = 13;
inline constexpr std::uint64_t kMaxRandomnessStates = 10'000'000;

struct PerfectnessResult {
  std::uint64_t p = 0;
  std::size_t dimension = 0;  // dealer randomness, in field elements
  bool authorized = false;
  std::uint64_t reference_secret = 0;
  // counts[s] = number of dealer randomness assignments that, with secret s,
  // reproduce the reference view of the subset.
  std::vector<std::uint64_t> counts;
  bool uniform = false;
  bool point_mass = false;
  // The same test applied to every view the subset can observe.
  std::uint64_t views = 0;
  bool every_view_uniform = false;
  bool every_view_point_mass = false;

  // Unauthorized subsets must see the secret as uniform; authorized ones
  // must pin it down.
  bool holds() const noexcept { return authorized ? every_view_point_mass : every_view_uniform; }
};

// Exhaustive over all p^(d+1) (secret, randomness) pairs. The reference view
// comes from a dealing drawn with `reference_seed`.
PerfectnessResult perfectness_check(const SchemeNode& scheme, std::uint64_t p, const std::set<std::string>& subset,
                                    std::uint64_t reference_seed = 0);

struct NaiveCounts {
  std::size_t per_clause_total = 0;  // one (|c|,|c|) scheme per clause
  std::size_t factored_total = 0;    // ids in every clause pulled into one shared scheme
};

NaiveCounts naive_share_counts(const MinimalClauseSet& clauses);

// Ids that never share a clause and whose exchange maps the clause set onto
// itself. Greedy, lexicographic by id; groups of one are omitted.
std::vector<std::vector<std::string>> redundant_groups(const std::set<Clause>& clauses);
// Replace each group member by the group's first id.
std::set<Clause> merge_groups(const std::set<Clause>& clauses, const std::vector<std::vector<std::string>>& groups);
// Inverse of merge_groups: every choice of members for each representative.
std::set<Clause> expand_groups(const std::set<Clause>& merged, const std::vector<std::vector<std::string>>& groups);

struct CompileReport {
  SchemeNode scheme;
  bool ideal = false;
  std::size_t total_shares = 0;
  std::size_t max_shares_per_holder = 0;
  bool flattened = false;
  std::size_t clauses = 0;
  std::size_t root_points = 0;  // distinct evaluation points at the root
};

// Single extended-Shamir level when the clause structure allows it,
// otherwise an And/Or/Threshold compartment tree over the formula. The
// result is checked with verify_equivalence before it is returned.
CompileReport compile_formula(const AccessFormula& f, const std::vector<std::string>& universe = {});

}  // namespace shardkit
