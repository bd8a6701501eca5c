#ifndef LIENIL_BATTERY_HPP
#define LIENIL_BATTERY_HPP

#include "lienil/exprio.hpp"
#include "lienil/ideal.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace lienil {

/// Outcome of one named reproduction case.
struct CaseOutcome {
  std::string verdict;  // "holds" | "fails" | "refused"
  std::string certificate_json;
  long torsion_index = -1;
};

struct BatteryCase {
  std::string id;
  std::string description;
  int criterion;  // acceptance criterion the case belongs to; 0 for extras
  std::function<CaseOutcome()> run;
};

/// The full registry of named cases; ids are stable strings used by CI.
const std::vector<BatteryCase>& battery_cases();

struct BatteryResult {
  std::vector<CaseReport> reports;
  int failures = 0;
};

/// Runs all cases whose id matches the filter ('*' wildcards; empty matches
/// everything), fanning out across `jobs` worker threads.
BatteryResult run_battery(const std::string& filter, int jobs);

bool case_id_matches(const std::string& id, const std::string& filter);

// --------------------------------------------------------------------------
// identity suite
// --------------------------------------------------------------------------

struct IdentityFamily {
  std::string name;
  /// Draws one instantiation; returns empty on pass, else a counterexample
  /// description.
  std::function<std::string(std::mt19937_64&, const RingSpec&)> sample;
};

/// The expansion identities plus the right-letter decomposition.
const std::vector<IdentityFamily>& identity_families();

struct IdentityFamilyResult {
  std::string family;
  std::string ring;
  int samples = 0;
  int failures = 0;
  std::string first_counterexample;
};

/// Runs `samples` random instantiations of every family over every ring in
/// {Q, Z, Z[1/3], GF(5), GF(3)}.
std::vector<IdentityFamilyResult> run_identity_suite(std::uint64_t seed, int samples);
std::vector<IdentityFamilyResult> run_identity_suite_with(
    const std::vector<IdentityFamily>& families, std::uint64_t seed, int samples);

// --------------------------------------------------------------------------
// command engines behind the CLI
// --------------------------------------------------------------------------

struct MemberQuery {
  std::string target_expr;
  std::string ideal_spec;  // family name or "@path"
  RingSpec ring;
  std::vector<std::string> generators;  // empty: inferred from the target
  int degree_cap = 12;
};

std::vector<CaseReport> cmd_member(const MemberQuery& q);

struct VerifyQuery {
  std::string algebra_path;  // one of algebra_path / example_spec is set
  std::string example_spec;
  int n = 2;
  RingSpec ring;
  std::string mode = "both";  // "theorem" | "oracle" | "both"
  bool force = false;
};

std::vector<CaseReport> cmd_verify(const VerifyQuery& q);

std::vector<CaseReport> cmd_identities(std::uint64_t seed, int samples);

BatteryResult cmd_reproduce(const std::string& filter, int jobs);

/// Generator names appearing in an expression, in first-appearance order.
std::vector<std::string> infer_generator_names(const std::string& expr);

}  // namespace lienil

#endif
