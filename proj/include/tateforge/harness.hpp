#pragma once

// Verification scenarios, the Nullstellensatz pipeline, and the command
// handlers behind the CLI.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tateforge/finite_alg.hpp"
#include "tateforge/serialize.hpp"

namespace tateforge {

struct CheckResult {
  std::string name;
  Verdict verdict = Verdict::indeterminate;
  std::string detail;
};

struct ScenarioReport {
  std::string id;
  Json inputs;
  std::vector<CheckResult> checks;
  std::string summary;

  /// FAIL if any check fails, else INDETERMINATE if any is, else PASS.
  Verdict overall() const;
  Json to_json() const;
  std::string to_text() const;
};

struct SuiteConfig {
  std::vector<std::string> scenarios;  // empty: all
  std::uint64_t seed = 20240607;
  std::vector<std::uint32_t> primes{2, 3};
  int cap = 16;
  int division_pairs = 200;
  int nested_pairs = 50;
  int preparation_cases = 100;
  int polygon_pairs = 200;
  int ball_cases = 100;
  int perturbation_cases = 100;
  int witt_triples = 50;
  int teichmuller_pairs = 100;
  int dim0_sums = 50;
  QuadraticNumber t{Rational(0), Rational(1), 2};
  NormExponent target{10};
  std::string corpus;  // empty: the shipped corpus
  bool parallel = true;
};

/// Overrides defaults with any keys present; unknown keys are a ParseError.
SuiteConfig suite_config_from_json(const Json& j);
Json suite_config_to_json(const SuiteConfig& c);

const std::vector<std::string>& known_scenarios();
std::string default_corpus_path();

/// rescale -> prepare -> slope certificate on the monic factor -> residue degree.
/// Refusals become INDETERMINATE; a FAIL needs a disproof.
ScenarioReport nullstellensatz_check(const RestrictedSeries<PadicElement>& f);

/// Throws DomainError for an unknown id.
ScenarioReport run_scenario(const std::string& id, const SuiteConfig& config);
std::vector<ScenarioReport> run_suite(const SuiteConfig& config);

/// 1 on any FAIL; 2 on INDETERMINATE when strict; else 0.
int exit_code(const std::vector<ScenarioReport>& reports, bool strict);

// Seeded case generators and single-case runners, shared with the acceptance suite.

struct DivisionCase {
  std::uint32_t p = 2;
  std::vector<std::int64_t> f;
  std::vector<std::int64_t> g;
};
/// Coefficients are integers below p^digits; f is distinguished with |f_n0 - 1| < 1.
DivisionCase random_division_case(std::mt19937_64& rng, std::uint32_t p, int digits);

struct DivisionRun {
  RestrictedSeries<PadicElement> q, r, q_linear, r_linear;
  bool residual_ok = false;
  /// unknown when some norm is only a bound
  Certainty identity = Certainty::unknown;
  bool strategies_agree = false;
};
DivisionRun run_division(const DivisionCase& c, int cap);

struct PreparationCase {
  std::uint32_t p = 2;
  std::vector<std::int64_t> g;  // monic
  std::vector<std::int64_t> u;  // unit
};
PreparationCase random_preparation_case(std::mt19937_64& rng, std::uint32_t p, int digits);

struct PreparationRun {
  RestrictedSeries<PadicElement> monic, unit;
  bool recovered_monic = false;
  bool recovered_unit = false;
  Certainty unit_is_unit = Certainty::unknown;
};
PreparationRun run_preparation(const PreparationCase& c, int cap);

/// Agreement of two Q_p series modulo p^k, across different caps.
bool agree_mod_across(const RestrictedSeries<PadicElement>& a, const RestrictedSeries<PadicElement>& b, int k);

/// Lower hull vertices by testing every point against every segment.
std::vector<std::pair<std::size_t, Rational>> brute_force_hull(const std::vector<std::pair<std::size_t, Rational>>& pts);

// CLI handlers. Each returns the JSON document and the overall verdict.
struct CommandResult {
  Json output;
  Verdict verdict = Verdict::pass;
  std::string text;
};
CommandResult command_wdiv(const Json& input);
CommandResult command_wprep(const Json& input);
CommandResult command_newton(const Json& input);
CommandResult command_lambda(const Json& input);
CommandResult command_nullcheck(const Json& input);

}  // namespace tateforge
