// tateforge: command-line front end.
//
//   tateforge wdiv|wprep|newton|lambda|nullcheck --input FILE [--json] [--strict]
//   tateforge suite [--config FILE] [--seed INT] [--scenario ID]... [--json] [--strict]
//
// Exit codes: 0 all PASS, 1 some FAIL, 2 usage error (or INDETERMINATE with --strict).

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tateforge/harness.hpp"

namespace {

using namespace tateforge;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int verdict_code(Verdict v, bool strict) {
  if (v == Verdict::fail) return 1;
  if (v == Verdict::indeterminate && strict) return 2;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tateforge: Tate algebras, Weierstrass theory and Witt vectors at capped precision"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string input_path, config_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> scenarios;
  bool json = false;
  bool strict = false;
  app.add_option("--input", input_path, "input JSON file");
  app.add_option("--config", config_path, "suite configuration JSON file");
  app.add_option("--seed", seed, "override the suite seed");
  app.add_flag("--json", json, "print JSON instead of text");
  app.add_flag("--strict", strict, "exit 2 on INDETERMINATE");

  auto* wdiv = app.add_subcommand("wdiv", "Weierstrass division of g by a distinguished f; input {\"f\", \"g\"}");
  auto* wprep = app.add_subcommand("wprep", "Weierstrass preparation of a series f");
  auto* newton = app.add_subcommand("newton", "Newton polygon of a polynomial over Q_p");
  auto* lambda = app.add_subcommand("lambda", "lambda_t norm, dominance and inversion of a Teichmüller sum");
  auto* nullcheck = app.add_subcommand("nullcheck", "Nullstellensatz pipeline on one series or {\"polynomials\": [...]}");
  auto* suite = app.add_subcommand("suite", "run verification scenarios");
  suite->add_option("--scenario", scenarios, "scenario id (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    auto rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (suite->parsed()) {
      SuiteConfig cfg;
      if (!config_path.empty()) cfg = suite_config_from_json(parse_json(slurp(config_path)));
      if (seed) cfg.seed = *seed;
      if (!scenarios.empty()) cfg.scenarios = scenarios;
      auto reports = run_suite(cfg);
      if (json) {
        Json out = Json::array();
        for (const auto& r : reports) out.push_back(r.to_json());
        std::cout << out.dump(2) << "\n";
      } else {
        for (const auto& r : reports) std::cout << r.to_text();
      }
      return exit_code(reports, strict);
    }
    if (input_path.empty()) {
      std::cerr << "error: --input FILE is required\n";
      return 2;
    }
    auto input = parse_json(slurp(input_path));
    CommandResult res;
    if (wdiv->parsed()) res = command_wdiv(input);
    if (wprep->parsed()) res = command_wprep(input);
    if (newton->parsed()) res = command_newton(input);
    if (lambda->parsed()) res = command_lambda(input);
    if (nullcheck->parsed()) res = command_nullcheck(input);
    if (json) {
      std::cout << res.output.dump(2) << "\n";
    } else {
      std::cout << res.text;
    }
    return verdict_code(res.verdict, strict);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
