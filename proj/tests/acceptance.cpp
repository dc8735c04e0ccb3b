// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include "oracles/fixtures.hpp"
#include "tateforge/harness.hpp"
#include "tateforge/weierstrass.hpp"

using namespace tateforge;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

constexpr int kCap = 16;
constexpr int kHighCap = 24;
constexpr std::uint64_t kSeed = 20240607;

// every check of the scenario is PASS
Outcome scenario_outcome(const std::string& id, const SuiteConfig& cfg, const std::function<bool(const CheckResult&)>& pick) {
  Outcome o;
  auto rep = run_scenario(id, cfg);
  int n = 0;
  for (const auto& c : rep.checks) {
    if (!pick(c)) continue;
    ++n;
    o.require(c.verdict == Verdict::pass, c.name + ": " + to_string(c.verdict) + " (" + c.detail + ")");
  }
  o.require(n > 0, "no checks selected");
  if (o.pass) o.detail = std::to_string(n) + " checks PASS";
  return o;
}

bool any(const CheckResult&) { return true; }

bool matches_ints(const RestrictedSeries<PadicElement>& s, const oracle::Poly& ref, std::int64_t m) {
  const auto& R = s.ring().base();
  for (std::size_t i = 0; i < std::max(s.length(), ref.size()); ++i) {
    auto expect = i < ref.size() ? oracle::mod(ref[i], m) : 0;
    if (!s.coefficient(i).agrees_mod(R.from_int(expect), kCap)) return false;
  }
  return true;
}

struct DivisionCorpus {
  std::vector<DivisionCase> cases;
  std::vector<DivisionRun> runs;
};

// 200 pairs over each of Q_2 and Q_3
DivisionCorpus division_corpus(int cap) {
  DivisionCorpus out;
  std::mt19937_64 rng(kSeed);
  for (std::uint32_t p : {2u, 3u}) {
    for (int i = 0; i < 200; ++i) out.cases.push_back(random_division_case(rng, p, kCap));
  }
  for (const auto& c : out.cases) out.runs.push_back(run_division(c, cap));
  return out;
}

struct PreparationCorpus {
  std::vector<PreparationCase> cases;
  std::vector<PreparationRun> runs;
};

PreparationCorpus preparation_corpus(int cap) {
  PreparationCorpus out;
  std::mt19937_64 rng(kSeed + 1);
  for (std::uint32_t p : {2u, 3u}) {
    for (int i = 0; i < 50; ++i) out.cases.push_back(random_preparation_case(rng, p, kCap));
  }
  for (const auto& c : out.cases) out.runs.push_back(run_preparation(c, cap));
  return out;
}

Outcome criterion1(const DivisionCorpus& d, const SuiteConfig& cfg) {
  Outcome o;
  int exact = 0;
  for (std::size_t i = 0; i < d.runs.size(); ++i) {
    const auto& run = d.runs[i];
    auto label = "case " + std::to_string(i) + " (p=" + std::to_string(d.cases[i].p) + ")";
    o.require(run.residual_ok, label + ": residual above p^-16");
    o.require(run.identity != Certainty::no, label + ": |g| != max(|q|, |r|)");
    if (run.identity == Certainty::yes) ++exact;
    if (i % 10 == 0) {
      // remainder against an exact rational linear solve
      const auto& c = d.cases[i];
      SeriesRing<PadicElement> A(QpRing(c.p, kCap));
      auto cert = std::get<DistinguishedCertificate>(check_distinguished(fixtures::poly(A, c.f)));
      auto [oq, orr] = oracle::division_by_rational_solve(c.f, c.g, cert.n0, 40, c.p, kCap);
      o.require(matches_ints(run.r, orr, oracle::pow_int(c.p, kCap)), label + ": remainder differs from the oracle");
    }
  }
  o.require(exact >= 200, "fewer than 200 pairs with exact norms");
  auto nested = scenario_outcome("division-norm-identity", cfg, [](const CheckResult& c) {
    return c.name.starts_with("nested") && c.name.find("agree") == std::string::npos;
  });
  o.require(nested.pass, nested.detail);
  if (o.pass) {
    o.detail = std::to_string(d.runs.size()) + " pairs over Q_2, Q_3 (" + std::to_string(exact) +
               " with exact norms, identity exact); " + std::to_string(cfg.nested_pairs) + " pairs over Q_2<X>";
  }
  return o;
}

Outcome criterion2(const DivisionCorpus& d, const SuiteConfig& cfg) {
  Outcome o;
  for (std::size_t i = 0; i < d.runs.size(); ++i) {
    o.require(d.runs[i].strategies_agree, "case " + std::to_string(i) + ": strategies disagree mod p^16");
  }
  auto nested = scenario_outcome("division-norm-identity", cfg, [](const CheckResult& c) {
    return c.name.starts_with("nested") && c.name.find("agree") != std::string::npos;
  });
  o.require(nested.pass, nested.detail);
  if (o.pass) o.detail = std::to_string(d.runs.size()) + " + " + std::to_string(cfg.nested_pairs) + " pairs agree mod p^16";
  return o;
}

Outcome criterion3(const PreparationCorpus& P) {
  Outcome o;
  for (std::size_t i = 0; i < P.runs.size(); ++i) {
    auto label = "case " + std::to_string(i);
    o.require(P.runs[i].recovered_monic, label + ": monic factor not recovered");
    o.require(P.runs[i].recovered_unit, label + ": unit not recovered");
    o.require(P.runs[i].unit_is_unit == Certainty::yes, label + ": returned unit fails the unit criterion");
    // the returned monic factor divides g u modulo p^16 by schoolbook division
    const auto& c = P.cases[i];
    auto m = oracle::pow_int(c.p, kCap);
    auto [q, r] = oracle::long_divide(oracle::poly_mul(c.g, c.u, m), fixtures::to_ints(P.runs[i].monic), m);
    o.require(std::all_of(r.begin(), r.end(), [](auto x) { return x == 0; }), label + ": g does not divide g u");
  }
  if (o.pass) o.detail = std::to_string(P.runs.size()) + " products g u recovered mod p^16";
  return o;
}

Outcome criterion10(const DivisionCorpus& d16, const PreparationCorpus& p16) {
  Outcome o;
  auto d24 = division_corpus(kHighCap);
  auto p24 = preparation_corpus(kHighCap);
  int residual24 = 0;
  for (std::size_t i = 0; i < d16.runs.size(); ++i) {
    auto label = "division case " + std::to_string(i);
    o.require(agree_mod_across(d16.runs[i].q, d24.runs[i].q, kCap), label + ": q changed mod p^16");
    o.require(agree_mod_across(d16.runs[i].r, d24.runs[i].r, kCap), label + ": r changed mod p^16");
    o.require(agree_mod_across(d16.runs[i].q_linear, d24.runs[i].q_linear, kCap), label + ": linear q changed mod p^16");
    o.require(d24.runs[i].residual_ok && d24.runs[i].strategies_agree, label + ": cap 24 run fails criterion 1 or 2");
    o.require(d24.runs[i].identity != Certainty::no, label + ": cap 24 norm identity fails");
    if (d24.runs[i].residual_ok) ++residual24;
  }
  for (std::size_t i = 0; i < p16.runs.size(); ++i) {
    auto label = "preparation case " + std::to_string(i);
    o.require(agree_mod_across(p16.runs[i].monic, p24.runs[i].monic, kCap), label + ": g changed mod p^16");
    o.require(agree_mod_across(p16.runs[i].unit, p24.runs[i].unit, kCap), label + ": u changed mod p^16");
    o.require(p24.runs[i].recovered_monic && p24.runs[i].recovered_unit, label + ": cap 24 round trip fails");
  }
  if (o.pass) {
    o.detail = std::to_string(residual24) + " divisions and " + std::to_string(p24.runs.size()) +
               " preparations at cap 24 agree with cap 16 mod p^16";
  }
  return o;
}

Outcome criterion9(const SuiteConfig& cfg) {
  auto o = scenario_outcome("nullstellensatz-batch", cfg, any);
  auto rep = run_scenario("nullstellensatz-batch", cfg);
  std::set<std::string> primes;
  for (const auto& c : rep.checks) primes.insert(c.name.substr(c.name.find("Q_"), 3));
  o.require(rep.checks.size() >= 20, "corpus has fewer than 20 polynomials");
  o.require(primes == std::set<std::string>{"Q_2", "Q_3", "Q_5"}, "corpus does not cover Q_2, Q_3, Q_5");
  if (o.pass) o.detail = std::to_string(rep.checks.size()) + " polynomials, residue degree = deg g for each";
  return o;
}

}  // namespace

int main() {
  auto start = std::chrono::steady_clock::now();
  SuiteConfig cfg;
  cfg.cap = kCap;
  cfg.seed = kSeed;

  auto d16 = division_corpus(kCap);
  auto p16 = preparation_corpus(kCap);

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"division norm identity", [&] { return criterion1(d16, cfg); }},
      {"division uniqueness at precision", [&] { return criterion2(d16, cfg); }},
      {"preparation round trip", [&] { return criterion3(p16); }},
      {"Newton polygon additivity",
       [&] {
         return scenario_outcome("polygon-additivity", cfg,
                                 [](const CheckResult& c) { return c.name.find("ball") == std::string::npos; });
       }},
      {"non-unit ball",
       [&] {
         return scenario_outcome("polygon-additivity", cfg,
                                 [](const CheckResult& c) { return c.name.find("ball") != std::string::npos; });
       }},
      {"perturbation lemma instance", [&] { return scenario_outcome("perturbation", cfg, any); }},
      {"Witt layer", [&] { return scenario_outcome("witt-axioms", cfg, any); }},
      {"dim0 fragment", [&] { return scenario_outcome("dim0-inversion", cfg, any); }},
      {"Nullstellensatz batch", [&] { return criterion9(cfg); }},
      {"precision monotonicity", [&] { return criterion10(d16, p16); }},
  };

  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    all = all && o.pass;
    std::printf("criterion %zu %s: %s (%s)\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("acceptance %s in %.1f s\n", all ? "PASS" : "FAIL", secs);
  return all ? 0 : 1;
}
