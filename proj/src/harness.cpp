#include "tateforge/harness.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "tateforge/newton.hpp"
#include "tateforge/period.hpp"
#include "tateforge/weierstrass.hpp"
#include "tateforge/witt.hpp"

#ifndef TATEFORGE_DATA_DIR
#define TATEFORGE_DATA_DIR "data"
#endif

namespace tateforge {

namespace {

using Series = RestrictedSeries<PadicElement>;
using cpp_int = boost::multiprecision::cpp_int;

std::int64_t ipow(std::int64_t p, int k) {
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// element of p^v Z below p^digits
std::int64_t random_multiple(std::mt19937_64& rng, std::int64_t p, int v, int digits) {
  if (v >= digits) return 0;
  return ipow(p, v) * static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(ipow(p, digits - v)));
}

std::int64_t random_unit(std::mt19937_64& rng, std::int64_t p, int digits) {
  while (true) {
    auto x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(ipow(p, digits)));
    if (x % p != 0) return x;
  }
}

// Encoding digits available at a prime: p^digits must stay well inside 64 bits.
int digits_for(std::uint32_t p, int cap) {
  int d = 0;
  std::int64_t x = 1;
  while (d < cap && x < (std::int64_t{1} << 40) / p) {
    x *= p;
    ++d;
  }
  return d;
}

Series poly(const SeriesRing<PadicElement>& A, const std::vector<std::int64_t>& cs) {
  std::vector<PadicElement> out;
  for (auto c : cs) out.push_back(A.base().from_int(c));
  return A.from_coefficients(std::move(out));
}

std::string count_str(int k, int n) { return std::to_string(k) + "/" + std::to_string(n); }

// Counts certified outcomes of one check across a corpus.
struct Tally {
  std::string name;
  bool unknown_is_skip = false;
  int pass = 0;
  int fail = 0;
  int unknown = 0;
  std::string first_failure;

  explicit Tally(std::string n, bool skip = false) : name(std::move(n)), unknown_is_skip(skip) {}

  void record(Certainty c, const std::string& what = "") {
    if (c == Certainty::yes) {
      ++pass;
    } else if (c == Certainty::no) {
      if (fail++ == 0) first_failure = what;
    } else {
      ++unknown;
    }
  }
  void record(bool ok, const std::string& what = "") { record(ok ? Certainty::yes : Certainty::no, what); }

  CheckResult result(const std::string& extra = "") const {
    CheckResult c{name, Verdict::pass, ""};
    int total = pass + fail + unknown;
    std::ostringstream os;
    os << count_str(pass, total) << " certified";
    if (unknown) os << ", " << unknown << (unknown_is_skip ? " skipped (bounds only)" : " undecided");
    if (fail) os << ", " << fail << " failed (first: " << first_failure << ")";
    if (!extra.empty()) os << "; " << extra;
    c.detail = os.str();
    if (fail) {
      c.verdict = Verdict::fail;
    } else if (pass == 0 || (unknown && !unknown_is_skip)) {
      c.verdict = Verdict::indeterminate;
    }
    return c;
  }
};

std::string summarize(const ScenarioReport& r) {
  int p = 0, f = 0, i = 0;
  for (const auto& c : r.checks) {
    if (c.verdict == Verdict::pass) ++p;
    if (c.verdict == Verdict::fail) ++f;
    if (c.verdict == Verdict::indeterminate) ++i;
  }
  return to_string(r.overall()) + ": " + std::to_string(p) + " passed, " + std::to_string(f) + " failed, " +
         std::to_string(i) + " indeterminate";
}

Json primes_json(const SuiteConfig& c) {
  Json a = Json::array();
  for (auto p : c.primes) a.push_back(p);
  return a;
}

int share(int total, std::size_t parts, std::size_t index) {
  auto n = static_cast<int>(parts);
  return total / n + (static_cast<int>(index) < total % n ? 1 : 0);
}

// -- division ---------------------------------------------------------------

ScenarioReport division_scenario(const SuiteConfig& cfg, std::mt19937_64& rng) {
  ScenarioReport rep;
  rep.id = "division-norm-identity";
  rep.inputs = {{"primes", primes_json(cfg)}, {"cap", cfg.cap}, {"pairs", cfg.division_pairs},
                {"nested_pairs", cfg.nested_pairs}, {"seed", cfg.seed}};
  Tally residual{"residual |g - f q - r| <= p^-N"};
  Tally identity{"norm identity |g| = max(|q|, |r|), exact exponents", true};
  Tally agree{"fixed-point and linear-solve quotients agree mod p^N"};
  for (std::size_t k = 0; k < cfg.primes.size(); ++k) {
    auto p = cfg.primes[k];
    for (int i = 0; i < share(cfg.division_pairs, cfg.primes.size(), k); ++i) {
      auto c = random_division_case(rng, p, digits_for(p, cfg.cap));
      auto run = run_division(c, cfg.cap);
      auto label = "p=" + std::to_string(p) + " case " + std::to_string(i);
      residual.record(run.residual_ok, label);
      identity.record(run.identity, label);
      agree.record(run.strategies_agree, label);
    }
  }
  // base Q_2<X>: coefficients are polynomials in X
  Tally nested_residual{"nested base Q_2<X>: residual <= 2^-N"};
  Tally nested_identity{"nested base Q_2<X>: norm identity", true};
  Tally nested_agree{"nested base Q_2<X>: strategies agree to 2^-N"};
  QpRing R(2, cfg.cap);
  SeriesRing<PadicElement> inner(R);
  SeriesRing<Series> A(inner);
  const int digits = digits_for(2, cfg.cap);
  auto rand_inner = [&](int vmin) {
    std::vector<std::int64_t> cs;
    for (int i = 0; i < 3; ++i) cs.push_back(random_multiple(rng, 2, static_cast<int>(uniform(rng, vmin, vmin + 2)), digits));
    return poly(inner, cs);
  };
  const auto N = NormValue::exact(cfg.cap);
  for (int i = 0; i < cfg.nested_pairs; ++i) {
    auto label = "nested case " + std::to_string(i);
    auto f = A.from_coefficients({rand_inner(0), inner.one() + rand_inner(1), rand_inner(1)});
    auto g = A.from_coefficients({rand_inner(0), rand_inner(0), rand_inner(0)});
    auto checked = check_distinguished(f);
    if (refused(checked)) {
      nested_residual.record(Certainty::unknown);
      continue;
    }
    auto cert = std::get<DistinguishedCertificate>(checked);
    auto [q, r, it] = weierstrass_divide(f, cert, g);
    auto [ql, rl, it2] = weierstrass_divide_linear(f, cert, g);
    nested_residual.record(less_equal((g - (f * q + r)).norm(), N), label);
    bool exact = !g.norm().is_at_most() && !q.norm().is_at_most() && !r.norm().is_at_most();
    nested_identity.record(exact ? equal(g.norm(), join(q.norm(), r.norm())) : Certainty::unknown, label);
    nested_agree.record(certainly(less_equal((q - ql).norm(), N)) && certainly(less_equal((r - rl).norm(), N)), label);
  }
  for (const auto& t : {residual, identity, agree, nested_residual, nested_identity, nested_agree}) {
    rep.checks.push_back(t.result());
  }
  return rep;
}

// -- preparation ------------------------------------------------------------

ScenarioReport preparation_scenario(const SuiteConfig& cfg, std::mt19937_64& rng) {
  ScenarioReport rep;
  rep.id = "preparation-roundtrip";
  rep.inputs = {{"primes", primes_json(cfg)}, {"cap", cfg.cap}, {"cases", cfg.preparation_cases}, {"seed", cfg.seed}};
  Tally monic{"prepare(g u) recovers g mod p^N"};
  Tally unit{"prepare(g u) recovers u mod p^N"};
  Tally is_unit{"returned unit passes the unit criterion"};
  for (std::size_t k = 0; k < cfg.primes.size(); ++k) {
    auto p = cfg.primes[k];
    for (int i = 0; i < share(cfg.preparation_cases, cfg.primes.size(), k); ++i) {
      auto c = random_preparation_case(rng, p, digits_for(p, cfg.cap));
      auto label = "p=" + std::to_string(p) + " case " + std::to_string(i);
      try {
        auto run = run_preparation(c, cfg.cap);
        monic.record(run.recovered_monic, label);
        unit.record(run.recovered_unit, label);
        is_unit.record(run.unit_is_unit, label);
      } catch (const Error& e) {
        monic.record(Certainty::unknown);
        unit.record(Certainty::unknown);
        is_unit.record(Certainty::unknown);
      }
    }
  }
  rep.checks = {monic.result(), unit.result(), is_unit.result()};
  return rep;
}

// -- Newton polygons --------------------------------------------------------

std::vector<std::pair<std::size_t, Rational>> exact_points(const Series& f) {
  std::vector<std::pair<std::size_t, Rational>> pts;
  for (std::size_t i = 0; i < f.length(); ++i) {
    auto n = f.coefficients()[i].norm();
    if (n.is_exact()) pts.emplace_back(i, n.exponent().as_rational());
  }
  return pts;
}

ScenarioReport polygon_scenario(const SuiteConfig& cfg, std::mt19937_64& rng) {
  ScenarioReport rep;
  rep.id = "polygon-additivity";
  rep.inputs = {{"primes", primes_json(cfg)}, {"cap", cfg.cap}, {"pairs", cfg.polygon_pairs},
                {"ball_cases", cfg.ball_cases}, {"seed", cfg.seed}};
  Tally additive{"slopes(f g) = slopes(f) + slopes(g) as multisets"};
  Tally hull{"hull equals the brute-force hull"};
  Tally ball{"in-ball perturbations of T - lambda are not units"};
  for (std::size_t k = 0; k < cfg.primes.size(); ++k) {
    auto p = cfg.primes[k];
    QpRing R(p, cfg.cap);
    SeriesRing<PadicElement> A(R);
    const int digits = digits_for(p, cfg.cap);
    auto random_monic = [&] {
      auto d = uniform(rng, 1, 6);
      std::vector<std::int64_t> cs;
      for (int i = 0; i < d; ++i) {
        auto v = static_cast<int>(uniform(rng, 0, 4));
        cs.push_back(ipow(p, v) * random_unit(rng, p, std::max(1, std::min(3, digits - v))));
      }
      cs.push_back(1);
      return poly(A, cs);
    };
    for (int i = 0; i < share(cfg.polygon_pairs, cfg.primes.size(), k); ++i) {
      auto label = "p=" + std::to_string(p) + " pair " + std::to_string(i);
      auto f = random_monic();
      auto g = random_monic();
      auto fg = f * g;
      try {
        auto pf = newton_polygon(f);
        auto pg = newton_polygon(g);
        auto pfg = newton_polygon(fg);
        auto both = pf.root_valuations();
        auto rg = pg.root_valuations();
        both.insert(both.end(), rg.begin(), rg.end());
        std::sort(both.begin(), both.end());
        additive.record(pfg.root_valuations() == both, label);
        hull.record(pf.vertices == brute_force_hull(exact_points(f)) && pg.vertices == brute_force_hull(exact_points(g)) &&
                        pfg.vertices == brute_force_hull(exact_points(fg)),
                    label);
      } catch (const Indeterminate&) {
        additive.record(Certainty::unknown);
        hull.record(Certainty::unknown);
      }
    }
    for (int i = 0; i < share(cfg.ball_cases, cfg.primes.size(), k); ++i) {
      auto lv = static_cast<int>(uniform(rng, 1, 3));
      auto lam = ipow(p, lv) * random_unit(rng, p, std::min(4, digits - lv));
      std::vector<std::int64_t> cs{-lam, 1};
      cs.resize(static_cast<std::size_t>(2 + uniform(rng, 0, 5)), 0);
      for (auto& c : cs) c += random_multiple(rng, p, lv + 1, digits);
      auto verdict = nonunit_ball_witness(R.from_int(lam), poly(A, cs));
      ball.record(verdict == BallVerdict::nonunit_in_ball ? Certainty::yes
                  : verdict == BallVerdict::indeterminate ? Certainty::unknown
                                                          : Certainty::no,
                  "p=" + std::to_string(p) + " ball case " + std::to_string(i) + ": " + to_string(verdict));
    }
  }
  rep.checks = {additive.result(), hull.result(), ball.result()};
  return rep;
}

// -- perturbation -----------------------------------------------------------

ScenarioReport perturbation_scenario(const SuiteConfig& cfg, std::mt19937_64& rng) {
  ScenarioReport rep;
  rep.id = "perturbation";
  rep.inputs = {{"primes", primes_json(cfg)}, {"cap", cfg.cap}, {"cases", cfg.perturbation_cases}, {"seed", cfg.seed}};
  Tally integral{"char_poly(t) monic with coefficients of norm <= 1"};
  Tally cayley{"Cayley-Hamilton residual <= p^-N"};
  for (std::size_t k = 0; k < cfg.primes.size(); ++k) {
    auto p = cfg.primes[k];
    QpRing R(p, cfg.cap);
    const int digits = digits_for(p, cfg.cap);
    for (int i = 0; i < share(cfg.perturbation_cases, cfg.primes.size(), k); ++i) {
      auto label = "p=" + std::to_string(p) + " case " + std::to_string(i);
      auto d = uniform(rng, 1, 4);
      std::vector<PadicElement> g;
      for (int j = 0; j < d; ++j) g.push_back(R.from_int(uniform(rng, -ipow(p, 3), ipow(p, 3))));
      g.push_back(R.one());
      FiniteFreeAlgebra B(R, g);
      std::vector<std::int64_t> delta;
      for (int j = 0; j < d; ++j) delta.push_back(random_multiple(rng, p, static_cast<int>(uniform(rng, 1, 3)), digits));
      auto x = B.generator();
      auto report = perturb_integrality(x, x + B.from_ints(delta));
      integral.record(!report.hypothesis_met ? Certainty::unknown
                      : report.verdict == Verdict::pass ? Certainty::yes
                      : report.verdict == Verdict::fail ? Certainty::no
                                                        : Certainty::unknown,
                      label + ": " + report.reason);
      cayley.record(report.hypothesis_met ? less_equal(report.cayley_hamilton_residual, NormValue::exact(cfg.cap))
                                          : Certainty::unknown,
                    label);
    }
  }
  rep.checks = {integral.result(), cayley.result()};
  return rep;
}

// -- Witt layer -------------------------------------------------------------

PerfElement random_perf(std::mt19937_64& rng, const PerfRing& R, int max_terms, std::int64_t max_num,
                        std::int64_t step = 1) {
  std::vector<std::pair<Rational, std::uint32_t>> terms;
  auto k = static_cast<int>(rng() % static_cast<std::uint64_t>(max_terms + 1));
  for (int i = 0; i < k; ++i) {
    auto num = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(max_num / step)) * step;
    auto c = static_cast<std::uint32_t>(1 + rng() % (R.prime() - 1));
    terms.emplace_back(Rational(num, R.denominator()), c);
  }
  return R.from_terms(terms);
}

// sum of p^n [z^(k/den)] with distinct n in [0, max_n] and 0 <= k < max_k
TeichSum random_teich_sum(std::mt19937_64& rng, const PerfRing& R, int terms, int max_n, std::int64_t max_k,
                          std::int64_t den) {
  std::vector<TeichSum::Term> out;
  std::vector<int> used;
  for (int i = 0; i < terms; ++i) {
    auto n = static_cast<int>(uniform(rng, 0, max_n));
    if (std::find(used.begin(), used.end(), n) != used.end()) continue;
    used.push_back(n);
    out.emplace_back(n, R.monomial(Rational(uniform(rng, 0, max_k - 1), den)));
  }
  return TeichSum(R, out);
}

ScenarioReport witt_scenario(const SuiteConfig& cfg, std::mt19937_64& rng) {
  ScenarioReport rep;
  rep.id = "witt-axioms";
  rep.inputs = {{"coefficients", ring_to_json(PerfRing(2, 3, Rational(4)))}, {"length", 3},
                {"triples", cfg.witt_triples}, {"teichmuller_pairs", cfg.teichmuller_pairs}, {"seed", cfg.seed}};
  PerfRing R(2, 3, Rational(4));
  auto random_witt = [&] {
    std::vector<PerfElement> cs;
    for (int i = 0; i < 3; ++i) cs.push_back(random_perf(rng, R, 3, R.trunc_numerator()));
    return WittVector(cs);
  };
  Tally assoc{"associativity of + and *"};
  Tally comm{"commutativity of + and *"};
  Tally dist{"distributivity"};
  Tally neg{"x + (-x) = 0"};
  for (int i = 0; i < cfg.witt_triples; ++i) {
    auto label = "triple " + std::to_string(i);
    auto x = random_witt();
    auto y = random_witt();
    auto z = random_witt();
    assoc.record((x + y) + z == x + (y + z) && (x * y) * z == x * (y * z), label);
    comm.record(x + y == y + x && x * y == y * x, label);
    dist.record(x * (y + z) == x * y + x * z, label);
    neg.record(x + (-x) == WittVector::zero(R, 3), label);
  }
  Tally teich{"[a][b] = [ab]"};
  for (int i = 0; i < cfg.teichmuller_pairs; ++i) {
    auto a = random_perf(rng, R, 3, R.trunc_numerator());
    auto b = random_perf(rng, R, 3, R.trunc_numerator());
    teich.record(teichmuller(a, 3) * teichmuller(b, 3) == teichmuller(a * b, 3), "pair " + std::to_string(i));
  }
  Tally mult{"lambda_t multiplicative on single terms"};
  Tally submult{"lambda_t(x y) <= lambda_t(x) lambda_t(y) on sums of up to 4 terms"};
  PerfRing L(2, 6, Rational(16));
  for (const auto& t : {LambdaParam(cfg.t), LambdaParam(Rational(1, 2))}) {
    for (int i = 0; i < cfg.witt_triples; ++i) {
      auto a = random_teich_sum(rng, L, 1, 3, 32, 8);
      auto b = random_teich_sum(rng, L, 1, 3, 32, 8);
      const auto& [na, xa] = a.terms()[0];
      const auto& [nb, xb] = b.terms()[0];
      TeichSum ab(L, {{na + nb, xa * xb}});
      mult.record(equal(lambda_norm(ab, t), lambda_norm(a, t) * lambda_norm(b, t)), "t=" + t.str());
    }
    for (int i = 0; i < cfg.witt_triples; ++i) {
      auto x = random_teich_sum(rng, L, 4, 3, 32, 8);
      auto y = random_teich_sum(rng, L, 4, 3, 32, 8);
      auto product = PeriodPoly::from_teich_sum(x) * PeriodPoly::from_teich_sum(y);
      submult.record(less_equal(product.lambda(t), lambda_norm(x, t) * lambda_norm(y, t)), "t=" + t.str());
    }
  }
  rep.checks = {assoc.result(), comm.result(), dist.result(), neg.result(), teich.result(), mult.result(),
                submult.result()};
  return rep;
}

// -- dim0 -------------------------------------------------------------------

ScenarioReport dim0_scenario(const SuiteConfig& cfg, std::mt19937_64& rng) {
  ScenarioReport rep;
  rep.id = "dim0-inversion";
  LambdaParam t(cfg.t);
  rep.inputs = {{"t", lambda_to_json(t)}, {"target", exponent_to_json(cfg.target)}, {"sums", cfg.dim0_sums},
                {"seed", cfg.seed}};
  PerfRing R(2, 2, Rational(8));
  Tally dominance{"strict dominance of a single term"};
  Tally inverse{"lambda_t(x x^-1 - 1) <= p^-N'"};
  std::vector<std::string> exps;
  const bool irrational = !sigma_membership(t);
  for (int i = 0; i < cfg.dim0_sums; ++i) {
    auto label = "sum " + std::to_string(i);
    auto x = random_teich_sum(rng, R, 5, 3, 12, 4);
    auto dom = dominant_term(x, t);
    if (dom.tie) {
      // equal term norms are impossible at an irrational scale
      dominance.record(irrational ? Certainty::no : Certainty::unknown, label + " tied");
      inverse.record(Certainty::unknown);
      continue;
    }
    dominance.record(true);
    try {
      auto inv = invert_by_domination(x, t, cfg.target);
      inverse.record(less_equal(inv.residual, NormValue::exact(cfg.target)), label);
      exps.push_back(inv.residual.is_zero() ? "inf" : inv.residual.exponent().str());
    } catch (const PrecisionError& e) {
      inverse.record(Certainty::unknown);
    }
  }
  Tally ties{"constructed ties at t = 1/2 are reported, never broken"};
  for (int i = 0; i < 20; ++i) {
    auto e = uniform(rng, 0, 5);
    auto n = static_cast<int>(uniform(rng, 0, 2));
    TeichSum x(R, {{n, R.monomial(Rational(e + 2))}, {n + 1, R.monomial(Rational(e))}});
    bool reported = dominant_term(x, LambdaParam(Rational(1, 2))).tie;
    bool refused = false;
    try {
      invert_by_domination(x, LambdaParam(Rational(1, 2)), cfg.target);
    } catch (const Indeterminate&) {
      refused = true;
    }
    ties.record(reported && refused, "tie " + std::to_string(i));
  }
  std::string listing;
  for (std::size_t k = 0; k < exps.size(); ++k) listing += (k ? ", " : "") + exps[k];
  rep.checks = {dominance.result(), inverse.result("residual exponents: " + listing), ties.result()};
  return rep;
}

// -- Nullstellensatz batch --------------------------------------------------

ScenarioReport nullstellensatz_batch(const SuiteConfig& cfg) {
  ScenarioReport rep;
  rep.id = "nullstellensatz-batch";
  auto path = cfg.corpus.empty() ? default_corpus_path() : cfg.corpus;
  rep.inputs = {{"corpus", path}};
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read corpus " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  auto doc = parse_json(ss.str());
  if (!doc.contains("polynomials") || !doc["polynomials"].is_array()) {
    throw ParseError("corpus.polynomials: expected a list of series");
  }
  const auto& polys = doc["polynomials"];
  for (std::size_t i = 0; i < polys.size(); ++i) {
    auto f = padic_series_from_json(polys[i], "corpus.polynomials[" + std::to_string(i) + "]");
    auto r = nullstellensatz_check(f);
    auto name = "f_" + std::to_string(i) + " over Q_" + std::to_string(f.ring().base().prime()) + ": " + f.str();
    auto verdict = r.overall();
    std::string detail = r.summary;
    if (verdict == Verdict::pass) {
      // the certified degree must equal the degree of the prepared monic factor
      const auto& deg_check = r.checks.back();
      detail = deg_check.detail;
    }
    rep.checks.push_back({name, verdict, detail});
  }
  return rep;
}

}  // namespace

// ---------------------------------------------------------------------------

Verdict ScenarioReport::overall() const {
  bool indeterminate = false;
  for (const auto& c : checks) {
    if (c.verdict == Verdict::fail) return Verdict::fail;
    if (c.verdict == Verdict::indeterminate) indeterminate = true;
  }
  return indeterminate || checks.empty() ? Verdict::indeterminate : Verdict::pass;
}

Json ScenarioReport::to_json() const {
  Json checks_json = Json::array();
  for (const auto& c : checks) {
    checks_json.push_back({{"name", c.name}, {"verdict", to_string(c.verdict)}, {"detail", c.detail}});
  }
  return {{"scenario", id}, {"inputs", inputs}, {"checks", checks_json}, {"verdict", to_string(overall())},
          {"summary", summary}};
}

std::string ScenarioReport::to_text() const {
  std::ostringstream os;
  os << "scenario " << id << "\n";
  os << "  inputs: " << dump(inputs) << "\n";
  for (const auto& c : checks) {
    os << "  " << to_string(c.verdict) << "  " << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
  }
  os << "  summary: " << summary << "\n";
  return os.str();
}

const std::vector<std::string>& known_scenarios() {
  static const std::vector<std::string> ids{"division-norm-identity", "preparation-roundtrip", "polygon-additivity",
                                            "perturbation",           "witt-axioms",           "dim0-inversion",
                                            "nullstellensatz-batch"};
  return ids;
}

std::string default_corpus_path() { return std::string(TATEFORGE_DATA_DIR) + "/nullstellensatz_corpus.json"; }

SuiteConfig suite_config_from_json(const Json& j) {
  SuiteConfig c;
  if (!j.is_object()) throw ParseError("config: expected an object");
  auto int_field = [&](const std::string& key, int& out) {
    const auto& v = j.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) throw ParseError("config." + key + ": expected a nonnegative integer");
    out = v.get<int>();
  };
  for (const auto& [key, v] : j.items()) {
    if (key == "scenarios") {
      if (!v.is_array()) throw ParseError("config.scenarios: expected a list of names");
      for (const auto& s : v) {
        if (!s.is_string()) throw ParseError("config.scenarios: expected a list of names");
        c.scenarios.push_back(s.get<std::string>());
      }
    } else if (key == "seed") {
      if (!v.is_number_unsigned()) throw ParseError("config.seed: expected a nonnegative integer");
      c.seed = v.get<std::uint64_t>();
    } else if (key == "primes") {
      if (!v.is_array() || v.empty()) throw ParseError("config.primes: expected a nonempty list");
      c.primes.clear();
      for (const auto& p : v) {
        if (!p.is_number_unsigned() || p.get<std::uint64_t>() < 2 || p.get<std::uint64_t>() > 7) {
          throw ParseError("config.primes: expected primes in {2, 3, 5, 7}");
        }
        c.primes.push_back(p.get<std::uint32_t>());
      }
    } else if (key == "cap") {
      int_field(key, c.cap);
    } else if (key == "division_pairs") {
      int_field(key, c.division_pairs);
    } else if (key == "nested_pairs") {
      int_field(key, c.nested_pairs);
    } else if (key == "preparation_cases") {
      int_field(key, c.preparation_cases);
    } else if (key == "polygon_pairs") {
      int_field(key, c.polygon_pairs);
    } else if (key == "ball_cases") {
      int_field(key, c.ball_cases);
    } else if (key == "perturbation_cases") {
      int_field(key, c.perturbation_cases);
    } else if (key == "witt_triples") {
      int_field(key, c.witt_triples);
    } else if (key == "teichmuller_pairs") {
      int_field(key, c.teichmuller_pairs);
    } else if (key == "dim0_sums") {
      int_field(key, c.dim0_sums);
    } else if (key == "t") {
      c.t = lambda_from_json(v, "config.t").value();
    } else if (key == "target") {
      c.target = NormExponent(rational_from_json(v, "config.target"));
    } else if (key == "corpus") {
      if (!v.is_string()) throw ParseError("config.corpus: expected a path");
      c.corpus = v.get<std::string>();
    } else if (key == "parallel") {
      if (!v.is_boolean()) throw ParseError("config.parallel: expected a boolean");
      c.parallel = v.get<bool>();
    } else {
      throw ParseError("config." + key + ": unknown key");
    }
  }
  if (c.cap < 4 || c.cap > 30) throw ParseError("config.cap: expected 4 <= cap <= 30");
  return c;
}

Json suite_config_to_json(const SuiteConfig& c) {
  Json scenarios = Json::array();
  for (const auto& s : c.scenarios) scenarios.push_back(s);
  return {{"scenarios", scenarios},
          {"seed", c.seed},
          {"primes", primes_json(c)},
          {"cap", c.cap},
          {"division_pairs", c.division_pairs},
          {"nested_pairs", c.nested_pairs},
          {"preparation_cases", c.preparation_cases},
          {"polygon_pairs", c.polygon_pairs},
          {"ball_cases", c.ball_cases},
          {"perturbation_cases", c.perturbation_cases},
          {"witt_triples", c.witt_triples},
          {"teichmuller_pairs", c.teichmuller_pairs},
          {"dim0_sums", c.dim0_sums},
          {"t", lambda_to_json(LambdaParam(c.t))},
          {"target", exponent_to_json(c.target)},
          {"corpus", c.corpus},
          {"parallel", c.parallel}};
}

ScenarioReport nullstellensatz_check(const Series& f) {
  ScenarioReport rep;
  rep.id = "nullcheck";
  rep.inputs = series_to_json(f);
  auto stop = [&](const std::string& step, const std::string& why) {
    rep.checks.push_back({step, Verdict::indeterminate, why});
    rep.summary = "INDETERMINATE: " + why;
    return rep;
  };
  auto rescaled = rescale_to_distinguished(f);
  if (auto* ref = std::get_if<Refusal>(&rescaled)) return stop("rescale to distinguished", ref->reason);
  auto [c, cert] = std::get<Rescaling<PadicElement>>(rescaled);
  rep.checks.push_back({"rescale to distinguished", Verdict::pass,
                        "c = " + c.str() + ", distinguished of degree " + std::to_string(cert.n0)});
  if (cert.n0 == 0) return stop("Weierstrass preparation", "f is a unit of Q_p<T>; (f) is not a maximal ideal");
  PreparationResult<PadicElement> prep{f, f, NormValue::zero(), 0};
  try {
    prep = weierstrass_prepare(f.scale(c));
  } catch (const Error& e) {
    return stop("Weierstrass preparation", e.what());
  }
  const auto N = f.ring().working_precision();
  if (!certainly(less_equal(prep.residual, NormValue::exact(N)))) {
    return stop("Weierstrass preparation", "residual " + prep.residual.str() + " is not below p^-N");
  }
  rep.checks.push_back({"Weierstrass preparation", Verdict::pass,
                        "c f = g u with g = " + prep.monic.str() + ", residual " + prep.residual.str()});
  auto unit = is_unit_tate(prep.unit);
  if (unit != Certainty::yes) return stop("unit factor", "u = " + prep.unit.str() + " is not a certified unit");
  rep.checks.push_back({"unit factor", Verdict::pass, "u = " + prep.unit.str()});
  std::optional<IrreducibilityCertificate> cert_irr;
  try {
    cert_irr = irreducibility_certificate(prep.monic);
  } catch (const Indeterminate& e) {
    return stop("slope certificate", e.what());
  }
  if (!cert_irr) {
    return stop("slope certificate", "certificate inapplicable: the Newton polygon of g is not a single segment "
                                     "of slope a/d in lowest terms with d = deg g");
  }
  rep.checks.push_back({"slope certificate", Verdict::pass,
                        "single slope " + to_string(cert_irr->slope) + " with denominator " +
                            std::to_string(cert_irr->degree) + ", g irreducible"});
  auto d = residue_degree(*cert_irr);
  auto deg_g = prep.monic.length() - 1;
  rep.checks.push_back({"residue degree", d == deg_g ? Verdict::pass : Verdict::fail,
                        "[Q_p<T>/(f) : Q_p] = " + std::to_string(d) + ", deg g = " + std::to_string(deg_g)});
  if (d != deg_g) {
    rep.summary = "FAIL: residue degree differs from the degree of the monic factor";
    return rep;
  }
  rep.summary = "maximal ideal (f) of Q_" + std::to_string(f.ring().base().prime()) +
                "<T> has residue field of finite degree " + std::to_string(d) + " over Q_" +
                std::to_string(f.ring().base().prime()) + ": strong-Nullstellensatz conclusion verified";
  return rep;
}

ScenarioReport run_scenario(const std::string& id, const SuiteConfig& config) {
  const auto& ids = known_scenarios();
  auto it = std::find(ids.begin(), ids.end(), id);
  if (it == ids.end()) throw DomainError("unknown scenario '" + id + "'");
  auto index = static_cast<std::uint64_t>(it - ids.begin());
  std::mt19937_64 rng(config.seed + 0x9E3779B97F4A7C15ULL * (index + 1));
  ScenarioReport rep;
  if (id == "division-norm-identity") rep = division_scenario(config, rng);
  if (id == "preparation-roundtrip") rep = preparation_scenario(config, rng);
  if (id == "polygon-additivity") rep = polygon_scenario(config, rng);
  if (id == "perturbation") rep = perturbation_scenario(config, rng);
  if (id == "witt-axioms") rep = witt_scenario(config, rng);
  if (id == "dim0-inversion") rep = dim0_scenario(config, rng);
  if (id == "nullstellensatz-batch") rep = nullstellensatz_batch(config);
  rep.summary = summarize(rep);
  return rep;
}

std::vector<ScenarioReport> run_suite(const SuiteConfig& config) {
  auto ids = config.scenarios.empty() ? known_scenarios() : config.scenarios;
  for (const auto& id : ids) {
    if (std::find(known_scenarios().begin(), known_scenarios().end(), id) == known_scenarios().end()) {
      throw DomainError("unknown scenario '" + id + "'");
    }
  }
  std::vector<ScenarioReport> out;
  if (!config.parallel) {
    for (const auto& id : ids) out.push_back(run_scenario(id, config));
    return out;
  }
  std::vector<std::future<ScenarioReport>> jobs;
  for (const auto& id : ids) jobs.push_back(std::async(std::launch::async, [&config, id] { return run_scenario(id, config); }));
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

int exit_code(const std::vector<ScenarioReport>& reports, bool strict) {
  bool indeterminate = false;
  for (const auto& r : reports) {
    if (r.overall() == Verdict::fail) return 1;
    if (r.overall() == Verdict::indeterminate) indeterminate = true;
  }
  return strict && indeterminate ? 2 : 0;
}

// ---------------------------------------------------------------------------

DivisionCase random_division_case(std::mt19937_64& rng, std::uint32_t p, int digits) {
  DivisionCase c;
  c.p = p;
  auto n0 = uniform(rng, 0, 3);
  auto extra = uniform(rng, 0, 3);
  for (int i = 0; i < n0; ++i) c.f.push_back(random_multiple(rng, p, static_cast<int>(uniform(rng, 0, 2)), digits));
  c.f.push_back(1 + random_multiple(rng, p, 1, digits));
  for (int i = 0; i < extra; ++i) c.f.push_back(random_multiple(rng, p, static_cast<int>(uniform(rng, 1, 3)), digits));
  auto dg = uniform(rng, 0, 6);
  for (int i = 0; i <= dg; ++i) c.g.push_back(random_multiple(rng, p, static_cast<int>(uniform(rng, 0, 3)), digits));
  return c;
}

DivisionRun run_division(const DivisionCase& c, int cap) {
  QpRing R(c.p, cap);
  SeriesRing<PadicElement> A(R);
  auto f = poly(A, c.f);
  auto g = poly(A, c.g);
  auto checked = check_distinguished(f);
  if (auto* ref = std::get_if<Refusal>(&checked)) throw Indeterminate("division case: " + ref->reason);
  auto cert = std::get<DistinguishedCertificate>(checked);
  auto [q, r, it] = weierstrass_divide(f, cert, g);
  auto [ql, rl, it2] = weierstrass_divide_linear(f, cert, g);
  DivisionRun run{q, r, ql, rl};
  run.residual_ok = certainly(less_equal((g - (f * q + r)).norm(), NormValue::exact(cap)));
  bool exact = !g.norm().is_at_most() && !q.norm().is_at_most() && !r.norm().is_at_most();
  run.identity = exact ? equal(g.norm(), join(q.norm(), r.norm())) : Certainty::unknown;
  run.strategies_agree = agree_mod_across(q, ql, cap) && agree_mod_across(r, rl, cap);
  return run;
}

PreparationCase random_preparation_case(std::mt19937_64& rng, std::uint32_t p, int digits) {
  PreparationCase c;
  c.p = p;
  auto n0 = uniform(rng, 1, 4);
  for (int i = 0; i < n0; ++i) c.g.push_back(random_multiple(rng, p, static_cast<int>(uniform(rng, 0, 2)), digits));
  c.g.push_back(1);
  c.u.push_back(random_unit(rng, p, digits));
  auto du = uniform(rng, 0, 3);
  for (int i = 0; i < du; ++i) c.u.push_back(random_multiple(rng, p, static_cast<int>(uniform(rng, 1, 3)), digits));
  return c;
}

PreparationRun run_preparation(const PreparationCase& c, int cap) {
  QpRing R(c.p, cap);
  SeriesRing<PadicElement> A(R);
  auto g = poly(A, c.g);
  auto u = poly(A, c.u);
  auto prep = weierstrass_prepare(g * u);
  PreparationRun run{prep.monic, prep.unit};
  run.recovered_monic = agree_mod_across(prep.monic, g, cap);
  run.recovered_unit = agree_mod_across(prep.unit, u, cap);
  run.unit_is_unit = is_unit_tate(prep.unit);
  return run;
}

bool agree_mod_across(const Series& a, const Series& b, int k) {
  auto n = std::max(a.length(), b.length());
  if (!certainly(less_equal(a.tail_bound(), NormValue::exact(k))) ||
      !certainly(less_equal(b.tail_bound(), NormValue::exact(k)))) {
    return false;
  }
  const auto p = a.ring().base().prime();
  if (b.ring().base().prime() != p) return false;
  for (std::size_t i = 0; i < n; ++i) {
    auto x = a.coefficient(i);
    auto y = b.coefficient(i);
    if (x.precision() < k || y.precision() < k) return false;
    int s = std::max(x.shift(), y.shift());
    cpp_int m = boost::multiprecision::pow(cpp_int(p), static_cast<unsigned>(k + s));
    cpp_int xv = cpp_int(x.mantissa()) * boost::multiprecision::pow(cpp_int(p), static_cast<unsigned>(s - x.shift()));
    cpp_int yv = cpp_int(y.mantissa()) * boost::multiprecision::pow(cpp_int(p), static_cast<unsigned>(s - y.shift()));
    if ((xv - yv) % m != 0) return false;
  }
  return true;
}

std::vector<std::pair<std::size_t, Rational>> brute_force_hull(const std::vector<std::pair<std::size_t, Rational>>& pts) {
  std::vector<std::pair<std::size_t, Rational>> out;
  for (const auto& k : pts) {
    bool vertex = true;
    for (const auto& i : pts) {
      for (const auto& j : pts) {
        if (!(i.first < k.first && k.first < j.first)) continue;
        auto span = Rational(static_cast<std::int64_t>(j.first - i.first));
        auto at = i.second + (j.second - i.second) * Rational(static_cast<std::int64_t>(k.first - i.first)) / span;
        if (k.second >= at) vertex = false;
      }
    }
    if (vertex) out.push_back(k);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

template <NormedCoefficient C>
CommandResult divide_command(const RestrictedSeries<C>& f, const RestrictedSeries<C>& g) {
  CommandResult res;
  auto checked = check_distinguished(f);
  if (auto* ref = std::get_if<Refusal>(&checked)) {
    if (!ref->indeterminate()) throw DomainError("f is not distinguished: " + ref->reason);
    res.verdict = Verdict::indeterminate;
    res.output = {{"verdict", "INDETERMINATE"}, {"reason", ref->reason}};
    res.text = "INDETERMINATE: " + ref->reason + "\n";
    return res;
  }
  auto cert = std::get<DistinguishedCertificate>(checked);
  // normalize f_n0 to 1; the quotient absorbs the unit
  auto c = *f.coefficients()[cert.n0].unit_inverse();
  auto fn = f.scale(c);
  auto ncert = std::get<DistinguishedCertificate>(check_distinguished(fn));
  auto [q, r, rounds] = weierstrass_divide(fn, ncert, g);
  q = q.scale(c);
  auto residual = (g - (f * q + r)).norm();
  const auto N = f.ring().working_precision();
  auto res_ok = less_equal(residual, NormValue::exact(N));
  bool exact = !g.norm().is_at_most() && !q.norm().is_at_most() && !r.norm().is_at_most();
  auto identity = exact ? equal(g.norm(), join(q.norm(), r.norm())) : Certainty::unknown;
  auto id_verdict = identity == Certainty::yes ? Verdict::pass : identity == Certainty::no ? Verdict::fail : Verdict::indeterminate;
  res.verdict = !certainly(res_ok) ? Verdict::indeterminate : id_verdict;
  res.output = {{"n0", cert.n0},
                {"q", series_to_json(q)},
                {"r", series_to_json(r)},
                {"iterations", rounds},
                {"residual", norm_to_json(residual)},
                {"norm_identity", to_string(id_verdict)},
                {"verdict", to_string(res.verdict)}};
  std::ostringstream os;
  os << "n0 = " << cert.n0 << "\nq = " << q.str() << "\nr = " << r.str() << "\nresidual " << residual.str()
     << "\n|g| = " << g.norm().str() << ", max(|q|, |r|) = " << join(q.norm(), r.norm()).str() << ": "
     << to_string(id_verdict) << "\n";
  res.text = os.str();
  return res;
}

template <NormedCoefficient C>
CommandResult prepare_command(const RestrictedSeries<C>& f) {
  CommandResult res;
  PreparationResult<C> prep{f, f, NormValue::zero(), 0};
  try {
    prep = weierstrass_prepare(f);
  } catch (const Indeterminate& e) {
    res.verdict = Verdict::indeterminate;
    res.output = {{"verdict", "INDETERMINATE"}, {"reason", e.what()}};
    res.text = std::string("INDETERMINATE: ") + e.what() + "\n";
    return res;
  }
  const auto N = f.ring().working_precision();
  bool ok = certainly(less_equal(prep.residual, NormValue::exact(N))) && certainly(is_unit_tate(prep.unit));
  res.verdict = ok ? Verdict::pass : Verdict::indeterminate;
  res.output = {{"n0", prep.n0},
                {"monic", series_to_json(prep.monic)},
                {"unit", series_to_json(prep.unit)},
                {"residual", norm_to_json(prep.residual)},
                {"verdict", to_string(res.verdict)}};
  res.text = "n0 = " + std::to_string(prep.n0) + "\ng = " + prep.monic.str() + "\nu = " + prep.unit.str() +
             "\nresidual " + prep.residual.str() + "\n";
  return res;
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("input.") + key + ": missing field");
  return j.at(key);
}

}  // namespace

CommandResult command_wdiv(const Json& input) {
  auto f = series_from_json(require(input, "f"), "input.f");
  auto g = series_from_json(require(input, "g"), "input.g");
  if (f.index() != g.index()) throw ParseError("input.g.base: f and g need the same base");
  return std::visit(
      [&](const auto& fs) {
        using S = std::decay_t<decltype(fs)>;
        const auto& gs = std::get<S>(g);
        if (!(fs.ring() == gs.ring())) throw ParseError("input.g.base: f and g need the same base");
        return divide_command(fs, gs);
      },
      f);
}

CommandResult command_wprep(const Json& input) {
  auto f = series_from_json(input.contains("f") ? input.at("f") : input, input.contains("f") ? "input.f" : "input");
  return std::visit([](const auto& fs) { return prepare_command(fs); }, f);
}

CommandResult command_newton(const Json& input) {
  auto f = padic_series_from_json(input.contains("f") ? input.at("f") : input, input.contains("f") ? "input.f" : "input");
  CommandResult res;
  try {
    auto np = newton_polygon(f);
    res.output = polygon_to_json(np);
    std::ostringstream os;
    os << "vertices:";
    for (const auto& [i, e] : np.vertices) os << " (" << i << ", " << to_string(e) << ")";
    os << "\nroot valuations (slope, multiplicity):";
    for (const auto& [s, len] : np.slopes) os << " (" << to_string(s) << ", " << len << ")";
    if (np.zero_roots) os << "\nroot 0 with multiplicity " << np.zero_roots;
    os << "\n";
    res.text = os.str();
  } catch (const Indeterminate& e) {
    res.verdict = Verdict::indeterminate;
    res.output = {{"verdict", "INDETERMINATE"}, {"reason", e.what()}};
    res.text = std::string("INDETERMINATE: ") + e.what() + "\n";
  }
  return res;
}

CommandResult command_lambda(const Json& input) {
  auto [x, t] = teich_sum_from_json(input, "input");
  CommandResult res;
  std::ostringstream os;
  Json out;
  out["x"] = x.str();
  std::optional<LambdaInterval> interval;
  if (input.contains("interval")) {
    const auto& iv = input.at("interval");
    if (!iv.is_array() || iv.size() != 2) throw ParseError("input.interval: expected [s, r]");
    interval.emplace(lambda_from_json(iv[0], "input.interval[0]"), lambda_from_json(iv[1], "input.interval[1]"));
  }
  if (!t && !interval) throw ParseError("input.t: missing field");
  try {
    if (t) {
      auto v = lambda_norm(x, *t);
      out["lambda"] = norm_to_json(v);
      out["sigma_membership"] = sigma_membership(*t);
      os << "lambda_t(x) = " << v.str() << " at t = " << t->str() << "\n";
      os << "t in Sigma_L: " << (sigma_membership(*t) ? "yes" : "no") << "\n";
      auto dom = dominant_term(x, *t);
      Json d = {{"tie", dom.tie}, {"n", dom.n}, {"exponent", exponent_to_json(dom.exponent)}};
      if (dom.tie) d["tied_with"] = dom.tied_with;
      out["dominant"] = d;
      if (dom.tie) {
        os << "tie between p^" << dom.n << " and p^" << dom.tied_with << "\n";
      } else {
        os << "dominant term at p^" << dom.n << "\n";
      }
      if (input.contains("target")) {
        auto target = NormExponent(rational_from_json(input.at("target"), "input.target"));
        auto inv = invert_by_domination(x, *t, target);
        out["inverse"] = {{"value", inv.inverse.str()}, {"terms", inv.terms}, {"residual", norm_to_json(inv.residual)}};
        os << "x^-1 = " << inv.inverse.str() << "\nresidual " << inv.residual.str() << "\n";
      }
    }
    if (interval) {
      auto v = lambda_interval(x, *interval);
      out["lambda_interval"] = norm_to_json(v);
      os << "lambda_I(x) = " << v.str() << "\n";
    }
  } catch (const Indeterminate& e) {
    res.verdict = Verdict::indeterminate;
    out["verdict"] = "INDETERMINATE";
    out["reason"] = e.what();
    os << "INDETERMINATE: " << e.what() << "\n";
  }
  res.output = out;
  res.text = os.str();
  return res;
}

CommandResult command_nullcheck(const Json& input) {
  std::vector<Series> polys;
  if (input.contains("polynomials")) {
    const auto& arr = input.at("polynomials");
    if (!arr.is_array()) throw ParseError("input.polynomials: expected a list of series");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      polys.push_back(padic_series_from_json(arr[i], "input.polynomials[" + std::to_string(i) + "]"));
    }
  } else {
    polys.push_back(padic_series_from_json(input, "input"));
  }
  CommandResult res;
  Json reports = Json::array();
  std::vector<ScenarioReport> all;
  for (const auto& f : polys) {
    auto r = nullstellensatz_check(f);
    reports.push_back(r.to_json());
    res.text += r.to_text();
    all.push_back(r);
  }
  bool indeterminate = false;
  for (const auto& r : all) {
    if (r.overall() == Verdict::fail) res.verdict = Verdict::fail;
    if (r.overall() == Verdict::indeterminate) indeterminate = true;
  }
  if (res.verdict != Verdict::fail && indeterminate) res.verdict = Verdict::indeterminate;
  res.output = {{"reports", reports}, {"verdict", to_string(res.verdict)}};
  return res;
}

}  // namespace tateforge
