#include <random>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "tateforge/period.hpp"
#include "tateforge/witt.hpp"

using namespace tateforge;
using boost::multiprecision::cpp_int;

namespace {

const QuadraticNumber kSqrt2(Rational(0), Rational(1), 2);

WittPolynomial::Monomial mono(std::initializer_list<unsigned> e) { return WittPolynomial::Monomial(e); }

// Value of an integer polynomial at integer points.
cpp_int eval_int(const WittPolynomial& f, const std::vector<cpp_int>& v) {
  cpp_int acc = 0;
  for (const auto& [m, c] : f.terms) {
    cpp_int term = c;
    for (std::size_t i = 0; i < m.size(); ++i) term *= boost::multiprecision::pow(v[i], m[i]);
    acc += term;
  }
  return acc;
}

cpp_int ghost_int(std::uint32_t p, std::size_t k, const std::vector<cpp_int>& a) {
  cpp_int acc = 0;
  for (std::size_t i = 0; i <= k; ++i) {
    acc += boost::multiprecision::pow(cpp_int(p), static_cast<unsigned>(i)) *
           boost::multiprecision::pow(a[i], static_cast<unsigned>(oracle::pow_int(p, static_cast<int>(k - i))));
  }
  return acc;
}

// Witt vector over F_p with constant components, read as an integer mod p^n:
// sum p^i omega(a_i), omega the Teichmüller lift mod p^n.
std::int64_t to_integer(const WittVector& w) {
  const auto p = static_cast<std::int64_t>(w.ring().prime());
  const auto n = static_cast<int>(w.length());
  const auto m = oracle::pow_int(p, n);
  std::int64_t acc = 0;
  for (int i = 0; i < n; ++i) {
    auto c = static_cast<std::int64_t>(w.components()[static_cast<std::size_t>(i)].coefficient(Rational(0)));
    std::int64_t omega = c;
    for (int j = 0; j < n; ++j) {
      std::int64_t x = 1;
      for (std::int64_t e = 0; e < p; ++e) x = oracle::mod(static_cast<__int128>(x) * omega, m);
      omega = x;
    }
    acc = oracle::mod(acc + oracle::pow_int(p, i) * omega, m);
  }
  return acc;
}

PerfElement random_perf(std::mt19937_64& rng, const PerfRing& R, int max_terms, std::int64_t max_num) {
  std::vector<std::pair<Rational, std::uint32_t>> terms;
  auto k = static_cast<int>(rng() % static_cast<std::uint64_t>(max_terms + 1));
  for (int i = 0; i < k; ++i) {
    auto num = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(max_num));
    auto c = static_cast<std::uint32_t>(1 + rng() % (R.prime() - 1));
    terms.emplace_back(Rational(num, R.denominator()), c);
  }
  return R.from_terms(terms);
}

WittVector random_witt(std::mt19937_64& rng, const PerfRing& R, std::size_t n) {
  std::vector<PerfElement> cs;
  for (std::size_t i = 0; i < n; ++i) cs.push_back(random_perf(rng, R, 3, R.trunc_numerator()));
  return WittVector(cs);
}

}  // namespace

TEST_CASE("structure polynomials at p = 2") {
  const auto& s = witt_structure_polys(2, 2);
  WittPolynomial s0, p0, s1, p1;
  s0.terms = {{mono({1, 0, 0, 0}), 1}, {mono({0, 0, 1, 0}), 1}};
  p0.terms = {{mono({1, 0, 1, 0}), 1}};
  s1.terms = {{mono({0, 1, 0, 0}), 1}, {mono({0, 0, 0, 1}), 1}, {mono({1, 0, 1, 0}), -1}};
  p1.terms = {{mono({2, 0, 0, 1}), 1}, {mono({0, 1, 2, 0}), 1}, {mono({0, 1, 0, 1}), 2}};
  CHECK(s.sum[0] == s0);
  CHECK(s.product[0] == p0);
  CHECK(s.sum[1] == s1);
  CHECK(s.product[1] == p1);
  CHECK(s.sum[1].str() == "X1 + Y1 - X0*Y0");
  CHECK_THROWS_AS(witt_structure_polys(2, 5), DomainError);
  CHECK(&witt_structure_polys(2, 2) == &s);
}

TEST_CASE("structure polynomials satisfy the ghost identities over Z") {
  std::mt19937_64 rng(31);
  for (auto [p, n] : {std::pair<std::uint32_t, std::size_t>{2, 4}, {3, 3}, {5, 2}}) {
    const auto& s = witt_structure_polys(p, n);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<cpp_int> a, b, ab;
      for (std::size_t i = 0; i < n; ++i) a.push_back(static_cast<int>(rng() % 7) - 3);
      for (std::size_t i = 0; i < n; ++i) b.push_back(static_cast<int>(rng() % 7) - 3);
      ab = a;
      ab.insert(ab.end(), b.begin(), b.end());
      std::vector<cpp_int> sv, pv;
      for (std::size_t k = 0; k < n; ++k) {
        sv.push_back(eval_int(s.sum[k], ab));
        pv.push_back(eval_int(s.product[k], ab));
      }
      for (std::size_t k = 0; k < n; ++k) {
        CHECK(ghost_int(p, k, sv) == ghost_int(p, k, a) + ghost_int(p, k, b));
        CHECK(ghost_int(p, k, pv) == ghost_int(p, k, a) * ghost_int(p, k, b));
      }
    }
  }
}

TEST_CASE("Witt vectors over F_p are the integers mod p^n") {
  std::mt19937_64 rng(32);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    PerfRing R(p, 0, Rational(1));
    const std::size_t n = p == 5 ? 2 : 3;
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<PerfElement> xa, ya;
      for (std::size_t i = 0; i < n; ++i) xa.push_back(R.monomial(Rational(0), static_cast<std::uint32_t>(rng() % p)));
      for (std::size_t i = 0; i < n; ++i) ya.push_back(R.monomial(Rational(0), static_cast<std::uint32_t>(rng() % p)));
      WittVector x(xa), y(ya);
      auto m = oracle::pow_int(p, static_cast<int>(n));
      CHECK(to_integer(x + y) == oracle::mod(to_integer(x) + to_integer(y), m));
      CHECK(to_integer(x * y) == oracle::mod(static_cast<__int128>(to_integer(x)) * to_integer(y), m));
      CHECK(to_integer(-x) == oracle::mod(-to_integer(x), m));
    }
  }
}

TEST_CASE("small Witt computations") {
  PerfRing F2(2, 0, Rational(1));
  auto sum = teichmuller(F2.one(), 2) + teichmuller(F2.one(), 2);
  CHECK(sum == WittVector({F2.zero(), F2.one()}));

  PerfRing L(2, 1, Rational(8));
  auto z = L.monomial(Rational(1));
  auto zz = WittVector({z, L.zero()}) + WittVector({z, L.zero()});
  CHECK(zz == WittVector({L.zero(), L.monomial(Rational(2))}));

  auto prod = teichmuller(z, 3) * teichmuller(L.monomial(Rational(1, 2)), 3);
  CHECK(prod == teichmuller(L.monomial(Rational(3, 2)), 3));
  CHECK(teichmuller(z, 3) * teichmuller(z, 3) == teichmuller(L.monomial(Rational(2)), 3));
  CHECK(teichmuller(L.zero(), 2) == WittVector::zero(L, 2));
  auto w = WittVector({z, L.monomial(Rational(1, 2)), L.one()});
  CHECK(WittVector::one(L, 3) * w == w);
  CHECK(w - w == WittVector::zero(L, 3));
}

TEST_CASE("ring axioms over F_2[z^(1/8)]/(z^4)") {
  std::mt19937_64 rng(33);
  PerfRing R(2, 3, Rational(4));
  for (int trial = 0; trial < 30; ++trial) {
    auto x = random_witt(rng, R, 3);
    auto y = random_witt(rng, R, 3);
    auto z = random_witt(rng, R, 3);
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x + y == y + x);
    CHECK(x * y == y * x);
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x + (-x) == WittVector::zero(R, 3));
  }
}

TEST_CASE("Teichmüller multiplicativity") {
  std::mt19937_64 rng(34);
  PerfRing R(2, 3, Rational(4));
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_perf(rng, R, 3, R.trunc_numerator());
    auto b = random_perf(rng, R, 3, R.trunc_numerator());
    CHECK(teichmuller(a, 3) * teichmuller(b, 3) == teichmuller(a * b, 3));
  }
}

TEST_CASE("Teichmüller sums and Witt vectors") {
  PerfRing R(2, 3, Rational(8));
  TeichSum x(R, {{0, R.monomial(Rational(1))}, {2, R.monomial(Rational(1, 2))}});
  auto w = x.to_witt(3);
  CHECK(w == WittVector({R.monomial(Rational(1)), R.zero(), R.monomial(Rational(2))}));
  auto back = TeichSum::from_witt(w);
  REQUIRE(back.terms().size() == 3);
  CHECK(back.terms()[2].second.agrees_with(R.monomial(Rational(1, 2))));
  CHECK_THROWS_AS(TeichSum(R, {{1, R.one()}, {1, R.one()}}), DomainError);
  CHECK_THROWS_AS(TeichSum(R, {{-1, R.one()}}).to_witt(2), DomainError);
  CHECK_THROWS_AS(TeichSum(R, {{0, R.monomial(Rational(-1))}}).to_witt(2), DomainError);
}

TEST_CASE("lambda norms") {
  PerfRing R(2, 3, Rational(8));
  auto z = R.monomial(Rational(1));
  CHECK(lambda_norm(TeichSum(R, {{1, z}}), LambdaParam(2)) == NormValue::exact(3));
  CHECK(lambda_norm(TeichSum(R, {{0, R.one()}}), LambdaParam(kSqrt2)) == NormValue::one());
  CHECK(lambda_norm(TeichSum(R, {{0, z}, {1, R.one()}}), LambdaParam(Rational(1, 2))) ==
        NormValue::exact(Rational(1, 2)));
  CHECK(lambda_interval(TeichSum(R, {{1, z}}), LambdaInterval(LambdaParam(1), LambdaParam(2))) ==
        NormValue::exact(2));
  CHECK(lambda_interval(TeichSum(R, {{0, R.one()}}), LambdaInterval(LambdaParam(1), LambdaParam(kSqrt2))) ==
        NormValue::one());
  CHECK(lambda_interval(TeichSum(R, {{0, z}}), LambdaInterval(LambdaParam(Rational(1, 2)), LambdaParam(2))) ==
        NormValue::exact(Rational(1, 2)));
  CHECK_THROWS_AS(LambdaParam(0), DomainError);
  CHECK_THROWS_AS(LambdaInterval(LambdaParam(2), LambdaParam(1)), DomainError);
  // an imprecise zero digit that could be the largest term
  CHECK_THROWS_AS(lambda_norm(TeichSum(R, {{0, R.zero().with_trunc_numerator(1)}, {3, R.one()}}), LambdaParam(1)),
                  Indeterminate);
}

TEST_CASE("Sigma_L membership") {
  CHECK(sigma_membership(LambdaParam(Rational(3, 2))));
  CHECK(!sigma_membership(LambdaParam(kSqrt2)));
  CHECK(sigma_membership(LambdaParam(1)));
}

TEST_CASE("dominant terms") {
  PerfRing R(2, 3, Rational(8));
  auto z = R.monomial(Rational(1));
  auto d1 = dominant_term(TeichSum(R, {{0, R.one()}, {1, z}}), LambdaParam(kSqrt2));
  CHECK(!d1.tie);
  CHECK(d1.n == 0);
  CHECK(d1.term_exponents[1] == NormExponent(QuadraticNumber(Rational(1), Rational(1), 2)));
  auto d2 = dominant_term(TeichSum(R, {{0, R.monomial(Rational(2))}, {1, R.one()}}), LambdaParam(Rational(1, 2)));
  CHECK(d2.tie);
  CHECK(d2.n == 0);
  CHECK(d2.tied_with == 1);
  auto d3 = dominant_term(TeichSum(R, {{3, z}}), LambdaParam(1));
  CHECK(!d3.tie);
  CHECK(d3.n == 3);
}

TEST_CASE("inversion through the dominant term") {
  PerfRing R(2, 3, Rational(8));
  auto z = R.monomial(Rational(1));
  LambdaParam t(kSqrt2);

  auto one = invert_by_domination(TeichSum(R, {{0, R.one()}}), t, NormExponent(10));
  CHECK(one.inverse.str() == "(1)");
  CHECK(one.residual.is_zero());

  NormExponent target(QuadraticNumber(Rational(3), Rational(3), 2));
  auto geo = invert_by_domination(TeichSum(R, {{0, R.one()}, {1, z}}), t, target);
  PeriodPoly expected(2, {{Rational(0), 1}, {Rational(1), -2}, {Rational(2), 4}});
  CHECK(geo.inverse.str() == expected.str());
  CHECK(geo.terms == 3);
  CHECK(geo.residual == NormValue::exact(target));
  CHECK(geo.delta == NormExponent(QuadraticNumber(Rational(1), Rational(1), 2)));

  auto single = invert_by_domination(TeichSum(R, {{2, R.monomial(Rational(3))}}), t, NormExponent(10));
  CHECK(single.residual.is_zero());
  auto as_sum = single.inverse.to_teich_sum(R);
  REQUIRE(as_sum.terms().size() == 1);
  CHECK(as_sum.terms()[0].first == -2);
  CHECK(as_sum.terms()[0].second.agrees_with(R.monomial(Rational(-3))));

  CHECK_THROWS_AS(invert_by_domination(TeichSum(R, {{0, R.monomial(Rational(2))}, {1, R.one()}}),
                                       LambdaParam(Rational(1, 2)), NormExponent(10)),
                  Indeterminate);
}

namespace {

// sum p^n [z^e] with all digits equal to 1, e in (1/den) Z with 0 <= e < max_k / den
TeichSum random_sum(std::mt19937_64& rng, const PerfRing& R, int terms, int max_n, std::int64_t max_k,
                    std::int64_t den) {
  std::vector<TeichSum::Term> out;
  std::vector<int> used;
  for (int i = 0; i < terms; ++i) {
    auto n = static_cast<int>(rng() % static_cast<std::uint64_t>(max_n + 1));
    if (std::find(used.begin(), used.end(), n) != used.end()) continue;
    used.push_back(n);
    auto k = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(max_k));
    out.emplace_back(n, R.monomial(Rational(k, den)));
  }
  return TeichSum(R, out);
}

// Witt vector of a period polynomial with integer coefficients, built by
// adding p^i [z^e] for each base-p digit of each coefficient.
WittVector witt_of(const PeriodPoly& f, const PerfRing& R, std::size_t n) {
  auto acc = WittVector::zero(R, n);
  const auto m = oracle::pow_int(R.prime(), static_cast<int>(n));
  for (const auto& [e, a] : f.terms()) {
    REQUIRE(boost::multiprecision::denominator(a) == 1);
    cpp_int num = boost::multiprecision::numerator(a) % m;
    if (num < 0) num += m;
    auto v = static_cast<std::int64_t>(num);
    for (int i = 0; v > 0; ++i, v /= R.prime()) {
      if (v % R.prime() == 0) continue;
      acc = acc + TeichSum(R, {{i, R.monomial(e, static_cast<std::uint32_t>(v % R.prime()))}}).to_witt(n);
    }
  }
  return acc;
}

}  // namespace

TEST_CASE("period products agree with Witt multiplication") {
  std::mt19937_64 rng(35);
  PerfRing R(2, 5, Rational(8));
  for (int trial = 0; trial < 20; ++trial) {
    auto x = random_sum(rng, R, 3, 2, 64, 32);
    auto y = random_sum(rng, R, 3, 2, 64, 32);
    auto prod = PeriodPoly::from_teich_sum(x) * PeriodPoly::from_teich_sum(y);
    CHECK(witt_of(prod, R, 3) == x.to_witt(3) * y.to_witt(3));
  }
}

TEST_CASE("lambda_t is multiplicative on single terms and submultiplicative on sums") {
  std::mt19937_64 rng(36);
  PerfRing R(2, 6, Rational(16));
  for (const auto& t : {LambdaParam(Rational(1, 2)), LambdaParam(kSqrt2 * QuadraticNumber(Rational(1, 4)))}) {
    for (int trial = 0; trial < 25; ++trial) {
      auto a = random_sum(rng, R, 1, 3, 32, 8);
      auto b = random_sum(rng, R, 1, 3, 32, 8);
      const auto& [na, xa] = a.terms()[0];
      const auto& [nb, xb] = b.terms()[0];
      TeichSum ab(R, {{na + nb, xa * xb}});
      CHECK(lambda_norm(ab, t) == lambda_norm(a, t) * lambda_norm(b, t));
    }
    for (int trial = 0; trial < 25; ++trial) {
      // terms at p^0, p^1 with exponents below 1 keep the product above the truncation noise
      auto x = random_sum(rng, R, 4, 1, 8, 8);
      auto y = random_sum(rng, R, 4, 1, 8, 8);
      auto product = TeichSum::from_witt(x.to_witt(4) * y.to_witt(4));
      auto bound = lambda_norm(x, t) * lambda_norm(y, t);
      auto dropped = NormValue::at_most(4);
      CHECK(certainly(less_equal(join(lambda_bound(product, t), dropped), bound)));
    }
  }
}

TEST_CASE("dominance at an irrational scale and inversion soundness") {
  std::mt19937_64 rng(37);
  PerfRing R(2, 2, Rational(8));
  LambdaParam t(kSqrt2);
  for (int trial = 0; trial < 30; ++trial) {
    auto x = random_sum(rng, R, 5, 3, 12, 4);
    auto dom = dominant_term(x, t);
    CHECK(!dom.tie);
    auto inv = invert_by_domination(x, t, NormExponent(10));
    auto residual = (PeriodPoly::from_teich_sum(x) * inv.inverse - PeriodPoly::one(2)).lambda(t);
    CHECK(certainly(less_equal(residual, NormValue::exact(10))));
  }
  // ties at rational scales are reported, never broken
  for (int trial = 0; trial < 20; ++trial) {
    auto e = static_cast<std::int64_t>(rng() % 6);
    auto n = static_cast<int>(rng() % 3);
    // p^n [z^{e+2}] and p^{n+1} [z^e] have equal norms at t = 1/2
    TeichSum x(R, {{n, R.monomial(Rational(e + 2))}, {n + 1, R.monomial(Rational(e))}});
    CHECK(dominant_term(x, LambdaParam(Rational(1, 2))).tie);
    CHECK_THROWS_AS(invert_by_domination(x, LambdaParam(Rational(1, 2)), NormExponent(10)), Indeterminate);
  }
}
