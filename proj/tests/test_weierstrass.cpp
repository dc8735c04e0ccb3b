#include <random>

#include "doctest.h"
#include "oracles/fixtures.hpp"
#include "tateforge/weierstrass.hpp"

using namespace tateforge;
using fixtures::poly;
using fixtures::Series;

namespace {

DistinguishedCertificate cert_of(const Series& f) {
  auto c = check_distinguished(f);
  REQUIRE(!refused(c));
  return std::get<DistinguishedCertificate>(c);
}

bool matches_ints(const Series& f, const oracle::Poly& expected, std::int64_t m) {
  auto n = std::max(f.length(), expected.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto c = f.coefficient(i);
    std::int64_t want = i < expected.size() ? oracle::mod(expected[i], m) : 0;
    if (c.shift() != 0) return false;
    if (static_cast<std::int64_t>(c.mantissa()) != want) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("distinguished detection") {
  SeriesRing<PadicElement> A(QpRing(2, 8));
  CHECK(cert_of(poly(A, {-2, 1})).n0 == 1);
  CHECK(cert_of(poly(A, {2, 1, 2})).n0 == 1);
  CHECK(cert_of(poly(A, {1, 1})).n0 == 1);
  CHECK(cert_of(poly(A, {3, 2})).n0 == 0);
  auto bad = check_distinguished(poly(A, {2, 4}));
  REQUIRE(refused(bad));
  CHECK(std::get<Refusal>(bad).reason == "no coefficient of norm 1");
  auto big = check_distinguished(poly(A, {1, A.base().cap() > 0 ? 1 : 0}).scale(A.base().from_rational(1, 2)));
  REQUIRE(refused(big));
  CHECK(!std::get<Refusal>(big).indeterminate());
  // an imprecise coefficient that might have norm 1 cannot be placed
  auto vague = A.from_coefficients({A.base().one(), A.base().zero().with_precision(0)});
  auto v = check_distinguished(vague);
  REQUIRE(refused(v));
  CHECK(std::get<Refusal>(v).indeterminate());
  auto tail = check_distinguished(A.from_coefficients({A.base().one()}, NormValue::at_most(0)));
  REQUIRE(refused(tail));
  CHECK(std::get<Refusal>(tail).indeterminate());
}

TEST_CASE("division of T^2 by T - 2") {
  QpRing R(2, 8);
  SeriesRing<PadicElement> A(R);
  auto f = poly(A, {-2, 1});
  auto g = poly(A, {0, 0, 1});
  auto [q, r, it] = weierstrass_divide(f, cert_of(f), g);
  auto [oq, orr] = oracle::long_divide({0, 0, 1}, {oracle::mod(-2, 256), 1}, 256);
  CHECK(matches_ints(q, oq, 256));
  CHECK(matches_ints(r, orr, 256));
  CHECK(matches_ints(q, {2, 1}, 256));
  CHECK(matches_ints(r, {4}, 256));
  CHECK(g.norm() == join(q.norm(), r.norm()));
  CHECK(q.norm() == NormValue::one());
  CHECK(r.norm() == NormValue::exact(2));
}

TEST_CASE("division of a constant by T") {
  SeriesRing<PadicElement> A(QpRing(3, 6));
  auto f = poly(A, {0, 1});
  auto g = poly(A, {7});
  auto [q, r, it] = weierstrass_divide(f, cert_of(f), g);
  CHECK(q.norm().is_zero());
  CHECK(matches_ints(r, {7}, 729));
}

TEST_CASE("division by 2 + T + 2T^2 matches the rational solve and the root") {
  const int N = 8;
  QpRing R(2, N);
  SeriesRing<PadicElement> A(R);
  auto f = poly(A, {2, 1, 2});
  auto g = poly(A, {0, 1});
  auto cert = cert_of(f);
  auto [q, r, it] = weierstrass_divide(f, cert, g);
  auto [ql, rl, it2] = weierstrass_divide_linear(f, cert, g);
  auto [oq, orr] = oracle::division_by_rational_solve({2, 1, 2}, {0, 1}, 1, 24, 2, N);
  CHECK(matches_ints(q, oq, 256));
  CHECK(matches_ints(ql, oq, 256));
  CHECK(matches_ints(r, orr, 256));
  // for n0 = 1 the remainder of T is the root of f in the closed unit disk
  auto t0 = oracle::newton_root({2, 1, 2}, 0, 2, N);
  CHECK(orr[0] == t0);
  CHECK(certainly(less_equal((g - (f * q + r)).norm(), NormValue::exact(N))));
  CHECK(g.norm() == join(q.norm(), r.norm()));
  CHECK(g.norm() == NormValue::one());
}

TEST_CASE("n0 = 0 divides by a unit") {
  SeriesRing<PadicElement> A(QpRing(3, 10));
  auto f = poly(A, {1, 3, 9});
  auto g = poly(A, {2, 5});
  auto [q, r, it] = weierstrass_divide(f, cert_of(f), g);
  CHECK(r.norm().is_zero());
  CHECK(certainly(less_equal((g - f * q).norm(), NormValue::exact(10))));
}

TEST_CASE("unit inversion") {
  QpRing R(2, 6);
  SeriesRing<PadicElement> A(R);
  CHECK(agree_within(invert_unit_series(A.one()), A.one(), 6));
  auto inv = invert_unit_series(poly(A, {1, 2}));
  oracle::Poly expected;
  std::int64_t term = 1;
  for (int k = 0; k < 6; ++k) {
    expected.push_back(oracle::mod(term, 64));
    term *= -2;
  }
  CHECK(matches_ints(inv, expected, 64));
  CHECK(matches_ints(inv, oracle::series_inverse({1, 2}, 64, 8), 64));
  auto three = invert_unit_series(poly(A, {3}));
  CHECK(three.length() == 1);
  CHECK(three.coefficients()[0].agrees_mod(R.from_int(3).inverse(), 6));
  CHECK_THROWS_AS(invert_unit_series(poly(A, {2, 1})), DomainError);
}

TEST_CASE("preparation examples") {
  const int N = 10;
  QpRing R(2, N);
  SeriesRing<PadicElement> A(R);
  auto m = fixtures::cap_modulus(R);
  {
    auto f = poly(A, {-2, 1});
    auto prep = weierstrass_prepare(f);
    CHECK(matches_ints(prep.monic, {m - 2, 1}, m));
    CHECK(matches_ints(prep.unit, {1}, m));
  }
  {
    auto f = poly(A, {2, 1, 2});
    auto prep = weierstrass_prepare(f);
    auto t0 = oracle::newton_root({2, 1, 2}, 0, 2, N);
    CHECK(matches_ints(prep.monic, {oracle::mod(-t0, m), 1}, m));
    CHECK(certainly(less_equal(prep.residual, NormValue::exact(N))));
    CHECK(prep.monic.coefficients()[0].norm() == NormValue::exact(1));
  }
  {
    auto prod = oracle::poly_mul({m - 2, 1}, {1, 2}, m);
    auto prep = weierstrass_prepare(poly(A, prod));
    CHECK(matches_ints(prep.monic, {m - 2, 1}, m));
    CHECK(matches_ints(prep.unit, {1, 2}, m));
  }
}

TEST_CASE("rescale to distinguished") {
  QpRing R(2, 8);
  SeriesRing<PadicElement> A(R);
  auto a = rescale_to_distinguished(poly(A, {0, 4, 2}));
  REQUIRE(!refused(a));
  CHECK(std::get<Rescaling<PadicElement>>(a).cert.n0 == 2);
  CHECK(std::get<Rescaling<PadicElement>>(a).c.str() == "1/2 + O(2^6)");
  auto b = rescale_to_distinguished(poly(A, {0, 1}));
  REQUIRE(!refused(b));
  CHECK(std::get<Rescaling<PadicElement>>(b).cert.n0 == 1);
  CHECK(std::get<Rescaling<PadicElement>>(b).c.str() == "1");
  auto c = rescale_to_distinguished(poly(A, {2, 2}));
  REQUIRE(!refused(c));
  CHECK(std::get<Rescaling<PadicElement>>(c).cert.n0 == 1);
  CHECK(std::get<Rescaling<PadicElement>>(c).c.str() == "1/2 + O(2^6)");
  auto d = rescale_to_distinguished(A.from_coefficients({R.from_int(2)}, NormValue::at_most(1)));
  REQUIRE(refused(d));
}

TEST_CASE("norm identity and agreement of the two strategies") {
  std::mt19937_64 rng(31337);
  for (int p : {2, 3}) {
    const int N = 12;
    QpRing R(p, N);
    SeriesRing<PadicElement> A(R);
    for (int trial = 0; trial < 60; ++trial) {
      auto n0 = fixtures::uniform(rng, 0, 3);
      auto extra = fixtures::uniform(rng, 0, 3);
      std::vector<std::int64_t> fc;
      for (int i = 0; i < n0; ++i) fc.push_back(fixtures::random_multiple(rng, p, static_cast<int>(fixtures::uniform(rng, 0, 2)), N));
      fc.push_back(1);
      for (int i = 0; i < extra; ++i) fc.push_back(fixtures::random_multiple(rng, p, static_cast<int>(fixtures::uniform(rng, 1, 3)), N));
      std::vector<std::int64_t> gc;
      auto dg = fixtures::uniform(rng, 0, 6);
      for (int i = 0; i <= dg; ++i) gc.push_back(fixtures::random_multiple(rng, p, static_cast<int>(fixtures::uniform(rng, 0, 3)), N));
      auto f = poly(A, fc);
      auto g = poly(A, gc);
      if (!g.norm().is_exact()) continue;
      auto cert = cert_of(f);
      CHECK(cert.n0 == static_cast<std::size_t>(n0));
      auto [q, r, it] = weierstrass_divide(f, cert, g);
      auto [ql, rl, it2] = weierstrass_divide_linear(f, cert, g);
      CHECK(certainly(less_equal((g - (f * q + r)).norm(), NormValue::exact(N))));
      CHECK(fixtures::agree_mod(q, ql, N));
      CHECK(fixtures::agree_mod(r, rl, N));
      CHECK(g.norm() == join(q.norm(), r.norm()));
      if (trial % 10 == 0) {
        auto [oq, orr] = oracle::division_by_rational_solve(fixtures::to_ints(f), fixtures::to_ints(g),
                                                            static_cast<std::size_t>(n0), 40, p, N);
        CHECK(matches_ints(r, orr, fixtures::cap_modulus(R)));
      }
    }
  }
}

TEST_CASE("division over the nested base Q_2<X>") {
  std::mt19937_64 rng(8);
  const int N = 10;
  QpRing R(2, N);
  SeriesRing<PadicElement> inner(R);
  SeriesRing<RestrictedSeries<PadicElement>> A(inner);
  auto rand_inner = [&](int vmin) {
    std::vector<std::int64_t> cs;
    for (int i = 0; i < 3; ++i) cs.push_back(fixtures::random_multiple(rng, 2, static_cast<int>(fixtures::uniform(rng, vmin, vmin + 2)), N));
    return poly(inner, cs);
  };
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<RestrictedSeries<PadicElement>> fc{rand_inner(0), inner.one() + rand_inner(1), rand_inner(1)};
    auto f = A.from_coefficients(fc);
    auto g = A.from_coefficients({rand_inner(0), rand_inner(0), rand_inner(0)});
    auto c = check_distinguished(f);
    REQUIRE(!refused(c));
    auto cert = std::get<DistinguishedCertificate>(c);
    CHECK(cert.n0 == 1);
    auto [q, r, it] = weierstrass_divide(f, cert, g);
    auto [ql, rl, it2] = weierstrass_divide_linear(f, cert, g);
    CHECK(certainly(less_equal((g - (f * q + r)).norm(), NormValue::exact(N))));
    CHECK(certainly(less_equal((q - ql).norm(), NormValue::exact(N))));
    CHECK(certainly(less_equal((r - rl).norm(), NormValue::exact(N))));
    if (g.norm().is_exact() && q.norm().is_exact() && r.norm().is_exact()) {
      CHECK(g.norm() == join(q.norm(), r.norm()));
    }
  }
}
