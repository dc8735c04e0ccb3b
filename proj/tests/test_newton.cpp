#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracles/fixtures.hpp"
#include "tateforge/newton.hpp"

using namespace tateforge;
using fixtures::poly;

namespace {

std::vector<std::pair<int, oracle::Q>> exact_points(const fixtures::Series& f) {
  std::vector<std::pair<int, oracle::Q>> pts;
  for (std::size_t i = 0; i < f.length(); ++i) {
    const auto& c = f.coefficients()[i];
    if (!c.is_certainly_nonzero()) continue;
    pts.emplace_back(static_cast<int>(i), oracle::Q(oracle::valuation(oracle::BigInt(c.mantissa()), c.ring().prime()) - c.shift()));
  }
  return pts;
}

bool same_hull(const NewtonPolygon& poly, const std::vector<std::pair<int, oracle::Q>>& brute) {
  if (poly.vertices.size() != brute.size()) return false;
  for (std::size_t k = 0; k < brute.size(); ++k) {
    if (static_cast<int>(poly.vertices[k].first) != brute[k].first) return false;
    if (poly.vertices[k].second != brute[k].second) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("polygon of 4 + 2T + T^3") {
  SeriesRing<PadicElement> A(QpRing(2, 16));
  auto np = newton_polygon(poly(A, {4, 2, 0, 1}));
  REQUIRE(np.vertices.size() == 3);
  CHECK(np.vertices[1] == std::pair<std::size_t, Rational>{1, Rational(1)});
  REQUIRE(np.slopes.size() == 2);
  CHECK(np.slopes[0] == std::pair<Rational, std::size_t>{Rational(1), 1});
  CHECK(np.slopes[1] == std::pair<Rational, std::size_t>{Rational(1, 2), 2});
  auto roots = np.root_valuations();
  CHECK(roots == std::vector<Rational>{Rational(1, 2), Rational(1, 2), Rational(1)});
  CHECK(same_hull(np, oracle::brute_lower_hull(exact_points(poly(A, {4, 2, 0, 1})))));
}

TEST_CASE("monomial and unit-circle polygons") {
  SeriesRing<PadicElement> A(QpRing(2, 16));
  auto t = newton_polygon(poly(A, {0, 1}));
  CHECK(t.zero_roots == 1);
  CHECK(t.slopes.empty());
  auto u = newton_polygon(poly(A, {1, 1}));
  REQUIRE(u.slopes.size() == 1);
  CHECK(u.slopes[0] == std::pair<Rational, std::size_t>{Rational(0), 1});
}

TEST_CASE("imprecise coefficients below the hull are refused") {
  QpRing R(2, 16);
  SeriesRing<PadicElement> A(R);
  // middle coefficient known only to be divisible by 2: could sit below the segment from (0,4) to (2,0)
  auto f = A.from_coefficients({R.from_int(16), R.zero().with_precision(1), R.one()});
  CHECK_THROWS_AS(newton_polygon(f), Indeterminate);
  auto g = A.from_coefficients({R.from_int(16), R.zero().with_precision(3), R.one()});
  CHECK(newton_polygon(g).slopes.size() == 1);
}

TEST_CASE("unit criterion") {
  SeriesRing<PadicElement> A(QpRing(2, 12));
  CHECK(is_unit_tate(poly(A, {1, 2})) == Certainty::yes);
  CHECK(is_unit_tate(poly(A, {2, 1})) == Certainty::no);
  CHECK(is_unit_tate(poly(A, {3})) == Certainty::yes);
  CHECK(is_unit_tate(A.from_coefficients({A.base().one()}, NormValue::at_most(0))) == Certainty::unknown);
  CHECK(is_unit_tate(A.from_coefficients({A.base().one()}, NormValue::at_most(1))) == Certainty::yes);
}

TEST_CASE("non-unit ball examples") {
  QpRing R(2, 12);
  SeriesRing<PadicElement> A(R);
  auto two = R.from_int(2);
  CHECK(nonunit_ball_witness(two, poly(A, {-2, 1})) == BallVerdict::nonunit_in_ball);
  CHECK(nonunit_ball_witness(two, poly(A, {-2, 1, 0, 0, 0, 4})) == BallVerdict::nonunit_in_ball);
  CHECK(nonunit_ball_witness(two, poly(A, {0, 1})) == BallVerdict::not_in_ball);
  CHECK_THROWS_AS(nonunit_ball_witness(R.one(), poly(A, {0, 1})), DomainError);
}

TEST_CASE("irreducibility certificates") {
  SeriesRing<PadicElement> A(QpRing(2, 16));
  auto c1 = irreducibility_certificate(poly(A, {-2, 0, 1}));
  REQUIRE(c1);
  CHECK(c1->slope == Rational(1, 2));
  CHECK(residue_degree(*c1) == 2);
  CHECK(!irreducibility_certificate(poly(A, {-1, 0, 1})));
  auto c3 = irreducibility_certificate(poly(A, {-4, 0, 0, 1}));
  REQUIRE(c3);
  CHECK(c3->slope == Rational(2, 3));
  CHECK(residue_degree(*c3) == 3);
  auto lin = irreducibility_certificate(poly(A, {-5, 1}));
  REQUIRE(lin);
  CHECK(residue_degree(*lin) == 1);
  // slope 2/4 = 1/2 has denominator 2, not 4
  CHECK(!irreducibility_certificate(poly(A, {-4, 0, 0, 0, 1})));
  CHECK(!irreducibility_certificate(poly(A, {-2, 0, 3})));
}

TEST_CASE("polygon additivity and hull oracle on random monic pairs") {
  std::mt19937_64 rng(606);
  for (int p : {2, 3}) {
    const int N = 24;
    QpRing R(p, N);
    SeriesRing<PadicElement> A(R);
    auto random_monic = [&] {
      auto d = fixtures::uniform(rng, 1, 6);
      std::vector<std::int64_t> cs;
      for (int i = 0; i < d; ++i) {
        auto v = static_cast<int>(fixtures::uniform(rng, 0, 4));
        cs.push_back(oracle::pow_int(p, v) * fixtures::random_unit(rng, p, 3));
      }
      cs.push_back(1);
      return poly(A, cs);
    };
    for (int trial = 0; trial < 100; ++trial) {
      auto f = random_monic();
      auto g = random_monic();
      auto fg = f * g;
      auto pf = newton_polygon(f);
      auto pg = newton_polygon(g);
      auto pfg = newton_polygon(fg);
      CHECK(same_hull(pf, oracle::brute_lower_hull(exact_points(f))));
      CHECK(same_hull(pfg, oracle::brute_lower_hull(exact_points(fg))));
      auto both = pf.root_valuations();
      auto rg = pg.root_valuations();
      both.insert(both.end(), rg.begin(), rg.end());
      std::sort(both.begin(), both.end());
      CHECK(pfg.root_valuations() == both);
    }
  }
}

TEST_CASE("random in-ball perturbations are never units") {
  std::mt19937_64 rng(4242);
  for (int p : {2, 3}) {
    QpRing R(p, 16);
    SeriesRing<PadicElement> A(R);
    for (int trial = 0; trial < 60; ++trial) {
      auto lv = static_cast<int>(fixtures::uniform(rng, 1, 3));
      auto lam = oracle::pow_int(p, lv) * fixtures::random_unit(rng, p, 4);
      std::vector<std::int64_t> cs{-lam, 1};
      auto extra = fixtures::uniform(rng, 0, 5);
      cs.resize(static_cast<std::size_t>(2 + extra), 0);
      for (auto& c : cs) c += fixtures::random_multiple(rng, p, lv + 1, 16);
      auto y = poly(A, cs);
      CHECK(nonunit_ball_witness(R.from_int(lam), y) == BallVerdict::nonunit_in_ball);
    }
  }
}
