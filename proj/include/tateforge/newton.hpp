#pragma once

// Newton polygons, the unit criterion in K<T>, and slope certificates.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tateforge/series.hpp"

namespace tateforge {

/// Lower convex hull of {(i, v(f_i))}, zero coefficients omitted.
///
/// Slopes are reported as root valuations: a segment whose valuation drops by
/// s per unit of degree contributes `length` roots of valuation s. They are
/// listed left to right, hence nonincreasing.
struct NewtonPolygon {
  std::vector<std::pair<std::size_t, Rational>> vertices;
  std::vector<std::pair<Rational, std::size_t>> slopes;
  /// Multiplicity of the root 0 (index of the first nonzero coefficient).
  std::size_t zero_roots = 0;

  /// Root valuations with multiplicity, sorted ascending (the root 0 excluded).
  std::vector<Rational> root_valuations() const;
  bool operator==(const NewtonPolygon&) const = default;
};

/// A coefficient's position in the polygon: known valuation, a lower bound on
/// it, or an exact zero.
struct PolygonPoint {
  enum class Kind { exact, at_least, zero };
  Kind kind;
  Rational valuation;
};

/// Lower hull of points (i, v), vertices sorted by i.
std::vector<std::pair<std::size_t, Rational>> lower_hull(const std::vector<std::pair<std::size_t, Rational>>& pts);

/// Polygon of the exact points; refuses when a bounded point could reach below the hull.
std::variant<NewtonPolygon, std::string> newton_polygon_of(const std::vector<PolygonPoint>& points);

template <NormedCoefficient C>
PolygonPoint polygon_point(const C& c) {
  if (c.is_negligible()) return {PolygonPoint::Kind::zero, Rational(0)};
  auto n = c.norm();
  if (n.is_zero()) return {PolygonPoint::Kind::zero, Rational(0)};
  if (n.is_exact()) return {PolygonPoint::Kind::exact, n.exponent().as_rational()};
  return {PolygonPoint::Kind::at_least, n.exponent().as_rational()};
}

/// Newton polygon of a polynomial over a field base; throws Indeterminate when
/// an imprecise coefficient could change the hull.
template <NormedCoefficient C>
NewtonPolygon newton_polygon(const RestrictedSeries<C>& f) {
  if (!f.is_polynomial()) throw DomainError("Newton polygons need a polynomial");
  std::vector<PolygonPoint> pts;
  for (const auto& c : f.coefficients()) pts.push_back(polygon_point(c));
  auto res = newton_polygon_of(pts);
  if (auto* why = std::get_if<std::string>(&res)) throw Indeterminate(*why);
  return std::get<NewtonPolygon>(res);
}

/// |f_0| exact and strictly above every other coefficient norm and the tail.
template <NormedCoefficient C>
Certainty is_unit_tate(const RestrictedSeries<C>& f) {
  if (f.length() == 0) return f.tail_bound().is_zero() ? Certainty::no : Certainty::unknown;
  auto c0 = f.coefficients()[0].norm();
  if (c0.is_zero()) return Certainty::no;
  if (!c0.is_exact()) {
    // an imprecise constant term: a unit only if something else provably beats it
    for (std::size_t i = 1; i < f.length(); ++i) {
      if (certainly(less(c0, f.coefficients()[i].norm()))) return Certainty::no;
    }
    return Certainty::unknown;
  }
  auto result = Certainty::yes;
  auto fold = [&](const NormValue& n) {
    auto lt = less(n, c0);
    if (certainly_not(lt)) result = Certainty::no;
    if (lt == Certainty::unknown && result == Certainty::yes) result = Certainty::unknown;
  };
  for (std::size_t i = 1; i < f.length(); ++i) fold(f.coefficients()[i].norm());
  if (!f.tail_bound().is_zero()) fold(f.tail_bound());
  return result;
}

enum class BallVerdict { nonunit_in_ball, unit_in_ball, not_in_ball, indeterminate };
std::string to_string(BallVerdict v);

/// For y in the ball |y - (T - lambda)| < |lambda|, certifies that y is not a unit.
template <NormedCoefficient C>
BallVerdict nonunit_ball_witness(const C& lambda, const RestrictedSeries<C>& y) {
  auto ln = lambda.norm();
  if (!ln.is_exact() || !certainly(less(ln, NormValue::one()))) {
    throw DomainError("the ball radius |lambda| must be exact and below 1");
  }
  const auto& ring = y.ring();
  auto x = ring.variable() - ring.constant(lambda);
  auto in_ball = less((y - x).norm(), ln);
  if (certainly_not(in_ball)) return BallVerdict::not_in_ball;
  if (!certainly(in_ball)) return BallVerdict::indeterminate;
  auto unit = is_unit_tate(y);
  if (certainly_not(unit)) return BallVerdict::nonunit_in_ball;
  if (certainly(unit)) return BallVerdict::unit_in_ball;
  return BallVerdict::indeterminate;
}

struct IrreducibilityCertificate {
  std::size_t degree = 0;
  /// Root valuation v(f_0)/deg f, with denominator deg f.
  Rational slope{0};
};

/// Certificate from a single Newton slope a/b in lowest terms with b = deg f.
/// Degree-one polynomials are certified unconditionally.
std::optional<IrreducibilityCertificate> irreducibility_certificate_of(const NewtonPolygon& poly, std::size_t degree,
                                                                       bool monic);

template <NormedCoefficient C>
std::optional<IrreducibilityCertificate> irreducibility_certificate(const RestrictedSeries<C>& f) {
  if (!f.is_polynomial() || f.length() < 2) return std::nullopt;
  const auto& lead = f.coefficients().back();
  bool monic = certainly(less_equal((lead - f.ring().base().one()).norm(), NormValue::exact(f.ring().working_precision())));
  return irreducibility_certificate_of(newton_polygon(f), f.length() - 1, monic);
}

/// Degree of the residue field K[T]/(f) over K.
inline std::size_t residue_degree(const IrreducibilityCertificate& cert) { return cert.degree; }

}  // namespace tateforge
