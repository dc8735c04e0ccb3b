#include "tateforge/newton.hpp"

#include <algorithm>

namespace tateforge {

namespace {

// (b - a) x (c - a) <= 0 means b is not strictly below the segment ac
bool not_below(const std::pair<std::size_t, Rational>& a, const std::pair<std::size_t, Rational>& b,
               const std::pair<std::size_t, Rational>& c) {
  auto bx = Rational(static_cast<std::int64_t>(b.first) - static_cast<std::int64_t>(a.first));
  auto cx = Rational(static_cast<std::int64_t>(c.first) - static_cast<std::int64_t>(a.first));
  auto by = b.second - a.second;
  auto cy = c.second - a.second;
  return bx * cy - by * cx <= Rational(0);
}

Rational hull_value_at(const std::vector<std::pair<std::size_t, Rational>>& hull, std::size_t i) {
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    auto [x0, y0] = hull[k];
    auto [x1, y1] = hull[k + 1];
    if (x0 <= i && i <= x1) {
      return y0 + (y1 - y0) * Rational(static_cast<std::int64_t>(i - x0), static_cast<std::int64_t>(x1 - x0));
    }
  }
  return hull.front().second;
}

}  // namespace

std::vector<Rational> NewtonPolygon::root_valuations() const {
  std::vector<Rational> out;
  for (const auto& [s, len] : slopes) {
    for (std::size_t k = 0; k < len; ++k) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<std::size_t, Rational>> lower_hull(const std::vector<std::pair<std::size_t, Rational>>& pts) {
  auto sorted = pts;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : a.second < b.second;
  });
  std::vector<std::pair<std::size_t, Rational>> hull;
  for (const auto& p : sorted) {
    if (!hull.empty() && hull.back().first == p.first) continue;
    while (hull.size() >= 2 && not_below(hull[hull.size() - 2], hull.back(), p)) hull.pop_back();
    hull.push_back(p);
  }
  return hull;
}

std::variant<NewtonPolygon, std::string> newton_polygon_of(const std::vector<PolygonPoint>& points) {
  std::vector<std::pair<std::size_t, Rational>> exact;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].kind == PolygonPoint::Kind::exact) exact.emplace_back(i, points[i].valuation);
  }
  if (exact.empty()) return std::string("no coefficient has a certified valuation");
  auto hull = lower_hull(exact);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].kind != PolygonPoint::Kind::at_least) continue;
    if (i < hull.front().first || i > hull.back().first) {
      return "coefficient " + std::to_string(i) + " is not certified nonzero and lies outside the hull";
    }
    if (points[i].valuation < hull_value_at(hull, i)) {
      return "coefficient " + std::to_string(i) + " (valuation >= " + to_string(points[i].valuation) +
             ") may lie below the hull";
    }
  }
  NewtonPolygon poly;
  poly.vertices = hull;
  poly.zero_roots = hull.front().first;
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    auto len = hull[k + 1].first - hull[k].first;
    auto drop = (hull[k].second - hull[k + 1].second) / Rational(static_cast<std::int64_t>(len));
    poly.slopes.emplace_back(drop, len);
  }
  return poly;
}

std::string to_string(BallVerdict v) {
  switch (v) {
    case BallVerdict::nonunit_in_ball:
      return "in ball, not a unit";
    case BallVerdict::unit_in_ball:
      return "in ball, unit";
    case BallVerdict::not_in_ball:
      return "not in ball";
    case BallVerdict::indeterminate:
      return "indeterminate";
  }
  return "?";
}

std::optional<IrreducibilityCertificate> irreducibility_certificate_of(const NewtonPolygon& poly, std::size_t degree,
                                                                       bool monic) {
  if (!monic || degree == 0) return std::nullopt;
  if (degree == 1) return IrreducibilityCertificate{1, poly.slopes.empty() ? Rational(0) : poly.slopes[0].first};
  if (poly.zero_roots != 0 || poly.slopes.size() != 1) return std::nullopt;
  auto [slope, len] = poly.slopes.front();
  if (len != degree) return std::nullopt;
  if (slope.denominator() != static_cast<std::int64_t>(degree)) return std::nullopt;
  return IrreducibilityCertificate{degree, slope};
}

}  // namespace tateforge
