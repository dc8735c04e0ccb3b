#pragma once

// JSON encodings of rings, elements, series, algebras, Teichmüller sums and
// Newton polygons. Output is canonical: dump(to_json(from_json(x))) is the same
// byte string for every encoding of the same value.
//
// Elements of Q_p are strings "a", "a/p^s" or "a/p^s + O(p^k)" (plain JSON
// integers are accepted on input). Elements of L are lists of
// [exponent, coefficient] pairs, wrapped as {"terms":…, "trunc":…} when known
// to less than the ring truncation. Exponents are rational strings.

#include <optional>
#include <string>
#include <variant>

#include "json.hpp"
#include "tateforge/finite_alg.hpp"
#include "tateforge/newton.hpp"
#include "tateforge/padic.hpp"
#include "tateforge/perf.hpp"
#include "tateforge/series.hpp"
#include "tateforge/witt.hpp"

namespace tateforge {

using Json = nlohmann::ordered_json;

/// Compact, key order as written.
std::string dump(const Json& j);
Json parse_json(const std::string& text);

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j, const std::string& path);

Json ring_to_json(const QpRing& R);
Json ring_to_json(const PerfRing& R);
using AnyRing = std::variant<QpRing, PerfRing>;
AnyRing ring_from_json(const Json& j, const std::string& path = "base");

Json element_to_json(const PadicElement& x);
Json element_to_json(const PerfElement& x);
PadicElement element_from_json(const QpRing& R, const Json& j, const std::string& path);
PerfElement element_from_json(const PerfRing& R, const Json& j, const std::string& path);

template <class C>
Json series_to_json(const RestrictedSeries<C>& f) {
  Json coeffs = Json::array();
  for (std::size_t i = 0; i < f.length(); ++i) {
    const auto& c = f.coefficients()[i];
    if (c.is_negligible()) continue;
    coeffs.push_back(Json::array({i, element_to_json(c)}));
  }
  Json out;
  out["base"] = ring_to_json(f.ring().base());
  out["coeffs"] = coeffs;
  out["tail_exp"] = f.tail_bound().is_zero() ? Json(nullptr) : rational_to_json(f.tail_bound().exponent().as_rational());
  return out;
}

using AnySeries = std::variant<RestrictedSeries<PadicElement>, RestrictedSeries<PerfElement>>;
AnySeries series_from_json(const Json& j, const std::string& path = "series");
/// Series over Q_p; ParseError for any other base.
RestrictedSeries<PadicElement> padic_series_from_json(const Json& j, const std::string& path = "series");

Json algebra_to_json(const FiniteFreeAlgebra& B);
FiniteFreeAlgebra algebra_from_json(const Json& j, const std::string& path = "algebra");

Json lambda_to_json(const LambdaParam& t);
LambdaParam lambda_from_json(const Json& j, const std::string& path = "t");

struct TeichInput {
  TeichSum x;
  std::optional<LambdaParam> t;
};
/// {"base": PerfL descriptor, "terms": [[n, element], …], "t": {"a","b","d"}}
Json teich_sum_to_json(const TeichSum& x, const std::optional<LambdaParam>& t = std::nullopt);
TeichInput teich_sum_from_json(const Json& j, const std::string& path = "teich");

Json exponent_to_json(const NormExponent& e);
/// {"kind": "zero"|"exact"|"at_most", "exp": …}
Json norm_to_json(const NormValue& v);

/// {"vertices": [[i, "e"], …], "slopes": [["s", len], …]}
Json polygon_to_json(const NewtonPolygon& np);

}  // namespace tateforge
