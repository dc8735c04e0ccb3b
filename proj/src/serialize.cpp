#include "tateforge/serialize.hpp"

#include <charconv>
#include <set>

namespace tateforge {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ParseError(path + ": " + what); }

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing field");
  return *it;
}

std::int64_t integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

std::int64_t parse_int(std::string_view s, const std::string& path) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) fail(path, "malformed integer '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::string dump(const Json& j) { return j.dump(); }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("input: ") + e.what());
  }
}

Json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) fail(path, "expected a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error&) {
    fail(path, "malformed rational '" + j.get<std::string>() + "'");
  }
}

Json ring_to_json(const QpRing& R) {
  Json out;
  out["ring"] = "Qp";
  out["p"] = R.prime();
  out["cap"] = R.cap();
  return out;
}

Json ring_to_json(const PerfRing& R) {
  Json out;
  out["ring"] = "PerfL";
  out["q"] = R.prime();
  out["root_denom"] = R.root_denom();
  out["trunc"] = R.trunc().denominator() == 1 ? Json(R.trunc().numerator()) : rational_to_json(R.trunc());
  return out;
}

AnyRing ring_from_json(const Json& j, const std::string& path) {
  const auto& kind = field(j, "ring", path);
  if (!kind.is_string()) fail(path + ".ring", "expected a string");
  try {
    if (kind == "Qp") {
      auto p = integer(field(j, "p", path), path + ".p");
      auto cap = integer(field(j, "cap", path), path + ".cap");
      if (p < 2 || p > 1000) fail(path + ".p", "prime out of range");
      return QpRing(static_cast<std::uint32_t>(p), static_cast<int>(cap));
    }
    if (kind == "PerfL") {
      auto q = integer(field(j, "q", path), path + ".q");
      auto k = integer(field(j, "root_denom", path), path + ".root_denom");
      auto trunc = rational_from_json(field(j, "trunc", path), path + ".trunc");
      if (q < 2 || q > 1000) fail(path + ".q", "prime out of range");
      return PerfRing(static_cast<std::uint32_t>(q), static_cast<int>(k), trunc);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail(path, e.what());
  }
  fail(path + ".ring", "unknown ring '" + kind.get<std::string>() + "'");
}

Json element_to_json(const PadicElement& x) { return x.str(); }

Json element_to_json(const PerfElement& x) {
  Json terms = Json::array();
  for (const auto& [e, c] : x.terms()) {
    terms.push_back(Json::array({rational_to_json(Rational(e, x.ring().denominator())), c}));
  }
  if (x.trunc_numerator() >= x.ring().trunc_numerator()) return terms;
  Json out;
  out["terms"] = terms;
  out["trunc"] = rational_to_json(x.trunc());
  return out;
}

PadicElement element_from_json(const QpRing& R, const Json& j, const std::string& path) {
  if (j.is_number_integer()) return R.from_int(j.get<std::int64_t>());
  if (!j.is_string()) fail(path, "expected a p-adic number string");
  std::string s = j.get<std::string>();
  std::optional<int> prec;
  auto plus = s.find("+ O(");
  if (plus != std::string::npos) {
    auto close = s.find(')', plus);
    auto caret = s.find('^', plus);
    if (close == std::string::npos || caret == std::string::npos || caret > close) {
      fail(path, "malformed precision term in '" + s + "'");
    }
    auto base = parse_int(std::string_view(s).substr(plus + 4, caret - plus - 4), path);
    if (base != R.prime()) fail(path, "precision term uses the wrong prime");
    prec = static_cast<int>(parse_int(std::string_view(s).substr(caret + 1, close - caret - 1), path));
    s = s.substr(0, plus);
  }
  auto slash = s.find('/');
  std::int64_t num = 0, den = 1;
  if (slash == std::string::npos) {
    num = parse_int(s, path);
  } else {
    num = parse_int(std::string_view(s).substr(0, slash), path);
    den = parse_int(std::string_view(s).substr(slash + 1), path);
    if (den == 0) fail(path, "zero denominator");
  }
  try {
    auto x = R.from_rational(num, den);
    return prec ? x.with_precision(*prec) : x;
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

PerfElement element_from_json(const PerfRing& R, const Json& j, const std::string& path) {
  const Json* terms = &j;
  std::optional<Rational> trunc;
  if (j.is_object()) {
    terms = &field(j, "terms", path);
    trunc = rational_from_json(field(j, "trunc", path), path + ".trunc");
  }
  if (!terms->is_array()) fail(path, "expected a list of [exponent, coefficient] pairs");
  std::vector<std::pair<Rational, std::uint32_t>> out;
  for (std::size_t i = 0; i < terms->size(); ++i) {
    const auto& t = (*terms)[i];
    auto tp = path + "[" + std::to_string(i) + "]";
    if (!t.is_array() || t.size() != 2) fail(tp, "expected [exponent, coefficient]");
    auto e = rational_from_json(t[0], tp + "[0]");
    auto c = integer(t[1], tp + "[1]");
    if (c < 0 || c >= R.prime()) fail(tp + "[1]", "coefficient outside F_p");
    out.emplace_back(e, static_cast<std::uint32_t>(c));
  }
  try {
    auto x = R.from_terms(out);
    return trunc ? x.with_trunc_numerator(R.to_numerator(*trunc)) : x;
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

namespace {

template <class C, class Ring>
RestrictedSeries<C> series_over(const Ring& R, const Json& j, const std::string& path) {
  const auto& coeffs = field(j, "coeffs", path);
  if (!coeffs.is_array()) fail(path + ".coeffs", "expected a list of [degree, element] pairs");
  std::map<std::size_t, C> by_degree;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const auto& entry = coeffs[i];
    auto ep = path + ".coeffs[" + std::to_string(i) + "]";
    if (!entry.is_array() || entry.size() != 2) fail(ep, "expected [degree, element]");
    if (!entry[0].is_number_integer() || entry[0].get<std::int64_t>() < 0) {
      fail(ep + "[0]", "degree must be a nonnegative integer");
    }
    auto deg = entry[0].get<std::size_t>();
    if (deg > 100000) fail(ep + "[0]", "degree too large");
    if (by_degree.count(deg)) fail(ep + "[0]", "repeated degree " + std::to_string(deg));
    by_degree.emplace(deg, element_from_json(R, entry[1], ep + "[1]"));
  }
  NormValue tail = NormValue::zero();
  if (auto it = j.find("tail_exp"); it != j.end() && !it->is_null()) {
    tail = NormValue::at_most(rational_from_json(*it, path + ".tail_exp"));
  }
  std::vector<C> cs;
  if (!by_degree.empty()) cs.assign(by_degree.rbegin()->first + 1, R.zero());
  for (auto& [d, c] : by_degree) cs[d] = c;
  SeriesRing<C> A(R);
  return A.from_coefficients(std::move(cs), tail);
}

}  // namespace

AnySeries series_from_json(const Json& j, const std::string& path) {
  auto ring = ring_from_json(field(j, "base", path), path + ".base");
  if (auto* q = std::get_if<QpRing>(&ring)) return series_over<PadicElement>(*q, j, path);
  return series_over<PerfElement>(std::get<PerfRing>(ring), j, path);
}

RestrictedSeries<PadicElement> padic_series_from_json(const Json& j, const std::string& path) {
  auto s = series_from_json(j, path);
  if (auto* f = std::get_if<RestrictedSeries<PadicElement>>(&s)) return *f;
  fail(path + ".base", "expected a Qp base");
}

Json algebra_to_json(const FiniteFreeAlgebra& B) {
  Json mod = Json::array();
  for (const auto& c : B.modulus()) mod.push_back(element_to_json(c));
  Json out;
  out["base"] = ring_to_json(B.base());
  out["modulus"] = mod;
  return out;
}

FiniteFreeAlgebra algebra_from_json(const Json& j, const std::string& path) {
  auto ring = ring_from_json(field(j, "base", path), path + ".base");
  auto* R = std::get_if<QpRing>(&ring);
  if (!R) fail(path + ".base", "finite algebras need a Qp base");
  const auto& mod = field(j, "modulus", path);
  if (!mod.is_array()) fail(path + ".modulus", "expected a coefficient list");
  std::vector<PadicElement> cs;
  for (std::size_t i = 0; i < mod.size(); ++i) {
    cs.push_back(element_from_json(*R, mod[i], path + ".modulus[" + std::to_string(i) + "]"));
  }
  try {
    return FiniteFreeAlgebra(*R, cs);
  } catch (const Error& e) {
    fail(path + ".modulus", e.what());
  }
}

Json lambda_to_json(const LambdaParam& t) {
  Json out;
  out["a"] = rational_to_json(t.value().rational_part());
  out["b"] = rational_to_json(t.value().irrational_part());
  out["d"] = t.value().radicand();
  return out;
}

LambdaParam lambda_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer() || j.is_string()) return LambdaParam(QuadraticNumber(rational_from_json(j, path)));
  auto a = rational_from_json(field(j, "a", path), path + ".a");
  Rational b(0);
  std::int64_t d = 1;
  if (j.contains("b")) b = rational_from_json(j["b"], path + ".b");
  if (j.contains("d")) d = integer(j["d"], path + ".d");
  try {
    return LambdaParam(b == 0 ? QuadraticNumber(a) : QuadraticNumber(a, b, d));
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

Json teich_sum_to_json(const TeichSum& x, const std::optional<LambdaParam>& t) {
  Json terms = Json::array();
  for (const auto& [n, xn] : x.terms()) terms.push_back(Json::array({n, element_to_json(xn)}));
  Json out;
  out["base"] = ring_to_json(x.ring());
  out["terms"] = terms;
  if (t) out["t"] = lambda_to_json(*t);
  return out;
}

TeichInput teich_sum_from_json(const Json& j, const std::string& path) {
  auto ring = ring_from_json(field(j, "base", path), path + ".base");
  auto* R = std::get_if<PerfRing>(&ring);
  if (!R) fail(path + ".base", "Teichmüller sums need a PerfL base");
  const auto& terms = field(j, "terms", path);
  if (!terms.is_array()) fail(path + ".terms", "expected a list of [n, element] pairs");
  std::vector<TeichSum::Term> out;
  std::set<std::int64_t> seen;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    auto tp = path + ".terms[" + std::to_string(i) + "]";
    const auto& t = terms[i];
    if (!t.is_array() || t.size() != 2) fail(tp, "expected [n, element]");
    auto n = integer(t[0], tp + "[0]");
    if (!seen.insert(n).second) fail(tp + "[0]", "repeated power p^" + std::to_string(n));
    out.emplace_back(static_cast<int>(n), element_from_json(*R, t[1], tp + "[1]"));
  }
  std::optional<LambdaParam> t;
  if (auto it = j.find("t"); it != j.end() && !it->is_null()) t = lambda_from_json(*it, path + ".t");
  return {TeichSum(*R, std::move(out)), t};
}

Json exponent_to_json(const NormExponent& e) {
  return e.is_rational() ? rational_to_json(e.as_rational()) : Json(e.str());
}

Json norm_to_json(const NormValue& v) {
  Json out;
  if (v.is_zero()) {
    out["kind"] = "zero";
    return out;
  }
  out["kind"] = v.is_exact() ? "exact" : "at_most";
  out["exp"] = exponent_to_json(v.exponent());
  return out;
}

Json polygon_to_json(const NewtonPolygon& np) {
  Json vertices = Json::array();
  for (const auto& [i, e] : np.vertices) vertices.push_back(Json::array({i, rational_to_json(e)}));
  Json slopes = Json::array();
  for (const auto& [s, len] : np.slopes) slopes.push_back(Json::array({rational_to_json(s), len}));
  Json out;
  out["vertices"] = vertices;
  out["slopes"] = slopes;
  return out;
}

}  // namespace tateforge
