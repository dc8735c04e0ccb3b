#pragma once

// Weierstrass division and preparation in A<T>.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tateforge/series.hpp"

namespace tateforge {

struct Refusal {
  enum class Kind { violated, indeterminate };
  Kind kind;
  std::string reason;

  bool indeterminate() const { return kind == Kind::indeterminate; }
};

template <class T>
using Checked = std::variant<T, Refusal>;

template <class T>
bool refused(const Checked<T>& c) {
  return std::holds_alternative<Refusal>(c);
}

struct DistinguishedCertificate {
  std::size_t n0 = 0;
  /// |f_{n0} - 1| < 1; division needs this, preparation normalizes to it.
  bool leading_is_one = false;
  /// max |f_n| over n < n0 (certified <= 1).
  NormValue lower = NormValue::zero();
  /// max |f_n| over n > n0 including the tail (certified < 1).
  NormValue upper = NormValue::zero();
};

template <NormedCoefficient C>
struct DivisionResult {
  RestrictedSeries<C> q;
  RestrictedSeries<C> r;
  int iterations = 0;
};

template <NormedCoefficient C>
struct PreparationResult {
  RestrictedSeries<C> monic;
  RestrictedSeries<C> unit;
  NormValue residual;
  std::size_t n0 = 0;
};

template <NormedCoefficient C>
struct Rescaling {
  C c;
  DistinguishedCertificate cert;
};

namespace detail {

inline Refusal violated(std::string why) { return Refusal{Refusal::Kind::violated, std::move(why)}; }
inline Refusal indeterminate(std::string why) { return Refusal{Refusal::Kind::indeterminate, std::move(why)}; }

inline NormValue precision_target(const NormExponent& n) { return NormValue::exact(n); }

/// Euclidean division of a series by a monic polynomial P with |P| <= 1.
///
/// The stored part is divided exactly; the unknown tail only contributes a
/// quotient and remainder bounded by the tail bound.
template <NormedCoefficient C>
std::pair<RestrictedSeries<C>, RestrictedSeries<C>> divide_by_monic(const RestrictedSeries<C>& h,
                                                                    const std::vector<C>& monic) {
  const auto& ring = h.ring();
  std::size_t n0 = monic.size() - 1;
  std::vector<C> rem = h.coefficients();
  std::vector<C> quo;
  if (rem.size() > n0) {
    quo.assign(rem.size() - n0, ring.base().zero());
    for (std::size_t k = rem.size(); k-- > n0;) {
      auto c = rem[k];
      if (c.is_negligible()) continue;
      quo[k - n0] = c;
      for (std::size_t i = 0; i < n0; ++i) rem[k - n0 + i] = rem[k - n0 + i] - c * monic[i];
      rem[k] = ring.base().zero();
    }
    rem.resize(n0, ring.base().zero());
  }
  auto q = ring.from_coefficients(std::move(quo));
  auto r = ring.from_coefficients(std::move(rem));
  if (!h.tail_bound().is_zero()) {
    auto e = h.tail_bound().exponent();
    q = q.blurred(e);
    r = r.blurred(e);
  }
  return {q, r};
}

template <NormedCoefficient C>
bool certified_below(const NormValue& v, const NormExponent& n) {
  return certainly(less_equal(v, NormValue::exact(n)));
}

}  // namespace detail

/// Finds n0 with |f_{n0}| = 1 a unit, |f_n| <= 1 below and |f_n| < 1 above.
template <NormedCoefficient C>
Checked<DistinguishedCertificate> check_distinguished(const RestrictedSeries<C>& f) {
  const auto one = NormValue::one();
  DistinguishedCertificate cert;
  auto tail_ok = less(f.tail_bound(), one);
  if (!f.tail_bound().is_zero() && !certainly(tail_ok)) {
    if (certainly_not(tail_ok)) return detail::violated("tail bound is not below 1");
    return detail::indeterminate("tail bound " + f.tail_bound().str() + " straddles 1");
  }
  const auto& cs = f.coefficients();
  std::optional<std::size_t> n0;
  NormValue upper = f.tail_bound();
  for (std::size_t i = cs.size(); i-- > 0;) {
    auto n = cs[i].norm();
    auto below = less(n, one);
    if (certainly(below)) {
      upper = join(upper, n);
      continue;
    }
    if (!certainly_not(below)) {
      return detail::indeterminate("|f_" + std::to_string(i) + "| = " + n.str() + " straddles 1");
    }
    n0 = i;
    break;
  }
  if (!n0) return detail::violated("no coefficient of norm 1");
  const auto& lead = cs[*n0];
  if (!lead.norm().is_exact() || !(lead.norm() == one)) {
    return detail::violated("|f_" + std::to_string(*n0) + "| = " + lead.norm().str() + " exceeds 1");
  }
  if (!lead.unit_inverse()) return detail::violated("f_" + std::to_string(*n0) + " is not a unit");
  NormValue lower = NormValue::zero();
  for (std::size_t i = 0; i < *n0; ++i) {
    auto n = cs[i].norm();
    auto le = less_equal(n, one);
    if (certainly_not(le)) return detail::violated("|f_" + std::to_string(i) + "| exceeds 1");
    if (!certainly(le)) return detail::indeterminate("|f_" + std::to_string(i) + "| = " + n.str() + " straddles 1");
    lower = join(lower, n);
  }
  cert.n0 = *n0;
  cert.lower = lower;
  cert.upper = upper;
  cert.leading_is_one = certainly(less((lead - f.ring().base().one()).norm(), one));
  return cert;
}

/// Fixed-point Weierstrass division g = f q + r, deg r < n0.
///
/// With P = f_low + T^{n0} and H = f - P (|H| < 1), each round divides the
/// current remainder by P and continues with -H Q, stopping once the remainder
/// is at most p^{-N}.
template <NormedCoefficient C>
DivisionResult<C> weierstrass_divide(const RestrictedSeries<C>& f, const DistinguishedCertificate& cert,
                                     const RestrictedSeries<C>& g) {
  const auto& ring = f.ring();
  if (!(ring == g.ring())) throw DomainError("dividend and divisor over different rings");
  if (!cert.leading_is_one) {
    throw DomainError("divisor must be normalized so that its coefficient of T^" + std::to_string(cert.n0) +
                      " is 1");
  }
  const auto n0 = cert.n0;
  std::vector<C> monic;
  for (std::size_t i = 0; i < n0; ++i) monic.push_back(f.coefficient(i));
  monic.push_back(ring.base().one());
  auto P = ring.from_coefficients(monic);
  auto H = f - P;
  auto eps = H.norm();
  if (!H.is_negligible() && !certainly(less(eps, NormValue::one()))) {
    throw PrecisionError("contraction factor " + eps.str() + " is not certified below 1");
  }
  const auto N = ring.working_precision();
  auto q = ring.zero();
  auto r = ring.zero();
  auto cur = g;
  int max_rounds = 8;
  if (!H.is_negligible() && !g.norm().is_zero()) {
    auto gap = N - g.norm().exponent();
    auto step = eps.exponent();
    max_rounds += static_cast<int>(ceil(gap.as_rational() / step.as_rational()));
  }
  int rounds = 0;
  while (true) {
    auto cn = cur.norm();
    // an at_most remainder carries no further digits to divide out
    if (cn.is_zero() || detail::certified_below<C>(cn, N)) break;
    if (cn.is_at_most() && cur.is_polynomial()) break;
    if (rounds >= max_rounds) {
      if (cn.is_at_most()) break;
      throw PrecisionError("division stalled with remainder " + cur.norm().str());
    }
    auto [Q, R] = detail::divide_by_monic(cur, monic);
    q = q + Q;
    r = r + R;
    cur = -(H * Q);
    ++rounds;
  }
  if (!cur.norm().is_zero()) {
    auto e = cur.norm().exponent();
    q = q.blurred(e);
    r = r.blurred(e);
  }
  return {q, r.truncated(n0), rounds};
}

/// Division by a truncated linear solve over the unit ball.
///
/// Unknowns q_0..q_M and r_0..r_{n0-1}; equations are the coefficients of
/// T^0..T^{n0+M} in f q + r = g. Ordered by descending degree the system is
/// unit lower triangular modulo the maximal ideal, so elimination never needs
/// to pivot. M is large enough that every coefficient of q above T^M is at
/// most p^{-N}.
template <NormedCoefficient C>
DivisionResult<C> weierstrass_divide_linear(const RestrictedSeries<C>& f, const DistinguishedCertificate& cert,
                                            const RestrictedSeries<C>& g) {
  const auto& ring = f.ring();
  const auto& base = ring.base();
  if (!f.is_polynomial() || !g.is_polynomial()) {
    throw DomainError("the linear-solve division needs polynomial inputs");
  }
  if (!cert.leading_is_one) throw DomainError("divisor must be normalized to a leading 1");
  const std::size_t n0 = cert.n0;
  const std::size_t df = f.length() == 0 ? 0 : f.length() - 1;
  const std::size_t dg = g.length() == 0 ? 0 : g.length() - 1;
  if (g.length() == 0) return {ring.zero(), ring.zero(), 0};
  const auto N = ring.working_precision();

  // q_j decays like eps^k past degree dg - n0 + k (df - n0)
  auto eps = join(cert.upper, (f.coefficients()[n0] - base.one()).norm());
  std::size_t K = 0;
  if (df > n0 && !eps.is_zero()) {
    auto gap = N - g.norm().exponent();
    auto step = eps.exponent();
    auto k = ceil(gap.as_rational() / step.as_rational());
    K = k > 0 ? static_cast<std::size_t>(k) : 0;
  }
  const std::size_t M = (dg >= n0 ? dg - n0 : 0) + K * (df > n0 ? df - n0 : 0);
  const std::size_t rows = n0 + M + 1;
  // column c < M+1 is q_{M-c}; column M+1+s is r_{n0-1-s}
  std::vector<std::vector<std::optional<C>>> A(rows, std::vector<std::optional<C>>(rows));
  std::vector<C> b;
  b.reserve(rows);
  for (std::size_t row = 0; row < rows; ++row) {
    std::size_t k = n0 + M - row;
    for (std::size_t j = 0; j <= M && j <= k; ++j) {
      if (k - j > df) continue;
      const auto& fc = f.coefficients()[k - j];
      if (fc.is_negligible()) continue;
      A[row][M - j] = fc;
    }
    if (k < n0) A[row][M + 1 + (n0 - 1 - k)] = base.one();
    b.push_back(g.coefficient(k));
  }
  for (std::size_t piv = 0; piv < rows; ++piv) {
    if (!A[piv][piv]) throw PrecisionError("zero pivot in the Weierstrass system");
    auto inv = A[piv][piv]->unit_inverse();
    if (!inv) throw PrecisionError("pivot is not a certified unit");
    for (std::size_t row = piv + 1; row < rows; ++row) {
      if (!A[row][piv]) continue;
      auto m = *A[row][piv] * *inv;
      A[row][piv].reset();
      if (m.is_negligible()) continue;
      for (std::size_t col = piv + 1; col < rows; ++col) {
        if (!A[piv][col]) continue;
        auto upd = m * *A[piv][col];
        A[row][col] = A[row][col] ? *A[row][col] - upd : -upd;
      }
      b[row] = b[row] - m * b[piv];
    }
  }
  std::vector<std::optional<C>> x(rows);
  for (std::size_t row = rows; row-- > 0;) {
    auto acc = b[row];
    for (std::size_t col = row + 1; col < rows; ++col) {
      if (A[row][col]) acc = acc - *A[row][col] * *x[col];
    }
    x[row] = acc * *A[row][row]->unit_inverse();
  }
  std::vector<C> qc;
  for (std::size_t j = 0; j <= M; ++j) qc.push_back(*x[M - j]);
  std::vector<C> rc;
  for (std::size_t i = 0; i < n0; ++i) rc.push_back(*x[M + 1 + (n0 - 1 - i)]);
  return {ring.from_coefficients(std::move(qc)), ring.from_coefficients(std::move(rc)), 1};
}

/// Inverse of a unit of A<T> to working precision.
template <NormedCoefficient C>
RestrictedSeries<C> invert_unit_series(const RestrictedSeries<C>& u) {
  auto inv = geometric_inverse(u);
  if (!inv) throw DomainError("series is not a certified unit: " + u.str());
  return *inv;
}

/// f = g u with g monic of degree n0 and u a unit.
template <NormedCoefficient C>
PreparationResult<C> weierstrass_prepare(const RestrictedSeries<C>& f) {
  auto checked = check_distinguished(f);
  if (auto* ref = std::get_if<Refusal>(&checked)) {
    if (ref->indeterminate()) throw Indeterminate("preparation: " + ref->reason);
    throw DomainError("preparation: " + ref->reason);
  }
  auto cert = std::get<DistinguishedCertificate>(checked);
  const auto& ring = f.ring();
  const auto& lead = f.coefficients()[cert.n0];
  auto lead_inv = lead.unit_inverse();
  auto fn = f.scale(*lead_inv);
  auto cn = check_distinguished(fn);
  if (refused(cn)) throw PrecisionError("normalized series lost its distinguished form");
  auto ncert = std::get<DistinguishedCertificate>(cn);
  // T^{n0} = fn q + r, so fn = (T^{n0} - r) q^{-1}
  auto [q, r, rounds] = weierstrass_divide(fn, ncert, ring.monomial(ring.base().one(), cert.n0));
  auto g = ring.monomial(ring.base().one(), cert.n0) - r;
  auto q_inv = geometric_inverse(q);
  if (!q_inv) throw DomainError("preparation cofactor is not a unit");
  auto u = q_inv->scale(lead);
  auto residual = (f - g * u).norm();
  return {g, u, residual, cert.n0};
}

/// c and n0 such that c f is distinguished of degree n0, over a field base.
///
/// n0 is the largest degree attaining the Gauss norm.
template <NormedCoefficient C>
Checked<Rescaling<C>> rescale_to_distinguished(const RestrictedSeries<C>& f) {
  auto gn = f.norm();
  if (gn.is_zero()) return detail::violated("series is zero");
  const auto& cs = f.coefficients();
  std::optional<std::size_t> top;
  for (std::size_t i = cs.size(); i-- > 0;) {
    auto n = cs[i].norm();
    if (certainly(equal(n, gn))) {
      top = i;
      break;
    }
    if (!certainly(less(n, gn))) {
      return detail::indeterminate("|f_" + std::to_string(i) + "| = " + n.str() + " is not separated from " + gn.str());
    }
  }
  if (!top) return detail::indeterminate("no coefficient certifiably attains the Gauss norm " + gn.str());
  if (!f.tail_bound().is_zero() && !certainly(less(f.tail_bound(), gn))) {
    return detail::indeterminate("tail bound meets the Gauss norm");
  }
  auto c = cs[*top].unit_inverse();
  if (!c) return detail::violated("maximal coefficient is not invertible");
  auto checked = check_distinguished(f.scale(*c));
  if (auto* ref = std::get_if<Refusal>(&checked)) return *ref;
  return Rescaling<C>{*c, std::get<DistinguishedCertificate>(checked)};
}

}  // namespace tateforge
