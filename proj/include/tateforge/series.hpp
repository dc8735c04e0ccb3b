#pragma once

// Restricted power series A<T> over a normed coefficient ring, with Gauss norm.
//
// A series stores coefficients for degrees 0..D and a tail bound covering every
// coefficient of degree > D. A zero tail bound makes the value a polynomial.
// Coefficients that vanish at the full working precision are trimmed from the
// top; coefficients past the degree ceiling are folded into the tail bound.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tateforge/norm.hpp"

namespace tateforge {

template <class C>
concept NormedCoefficient = requires(const C& a, const C& b, const NormExponent& e) {
  typename C::ring_type;
  { a.ring() } -> std::convertible_to<const typename C::ring_type&>;
  { a.ring().zero() } -> std::same_as<C>;
  { a.ring().one() } -> std::same_as<C>;
  { a.ring().working_precision() } -> std::same_as<NormExponent>;
  { a.norm() } -> std::same_as<NormValue>;
  { a.is_negligible() } -> std::same_as<bool>;
  { a + b } -> std::same_as<C>;
  { a - b } -> std::same_as<C>;
  { a * b } -> std::same_as<C>;
  { -a } -> std::same_as<C>;
  { a.blurred(e) } -> std::same_as<C>;
  { a.unit_inverse() } -> std::same_as<std::optional<C>>;
  { a.str() } -> std::convertible_to<std::string>;
};

inline constexpr std::size_t kDefaultDegreeCeiling = 512;

template <NormedCoefficient C>
class RestrictedSeries;

/// Descriptor of A<T>.
template <NormedCoefficient C>
class SeriesRing {
 public:
  using base_ring = typename C::ring_type;

  explicit SeriesRing(base_ring base, std::size_t degree_ceiling = kDefaultDegreeCeiling)
      : base_(std::move(base)), ceiling_(degree_ceiling) {}

  const base_ring& base() const { return base_; }
  std::size_t degree_ceiling() const { return ceiling_; }
  NormExponent working_precision() const { return base_.working_precision(); }

  RestrictedSeries<C> zero() const { return RestrictedSeries<C>(*this, {}, NormValue::zero()); }
  RestrictedSeries<C> one() const { return constant(base_.one()); }
  RestrictedSeries<C> constant(C c) const { return RestrictedSeries<C>(*this, {std::move(c)}, NormValue::zero()); }
  /// c * T^n
  RestrictedSeries<C> monomial(C c, std::size_t n) const {
    std::vector<C> coeffs(n, base_.zero());
    coeffs.push_back(std::move(c));
    return RestrictedSeries<C>(*this, std::move(coeffs), NormValue::zero());
  }
  RestrictedSeries<C> variable() const { return monomial(base_.one(), 1); }
  RestrictedSeries<C> from_coefficients(std::vector<C> coeffs, NormValue tail = NormValue::zero()) const {
    return RestrictedSeries<C>(*this, std::move(coeffs), std::move(tail));
  }

  bool operator==(const SeriesRing& o) const { return base_ == o.base_ && ceiling_ == o.ceiling_; }

  std::string str() const { return "(" + base_.str() + ")<T>"; }

 private:
  base_ring base_;
  std::size_t ceiling_;
};

template <NormedCoefficient C>
class RestrictedSeries {
 public:
  using ring_type = SeriesRing<C>;
  using coefficient_type = C;

  RestrictedSeries(ring_type ring, std::vector<C> coeffs, NormValue tail)
      : ring_(std::move(ring)), coeffs_(std::move(coeffs)), tail_(std::move(tail)) {
    if (tail_.is_exact()) tail_ = tail_.weakened();
    normalize();
  }

  const ring_type& ring() const { return ring_; }
  const std::vector<C>& coefficients() const { return coeffs_; }
  const NormValue& tail_bound() const { return tail_; }
  /// Number of stored coefficients (D + 1).
  std::size_t length() const { return coeffs_.size(); }
  bool is_polynomial() const { return tail_.is_zero(); }

  /// Coefficient of T^n; past the stored range this is zero blurred by the tail bound.
  C coefficient(std::size_t n) const {
    if (n < coeffs_.size()) return coeffs_[n];
    auto z = ring_.base().zero();
    if (tail_.is_zero()) return z;
    return z.blurred(tail_.exponent());
  }

  /// Gauss norm: max of the coefficient norms joined with the tail bound.
  NormValue norm() const {
    NormValue n = tail_;
    for (const auto& c : coeffs_) n = join(n, c.norm());
    return n;
  }
  NormValue gauss_norm() const { return norm(); }

  bool is_negligible() const {
    if (!coeffs_.empty()) return false;
    if (tail_.is_zero()) return true;
    return certainly(less_equal(tail_, NormValue::at_most(ring_.working_precision())));
  }

  RestrictedSeries operator-() const {
    std::vector<C> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(-c);
    return RestrictedSeries(ring_, std::move(out), tail_);
  }

  RestrictedSeries operator+(const RestrictedSeries& o) const {
    check_ring(o);
    auto len = combined_length(o, std::max(coeffs_.size(), o.coeffs_.size()));
    std::vector<C> out;
    out.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
      if (i < coeffs_.size() && i < o.coeffs_.size()) {
        out.push_back(coeffs_[i] + o.coeffs_[i]);
      } else if (i < coeffs_.size()) {
        out.push_back(coeffs_[i]);
      } else {
        out.push_back(o.coeffs_[i]);
      }
    }
    NormValue tail = join(tail_, o.tail_);
    tail = join(tail, folded_bound(len));
    tail = join(tail, o.folded_bound(len));
    return RestrictedSeries(ring_, std::move(out), tail);
  }

  RestrictedSeries operator-(const RestrictedSeries& o) const { return *this + (-o); }

  RestrictedSeries operator*(const RestrictedSeries& o) const {
    check_ring(o);
    if (coeffs_.empty() && o.coeffs_.empty()) return RestrictedSeries(ring_, {}, tail_ * o.tail_);
    std::size_t full = (coeffs_.empty() || o.coeffs_.empty()) ? 0 : coeffs_.size() + o.coeffs_.size() - 1;
    auto len = combined_length(o, full);
    std::vector<std::optional<C>> acc(full);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
        auto term = coeffs_[i] * o.coeffs_[j];
        auto& slot = acc[i + j];
        if (slot) {
          *slot = *slot + term;
        } else {
          slot = std::move(term);
        }
      }
    }
    std::vector<C> out;
    out.reserve(len);
    NormValue folded = NormValue::zero();
    for (std::size_t k = 0; k < full; ++k) {
      if (k < len) {
        out.push_back(std::move(*acc[k]));
      } else {
        folded = join(folded, acc[k]->norm().weakened());
      }
    }
    NormValue tail = join(stored_norm() * o.tail_, tail_ * o.stored_norm());
    tail = join(tail, tail_ * o.tail_);
    tail = join(tail, folded);
    return RestrictedSeries(ring_, std::move(out), tail);
  }

  RestrictedSeries scale(const C& c) const {
    std::vector<C> out;
    out.reserve(coeffs_.size());
    for (const auto& a : coeffs_) out.push_back(a * c);
    return RestrictedSeries(ring_, std::move(out), tail_ * c.norm());
  }

  /// Multiply by T^n.
  RestrictedSeries shifted(std::size_t n) const {
    if (coeffs_.empty() && tail_.is_zero()) return *this;
    std::vector<C> out(n, ring_.base().zero());
    out.insert(out.end(), coeffs_.begin(), coeffs_.end());
    return RestrictedSeries(ring_, std::move(out), tail_);
  }

  /// Keep degrees < n exactly; everything above goes into the tail bound.
  RestrictedSeries truncated(std::size_t n) const {
    if (n >= coeffs_.size()) return *this;
    std::vector<C> out(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(n));
    return RestrictedSeries(ring_, std::move(out), join(tail_, folded_bound(n)));
  }

  /// Value known only up to an error of norm at most p^{-e}.
  RestrictedSeries blurred(const NormExponent& e) const {
    std::vector<C> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(c.blurred(e));
    return RestrictedSeries(ring_, std::move(out), join(tail_, NormValue::at_most(e)));
  }

  /// Inverse when the constant coefficient is a unit dominating the rest.
  std::optional<RestrictedSeries> unit_inverse() const;

  std::string str() const {
    if (coeffs_.empty() && tail_.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i].is_negligible()) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << coeffs_[i].str() << ")";
      if (i == 1) os << "*T";
      if (i > 1) os << "*T^" << i;
    }
    if (!tail_.is_zero()) {
      if (!first) os << " + ";
      os << "O[" << tail_.str() << "; deg>" << (coeffs_.empty() ? -1 : static_cast<long>(coeffs_.size()) - 1)
         << "]";
    } else if (first) {
      os << "0";
    }
    return os.str();
  }

 private:
  void check_ring(const RestrictedSeries& o) const {
    if (!(ring_ == o.ring_)) throw DomainError("series over different coefficient rings");
  }

  /// Stored length of a result: limited by every operand that carries a nonzero tail.
  std::size_t combined_length(const RestrictedSeries& o, std::size_t full) const {
    std::size_t len = full;
    if (!tail_.is_zero()) len = std::min(len, coeffs_.size());
    if (!o.tail_.is_zero()) len = std::min(len, o.coeffs_.size());
    return len;
  }

  NormValue stored_norm() const {
    NormValue n = NormValue::zero();
    for (const auto& c : coeffs_) n = join(n, c.norm());
    return n;
  }

  /// Bound for stored coefficients at degree >= from.
  NormValue folded_bound(std::size_t from) const {
    NormValue n = NormValue::zero();
    for (std::size_t i = from; i < coeffs_.size(); ++i) n = join(n, coeffs_[i].norm().weakened());
    return n;
  }

  void normalize() {
    auto ceiling = ring_.degree_ceiling();
    if (coeffs_.size() > ceiling) {
      tail_ = join(tail_, folded_bound(ceiling));
      coeffs_.resize(ceiling, ring_.base().zero());
    }
    while (!coeffs_.empty() && coeffs_.back().is_negligible()) {
      if (!tail_.is_zero()) tail_ = join(tail_, coeffs_.back().norm().weakened());
      coeffs_.pop_back();
    }
  }

  ring_type ring_;
  std::vector<C> coeffs_;
  NormValue tail_;
};

/// (low, high) with f = low + T^n0 * high; low is a polynomial of degree < n0.
template <NormedCoefficient C>
std::pair<RestrictedSeries<C>, RestrictedSeries<C>> split_at(const RestrictedSeries<C>& f, std::size_t n0) {
  const auto& ring = f.ring();
  std::vector<C> low;
  low.reserve(n0);
  for (std::size_t i = 0; i < n0; ++i) low.push_back(f.coefficient(i));
  std::vector<C> high;
  for (std::size_t i = n0; i < f.length(); ++i) high.push_back(f.coefficients()[i]);
  return {ring.from_coefficients(std::move(low)), ring.from_coefficients(std::move(high), f.tail_bound())};
}

template <NormedCoefficient C>
NormValue gauss_norm(const RestrictedSeries<C>& f) {
  return f.norm();
}

/// |f - g| <= p^{-e}, certified.
template <NormedCoefficient C>
bool agree_within(const RestrictedSeries<C>& f, const RestrictedSeries<C>& g, const NormExponent& e) {
  return certainly(less_equal((f - g).norm(), NormValue::exact(e)));
}

template <NormedCoefficient C>
bool agree_within(const C& a, const C& b, const NormExponent& e) {
  return certainly(less_equal((a - b).norm(), NormValue::exact(e)));
}

/// Geometric-series inverse of u = u0 (1 + w), |w| < 1.
///
/// Returns nullopt unless u0 is a unit and |u0^{-1} (u - u0)| < 1 is certified.
/// Stops once the next term vanishes at working precision.
template <NormedCoefficient C>
std::optional<RestrictedSeries<C>> geometric_inverse(const RestrictedSeries<C>& u) {
  const auto& ring = u.ring();
  if (u.length() == 0) return std::nullopt;
  auto u0_inv = u.coefficients()[0].unit_inverse();
  if (!u0_inv) return std::nullopt;
  auto normalized = u.scale(*u0_inv);
  auto w = normalized - ring.one();
  if (!certainly(less(w.norm(), NormValue::one()))) return std::nullopt;
  auto target = NormValue::exact(ring.working_precision());
  auto minus_w = -w;
  auto sum = ring.one();
  auto term = ring.one();
  NormValue last = NormValue::one();
  // |w| < 1 and |w|^k falls below p^{-N} after finitely many steps; stalls mean lost precision
  for (int iter = 0; iter < 100000; ++iter) {
    term = term * minus_w;
    auto tn = term.norm();
    if (certainly(less_equal(tn, target))) {
      sum = sum + term;
      return sum.scale(*u0_inv);
    }
    if (!certainly(less(tn, last)) && iter > 0) {
      throw PrecisionError("geometric series for a unit inverse stalled at " + tn.str());
    }
    last = tn;
    sum = sum + term;
  }
  throw PrecisionError("geometric series for a unit inverse did not converge");
}

template <NormedCoefficient C>
std::optional<RestrictedSeries<C>> RestrictedSeries<C>::unit_inverse() const {
  return geometric_inverse(*this);
}

}  // namespace tateforge
