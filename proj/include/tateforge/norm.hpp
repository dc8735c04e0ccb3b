#pragma once

// Exact nonarchimedean norm values p^{-e}.
//
// Exponents live in a real quadratic field Q(sqrt(d)) so that norms raised to
// an irrational power t = u + v*sqrt(d) can still be ordered exactly. Nothing in
// here ever touches floating point.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

#include "tateforge/errors.hpp"

// boost::rational's mixed (rational, int) equality recurses forever under C++20
// rewritten comparisons; exact non-template overloads take precedence.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, std::int64_t b) { return a == rational<std::int64_t>(b); }
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == rational<std::int64_t>(b); }
}  // namespace boost

namespace tateforge {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);
Rational parse_rational(std::string_view text);
std::int64_t floor(const Rational& r);
std::int64_t ceil(const Rational& r);

/// a + b*sqrt(d), d squarefree. Rational values are stored with b = 0, d = 1.
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(std::int64_t a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadraticNumber(Rational a) : a_(a) {}      // NOLINT(google-explicit-constructor)
  QuadraticNumber(Rational a, Rational b, std::int64_t d);

  const Rational& rational_part() const { return a_; }
  const Rational& irrational_part() const { return b_; }
  std::int64_t radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }

  /// Sign of the real number, decided by exact squaring.
  int sign() const;

  QuadraticNumber operator-() const;
  QuadraticNumber operator+(const QuadraticNumber& o) const;
  QuadraticNumber operator-(const QuadraticNumber& o) const;
  QuadraticNumber operator*(const QuadraticNumber& o) const;

  bool operator==(const QuadraticNumber& o) const = default;
  /// Throws IncompatibleScale when both sides are irrational with different radicands.
  std::strong_ordering operator<=>(const QuadraticNumber& o) const;

  bool compatible_with(const QuadraticNumber& o) const;

  /// Renders "a", or "a+b*sqrt(d)".
  std::string str() const;

 private:
  std::int64_t common_radicand(const QuadraticNumber& o) const;

  Rational a_{0};
  Rational b_{0};
  std::int64_t d_{1};
};

/// Exponent e of a norm value p^{-e}.
///
/// Built from (a, b, tau) as a + b*tau; for the unit scale tau = 1 this folds to
/// the rational a + b. Two exponents are comparable whenever their irrational
/// parts share a radicand (or either one is rational).
class NormExponent {
 public:
  NormExponent() = default;
  NormExponent(std::int64_t e) : value_(e) {}  // NOLINT(google-explicit-constructor)
  NormExponent(Rational e) : value_(e) {}      // NOLINT(google-explicit-constructor)
  explicit NormExponent(QuadraticNumber v) : value_(std::move(v)) {}

  static NormExponent scaled(const Rational& a, const Rational& b, const QuadraticNumber& tau);

  const QuadraticNumber& value() const { return value_; }
  bool is_rational() const { return value_.is_rational(); }
  /// Requires is_rational().
  const Rational& as_rational() const;

  NormExponent operator+(const NormExponent& o) const { return NormExponent(value_ + o.value_); }
  NormExponent operator-(const NormExponent& o) const { return NormExponent(value_ - o.value_); }
  NormExponent operator-() const { return NormExponent(-value_); }
  NormExponent operator*(const Rational& k) const { return NormExponent(value_ * QuadraticNumber(k)); }

  bool operator==(const NormExponent& o) const = default;
  std::strong_ordering operator<=>(const NormExponent& o) const { return value_ <=> o.value_; }

  std::string str() const { return value_.str(); }

 private:
  QuadraticNumber value_{};
};

std::strong_ordering exponent_compare(const NormExponent& e1, const NormExponent& e2);

enum class Certainty { no, yes, unknown };

inline bool certainly(Certainty c) { return c == Certainty::yes; }
inline bool certainly_not(Certainty c) { return c == Certainty::no; }
std::string to_string(Certainty c);

/// A norm value: exactly p^{-e}, at most p^{-e} (possibly zero), or exactly zero.
class NormValue {
 public:
  enum class Kind { exact_zero, exact, at_most };

  static NormValue zero() { return NormValue(Kind::exact_zero, {}); }
  static NormValue exact(NormExponent e) { return NormValue(Kind::exact, std::move(e)); }
  static NormValue at_most(NormExponent e) { return NormValue(Kind::at_most, std::move(e)); }
  static NormValue one() { return exact(NormExponent(0)); }

  Kind kind() const { return kind_; }
  bool is_zero() const { return kind_ == Kind::exact_zero; }
  bool is_exact() const { return kind_ == Kind::exact; }
  bool is_at_most() const { return kind_ == Kind::at_most; }

  /// Exponent for exact and at_most values; throws for exact zero.
  const NormExponent& exponent() const;

  /// Same bound, but forgetting exactness.
  NormValue weakened() const;

  NormValue operator*(const NormValue& o) const;
  /// Norm raised to a positive real power.
  NormValue pow(const QuadraticNumber& t) const;

  bool operator==(const NormValue& o) const = default;

  std::string str() const;

 private:
  NormValue(Kind k, NormExponent e) : kind_(k), exponent_(std::move(e)) {}

  Kind kind_;
  NormExponent exponent_;
};

/// max(x, y) with the absorption rules for at_most bounds.
NormValue join(const NormValue& x, const NormValue& y);

Certainty less(const NormValue& x, const NormValue& y);
Certainty less_equal(const NormValue& x, const NormValue& y);
/// yes only when both are exact (or both exact zero) and equal.
Certainty equal(const NormValue& x, const NormValue& y);

inline NormValue norm_p_pow(std::int64_t e) { return NormValue::exact(NormExponent(e)); }

}  // namespace tateforge
