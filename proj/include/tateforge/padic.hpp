#pragma once

// Q_p at capped absolute precision.

#include <cstdint>
#include <optional>
#include <string>

#include "tateforge/norm.hpp"

namespace tateforge {

class PadicElement;

/// Descriptor of Q_p with elements known modulo p^cap.
class QpRing {
 public:
  QpRing(std::uint32_t p, int cap);

  std::uint32_t prime() const { return p_; }
  int cap() const { return cap_; }
  /// Largest denominator exponent an element may carry at full precision.
  int max_shift() const { return max_total_ - cap_; }
  NormExponent working_precision() const { return NormExponent(cap_); }

  PadicElement zero() const;
  PadicElement one() const;
  PadicElement from_int(std::int64_t n) const;
  /// num/den with any nonzero den; p-power parts of den become a denominator shift.
  PadicElement from_rational(std::int64_t num, std::int64_t den) const;
  /// Element with value mantissa * p^{-shift}, known modulo p^prec.
  PadicElement make(std::uint64_t mantissa, int shift, int prec) const;

  /// p^k, for 0 <= k <= cap + max_shift.
  std::uint64_t power(int k) const;

  bool operator==(const QpRing& o) const { return p_ == o.p_ && cap_ == o.cap_; }

  std::string str() const;

 private:
  std::uint32_t p_;
  int cap_;
  int max_total_;  // largest k with p^k < 2^62
};

/// Element of Q_p known modulo p^prec, stored as mantissa * p^{-shift}.
///
/// The mantissa is reduced modulo p^{prec+shift}; when shift > 0 it is not
/// divisible by p. prec never exceeds the ring cap.
class PadicElement {
 public:
  using ring_type = QpRing;

  const QpRing& ring() const { return ring_; }
  std::uint64_t mantissa() const { return mantissa_; }
  int shift() const { return shift_; }
  int precision() const { return prec_; }

  /// True when the element is nonzero modulo its precision.
  bool is_certainly_nonzero() const { return mantissa_ != 0; }
  /// Valuation of a certainly-nonzero element.
  int valuation() const;
  NormValue norm() const;
  /// Zero at the full ring precision.
  bool is_negligible() const { return mantissa_ == 0 && prec_ >= ring_.cap(); }

  PadicElement operator-() const;
  PadicElement operator+(const PadicElement& o) const;
  PadicElement operator-(const PadicElement& o) const { return *this + (-o); }
  PadicElement operator*(const PadicElement& o) const;

  /// Multiplicative inverse; throws PrecisionError unless the norm is exact.
  PadicElement inverse() const;
  /// Inverse when certifiably a unit (every nonzero element is, in a field).
  std::optional<PadicElement> unit_inverse() const;

  /// Same value with precision lowered to at most floor(e).
  PadicElement blurred(const NormExponent& e) const;
  PadicElement with_precision(int prec) const;

  /// Agreement modulo p^k.
  bool agrees_mod(const PadicElement& o, int k) const;
  /// Balanced representative as a string: "5", "-3", "3/4".
  std::string str() const;

  /// Signed balanced mantissa (value = balanced * p^{-shift}).
  std::int64_t balanced_mantissa() const;

 private:
  friend class QpRing;
  PadicElement(QpRing ring, std::uint64_t mantissa, int shift, int prec);
  void normalize();

  QpRing ring_;
  std::uint64_t mantissa_;
  int shift_;
  int prec_;
};

/// Inverse of a unit modulo m, extended Euclid.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m);

}  // namespace tateforge
