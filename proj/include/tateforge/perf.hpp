#pragma once

// Truncated elements of the perfectoid field L, the completed perfection of
// F_p((z)), normalized by |z| = p^{-1}.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tateforge/norm.hpp"

namespace tateforge {

class PerfElement;

/// Descriptor: coefficients in F_p, exponents in p^{-root_denom} Z, elements known modulo z^trunc.
class PerfRing {
 public:
  PerfRing(std::uint32_t q, int root_denom, Rational trunc);

  std::uint32_t prime() const { return p_; }
  int root_denom() const { return k_; }
  /// p^root_denom: exponents are stored as numerators over this.
  std::int64_t denominator() const { return den_; }
  Rational trunc() const { return Rational(trunc_num_, den_); }
  std::int64_t trunc_numerator() const { return trunc_num_; }
  NormExponent working_precision() const { return NormExponent(trunc()); }

  PerfElement zero() const;
  PerfElement one() const;
  /// coeff * z^exponent; exponent must lie in p^{-root_denom} Z.
  PerfElement monomial(const Rational& exponent, std::uint32_t coeff = 1) const;
  PerfElement from_terms(const std::vector<std::pair<Rational, std::uint32_t>>& terms) const;

  /// Exponent numerator over p^root_denom; throws if exponent is not on the grid.
  std::int64_t to_numerator(const Rational& exponent) const;

  bool operator==(const PerfRing& o) const {
    return p_ == o.p_ && k_ == o.k_ && trunc_num_ == o.trunc_num_;
  }

  std::string str() const;

 private:
  std::uint32_t p_;
  int k_;
  std::int64_t den_;
  std::int64_t trunc_num_;
};

/// Finite sum of c_a z^a, a in p^{-k} Z, known modulo z^trunc.
class PerfElement {
 public:
  using ring_type = PerfRing;
  /// (exponent numerator over p^k, coefficient in [1, p))
  using Term = std::pair<std::int64_t, std::uint32_t>;

  const PerfRing& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  Rational trunc() const { return Rational(trunc_num_, ring_.denominator()); }
  std::int64_t trunc_numerator() const { return trunc_num_; }

  bool is_certainly_nonzero() const { return !terms_.empty(); }
  /// Least exponent of a nonzero element.
  Rational valuation() const;
  NormValue norm() const;
  bool is_negligible() const { return terms_.empty() && trunc_num_ >= ring_.trunc_numerator(); }
  bool is_monomial() const { return terms_.size() == 1; }
  /// Coefficient of z^exponent (0 if absent).
  std::uint32_t coefficient(const Rational& exponent) const;

  PerfElement operator-() const;
  PerfElement operator+(const PerfElement& o) const;
  PerfElement operator-(const PerfElement& o) const { return *this + (-o); }
  PerfElement operator*(const PerfElement& o) const;

  PerfElement inverse() const;
  std::optional<PerfElement> unit_inverse() const;

  /// x^p (Frobenius).
  PerfElement frobenius() const;
  /// x^{1/p}; throws DomainError when an exponent leaves the p^{-k} Z grid.
  PerfElement root() const;
  PerfElement pow(std::uint64_t e) const;

  PerfElement blurred(const NormExponent& e) const;
  PerfElement with_trunc_numerator(std::int64_t t) const;

  /// Equality modulo the smaller of the two truncations.
  bool agrees_with(const PerfElement& o) const;

  std::string str() const;

 private:
  friend class PerfRing;
  PerfElement(PerfRing ring, std::vector<Term> terms, std::int64_t trunc_num);
  void normalize();

  PerfRing ring_;
  std::vector<Term> terms_;
  std::int64_t trunc_num_;
};

}  // namespace tateforge
