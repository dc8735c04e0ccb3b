#pragma once

// Finite sums of a_e [z]^e with a_e in Z[1/p] and e in Q, the subring of the
// period ring spanned by Teichmüller lifts of monomials. On it lambda_t is the
// Gauss norm max |a_e| p^{-t e}, and arithmetic is exact.

#include <cstdint>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "tateforge/witt.hpp"

namespace tateforge {

using BigRational = boost::multiprecision::cpp_rational;

class PeriodPoly {
 public:
  using Terms = std::map<Rational, BigRational>;

  PeriodPoly(std::uint32_t p, Terms terms);
  static PeriodPoly one(std::uint32_t p);
  static PeriodPoly monomial(std::uint32_t p, const BigRational& coeff, const Rational& e);
  /// Every digit must be a monomial c z^a with c = 1 or c = -1, whose
  /// Teichmüller lift is the rational number c.
  static PeriodPoly from_teich_sum(const TeichSum& x);

  std::uint32_t prime() const { return p_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  PeriodPoly operator+(const PeriodPoly& o) const;
  PeriodPoly operator-(const PeriodPoly& o) const;
  PeriodPoly operator*(const PeriodPoly& o) const;
  PeriodPoly operator-() const;

  /// exponent of |a_e| p^{-t e}
  static NormExponent term_exponent(std::uint32_t p, const BigRational& a, const Rational& e, const LambdaParam& t);
  NormValue lambda(const LambdaParam& t) const;
  /// Drops every term whose lambda_t exponent is at least `floor`.
  PeriodPoly pruned(const LambdaParam& t, const NormExponent& floor) const;

  /// Expansion as sum p^n [x_n] when each power of p carries at most one
  /// monomial digit (true of monomials and of their inverses).
  TeichSum to_teich_sum(const PerfRing& ring) const;

  std::string str() const;

 private:
  std::uint32_t p_;
  Terms terms_;
};

/// p-adic valuation of a nonzero rational.
int padic_valuation(const BigRational& a, std::uint32_t p);

struct DominatedInverse {
  PeriodPoly inverse;
  DominantTerm dominant;
  /// number of geometric-series terms
  std::size_t terms = 0;
  /// lambda_t(y^{-1}(x - y)) = p^{-delta}
  NormExponent delta;
  /// lambda_t(x * inverse - 1), recomputed by multiplication
  NormValue residual = NormValue::zero();
};

/// Inverse of x through its strictly dominant term y:
/// x^{-1} = sum_k (-y^{-1}(x - y))^k y^{-1}, summed until the remaining terms
/// have lambda_t at most p^{-target}/lambda_t(x). Throws Indeterminate on a
/// tie.
DominatedInverse invert_by_domination(const TeichSum& x, const LambdaParam& t, const NormExponent& target);

}  // namespace tateforge
