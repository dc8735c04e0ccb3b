#pragma once

// Witt vectors of finite length over truncated elements of L, Teichmüller
// expansions sum p^n [x_n], and the norms lambda_t, lambda_I.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tateforge/perf.hpp"

namespace tateforge {

inline constexpr std::size_t kWittLengthCeiling = 4;

/// Integer polynomial in X_0..X_{n-1}, Y_0..Y_{n-1}; a monomial is its exponent
/// vector with the X exponents first.
struct WittPolynomial {
  using Monomial = std::vector<unsigned>;
  std::map<Monomial, boost::multiprecision::cpp_int> terms;

  bool operator==(const WittPolynomial&) const = default;
  std::string str() const;
};

struct WittStructure {
  std::uint32_t p = 0;
  std::size_t length = 0;
  std::vector<WittPolynomial> sum;
  std::vector<WittPolynomial> product;
};

/// S_i and P_i for i < n, from the ghost identities w_k(S) = w_k(X) + w_k(Y)
/// and w_k(P) = w_k(X) w_k(Y). Computed once per (p, n) and cached.
const WittStructure& witt_structure_polys(std::uint32_t p, std::size_t n,
                                          std::size_t ceiling = kWittLengthCeiling);

class WittVector {
 public:
  explicit WittVector(std::vector<PerfElement> components);
  static WittVector zero(const PerfRing& ring, std::size_t n);
  static WittVector one(const PerfRing& ring, std::size_t n);

  const PerfRing& ring() const { return components_.front().ring(); }
  std::size_t length() const { return components_.size(); }
  const std::vector<PerfElement>& components() const { return components_; }

  WittVector operator+(const WittVector& o) const;
  WittVector operator*(const WittVector& o) const;
  WittVector operator-() const;
  WittVector operator-(const WittVector& o) const { return *this + (-o); }

  /// Componentwise agreement modulo the component truncations.
  bool operator==(const WittVector& o) const;

  std::string str() const;

 private:
  std::vector<PerfElement> components_;
};

enum class WittOp { add, mul };
WittVector witt_arith(WittOp op, const WittVector& x, const WittVector& y);

/// Structure polynomials evaluated directly, reduced mod p.
std::vector<PerfElement> evaluate_structure(const std::vector<WittPolynomial>& polys, const WittVector& x,
                                            const WittVector& y);

/// [x] = (x, 0, ..., 0).
WittVector teichmuller(const PerfElement& x, std::size_t n);

/// sum over terms of p^n [x_n] with distinct n. Negative n and exponents are
/// allowed (elements of L rather than its unit ball); such sums have no Witt form.
class TeichSum {
 public:
  using Term = std::pair<int, PerfElement>;

  TeichSum(PerfRing ring, std::vector<Term> terms);

  const PerfRing& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// x_i = a_i^{1/p^i}.
  static TeichSum from_witt(const WittVector& w);
  /// a_i = x_i^{p^i}; terms with n >= length are dropped.
  WittVector to_witt(std::size_t length) const;

  std::string str() const;

 private:
  PerfRing ring_;
  std::vector<Term> terms_;
};

/// A positive real scale t, rational or quadratic irrational.
class LambdaParam {
 public:
  explicit LambdaParam(QuadraticNumber t);
  const QuadraticNumber& value() const { return t_; }
  std::string str() const { return t_.str(); }

 private:
  QuadraticNumber t_;
};

struct LambdaInterval {
  LambdaParam s;
  LambdaParam r;
  LambdaInterval(LambdaParam s, LambdaParam r);
};

/// p^{-n} |x|^t, at_most when x is an imprecise zero.
NormValue term_norm(int n, const PerfElement& x, const LambdaParam& t);

/// max p^{-n} |x_n|^t as a bound; never throws on imprecision.
NormValue lambda_bound(const TeichSum& x, const LambdaParam& t);
/// Exact lambda_t; Indeterminate when an imprecise term could be the largest.
NormValue lambda_norm(const TeichSum& x, const LambdaParam& t);
NormValue lambda_interval(const TeichSum& x, const LambdaInterval& I);

/// r lies in Sigma_L iff r = -m / log_p |x| for rational m > 0, x in L^x. The
/// value group of L is p^Q, so this is rationality of r.
bool sigma_membership(const LambdaParam& r);

struct DominantTerm {
  bool tie = false;
  /// n of the strictly largest term, or of the first tied term
  int n = 0;
  /// n of the second tied term
  int tied_with = 0;
  /// exponent of the largest term norm p^{-e}
  NormExponent exponent;
  /// term exponents in term order
  std::vector<NormExponent> term_exponents;
};

DominantTerm dominant_term(const TeichSum& x, const LambdaParam& t);

}  // namespace tateforge
