#pragma once

// Finite free algebras B = Q_p<X>/(g), g monic, with multiplication matrices
// and characteristic polynomials.

#include <memory>
#include <string>
#include <vector>

#include "tateforge/padic.hpp"

namespace tateforge {

enum class Verdict { pass, fail, indeterminate };
std::string to_string(Verdict v);

using Matrix = std::vector<std::vector<PadicElement>>;

class AlgebraElement;

class FiniteFreeAlgebra {
 public:
  /// modulus = c_0, ..., c_{d-1}, 1
  FiniteFreeAlgebra(QpRing base, std::vector<PadicElement> modulus);

  const QpRing& base() const { return data_->base; }
  std::size_t degree() const { return data_->modulus.size() - 1; }
  const std::vector<PadicElement>& modulus() const { return data_->modulus; }

  AlgebraElement element(std::vector<PadicElement> coords) const;
  AlgebraElement from_ints(const std::vector<std::int64_t>& coords) const;
  AlgebraElement one() const;
  /// Class of X.
  AlgebraElement generator() const;

  /// Coordinates of X^{d+k} for k = 0..d-2.
  const std::vector<std::vector<PadicElement>>& reductions() const { return data_->reductions; }

  bool operator==(const FiniteFreeAlgebra& o) const { return data_ == o.data_; }

 private:
  friend class AlgebraElement;
  struct Data {
    QpRing base;
    std::vector<PadicElement> modulus;
    std::vector<std::vector<PadicElement>> reductions;
  };
  std::shared_ptr<const Data> data_;
};

class AlgebraElement {
 public:
  const FiniteFreeAlgebra& algebra() const { return alg_; }
  const std::vector<PadicElement>& coords() const { return coords_; }

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(const AlgebraElement& o) const;
  AlgebraElement scale(const PadicElement& c) const;

  /// Max coordinate norm.
  NormValue norm() const;

  std::string str() const;

 private:
  friend class FiniteFreeAlgebra;
  AlgebraElement(FiniteFreeAlgebra alg, std::vector<PadicElement> coords);

  FiniteFreeAlgebra alg_;
  std::vector<PadicElement> coords_;
};

/// Column j holds the coordinates of t X^j.
Matrix mult_matrix(const AlgebraElement& t);
Matrix matrix_product(const Matrix& a, const Matrix& b);

/// det(T I - M) by Berkowitz's division-free recursion; coefficients c_0..c_{n-1}, 1.
std::vector<PadicElement> charpoly_of_matrix(const Matrix& m);
std::vector<PadicElement> char_poly(const AlgebraElement& t);

/// poly(t) by Horner's rule.
AlgebraElement evaluate(const std::vector<PadicElement>& poly, const AlgebraElement& t);

struct PerturbationReport {
  Verdict verdict = Verdict::indeterminate;
  bool hypothesis_met = false;
  std::string reason;
  std::vector<PadicElement> char_poly;
  /// max coefficient norm of the characteristic polynomial
  NormValue coefficient_bound = NormValue::zero();
  /// |chi(t)| in B
  NormValue cayley_hamilton_residual = NormValue::zero();
};

/// For t with t - x in pR (R the unit ball of B), checks that t is integral
/// over the unit ball of Q_p: chi_t is monic with coefficients of norm <= 1.
PerturbationReport perturb_integrality(const AlgebraElement& x, const AlgebraElement& t);

}  // namespace tateforge
