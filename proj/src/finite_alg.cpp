#include "tateforge/finite_alg.hpp"

#include <sstream>

namespace tateforge {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "PASS";
    case Verdict::fail:
      return "FAIL";
    case Verdict::indeterminate:
      return "INDETERMINATE";
  }
  return "?";
}

FiniteFreeAlgebra::FiniteFreeAlgebra(QpRing base, std::vector<PadicElement> modulus) {
  if (modulus.size() < 2) throw DomainError("modulus must have degree at least 1");
  for (const auto& c : modulus) {
    if (!(c.ring() == base)) throw DomainError("modulus coefficients over a different ring");
  }
  if (!modulus.back().agrees_mod(base.one(), base.cap())) throw DomainError("modulus must be monic");
  auto d = modulus.size() - 1;
  std::vector<std::vector<PadicElement>> red;
  // X^d = -(c_0 + ... + c_{d-1} X^{d-1})
  std::vector<PadicElement> cur;
  for (std::size_t i = 0; i < d; ++i) cur.push_back(-modulus[i]);
  for (std::size_t k = 0; k + 1 < d; ++k) {
    red.push_back(cur);
    // multiply by X: shift up, fold the overflow coefficient back in
    auto top = cur[d - 1];
    std::vector<PadicElement> next{base.zero()};
    for (std::size_t i = 0; i + 1 < d; ++i) next.push_back(cur[i]);
    for (std::size_t i = 0; i < d; ++i) next[i] = next[i] - top * modulus[i];
    cur = std::move(next);
  }
  data_ = std::make_shared<const Data>(Data{base, std::move(modulus), std::move(red)});
}

AlgebraElement FiniteFreeAlgebra::element(std::vector<PadicElement> coords) const {
  if (coords.size() != degree()) throw DomainError("coordinate vector has the wrong length");
  return AlgebraElement(*this, std::move(coords));
}

AlgebraElement FiniteFreeAlgebra::from_ints(const std::vector<std::int64_t>& coords) const {
  std::vector<PadicElement> cs;
  for (auto c : coords) cs.push_back(base().from_int(c));
  cs.resize(degree(), base().zero());
  return element(std::move(cs));
}

AlgebraElement FiniteFreeAlgebra::one() const { return from_ints({1}); }

AlgebraElement FiniteFreeAlgebra::generator() const {
  if (degree() == 1) return element({-modulus()[0]});
  return from_ints({0, 1});
}

AlgebraElement::AlgebraElement(FiniteFreeAlgebra alg, std::vector<PadicElement> coords)
    : alg_(std::move(alg)), coords_(std::move(coords)) {}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  if (!(alg_ == o.alg_)) throw DomainError("elements of different algebras");
  auto out = coords_;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] + o.coords_[i];
  return AlgebraElement(alg_, std::move(out));
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  if (!(alg_ == o.alg_)) throw DomainError("elements of different algebras");
  auto out = coords_;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] - o.coords_[i];
  return AlgebraElement(alg_, std::move(out));
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
  if (!(alg_ == o.alg_)) throw DomainError("elements of different algebras");
  auto d = coords_.size();
  const auto& base = alg_.base();
  std::vector<PadicElement> full(2 * d - 1, base.zero());
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) full[i + j] = full[i + j] + coords_[i] * o.coords_[j];
  }
  std::vector<PadicElement> out(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(d));
  const auto& red = alg_.reductions();
  for (std::size_t k = 0; k + 1 < d; ++k) {
    for (std::size_t i = 0; i < d; ++i) out[i] = out[i] + full[d + k] * red[k][i];
  }
  return AlgebraElement(alg_, std::move(out));
}

AlgebraElement AlgebraElement::scale(const PadicElement& c) const {
  auto out = coords_;
  for (auto& x : out) x = x * c;
  return AlgebraElement(alg_, std::move(out));
}

NormValue AlgebraElement::norm() const {
  NormValue n = NormValue::zero();
  for (const auto& c : coords_) n = join(n, c.norm());
  return n;
}

std::string AlgebraElement::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? ", " : "") << coords_[i].str();
  os << "]";
  return os.str();
}

Matrix mult_matrix(const AlgebraElement& t) {
  const auto& alg = t.algebra();
  auto d = alg.degree();
  Matrix m(d, std::vector<PadicElement>(d, alg.base().zero()));
  auto col = t;
  auto X = alg.generator();
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) m[i][j] = col.coords()[i];
    col = col * X;
  }
  return m;
}

Matrix matrix_product(const Matrix& a, const Matrix& b) {
  auto n = a.size();
  const auto& base = a[0][0].ring();
  Matrix out(n, std::vector<PadicElement>(n, base.zero()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) out[i][j] = out[i][j] + a[i][k] * b[k][j];
    }
  }
  return out;
}

namespace {

// Highest degree first: 1, c_{n-1}, ..., c_0.
std::vector<PadicElement> berkowitz_vector(const Matrix& m, const QpRing& base) {
  auto n = m.size();
  if (n == 0) return {base.one()};
  if (n == 1) return {base.one(), -m[0][0]};
  // M = [[a, R], [C, A]]
  Matrix A(n - 1, std::vector<PadicElement>(n - 1, base.zero()));
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 1; j < n; ++j) A[i - 1][j - 1] = m[i][j];
  }
  std::vector<PadicElement> diags{base.one(), -m[0][0]};
  std::vector<PadicElement> v;  // A^k C
  for (std::size_t i = 1; i < n; ++i) v.push_back(m[i][0]);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    auto rv = base.zero();
    for (std::size_t j = 0; j + 1 < n; ++j) rv = rv + m[0][j + 1] * v[j];
    diags.push_back(-rv);
    std::vector<PadicElement> next(n - 1, base.zero());
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = 0; j + 1 < n; ++j) next[i] = next[i] + A[i][j] * v[j];
    }
    v = std::move(next);
  }
  auto sub = berkowitz_vector(A, base);
  // Toeplitz (n+1) x n lower-triangular matrix with entries diags[i - j]
  std::vector<PadicElement> out(n + 1, base.zero());
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j < n && j <= i; ++j) out[i] = out[i] + diags[i - j] * sub[j];
  }
  return out;
}

}  // namespace

std::vector<PadicElement> charpoly_of_matrix(const Matrix& m) {
  if (m.empty()) throw DomainError("empty matrix");
  auto v = berkowitz_vector(m, m[0][0].ring());
  return std::vector<PadicElement>(v.rbegin(), v.rend());
}

std::vector<PadicElement> char_poly(const AlgebraElement& t) { return charpoly_of_matrix(mult_matrix(t)); }

AlgebraElement evaluate(const std::vector<PadicElement>& poly, const AlgebraElement& t) {
  const auto& alg = t.algebra();
  auto acc = alg.one().scale(alg.base().zero());
  for (std::size_t i = poly.size(); i-- > 0;) acc = acc * t + alg.one().scale(poly[i]);
  return acc;
}

PerturbationReport perturb_integrality(const AlgebraElement& x, const AlgebraElement& t) {
  PerturbationReport rep;
  const auto& alg = t.algebra();
  const auto one = NormValue::one();
  for (const auto& c : alg.modulus()) {
    if (!certainly(less_equal(c.norm(), one))) {
      throw DomainError("modulus coefficients must lie in the unit ball");
    }
  }
  for (const auto& c : (x - alg.generator()).coords()) {
    if (c.is_certainly_nonzero()) throw DomainError("x must be the class of X");
  }
  auto small = less_equal((t - x).norm(), NormValue::exact(1));
  if (!certainly(small)) {
    rep.hypothesis_met = false;
    rep.reason = certainly_not(small) ? "hypothesis not met: t - x is not in pR"
                                      : "hypothesis undecided: |t - x| straddles 1/p";
    return rep;
  }
  rep.hypothesis_met = true;
  rep.char_poly = char_poly(t);
  NormValue bound = NormValue::zero();
  for (const auto& c : rep.char_poly) bound = join(bound, c.norm());
  rep.coefficient_bound = bound;
  rep.cayley_hamilton_residual = evaluate(rep.char_poly, t).norm();
  const auto N = NormValue::exact(alg.base().working_precision());
  bool monic = rep.char_poly.back().agrees_mod(alg.base().one(), alg.base().cap());
  auto integral = less_equal(bound, one);
  bool ch = certainly(less_equal(rep.cayley_hamilton_residual, N));
  if (monic && certainly(integral) && ch) {
    rep.verdict = Verdict::pass;
    rep.reason = "characteristic polynomial is monic with coefficients in the unit ball";
  } else if (!monic || certainly_not(integral) || !ch) {
    rep.verdict = Verdict::fail;
    rep.reason = !monic ? "characteristic polynomial is not monic"
                 : !ch  ? "Cayley-Hamilton residual above p^-N"
                        : "a characteristic polynomial coefficient has norm > 1";
  } else {
    rep.verdict = Verdict::indeterminate;
    rep.reason = "coefficient norms straddle 1";
  }
  return rep;
}

}  // namespace tateforge
