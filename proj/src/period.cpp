#include "tateforge/period.hpp"

#include <sstream>

namespace tateforge {

using boost::multiprecision::cpp_int;

int padic_valuation(const BigRational& a, std::uint32_t p) {
  if (a == 0) throw DomainError("valuation of zero");
  int v = 0;
  cpp_int num = boost::multiprecision::numerator(a);
  cpp_int den = boost::multiprecision::denominator(a);
  while (num % p == 0) {
    num /= p;
    ++v;
  }
  while (den % p == 0) {
    den /= p;
    --v;
  }
  return v;
}

PeriodPoly::PeriodPoly(std::uint32_t p, Terms terms) : p_(p), terms_(std::move(terms)) {
  std::erase_if(terms_, [](const auto& kv) { return kv.second == 0; });
}

PeriodPoly PeriodPoly::one(std::uint32_t p) { return monomial(p, 1, Rational(0)); }

PeriodPoly PeriodPoly::monomial(std::uint32_t p, const BigRational& coeff, const Rational& e) {
  return PeriodPoly(p, Terms{{e, coeff}});
}

PeriodPoly PeriodPoly::from_teich_sum(const TeichSum& x) {
  const auto p = x.ring().prime();
  Terms terms;
  for (const auto& [n, digit] : x.terms()) {
    if (!digit.is_certainly_nonzero()) continue;
    if (!digit.is_monomial()) throw DomainError("digit " + digit.str() + " is not a monomial");
    auto [num, c] = digit.terms().front();
    BigRational sign;
    if (c == 1) {
      sign = 1;
    } else if (c == p - 1) {
      sign = -1;
    } else {
      throw DomainError("digit coefficient " + std::to_string(c) + " has an irrational Teichmüller lift");
    }
    BigRational pn = 1;
    for (int i = 0; i < std::abs(n); ++i) pn *= p;
    if (n < 0) pn = 1 / pn;
    terms[Rational(num, x.ring().denominator())] += sign * pn;
  }
  return PeriodPoly(p, std::move(terms));
}

PeriodPoly PeriodPoly::operator+(const PeriodPoly& o) const {
  auto out = terms_;
  for (const auto& [e, a] : o.terms_) out[e] += a;
  return PeriodPoly(p_, std::move(out));
}

PeriodPoly PeriodPoly::operator-() const {
  auto out = terms_;
  for (auto& [e, a] : out) a = -a;
  return PeriodPoly(p_, std::move(out));
}

PeriodPoly PeriodPoly::operator-(const PeriodPoly& o) const { return *this + (-o); }

PeriodPoly PeriodPoly::operator*(const PeriodPoly& o) const {
  if (p_ != o.p_) throw DomainError("period polynomials over different primes");
  Terms out;
  for (const auto& [ea, a] : terms_) {
    for (const auto& [eb, b] : o.terms_) out[ea + eb] += a * b;
  }
  return PeriodPoly(p_, std::move(out));
}

NormExponent PeriodPoly::term_exponent(std::uint32_t p, const BigRational& a, const Rational& e,
                                       const LambdaParam& t) {
  return NormExponent::scaled(Rational(padic_valuation(a, p)), e, t.value());
}

NormValue PeriodPoly::lambda(const LambdaParam& t) const {
  auto out = NormValue::zero();
  for (const auto& [e, a] : terms_) out = join(out, NormValue::exact(term_exponent(p_, a, e, t)));
  return out;
}

PeriodPoly PeriodPoly::pruned(const LambdaParam& t, const NormExponent& floor) const {
  Terms out;
  for (const auto& [e, a] : terms_) {
    if (term_exponent(p_, a, e, t) < floor) out.emplace(e, a);
  }
  return PeriodPoly(p_, std::move(out));
}

TeichSum PeriodPoly::to_teich_sum(const PerfRing& ring) const {
  if (ring.prime() != p_) throw DomainError("coefficient ring has the wrong characteristic");
  std::vector<TeichSum::Term> out;
  for (const auto& [e, a] : terms_) {
    int v = padic_valuation(a, p_);
    BigRational unit = a;
    for (int i = 0; i < std::abs(v); ++i) unit = v > 0 ? BigRational(unit / p_) : BigRational(unit * p_);
    std::uint32_t c = 0;
    if (unit == 1) {
      c = 1;
    } else if (unit == -1 && p_ != 2) {
      c = p_ - 1;
    } else {
      throw DomainError("coefficient of [z]^" + to_string(e) + " is not a single Teichmüller digit");
    }
    out.emplace_back(v, ring.monomial(e, c));
  }
  return TeichSum(ring, std::move(out));
}

std::string PeriodPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, a] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << a << ")";
    if (e != 0) os << "[z]^" << to_string(e);
  }
  return os.str();
}

DominatedInverse invert_by_domination(const TeichSum& x, const LambdaParam& t, const NormExponent& target) {
  auto dom = dominant_term(x, t);
  if (dom.tie) {
    throw Indeterminate("terms at p^" + std::to_string(dom.n) + " and p^" + std::to_string(dom.tied_with) +
                        " have equal lambda_t norms");
  }
  const auto p = x.ring().prime();
  auto X = PeriodPoly::from_teich_sum(x);
  std::vector<TeichSum::Term> lead;
  for (const auto& term : x.terms()) {
    if (term.first == dom.n) lead.push_back(term);
  }
  auto Y = PeriodPoly::from_teich_sum(TeichSum(x.ring(), lead));
  const auto& [ey, ay] = *Y.terms().begin();
  auto y_inv = PeriodPoly::monomial(p, 1 / ay, -ey);

  DominatedInverse out{y_inv, dom, 1, NormExponent(0), NormValue::zero()};
  auto u = y_inv * (X - Y);
  if (!u.is_zero()) {
    out.delta = u.lambda(t).exponent();
    // a change d in the inverse moves the residual by x d, of norm lambda(x) lambda(d)
    auto floor = target - dom.exponent;
    auto minus_u = -u;
    auto power = y_inv;
    auto sum = y_inv;
    while (true) {
      power = (power * minus_u).pruned(t, floor);
      if (power.is_zero()) break;
      sum = sum + power;
      ++out.terms;
    }
    out.inverse = sum;
  }
  out.residual = (X * out.inverse - PeriodPoly::one(p)).lambda(t);
  if (!certainly(less_equal(out.residual, NormValue::exact(target)))) {
    throw PrecisionError("residual " + out.residual.str() + " misses the target p^-" + target.str());
  }
  return out;
}

}  // namespace tateforge
