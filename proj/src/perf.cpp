#include "tateforge/perf.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "tateforge/padic.hpp"

namespace tateforge {

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t f = 2; f * f <= p; ++f) {
    if (p % f == 0) return false;
  }
  return true;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  auto q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

PerfRing::PerfRing(std::uint32_t q, int root_denom, Rational trunc) : p_(q), k_(root_denom) {
  if (!is_prime(q)) {
    throw DomainError("q = " + std::to_string(q) + " is not prime; only q = p is supported");
  }
  if (root_denom < 0 || root_denom > 20) throw DomainError("root_denom out of range");
  den_ = 1;
  for (int i = 0; i < k_; ++i) den_ *= p_;
  if (trunc <= 0) throw DomainError("truncation order must be positive");
  trunc_num_ = tateforge::floor(trunc * den_);
}

std::int64_t PerfRing::to_numerator(const Rational& exponent) const {
  auto scaled = exponent * den_;
  if (scaled.denominator() != 1) {
    throw DomainError("exponent " + to_string(exponent) + " needs a root denominator beyond p^" +
                      std::to_string(k_));
  }
  return scaled.numerator();
}

PerfElement PerfRing::zero() const { return PerfElement(*this, {}, trunc_num_); }
PerfElement PerfRing::one() const { return PerfElement(*this, {{0, 1}}, trunc_num_); }

PerfElement PerfRing::monomial(const Rational& exponent, std::uint32_t coeff) const {
  return PerfElement(*this, {{to_numerator(exponent), coeff % p_}}, trunc_num_);
}

PerfElement PerfRing::from_terms(const std::vector<std::pair<Rational, std::uint32_t>>& terms) const {
  std::map<std::int64_t, std::uint32_t> acc;
  for (const auto& [e, c] : terms) {
    auto& slot = acc[to_numerator(e)];
    slot = (slot + c) % p_;
  }
  std::vector<PerfElement::Term> out(acc.begin(), acc.end());
  return PerfElement(*this, std::move(out), trunc_num_);
}

std::string PerfRing::str() const {
  return "L over F_" + std::to_string(p_) + " (root_denom " + std::to_string(k_) + ", trunc " +
         to_string(trunc()) + ")";
}

// ---------------------------------------------------------------------------

PerfElement::PerfElement(PerfRing ring, std::vector<Term> terms, std::int64_t trunc_num)
    : ring_(ring), terms_(std::move(terms)), trunc_num_(std::min(trunc_num, ring.trunc_numerator())) {
  normalize();
}

void PerfElement::normalize() {
  std::sort(terms_.begin(), terms_.end());
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [e, c] : terms_) {
    if (e >= trunc_num_) break;
    auto cc = c % ring_.prime();
    if (cc == 0) continue;
    if (!out.empty() && out.back().first == e) {
      out.back().second = (out.back().second + cc) % ring_.prime();
      if (out.back().second == 0) out.pop_back();
    } else {
      out.emplace_back(e, cc);
    }
  }
  terms_ = std::move(out);
}

Rational PerfElement::valuation() const {
  if (terms_.empty()) throw PrecisionError("valuation of an element indistinguishable from zero");
  return Rational(terms_.front().first, ring_.denominator());
}

NormValue PerfElement::norm() const {
  if (terms_.empty()) return NormValue::at_most(NormExponent(trunc()));
  return NormValue::exact(NormExponent(valuation()));
}

std::uint32_t PerfElement::coefficient(const Rational& exponent) const {
  auto scaled = exponent * ring_.denominator();
  if (scaled.denominator() != 1) return 0;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{scaled.numerator(), 0});
  if (it != terms_.end() && it->first == scaled.numerator()) return it->second;
  return 0;
}

PerfElement PerfElement::operator-() const {
  auto out = terms_;
  for (auto& t : out) t.second = ring_.prime() - t.second;
  return PerfElement(ring_, std::move(out), trunc_num_);
}

PerfElement PerfElement::operator+(const PerfElement& o) const {
  if (!(ring_ == o.ring_)) throw DomainError("perfectoid operands over different rings");
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  out.insert(out.end(), terms_.begin(), terms_.end());
  out.insert(out.end(), o.terms_.begin(), o.terms_.end());
  return PerfElement(ring_, std::move(out), std::min(trunc_num_, o.trunc_num_));
}

PerfElement PerfElement::operator*(const PerfElement& o) const {
  if (!(ring_ == o.ring_)) throw DomainError("perfectoid operands over different rings");
  auto vx = terms_.empty() ? trunc_num_ : terms_.front().first;
  auto vy = o.terms_.empty() ? o.trunc_num_ : o.terms_.front().first;
  auto trunc = std::min({trunc_num_ + vy, o.trunc_num_ + vx, ring_.trunc_numerator()});
  if (terms_.empty() || o.terms_.empty()) return PerfElement(ring_, {}, trunc);
  std::map<std::int64_t, std::uint64_t> acc;
  for (const auto& [ea, ca] : terms_) {
    if (ea + vy >= trunc) break;
    for (const auto& [eb, cb] : o.terms_) {
      auto e = ea + eb;
      if (e >= trunc) break;
      acc[e] += static_cast<std::uint64_t>(ca) * cb;
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (const auto& [e, c] : acc) out.emplace_back(e, static_cast<std::uint32_t>(c % ring_.prime()));
  return PerfElement(ring_, std::move(out), trunc);
}

PerfElement PerfElement::inverse() const {
  if (terms_.empty()) throw PrecisionError("cannot invert: element is zero modulo z^" + to_string(trunc()));
  auto [a, c] = terms_.front();
  auto cinv = static_cast<std::uint32_t>(inverse_mod(c, ring_.prime()));
  auto scale = [&](std::int64_t shift, const std::vector<Term>& in) {
    std::vector<Term> out;
    out.reserve(in.size());
    for (const auto& [e, cc] : in) {
      out.emplace_back(e + shift, static_cast<std::uint32_t>(static_cast<std::uint64_t>(cc) * cinv % ring_.prime()));
    }
    return out;
  };
  // x = c z^a (1 + w) with |w| < 1; 1 + w is known modulo z^{trunc - a}
  PerfElement y(ring_, scale(-a, terms_), trunc_num_ - a);
  auto rel = y.trunc_num_;
  auto one = ring_.one().with_trunc_numerator(rel);
  auto minus_w = one - y;
  auto sum = one;
  auto term = one;
  while (true) {
    term = term * minus_w;
    if (term.terms_.empty()) break;
    sum = sum + term;
  }
  return PerfElement(ring_, scale(-a, sum.terms_), rel - a);
}

std::optional<PerfElement> PerfElement::unit_inverse() const {
  if (terms_.empty()) return std::nullopt;
  return inverse();
}

PerfElement PerfElement::frobenius() const {
  auto out = terms_;
  for (auto& t : out) t.first *= ring_.prime();
  return PerfElement(ring_, std::move(out), trunc_num_ * ring_.prime());
}

PerfElement PerfElement::root() const {
  auto out = terms_;
  for (auto& t : out) {
    if (t.first % static_cast<std::int64_t>(ring_.prime()) != 0) {
      throw DomainError("p-th root needs exponent denominators beyond p^" + std::to_string(ring_.root_denom()));
    }
    t.first /= ring_.prime();
  }
  return PerfElement(ring_, std::move(out), floor_div(trunc_num_, ring_.prime()));
}

PerfElement PerfElement::pow(std::uint64_t e) const {
  auto result = ring_.one();
  auto base = *this;
  // base-p digits: x^(d p^j) = (x^{p^j})^d, and x^{p^j} is a cheap Frobenius
  while (e > 0) {
    auto digit = e % ring_.prime();
    for (std::uint64_t i = 0; i < digit; ++i) result = result * base;
    e /= ring_.prime();
    if (e > 0) base = base.frobenius();
  }
  return result;
}

PerfElement PerfElement::with_trunc_numerator(std::int64_t t) const {
  if (t >= trunc_num_) return *this;
  return PerfElement(ring_, terms_, t);
}

PerfElement PerfElement::blurred(const NormExponent& e) const {
  auto r = e.as_rational() * ring_.denominator();
  return with_trunc_numerator(tateforge::floor(r));
}

bool PerfElement::agrees_with(const PerfElement& o) const {
  auto d = *this - o;
  return d.terms_.empty();
}

std::string PerfElement::str() const {
  if (terms_.empty()) return "O(z^" + to_string(trunc()) + ")";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    Rational ex(e, ring_.denominator());
    if (c != 1 || ex == 0) os << c;
    if (ex != 0) {
      if (c != 1) os << "*";
      os << "z";
      if (ex != 1) os << "^" << (ex.denominator() == 1 ? to_string(ex) : "(" + to_string(ex) + ")");
    }
  }
  if (trunc_num_ < ring_.trunc_numerator()) os << " + O(z^" << to_string(trunc()) << ")";
  return os.str();
}

}  // namespace tateforge
