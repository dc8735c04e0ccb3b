#include "tateforge/norm.hpp"

#include <charconv>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace tateforge {

namespace {

using BigRational = boost::multiprecision::cpp_rational;

BigRational big(const Rational& r) { return BigRational(r.numerator()) / r.denominator(); }

int sign_of(const BigRational& r) { return r.sign(); }

std::int64_t parse_int(std::string_view text) {
  std::int64_t v = 0;
  auto begin = text.data();
  auto end = text.data() + text.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || begin == end) {
    throw ParseError("not an integer: '" + std::string(text) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  auto num = parse_int(trim(text.substr(0, slash)));
  auto den = parse_int(trim(text.substr(slash + 1)));
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::int64_t floor(const Rational& r) {
  auto q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

std::int64_t ceil(const Rational& r) { return -floor(-r); }

// ---------------------------------------------------------------------------

QuadraticNumber::QuadraticNumber(Rational a, Rational b, std::int64_t d) : a_(a), b_(b), d_(d) {
  if (d <= 0) throw DomainError("radicand must be positive");
  // pull square factors out of d
  std::int64_t square_root_part = 1;
  for (std::int64_t f = 2; f * f <= d_; ++f) {
    while (d_ % (f * f) == 0) {
      d_ /= f * f;
      square_root_part *= f;
    }
  }
  b_ *= square_root_part;
  if (d_ == 1 || b_ == 0) {
    a_ += (d_ == 1) ? b_ : Rational(0);
    b_ = 0;
    d_ = 1;
  }
}

int QuadraticNumber::sign() const {
  int sa = a_ == 0 ? 0 : (a_ > 0 ? 1 : -1);
  int sb = b_ == 0 ? 0 : (b_ > 0 ? 1 : -1);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare a^2 with b^2 d
  BigRational lhs = big(a_) * big(a_);
  BigRational rhs = big(b_) * big(b_) * d_;
  int cmp = sign_of(lhs - rhs);
  return cmp == 0 ? 0 : (cmp > 0 ? sa : sb);  // cmp == 0 impossible for squarefree d > 1
}

bool QuadraticNumber::compatible_with(const QuadraticNumber& o) const {
  return is_rational() || o.is_rational() || d_ == o.d_;
}

std::int64_t QuadraticNumber::common_radicand(const QuadraticNumber& o) const {
  if (!compatible_with(o)) {
    throw IncompatibleScale("exponents over sqrt(" + std::to_string(d_) + ") and sqrt(" +
                            std::to_string(o.d_) + ") cannot be combined");
  }
  return is_rational() ? o.d_ : d_;
}

QuadraticNumber QuadraticNumber::operator-() const { return QuadraticNumber(-a_, -b_, d_); }

QuadraticNumber QuadraticNumber::operator+(const QuadraticNumber& o) const {
  auto d = common_radicand(o);
  return QuadraticNumber(a_ + o.a_, b_ + o.b_, d);
}

QuadraticNumber QuadraticNumber::operator-(const QuadraticNumber& o) const { return *this + (-o); }

QuadraticNumber QuadraticNumber::operator*(const QuadraticNumber& o) const {
  auto d = common_radicand(o);
  return QuadraticNumber(a_ * o.a_ + b_ * o.b_ * d, a_ * o.b_ + b_ * o.a_, d);
}

std::strong_ordering QuadraticNumber::operator<=>(const QuadraticNumber& o) const {
  int s = (*this - o).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string QuadraticNumber::str() const {
  if (is_rational()) return to_string(a_);
  std::ostringstream os;
  if (a_ != 0) os << to_string(a_) << (b_ > 0 ? "+" : "");
  if (b_ == -1) {
    os << "-";
  } else if (b_ != 1) {
    os << to_string(b_) << "*";
  }
  os << "sqrt(" << d_ << ")";
  return os.str();
}

// ---------------------------------------------------------------------------

NormExponent NormExponent::scaled(const Rational& a, const Rational& b, const QuadraticNumber& tau) {
  return NormExponent(QuadraticNumber(a) + QuadraticNumber(b) * tau);
}

const Rational& NormExponent::as_rational() const {
  if (!is_rational()) throw DomainError("exponent " + str() + " is irrational");
  return value_.rational_part();
}

std::strong_ordering exponent_compare(const NormExponent& e1, const NormExponent& e2) {
  return e1 <=> e2;
}

std::string to_string(Certainty c) {
  switch (c) {
    case Certainty::yes:
      return "yes";
    case Certainty::no:
      return "no";
    case Certainty::unknown:
      return "unknown";
  }
  return "?";
}

// ---------------------------------------------------------------------------

const NormExponent& NormValue::exponent() const {
  if (kind_ == Kind::exact_zero) throw DomainError("exact zero has no exponent");
  return exponent_;
}

NormValue NormValue::weakened() const {
  if (kind_ == Kind::exact) return at_most(exponent_);
  return *this;
}

NormValue NormValue::operator*(const NormValue& o) const {
  if (is_zero() || o.is_zero()) return zero();
  auto e = exponent_ + o.exponent_;
  if (is_exact() && o.is_exact()) return exact(e);
  return at_most(e);
}

NormValue NormValue::pow(const QuadraticNumber& t) const {
  if (t.sign() <= 0) throw DomainError("norm powers need a positive exponent");
  if (is_zero()) return zero();
  NormExponent e(exponent_.value() * t);
  return is_exact() ? exact(e) : at_most(e);
}

std::string NormValue::str() const {
  switch (kind_) {
    case Kind::exact_zero:
      return "0";
    case Kind::exact:
      return "p^-(" + exponent_.str() + ")";
    case Kind::at_most:
      return "<=p^-(" + exponent_.str() + ")";
  }
  return "?";
}

NormValue join(const NormValue& x, const NormValue& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  // smaller exponent means larger norm
  const auto& ex = x.exponent();
  const auto& ey = y.exponent();
  if (x.is_exact() && y.is_exact()) return ex <= ey ? x : y;
  if (x.is_exact() && y.is_at_most()) return ex < ey ? x : NormValue::at_most(ey);
  if (x.is_at_most() && y.is_exact()) return ey < ex ? y : NormValue::at_most(ex);
  return NormValue::at_most(ex <= ey ? ex : ey);
}

Certainty less(const NormValue& x, const NormValue& y) {
  using K = NormValue::Kind;
  switch (x.kind()) {
    case K::exact_zero:
      if (y.is_zero()) return Certainty::no;
      return y.is_exact() ? Certainty::yes : Certainty::unknown;
    case K::exact:
      if (y.is_zero()) return Certainty::no;
      if (y.is_exact()) return x.exponent() > y.exponent() ? Certainty::yes : Certainty::no;
      return x.exponent() <= y.exponent() ? Certainty::no : Certainty::unknown;
    case K::at_most:
      if (y.is_zero()) return Certainty::no;
      if (y.is_exact()) return x.exponent() > y.exponent() ? Certainty::yes : Certainty::unknown;
      return Certainty::unknown;
  }
  return Certainty::unknown;
}

Certainty less_equal(const NormValue& x, const NormValue& y) {
  using K = NormValue::Kind;
  switch (x.kind()) {
    case K::exact_zero:
      return Certainty::yes;
    case K::exact:
      if (y.is_zero()) return Certainty::no;
      if (y.is_exact()) return x.exponent() >= y.exponent() ? Certainty::yes : Certainty::no;
      return x.exponent() < y.exponent() ? Certainty::no : Certainty::unknown;
    case K::at_most:
      if (y.is_zero()) return Certainty::unknown;
      if (y.is_exact()) return x.exponent() >= y.exponent() ? Certainty::yes : Certainty::unknown;
      return Certainty::unknown;
  }
  return Certainty::unknown;
}

Certainty equal(const NormValue& x, const NormValue& y) {
  if (x.is_zero() && y.is_zero()) return Certainty::yes;
  if (x.is_exact() && y.is_exact()) return x.exponent() == y.exponent() ? Certainty::yes : Certainty::no;
  if ((x.is_zero() && y.is_exact()) || (x.is_exact() && y.is_zero())) return Certainty::no;
  auto lt = less(x, y);
  auto gt = less(y, x);
  if (lt == Certainty::yes || gt == Certainty::yes) return Certainty::no;
  return Certainty::unknown;
}

}  // namespace tateforge
