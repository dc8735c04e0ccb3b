#include "tateforge/padic.hpp"

#include <algorithm>
#include <limits>

namespace tateforge {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t f = 2; f * f <= p; ++f) {
    if (p % f == 0) return false;
  }
  return true;
}

int valuation_of(std::uint64_t m, std::uint32_t p) {
  int v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

}  // namespace

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  i128 old_r = a % m, r = m;
  i128 old_s = 1, s = 0;
  while (r != 0) {
    i128 q = old_r / r;
    i128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw DomainError("element is not invertible modulo " + std::to_string(m));
  i128 res = old_s % static_cast<i128>(m);
  if (res < 0) res += m;
  return static_cast<std::uint64_t>(res);
}

// ---------------------------------------------------------------------------

QpRing::QpRing(std::uint32_t p, int cap) : p_(p), cap_(cap) {
  if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  if (cap < 1) throw DomainError("precision cap must be positive");
  std::uint64_t pk = 1;
  max_total_ = 0;
  while (pk <= kLimit / p) {
    pk *= p;
    ++max_total_;
  }
  if (cap_ + 2 > max_total_) {
    throw DomainError("p^cap does not fit the 64-bit mantissa: p = " + std::to_string(p) +
                      ", cap = " + std::to_string(cap));
  }
}

std::uint64_t QpRing::power(int k) const {
  if (k < 0 || k > max_total_) {
    throw PrecisionError("p-power p^" + std::to_string(k) + " exceeds the representable range");
  }
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r *= p_;
  return r;
}

PadicElement QpRing::zero() const { return PadicElement(*this, 0, 0, cap_); }
PadicElement QpRing::one() const { return PadicElement(*this, 1, 0, cap_); }

PadicElement QpRing::from_int(std::int64_t n) const {
  auto m = static_cast<i128>(power(cap_));
  i128 r = static_cast<i128>(n) % m;
  if (r < 0) r += m;
  return PadicElement(*this, static_cast<std::uint64_t>(r), 0, cap_);
}

PadicElement QpRing::from_rational(std::int64_t num, std::int64_t den) const {
  if (den == 0) throw DomainError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  int k = 0;
  while (den % p_ == 0) {
    den /= p_;
    ++k;
  }
  if (k > max_shift()) throw PrecisionError("denominator power exceeds the representable range");
  auto modulus = power(cap_ + k);
  auto m = static_cast<i128>(modulus);
  i128 r = static_cast<i128>(num) % m;
  if (r < 0) r += m;
  auto dinv = inverse_mod(static_cast<std::uint64_t>(den) % modulus, modulus);
  auto mant = static_cast<std::uint64_t>(static_cast<u128>(r) * dinv % modulus);
  return PadicElement(*this, mant, k, cap_);
}

PadicElement QpRing::make(std::uint64_t mantissa, int shift, int prec) const {
  return PadicElement(*this, mantissa, shift, prec);
}

std::string QpRing::str() const { return "Q_" + std::to_string(p_) + " (cap " + std::to_string(cap_) + ")"; }

// ---------------------------------------------------------------------------

PadicElement::PadicElement(QpRing ring, std::uint64_t mantissa, int shift, int prec)
    : ring_(ring), mantissa_(mantissa), shift_(shift), prec_(std::min(prec, ring.cap())) {
  if (shift_ < 0) throw DomainError("negative denominator shift");
  normalize();
}

void PadicElement::normalize() {
  int k = prec_ + shift_;
  if (k <= 0) {
    // nothing is known below p^prec: the element is indistinguishable from zero
    mantissa_ = 0;
    shift_ = 0;
    return;
  }
  auto modulus = ring_.power(k);
  mantissa_ %= modulus;
  if (mantissa_ == 0) {
    shift_ = 0;
    return;
  }
  while (shift_ > 0 && mantissa_ % ring_.prime() == 0) {
    mantissa_ /= ring_.prime();
    --shift_;
  }
}

int PadicElement::valuation() const {
  if (mantissa_ == 0) throw PrecisionError("valuation of an element indistinguishable from zero");
  return valuation_of(mantissa_, ring_.prime()) - shift_;
}

NormValue PadicElement::norm() const {
  if (mantissa_ == 0) return NormValue::at_most(NormExponent(prec_));
  return NormValue::exact(NormExponent(valuation()));
}

PadicElement PadicElement::operator-() const {
  if (mantissa_ == 0) return *this;
  auto modulus = ring_.power(prec_ + shift_);
  return PadicElement(ring_, modulus - mantissa_, shift_, prec_);
}

PadicElement PadicElement::operator+(const PadicElement& o) const {
  if (!(ring_ == o.ring_)) throw DomainError("p-adic operands over different rings");
  int s = std::max(shift_, o.shift_);
  int prec = std::min(prec_, o.prec_);
  int k = prec + s;
  if (k <= 0) return PadicElement(ring_, 0, 0, prec);
  auto modulus = ring_.power(k);
  u128 a = static_cast<u128>(mantissa_) * ring_.power(s - shift_) % modulus;
  u128 b = static_cast<u128>(o.mantissa_) * ring_.power(s - o.shift_) % modulus;
  return PadicElement(ring_, static_cast<std::uint64_t>((a + b) % modulus), s, prec);
}

PadicElement PadicElement::operator*(const PadicElement& o) const {
  if (!(ring_ == o.ring_)) throw DomainError("p-adic operands over different rings");
  int vx = mantissa_ != 0 ? valuation() : prec_;
  int vy = o.mantissa_ != 0 ? o.valuation() : o.prec_;
  int prec = std::min({prec_ + vy, o.prec_ + vx, ring_.cap()});
  int s = shift_ + o.shift_;
  int k = prec + s;
  if (k <= 0 || mantissa_ == 0 || o.mantissa_ == 0) return PadicElement(ring_, 0, 0, prec);
  auto modulus = ring_.power(k);
  u128 m = static_cast<u128>(mantissa_) * o.mantissa_ % modulus;
  return PadicElement(ring_, static_cast<std::uint64_t>(m), s, prec);
}

PadicElement PadicElement::inverse() const {
  if (mantissa_ == 0) {
    throw PrecisionError("cannot invert: element is zero modulo p^" + std::to_string(prec_));
  }
  int v = valuation();
  int mv = valuation_of(mantissa_, ring_.prime());
  std::uint64_t unit = mantissa_ / ring_.power(mv);
  int relative = prec_ - v;
  auto rel_mod = ring_.power(relative);
  std::uint64_t w = inverse_mod(unit % rel_mod, rel_mod);
  int new_prec = std::min(prec_ - 2 * v, ring_.cap());
  if (v > 0) return PadicElement(ring_, w, v, new_prec);
  auto modulus = ring_.power(new_prec);
  u128 m = static_cast<u128>(w) * ring_.power(-v) % modulus;
  return PadicElement(ring_, static_cast<std::uint64_t>(m), 0, new_prec);
}

std::optional<PadicElement> PadicElement::unit_inverse() const {
  if (mantissa_ == 0) return std::nullopt;
  return inverse();
}

PadicElement PadicElement::with_precision(int prec) const {
  if (prec >= prec_) return *this;
  return PadicElement(ring_, mantissa_, shift_, prec);
}

PadicElement PadicElement::blurred(const NormExponent& e) const {
  auto r = e.as_rational();
  auto f = tateforge::floor(r);
  if (f >= prec_) return *this;
  return with_precision(static_cast<int>(f));
}

bool PadicElement::agrees_mod(const PadicElement& o, int k) const {
  auto d = *this - o;
  return d.mantissa_ == 0 && d.prec_ >= k;
}

std::int64_t PadicElement::balanced_mantissa() const {
  int k = prec_ + shift_;
  if (k <= 0 || mantissa_ == 0) return 0;
  auto modulus = ring_.power(k);
  if (mantissa_ > modulus / 2) return -static_cast<std::int64_t>(modulus - mantissa_);
  return static_cast<std::int64_t>(mantissa_);
}

std::string PadicElement::str() const {
  std::string out = std::to_string(balanced_mantissa());
  if (shift_ > 0) out += "/" + std::to_string(ring_.power(shift_));
  if (prec_ < ring_.cap()) out += " + O(" + std::to_string(ring_.prime()) + "^" + std::to_string(prec_) + ")";
  return out;
}

}  // namespace tateforge
