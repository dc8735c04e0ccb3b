#pragma once

// Conversions between library values and the plain integer polynomials the
// oracles work with, plus seeded random generators for test corpora.

#include <cstdint>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "tateforge/padic.hpp"
#include "tateforge/series.hpp"

namespace fixtures {

using tateforge::PadicElement;
using tateforge::QpRing;
using Series = tateforge::RestrictedSeries<PadicElement>;
using SeriesRing = tateforge::SeriesRing<PadicElement>;

inline Series poly(const SeriesRing& ring, const std::vector<std::int64_t>& cs) {
  std::vector<PadicElement> out;
  for (auto c : cs) out.push_back(ring.base().from_int(c));
  return ring.from_coefficients(std::move(out));
}

/// Integral coefficients modulo p^cap (the series must have no denominators).
inline oracle::Poly to_ints(const Series& f) {
  oracle::Poly out;
  for (const auto& c : f.coefficients()) out.push_back(static_cast<std::int64_t>(c.mantissa()));
  return out;
}

inline std::int64_t cap_modulus(const QpRing& R) { return static_cast<std::int64_t>(R.power(R.cap())); }

/// Agreement of two series modulo p^k coefficientwise (both polynomials).
inline bool agree_mod(const Series& a, const Series& b, int k) {
  auto n = std::max(a.length(), b.length());
  for (std::size_t i = 0; i < n; ++i) {
    if (!a.coefficient(i).agrees_mod(b.coefficient(i), k)) return false;
  }
  return true;
}

/// Uniform integer in [lo, hi].
inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Random element of p^v Z_p truncated to p^cap.
inline std::int64_t random_multiple(std::mt19937_64& rng, std::int64_t p, int v, int cap) {
  auto m = oracle::pow_int(p, cap);
  auto pv = oracle::pow_int(p, v);
  return static_cast<std::int64_t>((rng() % static_cast<std::uint64_t>(m)) / pv * pv) % m;
}

/// Random element of Z_p modulo p^cap whose reduction mod p is nonzero.
inline std::int64_t random_unit(std::mt19937_64& rng, std::int64_t p, int cap) {
  auto m = oracle::pow_int(p, cap);
  while (true) {
    auto x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(m));
    if (x % p != 0) return x;
  }
}

}  // namespace fixtures
