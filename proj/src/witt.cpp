#include "tateforge/witt.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <sstream>

namespace tateforge {

using boost::multiprecision::cpp_int;

namespace {

using Poly = WittPolynomial;

void add_into(Poly& acc, const Poly& b, const cpp_int& scale = 1) {
  for (const auto& [m, c] : b.terms) {
    auto& slot = acc.terms[m];
    slot += scale * c;
    if (slot == 0) acc.terms.erase(m);
  }
}

Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms) {
    for (const auto& [mb, cb] : b.terms) {
      auto m = ma;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
      auto& slot = out.terms[m];
      slot += ca * cb;
      if (slot == 0) out.terms.erase(m);
    }
  }
  return out;
}

Poly power(const Poly& a, std::uint64_t e, std::size_t vars) {
  Poly result;
  result.terms[Poly::Monomial(vars, 0)] = 1;
  auto base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

Poly variable(std::size_t index, std::size_t vars) {
  Poly out;
  Poly::Monomial m(vars, 0);
  m[index] = 1;
  out.terms[m] = 1;
  return out;
}

cpp_int ipow(std::uint32_t p, std::size_t k) {
  cpp_int r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= p;
  return r;
}

// w_k of the variables starting at `offset`.
Poly ghost(std::uint32_t p, std::size_t k, std::size_t offset, std::size_t vars) {
  Poly out;
  for (std::size_t i = 0; i <= k; ++i) {
    auto term = power(variable(offset + i, vars), static_cast<std::uint64_t>(ipow(p, k - i)), vars);
    add_into(out, term, ipow(p, i));
  }
  return out;
}

// (target - sum_{i<k} p^i F_i^{p^{k-i}}) / p^k
Poly solve_ghost(std::uint32_t p, std::size_t k, Poly target, const std::vector<Poly>& lower, std::size_t vars) {
  for (std::size_t i = 0; i < k; ++i) {
    add_into(target, power(lower[i], static_cast<std::uint64_t>(ipow(p, k - i)), vars), -ipow(p, i));
  }
  auto pk = ipow(p, k);
  for (auto& [m, c] : target.terms) {
    if (c % pk != 0) throw std::logic_error("ghost recursion produced a non-integral coefficient");
    c /= pk;
  }
  return target;
}

std::unique_ptr<WittStructure> compute_structure(std::uint32_t p, std::size_t n) {
  auto s = std::make_unique<WittStructure>();
  s->p = p;
  s->length = n;
  const auto vars = 2 * n;
  for (std::size_t k = 0; k < n; ++k) {
    auto wx = ghost(p, k, 0, vars);
    auto wy = ghost(p, k, n, vars);
    auto sum_target = wx;
    add_into(sum_target, wy);
    s->sum.push_back(solve_ghost(p, k, sum_target, s->sum, vars));
    s->product.push_back(solve_ghost(p, k, mul(wx, wy), s->product, vars));
  }
  return s;
}

std::mutex cache_mutex;
std::map<std::pair<std::uint32_t, std::size_t>, std::unique_ptr<WittStructure>> cache;

void require_compatible(const WittVector& x, const WittVector& y) {
  if (x.length() != y.length()) throw DomainError("Witt vectors of different lengths");
  if (!(x.ring() == y.ring())) throw DomainError("Witt vectors over different coefficient rings");
}

}  // namespace

std::string WittPolynomial::str() const {
  if (terms.empty()) return "0";
  auto n = terms.begin()->first.size() / 2;
  std::vector<std::pair<Monomial, cpp_int>> sorted(terms.begin(), terms.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    unsigned da = 0, db = 0;
    for (auto e : a.first) da += e;
    for (auto e : b.first) db += e;
    if (da != db) return da < db;
    return a.first > b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : sorted) {
    cpp_int mag = c < 0 ? cpp_int(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool constant = std::all_of(m.begin(), m.end(), [](unsigned e) { return e == 0; });
    if (mag != 1 || constant) os << mag << (constant ? "" : "*");
    bool lead = true;
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] == 0) continue;
      if (!lead) os << "*";
      lead = false;
      os << (v < n ? "X" : "Y") << (v < n ? v : v - n);
      if (m[v] > 1) os << "^" << m[v];
    }
  }
  return os.str();
}

const WittStructure& witt_structure_polys(std::uint32_t p, std::size_t n, std::size_t ceiling) {
  if (n == 0) throw DomainError("Witt length must be positive");
  if (n > ceiling) {
    throw DomainError("Witt length " + std::to_string(n) + " exceeds the structure-polynomial ceiling " +
                      std::to_string(ceiling));
  }
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& slot = cache[{p, n}];
  if (!slot) slot = compute_structure(p, n);
  return *slot;
}

std::vector<PerfElement> evaluate_structure(const std::vector<WittPolynomial>& polys, const WittVector& x,
                                            const WittVector& y) {
  require_compatible(x, y);
  const auto n = x.length();
  const auto& ring = x.ring();
  const auto p = ring.prime();
  std::map<std::pair<std::size_t, unsigned>, PerfElement> powers;
  auto value = [&](std::size_t v, unsigned e) -> const PerfElement& {
    auto it = powers.find({v, e});
    if (it != powers.end()) return it->second;
    const auto& base = v < n ? x.components()[v] : y.components()[v - n];
    return powers.emplace(std::pair{v, e}, base.pow(e)).first->second;
  };
  std::vector<PerfElement> out;
  for (const auto& poly : polys) {
    auto acc = ring.zero();
    for (const auto& [m, c] : poly.terms) {
      cpp_int r = c % p;
      if (r < 0) r += p;
      if (r == 0) continue;
      auto term = ring.one();
      for (std::size_t v = 0; v < m.size(); ++v) {
        if (m[v] != 0) term = term * value(v, m[v]);
      }
      auto coeff = static_cast<std::uint32_t>(r);
      acc = acc + term * ring.monomial(Rational(0), coeff);
    }
    out.push_back(acc);
  }
  return out;
}

WittVector::WittVector(std::vector<PerfElement> components) : components_(std::move(components)) {
  if (components_.empty()) throw DomainError("Witt vectors need at least one component");
  for (const auto& c : components_) {
    if (!(c.ring() == components_.front().ring())) throw DomainError("Witt components over different rings");
  }
}

WittVector WittVector::zero(const PerfRing& ring, std::size_t n) {
  return WittVector(std::vector<PerfElement>(n, ring.zero()));
}

WittVector WittVector::one(const PerfRing& ring, std::size_t n) { return teichmuller(ring.one(), n); }

WittVector WittVector::operator+(const WittVector& o) const { return witt_arith(WittOp::add, *this, o); }
WittVector WittVector::operator*(const WittVector& o) const { return witt_arith(WittOp::mul, *this, o); }

WittVector WittVector::operator-() const {
  if (ring().prime() != 2) {
    // -1 = [-1] for odd p, and [c] acts on component i through c^{p^i} = c
    auto out = components_;
    for (auto& c : out) c = -c;
    return WittVector(std::move(out));
  }
  // over F_2, -1 = (1, 1, 1, ...)
  return WittVector(std::vector<PerfElement>(length(), ring().one())) * *this;
}

bool WittVector::operator==(const WittVector& o) const {
  if (length() != o.length() || !(ring() == o.ring())) return false;
  for (std::size_t i = 0; i < length(); ++i) {
    if (!components_[i].agrees_with(o.components_[i])) return false;
  }
  return true;
}

std::string WittVector::str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < components_.size(); ++i) os << (i ? ", " : "") << components_[i].str();
  os << ")";
  return os.str();
}

WittVector witt_arith(WittOp op, const WittVector& x, const WittVector& y) {
  require_compatible(x, y);
  const auto& s = witt_structure_polys(x.ring().prime(), x.length());
  return WittVector(evaluate_structure(op == WittOp::add ? s.sum : s.product, x, y));
}

WittVector teichmuller(const PerfElement& x, std::size_t n) {
  std::vector<PerfElement> cs(n, x.ring().zero());
  cs[0] = x;
  return WittVector(std::move(cs));
}

TeichSum::TeichSum(PerfRing ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!(terms_[i].second.ring() == ring_)) throw DomainError("Teichmüller digit over a different ring");
    if (i > 0 && terms_[i].first == terms_[i - 1].first) {
      throw DomainError("repeated power p^" + std::to_string(terms_[i].first) + " in a Teichmüller sum");
    }
  }
}

TeichSum TeichSum::from_witt(const WittVector& w) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < w.length(); ++i) {
    auto x = w.components()[i];
    for (std::size_t j = 0; j < i; ++j) x = x.root();
    terms.emplace_back(static_cast<int>(i), x);
  }
  return TeichSum(w.ring(), std::move(terms));
}

WittVector TeichSum::to_witt(std::size_t length) const {
  auto cs = std::vector<PerfElement>(length, ring_.zero());
  for (const auto& [n, x] : terms_) {
    if (n < 0) throw DomainError("p^" + std::to_string(n) + " has no Witt vector form");
    if (x.is_certainly_nonzero() && x.valuation() < 0) {
      throw DomainError("digit " + x.str() + " lies outside the unit ball of L");
    }
    if (static_cast<std::size_t>(n) >= length) continue;
    auto a = x;
    for (int j = 0; j < n; ++j) a = a.frobenius();
    cs[static_cast<std::size_t>(n)] = a;
  }
  return WittVector(std::move(cs));
}

std::string TeichSum::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& [n, x] = terms_[i];
    if (i) os << " + ";
    if (n != 0) os << "p^" << n;
    os << "[" << x.str() << "]";
  }
  return os.str();
}

LambdaParam::LambdaParam(QuadraticNumber t) : t_(std::move(t)) {
  if (t_.sign() <= 0) throw DomainError("lambda scale t must be positive");
}

LambdaInterval::LambdaInterval(LambdaParam s_, LambdaParam r_) : s(std::move(s_)), r(std::move(r_)) {
  if (s.value() > r.value()) throw DomainError("interval endpoints need s <= r");
}

NormValue term_norm(int n, const PerfElement& x, const LambdaParam& t) {
  if (x.is_certainly_nonzero()) {
    return NormValue::exact(NormExponent::scaled(Rational(n), x.valuation(), t.value()));
  }
  return NormValue::at_most(NormExponent::scaled(Rational(n), x.trunc(), t.value()));
}

NormValue lambda_bound(const TeichSum& x, const LambdaParam& t) {
  auto out = NormValue::zero();
  for (const auto& [n, xn] : x.terms()) out = join(out, term_norm(n, xn, t));
  return out;
}

NormValue lambda_norm(const TeichSum& x, const LambdaParam& t) {
  std::optional<NormValue> best;
  for (const auto& [n, xn] : x.terms()) {
    auto v = term_norm(n, xn, t);
    if (v.is_exact() && (!best || certainly(less(*best, v)))) best = v;
  }
  if (!best) {
    if (x.terms().empty()) return NormValue::zero();
    throw Indeterminate("no term of " + x.str() + " has a certified norm");
  }
  for (const auto& [n, xn] : x.terms()) {
    auto v = term_norm(n, xn, t);
    if (!v.is_exact() && !certainly(less(v, *best))) {
      throw Indeterminate("imprecise term at p^" + std::to_string(n) + " could reach the maximum");
    }
  }
  return *best;
}

NormValue lambda_interval(const TeichSum& x, const LambdaInterval& I) {
  return join(lambda_norm(x, I.s), lambda_norm(x, I.r));
}

bool sigma_membership(const LambdaParam& r) { return r.value().is_rational(); }

DominantTerm dominant_term(const TeichSum& x, const LambdaParam& t) {
  if (x.terms().empty()) throw DomainError("the zero sum has no dominant term");
  DominantTerm out;
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < x.terms().size(); ++i) {
    const auto& [n, xn] = x.terms()[i];
    auto v = term_norm(n, xn, t);
    if (!v.is_exact()) throw Indeterminate("term at p^" + std::to_string(n) + " has no certified norm");
    out.term_exponents.push_back(v.exponent());
    if (!best || v.exponent() < out.term_exponents[*best]) best = i;
  }
  out.n = x.terms()[*best].first;
  out.exponent = out.term_exponents[*best];
  for (std::size_t i = 0; i < x.terms().size(); ++i) {
    if (i == *best || !(out.term_exponents[i] == out.exponent)) continue;
    if (!sigma_membership(t)) {
      throw std::logic_error("equal term norms at an irrational scale");
    }
    out.tie = true;
    out.n = x.terms()[std::min(i, *best)].first;
    out.tied_with = x.terms()[std::max(i, *best)].first;
    break;
  }
  return out;
}

}  // namespace tateforge
