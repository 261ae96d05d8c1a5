#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_m) = Q[x]/(Phi_m(x)).

#include "gradedpi/rational.hpp"

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace gradedpi {

/// Coefficients of the m-th cyclotomic polynomial, constant term first.
inline std::vector<std::int64_t> cyclotomic_polynomial(unsigned m) {
  if (m == 0) throw std::invalid_argument("cyclotomic_polynomial: order must be positive");
  // x^m - 1 divided by Phi_d for every proper divisor d.
  std::vector<std::int64_t> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (unsigned d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    auto div = cyclotomic_polynomial(d);
    const std::size_t dd = div.size() - 1;
    std::vector<std::int64_t> quot(num.size() - dd, 0);
    for (std::size_t i = num.size(); i-- > dd;) {
      std::int64_t c = num[i];  // divisor is monic
      quot[i - dd] = c;
      for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * div[j];
    }
    num = std::move(quot);
  }
  return num;
}

/// Precomputed reduction data for Q(zeta_m). Immutable once built.
struct CyclotomicField {
  unsigned order = 1;
  unsigned degree = 1;
  std::vector<std::int64_t> phi;
  // reduce[k] = x^(degree + k) mod Phi_m as a length-degree integer vector.
  std::vector<std::vector<std::int64_t>> reduce;

  explicit CyclotomicField(unsigned m) : order(m), phi(cyclotomic_polynomial(m)) {
    degree = static_cast<unsigned>(phi.size() - 1);
    std::vector<std::int64_t> cur(degree, 0);
    // x^degree = -(phi_0 + ... + phi_{d-1} x^{d-1})
    for (unsigned i = 0; i < degree; ++i) cur[i] = -phi[i];
    for (unsigned k = 0; k + 1 < degree; ++k) {
      reduce.push_back(cur);
      std::int64_t top = cur[degree - 1];
      for (unsigned i = degree - 1; i > 0; --i) cur[i] = cur[i - 1];
      cur[0] = 0;
      for (unsigned i = 0; i < degree; ++i) cur[i] -= top * phi[i];
    }
  }

  static const CyclotomicField& get(unsigned m) {
    if (m == 0) throw std::invalid_argument("cyclotomic order must be positive");
    static std::mutex mutex;
    static std::map<unsigned, std::unique_ptr<const CyclotomicField>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[m];
    if (!slot) slot = std::make_unique<const CyclotomicField>(m);
    return *slot;
  }
};

/// Element of Q(zeta_m), stored as coefficients in the power basis 1, zeta, ..., zeta^(deg-1).
///
/// Values of different orders only mix when one of them has order 1 (a
/// rational, which lives canonically in every cyclotomic field); otherwise
/// callers must embed() into a common order first.
class CycScalar {
 public:
  using Coeffs = boost::container::small_vector<Rational, 2>;

  CycScalar() : field_(rational_field()), coeffs_(1) {}
  CycScalar(Rational q) : field_(rational_field()), coeffs_{std::move(q)} {}  // NOLINT
  CycScalar(std::int64_t n) : CycScalar(Rational(n)) {}                              // NOLINT
  CycScalar(int n) : CycScalar(Rational(n)) {}                                       // NOLINT

  CycScalar(unsigned order, std::vector<Rational> coeffs) : field_(&CyclotomicField::get(order)) {
    if (coeffs.size() != field_->degree) {
      throw std::invalid_argument("CycScalar: expected " + std::to_string(field_->degree) +
                                  " coefficients for order " + std::to_string(order));
    }
    coeffs_.assign(coeffs.begin(), coeffs.end());
  }

  static CycScalar zero(unsigned order) { return zero_in(&CyclotomicField::get(order)); }
  static CycScalar one(unsigned order) {
    auto z = zero(order);
    z.coeffs_[0] = Rational(1);
    return z;
  }

  /// zeta_m^e for any integer e.
  static CycScalar root_of_unity(unsigned m, std::int64_t e) {
    std::int64_t k = ((e % static_cast<std::int64_t>(m)) + m) % m;
    const auto& f = CyclotomicField::get(m);
    std::vector<std::int64_t> cur(f.degree, 0);
    cur[0] = 1;
    for (std::int64_t step = 0; step < k; ++step) {
      std::int64_t top = cur[f.degree - 1];
      for (unsigned i = f.degree - 1; i > 0; --i) cur[i] = cur[i - 1];
      cur[0] = 0;
      for (unsigned i = 0; i < f.degree; ++i) cur[i] -= top * f.phi[i];
    }
    auto z = zero(m);
    for (unsigned i = 0; i < f.degree; ++i) z.coeffs_[i] = Rational(cur[i]);
    return z;
  }

  unsigned order() const { return field_->order; }
  const Coeffs& coeffs() const { return coeffs_; }
  bool is_rational() const { return field_->degree == 1; }
  const Rational& rational() const { return coeffs_[0]; }

  bool is_zero() const {
    for (const auto& c : coeffs_) {
      if (!c.is_zero()) return false;
    }
    return true;
  }
  bool is_one() const {
    if (!coeffs_[0].is_one()) return false;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
      if (!coeffs_[i].is_zero()) return false;
    }
    return true;
  }

  /// Image under Q(zeta_m) -> Q(zeta_M), zeta_m -> zeta_M^(M/m). Requires m | M.
  CycScalar embed(unsigned target) const {
    if (target % order() != 0) {
      throw std::invalid_argument("embed: order " + std::to_string(order()) + " does not divide " +
                                  std::to_string(target));
    }
    if (target == order()) return *this;
    const unsigned step = target / order();
    auto out = zero(target);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      out += root_of_unity(target, static_cast<std::int64_t>(i * step)) * CycScalar(coeffs_[i]);
    }
    return out;
  }

  CycScalar operator-() const {
    CycScalar r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend CycScalar operator+(const CycScalar& a, const CycScalar& b) {
    if (a.field_ == b.field_) {
      CycScalar r = a;
      for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
      return r;
    }
    if (b.order() == 1) return a + CycScalar::lift(b.coeffs_[0], a.field_);
    if (a.order() == 1) return CycScalar::lift(a.coeffs_[0], b.field_) + b;
    throw mismatch(a, b);
  }
  friend CycScalar operator-(const CycScalar& a, const CycScalar& b) { return a + (-b); }

  friend CycScalar operator*(const CycScalar& a, const CycScalar& b) {
    if (a.field_ != b.field_) {
      if (b.order() == 1) return a.scaled(b.coeffs_[0]);
      if (a.order() == 1) return b.scaled(a.coeffs_[0]);
      throw mismatch(a, b);
    }
    const unsigned d = a.field_->degree;
    if (d == 1) {
      CycScalar r = a;
      r.coeffs_[0] = a.coeffs_[0] * b.coeffs_[0];
      return r;
    }
    std::vector<Rational> prod(2 * d - 1);
    for (unsigned i = 0; i < d; ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (unsigned j = 0; j < d; ++j) {
        if (b.coeffs_[j].is_zero()) continue;
        prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    CycScalar r = zero_in(a.field_);
    for (unsigned i = 0; i < d; ++i) r.coeffs_[i] = std::move(prod[i]);
    for (unsigned k = d; k < 2 * d - 1; ++k) {
      if (prod[k].is_zero()) continue;
      const auto& red = a.field_->reduce[k - d];
      for (unsigned i = 0; i < d; ++i) {
        if (red[i] != 0) r.coeffs_[i] += prod[k] * Rational(red[i]);
      }
    }
    return r;
  }

  CycScalar inverse() const;

  friend CycScalar operator/(const CycScalar& a, const CycScalar& b) { return a * b.inverse(); }

  CycScalar& operator+=(const CycScalar& b) { return *this = *this + b; }
  CycScalar& operator-=(const CycScalar& b) { return *this = *this - b; }
  CycScalar& operator*=(const CycScalar& b) { return *this = *this * b; }

  /// Adds a*b in place; the hot path of every evaluation loop.
  void add_product(const CycScalar& a, const CycScalar& b) {
    if (field_->degree == 1 && a.field_->degree == 1 && b.field_->degree == 1 &&
        (order() == a.order() || a.order() == 1) && (order() == b.order() || b.order() == 1)) {
      coeffs_[0] += a.coeffs_[0] * b.coeffs_[0];
      return;
    }
    *this += a * b;
  }

  CycScalar scaled(const Rational& q) const {
    CycScalar r = *this;
    for (auto& c : r.coeffs_) c *= q;
    return r;
  }

  friend bool operator==(const CycScalar& a, const CycScalar& b) {
    if (a.field_ == b.field_) return a.coeffs_ == b.coeffs_;
    if (a.order() == 1) return lift(a.coeffs_[0], b.field_) == b;
    if (b.order() == 1) return a == lift(b.coeffs_[0], a.field_);
    throw mismatch(a, b);
  }
  friend bool operator!=(const CycScalar& a, const CycScalar& b) { return !(a == b); }

  std::string str() const {
    if (order() == 1) return coeffs_[0].str();
    std::string s = "[" + std::to_string(order()) + ":";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) s += (i ? "," : "") + coeffs_[i].str();
    return s + "]";
  }

  /// Total order used only for canonical sorting (not a field order).
  friend bool canonical_less(const CycScalar& a, const CycScalar& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == b.coeffs_[i]) continue;
      return a.coeffs_[i] < b.coeffs_[i];
    }
    return false;
  }

 private:
  static const CyclotomicField* rational_field() {
    static const CyclotomicField* f = &CyclotomicField::get(1);
    return f;
  }
  static CycScalar zero_in(const CyclotomicField* field) {
    CycScalar z;
    z.field_ = field;
    z.coeffs_.assign(field->degree, Rational());
    return z;
  }
  static CycScalar lift(const Rational& q, const CyclotomicField* field) {
    auto z = zero_in(field);
    z.coeffs_[0] = q;
    return z;
  }
  static std::invalid_argument mismatch(const CycScalar& a, const CycScalar& b) {
    return std::invalid_argument("cyclotomic order mismatch: " + std::to_string(a.order()) + " vs " +
                                 std::to_string(b.order()));
  }

  const CyclotomicField* field_;
  Coeffs coeffs_;
};

namespace detail {

using RatPoly = std::vector<Rational>;  // constant term first, no trailing zeros

inline void trim(RatPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline RatPoly poly_sub(const RatPoly& a, const RatPoly& b) {
  RatPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

inline RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

inline void poly_divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r) {
  r = a;
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational());
  const Rational lead_inv = b.back().inverse();
  while (!r.empty() && r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    Rational c = r.back() * lead_inv;
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= c * b[j];
    trim(r);
  }
  trim(q);
}

}  // namespace detail

inline CycScalar CycScalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero cyclotomic scalar");
  if (field_->degree == 1) {
    CycScalar r = *this;
    r.coeffs_[0] = coeffs_[0].inverse();
    return r;
  }
  using detail::RatPoly;
  // Extended Euclid: s*a + t*phi = gcd (a constant, since phi is irreducible).
  RatPoly a(coeffs_.begin(), coeffs_.end());
  detail::trim(a);
  RatPoly phi;
  for (auto c : field_->phi) phi.emplace_back(c);
  RatPoly r0 = phi, r1 = a, s0 = {}, s1 = {Rational(1)};
  while (!r1.empty() && r1.size() > 1) {
    RatPoly q, rem;
    detail::poly_divmod(r0, r1, q, rem);
    RatPoly s2 = detail::poly_sub(s0, detail::poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw std::domain_error("inverse: element not invertible");
  const Rational c = r1[0].inverse();
  RatPoly q, rem;
  detail::poly_divmod(s1, phi, q, rem);
  auto out = zero(order());
  for (std::size_t i = 0; i < rem.size(); ++i) out.coeffs_[i] = rem[i] * c;
  return out;
}

using Scalar = CycScalar;

inline unsigned lcm_order(unsigned a, unsigned b) { return std::lcm(a, b); }

}  // namespace gradedpi
