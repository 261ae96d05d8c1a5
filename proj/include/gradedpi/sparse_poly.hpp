#pragma once

// Sparse commutative polynomials over cyclotomic scalars.

#include "gradedpi/cyclotomic.hpp"

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace gradedpi {

using Exponent = std::vector<std::uint16_t>;

/// Graded lexicographic order on exponent vectors: total degree first.
struct GradedLexLess {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const auto da = std::accumulate(a.begin(), a.end(), 0u);
    const auto db = std::accumulate(b.begin(), b.end(), 0u);
    if (da != db) return da < db;
    return a < b;
  }
};

/// Polynomial in `vars` commuting indeterminates. Zero coefficients are never stored.
class SparsePoly {
 public:
  using Terms = std::map<Exponent, Scalar, GradedLexLess>;

  SparsePoly() = default;
  explicit SparsePoly(std::size_t vars) : vars_(vars) {}

  static SparsePoly constant(std::size_t vars, const Scalar& c) {
    SparsePoly p(vars);
    if (!c.is_zero()) p.terms_.emplace(Exponent(vars, 0), c);
    return p;
  }
  static SparsePoly variable(std::size_t vars, std::size_t index) {
    if (index >= vars) throw std::out_of_range("SparsePoly::variable index");
    SparsePoly p(vars);
    Exponent e(vars, 0);
    e[index] = 1;
    p.terms_.emplace(std::move(e), Scalar(1));
    return p;
  }

  std::size_t vars() const { return vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponent& e, const Scalar& c) {
    if (e.size() != vars_) throw std::invalid_argument("SparsePoly: exponent length mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  SparsePoly& operator+=(const SparsePoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  SparsePoly& operator-=(const SparsePoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  SparsePoly operator-() const {
    SparsePoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    a.check(b);
    SparsePoly r(a.vars_);
    Exponent e(a.vars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

  SparsePoly scaled(const Scalar& s) const {
    SparsePoly r(vars_);
    if (s.is_zero()) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
    return r;
  }

  /// Adds s * a * b into this polynomial without materialising the product.
  void add_scaled_product(const Scalar& s, const SparsePoly& a, const SparsePoly& b) {
    check(a);
    check(b);
    Exponent e(vars_);
    for (const auto& [ea, ca] : a.terms_) {
      Scalar sa = s * ca;
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
        add_term(e, sa * cb);
      }
    }
  }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) s += " + ";
      first = false;
      s += "(" + c.str() + ")";
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        s += "*l" + std::to_string(i);
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
      }
    }
    return s;
  }

 private:
  void check(const SparsePoly& o) const {
    if (o.vars_ != vars_) throw std::invalid_argument("SparsePoly: variable count mismatch");
  }

  std::size_t vars_ = 0;
  Terms terms_;
};

}  // namespace gradedpi
