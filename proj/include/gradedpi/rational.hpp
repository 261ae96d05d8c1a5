#pragma once

// Exact rationals with an int64 fast path and an arbitrary-precision fallback.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gradedpi {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact rational number in lowest terms with positive denominator.
///
/// Values whose numerator and denominator fit in a signed 64-bit word are
/// stored inline; everything else spills to a heap-allocated big rational.
/// The representation is canonical, so equality is member-wise.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(int n) : num_(n) {}           // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    set_from_i128(n, d);
  }
  explicit Rational(const BigRational& q) { set_from_big(q); }

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<BigRational>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<BigRational>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  /// Parses "p", "-p" or "p/q".
  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    try {
      if (slash == std::string_view::npos) {
        return Rational(BigRational(BigInt(std::string(text))));
      }
      BigInt p(std::string(text.substr(0, slash)));
      BigInt q(std::string(text.substr(slash + 1)));
      if (q == 0) throw std::domain_error("rational with zero denominator");
      return Rational(BigRational(p, q));
    } catch (const std::domain_error&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
  }

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const { return big_ ? denominator(*big_) == 1 : den_ == 1; }
  bool is_small() const { return !big_; }
  int sign() const {
    if (big_) return big_->sign();
    return (num_ > 0) - (num_ < 0);
  }

  BigRational to_big() const { return big_ ? *big_ : BigRational(num_, den_); }
  BigInt numerator_big() const { return big_ ? numerator(*big_) : BigInt(num_); }
  BigInt denominator_big() const { return big_ ? denominator(*big_) : BigInt(den_); }

  std::string str() const {
    if (!big_) {
      return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }
    auto d = denominator(*big_);
    return d == 1 ? numerator(*big_).str() : numerator(*big_).str() + "/" + d.str();
  }

  Rational operator-() const {
    if (!big_ && num_ != std::numeric_limits<std::int64_t>::min()) {
      Rational r;
      r.num_ = -num_;
      r.den_ = den_;
      return r;
    }
    return Rational(BigRational(-to_big()));
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) {
        std::int64_t s;
        if (!__builtin_add_overflow(a.num_, b.num_, &s)) return Rational(s);
      } else {
        __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        Rational r;
        if (r.try_set_i128(n, d)) return r;
      }
    }
    return Rational(BigRational(a.to_big() + b.to_big()));
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

  friend Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) {
        std::int64_t p;
        if (!__builtin_mul_overflow(a.num_, b.num_, &p)) return Rational(p);
      } else {
        __int128 n = static_cast<__int128>(a.num_) * b.num_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        Rational r;
        if (r.try_set_i128(n, d)) return r;
      }
    }
    return Rational(BigRational(a.to_big() * b.to_big()));
  }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero rational");
    if (!big_) {
      Rational r;
      if (r.try_set_i128(den_, num_)) return r;
    }
    return Rational(BigRational(1 / to_big()));
  }

  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical: a small value is never stored big
  }

  friend bool operator<(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    return a.to_big() < b.to_big();
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

  /// Fits-in-int64 integer value; throws otherwise.
  std::int64_t to_int64() const {
    if (big_ || den_ != 1) throw std::domain_error("rational is not a small integer");
    return num_;
  }

 private:
  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();

  bool try_set_i128(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n == 0) d = 1;
    if (n > kMax || n < -kMax || d > kMax) return false;
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
    big_.reset();
    return true;
  }

  void set_from_i128(__int128 n, __int128 d) {
    if (!try_set_i128(n, d)) set_from_big(BigRational(BigInt(static_cast<std::int64_t>(n)), BigInt(static_cast<std::int64_t>(d))));
  }

  void set_from_big(const BigRational& q) {
    const auto& n = numerator(q);
    const auto& d = denominator(q);
    const BigInt lim(static_cast<std::int64_t>(kMax));
    if (n <= lim && n >= -lim && d <= lim) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      big_.reset();
    } else {
      big_ = std::make_unique<BigRational>(q);
      num_ = 0;
      den_ = 1;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<BigRational> big_;
};

}  // namespace gradedpi
