#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include "haarcp/error.hpp"

namespace haarcp {

using BigInt = boost::multiprecision::cpp_int;

/// Exact fraction kept in lowest terms with a positive denominator.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(long long value) : num_(value), den_(1) {} // NOLINT: implicit by intent
  Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0)
      throw std::domain_error("Rational: zero denominator");
    normalize();
  }

  const BigInt &numerator() const { return num_; }
  const BigInt &denominator() const { return den_; }

  Rational &operator+=(const Rational &o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  Rational &operator-=(const Rational &o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  Rational &operator*=(const Rational &o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  Rational &operator/=(const Rational &o) {
    if (o.num_ == 0)
      throw std::domain_error("Rational: division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
  }

  friend Rational operator+(Rational a, const Rational &b) { return a += b; }
  friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational &b) { return a /= b; }
  friend Rational operator-(Rational a) {
    a.num_ = -a.num_;
    return a;
  }

  friend bool operator==(const Rational &a, const Rational &b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
    BigInt lhs = a.num_ * b.den_;
    BigInt rhs = b.num_ * a.den_;
    if (lhs < rhs)
      return std::strong_ordering::less;
    if (lhs > rhs)
      return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// "p/q", or just "p" when the denominator is 1.
  std::string str() const {
    if (den_ == 1)
      return num_.str();
    return num_.str() + "/" + den_.str();
  }

  /// Accepts "p" or "p/q" with optional leading minus. Decimals are rejected.
  static Rational parse(std::string_view text) {
    auto digits = [&](std::string_view s) {
      if (s.empty())
        return false;
      for (char c : s)
        if (c < '0' || c > '9')
          return false;
      return true;
    };
    bool negative = !text.empty() && text.front() == '-';
    if (negative)
      text.remove_prefix(1);
    auto slash = text.find('/');
    std::string_view top = text.substr(0, slash);
    std::string_view bottom =
        slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!digits(top) || !digits(bottom))
      throw ParseError(0, "not an exact fraction: '" + std::string(text) + "'");
    BigInt p{std::string(top)};
    BigInt q{std::string(bottom)};
    if (q == 0)
      throw ParseError(0, "zero denominator");
    return Rational(negative ? BigInt(-p) : p, q);
  }

  friend std::ostream &operator<<(std::ostream &os, const Rational &r) {
    return os << r.str();
  }

private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0)
      den_ = 1;
  }

  BigInt num_;
  BigInt den_;
};

} // namespace haarcp
