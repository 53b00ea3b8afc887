#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <iosfwd>
#include <string>
#include <string_view>

namespace avo {

using bigint = boost::multiprecision::cpp_int;

// Arbitrary-precision fraction, always normalized: denominator > 0,
// gcd(|num|, den) = 1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(bigint n) : num_(std::move(n)), den_(1) {}
  Rational(bigint n, bigint d);

  const bigint& num() const { return num_; }
  const bigint& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  double to_double() const;
  long double to_long_double() const;

  // floor/ceil as exact integers
  bigint floor() const;
  bigint ceil() const;

  std::string str() const;  // "num/den", or "num" when den == 1

  // Accepts "a/b", integers, and decimal literals such as "0.53".
  static Rational parse(std::string_view s);

 private:
  void normalize();
  bigint num_;
  bigint den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace avo
