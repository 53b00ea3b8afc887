#include "avo/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace avo {

Rational::Rational(bigint n, bigint d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  bigint g = boost::multiprecision::gcd(num_ < 0 ? bigint(-num_) : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  num_ = num_ * o.den_ - o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

double Rational::to_double() const { return static_cast<double>(to_long_double()); }

long double Rational::to_long_double() const {
  return num_.convert_to<long double>() / den_.convert_to<long double>();
}

bigint Rational::floor() const {
  bigint q = num_ / den_;
  if (num_ < 0 && q * den_ != num_) --q;
  return q;
}

bigint Rational::ceil() const {
  bigint q = num_ / den_;
  if (num_ > 0 && q * den_ != num_) ++q;
  return q;
}

std::string Rational::str() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

Rational Rational::parse(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("Rational::parse: empty input");
  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    bigint n(std::string(s.substr(0, slash)));
    bigint d(std::string(s.substr(slash + 1)));
    return Rational(n, d);
  }
  auto dot = s.find('.');
  if (dot == std::string_view::npos) {
    return Rational(bigint(std::string(s)), 1);
  }
  std::string digits(s.substr(0, dot));
  std::string frac(s.substr(dot + 1));
  if (frac.empty()) return Rational(bigint(digits), 1);
  bool neg = !digits.empty() && digits[0] == '-';
  bigint scale = 1;
  for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
  bigint whole(digits.empty() || digits == "-" ? std::string("0") : digits);
  bigint part(frac);
  bigint n = whole * scale + (neg ? -part : part);
  return Rational(n, scale);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace avo
