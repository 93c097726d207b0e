#include "zsm/rational.hpp"

#include "zsm/error.hpp"

namespace zsm {

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_ == 0) throw InvalidInput("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

std::string Rational::to_string() const { return num_.str() + "/" + den_.str(); }

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text), BigInt(1));
    return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::runtime_error&) {
    throw InvalidInput("cannot parse rational '" + text + "'");
  }
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) { return Rational(a.num_ * b.num_, a.den_ * b.den_); }

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw InvalidInput("division by zero rational");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  BigInt l = a.num_ * b.den_;
  BigInt r = b.num_ * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

BigInt Rational::floor() const {
  BigInt q = num_ / den_;
  if (num_ < 0 && q * den_ != num_) q -= 1;
  return q;
}

BigInt Rational::ceil() const {
  BigInt q = num_ / den_;
  if (num_ > 0 && q * den_ != num_) q += 1;
  return q;
}

}  // namespace zsm
