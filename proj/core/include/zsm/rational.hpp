#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace zsm {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational in lowest terms with positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(BigInt n, BigInt d);

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }

  std::string to_string() const;  // always "p/q"
  static Rational parse(const std::string& text);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  // ceiling and floor as integers
  BigInt floor() const;
  BigInt ceil() const;

 private:
  BigInt num_;
  BigInt den_;
};

}  // namespace zsm
