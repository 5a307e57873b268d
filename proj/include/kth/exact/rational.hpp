#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace kth {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number kept in lowest terms with a positive denominator.
/// Serialized as "p/q", or "p" when the denominator is 1.
class Rational {
 public:
  Rational() = default;
  Rational(long long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const BigInt& value) : v_(value) {}
  Rational(const BigInt& num, const BigInt& den);

  /// Accepts "p", "-p", "p/q" with optional surrounding whitespace.
  /// Throws std::invalid_argument on malformed text or a zero denominator.
  static Rational parse(std::string_view text);

  BigInt num() const;
  BigInt den() const;

  bool is_zero() const { return v_.is_zero(); }
  bool is_integer() const;
  int sign() const { return v_.sign(); }
  Rational abs() const;
  BigInt floor() const;
  BigInt ceil() const;

  double to_double() const;
  std::string str() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);  // throws std::domain_error on zero
  Rational operator-() const;

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return a.v_.compare(b.v_) <=> 0;
  }

 private:
  boost::multiprecision::cpp_rational v_;
};

Rational pow(const Rational& base, unsigned exponent);

/// Largest integer r with r*r <= n; n must be nonnegative.
BigInt isqrt(const BigInt& n);
bool is_perfect_square(const BigInt& n);

}  // namespace kth
