#pragma once

#include <complex>
#include <string>
#include <vector>

#include "kth/exact/rational.hpp"

namespace kth {

/// Gaussian rational re + im*i with re, im in Q. Forms a field.
struct GaussRational {
  Rational re;
  Rational im;

  GaussRational() = default;
  GaussRational(long long r) : re(r) {}  // NOLINT(google-explicit-constructor)
  GaussRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  GaussRational conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }
  GaussRational inverse() const;  // throws std::domain_error on zero

  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
  std::string str() const;

  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);
  GaussRational operator-() const { return {-re, -im}; }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

inline bool is_zero(const GaussRational& x) { return x.is_zero(); }

/// Basis of the right null space of a dense matrix given by rows, computed
/// from the reduced row echelon form. Free variables are set to 1 in turn.
std::vector<std::vector<GaussRational>> nullspace(std::vector<std::vector<GaussRational>> rows, std::size_t cols);

}  // namespace kth
