#pragma once

#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kth/exact/gauss.hpp"

namespace kth {

/// Admissible Laurent exponents of a QPiC value.
struct ExponentRange {
  int lo = -4;
  int hi = 4;
  bool contains(int e) const { return lo <= e && e <= hi; }
  friend bool operator==(const ExponentRange&, const ExponentRange&) = default;
};

/// Widest range used by the h_rho sector analysis, whose squared
/// criterion reaches pi^28 before cancellation.
inline constexpr ExponentRange kWideRange{-16, 32};

struct ExponentOverflow : std::overflow_error {
  using std::overflow_error::overflow_error;
};

/// Exact element of Q(i)[pi, 1/pi]: a finite sum of c_e * pi^e with Gaussian
/// rational coefficients. Terms are kept sorted by exponent and no stored
/// coefficient is zero, so equality is structural.
class QPiC {
 public:
  using Term = std::pair<int, GaussRational>;

  QPiC() = default;
  explicit QPiC(ExponentRange range) : range_(range) {}
  QPiC(long long c) : QPiC(GaussRational(c)) {}  // NOLINT(google-explicit-constructor)
  QPiC(GaussRational c, ExponentRange range = {});  // NOLINT(google-explicit-constructor)

  static QPiC monomial(GaussRational c, int exponent, ExponentRange range = {});
  static QPiC pi(int exponent = 1, ExponentRange range = {}) { return monomial(1, exponent, range); }
  static QPiC i(ExponentRange range = {}) { return QPiC(GaussRational::i(), range); }

  const std::vector<Term>& terms() const { return terms_; }
  ExponentRange range() const { return range_; }
  QPiC with_range(ExponentRange range) const;

  GaussRational coeff(int exponent) const;
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  int min_exponent() const;  // requires nonzero
  int max_exponent() const;

  QPiC conj() const;
  QPiC real_part() const;
  QPiC imag_part() const;
  /// Only monomials are invertible in the Laurent ring; throws std::domain_error otherwise.
  QPiC inverse() const;

  std::complex<double> eval(double pi_value = std::numbers::pi) const;
  std::string str() const;

  /// Some Gaussian rational c with *this == c * other, if one exists (other nonzero).
  std::optional<GaussRational> ratio_to(const QPiC& other) const;

  QPiC& operator+=(const QPiC& o);
  QPiC& operator-=(const QPiC& o);
  QPiC& operator*=(const QPiC& o);
  QPiC operator-() const;

  friend QPiC operator+(QPiC a, const QPiC& b) { return a += b; }
  friend QPiC operator-(QPiC a, const QPiC& b) { return a -= b; }
  friend QPiC operator*(const QPiC& a, const QPiC& b);
  friend bool operator==(const QPiC& a, const QPiC& b) { return a.terms_ == b.terms_; }

 private:
  void check_range() const;

  std::vector<Term> terms_;
  ExponentRange range_{};
};

inline bool is_zero(const QPiC& x) { return x.is_zero(); }

enum class ArithOp { Add, Sub, Mul, Conj };

/// Binary arithmetic by operation tag; Conj ignores y.
QPiC qpi_arith(const QPiC& x, const QPiC& y, ArithOp op);

struct QPiClass {
  enum class Kind { RationalConstant, Nonconstant };
  Kind kind = Kind::Nonconstant;
  GaussRational value;  // meaningful for RationalConstant
  bool is_constant() const { return kind == Kind::RationalConstant; }
};

/// RationalConstant iff no coefficient other than pi^0 is nonzero.
QPiClass qpi_classify(const QPiC& x);

enum class DiscreteSet { FourPiNegInt, NegInt, FourNegInt };

/// For FourPiNegInt: the negative integer u with x == 4*pi*u exactly, if any.
/// NegInt and FourNegInt test x == u and x == 4u respectively.
std::optional<BigInt> qpi_in_discrete_set(const QPiC& x, DiscreteSet set);

}  // namespace kth
