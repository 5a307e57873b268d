#pragma once

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "kth/exact/gauss.hpp"

namespace kth {

using cd = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;
using Vec2c = Eigen::Vector2cd;

/// Row-major 2x2 matrix over Q(i).
struct Mat2Q {
  std::array<GaussRational, 4> e{};

  const GaussRational& operator()(int r, int c) const { return e[static_cast<std::size_t>(2 * r + c)]; }
  GaussRational& operator()(int r, int c) { return e[static_cast<std::size_t>(2 * r + c)]; }

  static Mat2Q identity();
  GaussRational trace() const { return e[0] + e[3]; }
  GaussRational det() const { return e[0] * e[3] - e[1] * e[2]; }
  Mat2Q inverse() const;  // throws std::domain_error when singular
  Mat2c to_complex() const;

  friend Mat2Q operator+(const Mat2Q& a, const Mat2Q& b);
  friend Mat2Q operator-(const Mat2Q& a, const Mat2Q& b);
  friend Mat2Q operator*(const Mat2Q& a, const Mat2Q& b);
  friend Mat2Q operator*(const GaussRational& s, const Mat2Q& a);
  friend bool operator==(const Mat2Q&, const Mat2Q&) = default;
};

/// y' = (A x + B) y on the real line, float entries.
struct PencilSystem {
  Mat2c A = Mat2c::Zero();
  Mat2c B = Mat2c::Zero();
};

/// Same system with exact Gaussian-rational entries.
struct ExactPencilSystem {
  Mat2Q A;
  Mat2Q B;

  PencilSystem to_float() const { return {A.to_complex(), B.to_complex()}; }
};

/// Rows of P are left eigenvectors of A with first nonzero entry 1, so that
/// P A P^-1 = diag(lambda1, lambda2) with lambda1 > lambda2.
struct EigenFrame {
  Mat2c P;
  Mat2c Pinv;
  double lambda1 = 0;
  double lambda2 = 0;
  Mat2c Btilde;  // P B P^-1 = [[b1, b2], [b3, b4]]
};

struct ExactEigenFrame {
  Mat2Q P;
  Mat2Q Pinv;
  Rational lambda1;
  Rational lambda2;
  Mat2Q Btilde;

  EigenFrame to_float() const;
};

struct NotApplicable {
  std::string reason;
  cd eig1{}, eig2{};
};

std::variant<EigenFrame, NotApplicable> eigenframe(const Mat2c& A, const Mat2c& B = Mat2c::Zero());
/// Exact frame; NotApplicable also when the eigenvalues are real but irrational.
std::variant<ExactEigenFrame, NotApplicable> eigenframe(const Mat2Q& A, const Mat2Q& B = {});

/// kindex k: the invariant equals -k and the solution carries a degree-k
/// polynomial. k = 0 occurs only when b2 = 0, i.e. B preserves the lambda2
/// eigenline and the solution is a bare Gaussian.
struct Solvable {
  long long kindex = 0;
};
struct NotSolvable {};
using Solvability = std::variant<Solvable, NotSolvable, NotApplicable>;

/// Frame-free value of b2*b3/(lambda1 - lambda2) for the float system.
cd pencil_invariant(const PencilSystem& sys);

inline constexpr double kIntegerTolerance = 1e-9;

/// Float path: Solvable(k) when the invariant is within `tol` of -k, k >= 1,
/// or Solvable(0) when it is within `tol` of 0 and b2 vanishes to the same
/// relative tolerance.
Solvability l2_solvability(const PencilSystem& sys, double tol = kIntegerTolerance);
/// Exact path. Works from traces, so irrational eigenvalues are handled too.
Solvability l2_solvability(const ExactPencilSystem& sys);

/// NotApplicable unless A has real eigenvalues of opposite sign.
std::optional<NotApplicable> check_spectrum(const Mat2c& A);

}  // namespace kth
