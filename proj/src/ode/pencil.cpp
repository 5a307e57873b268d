#include "kth/ode/pencil.hpp"

#include <cmath>

namespace kth {

Mat2Q Mat2Q::identity() {
  Mat2Q m;
  m(0, 0) = 1;
  m(1, 1) = 1;
  return m;
}

Mat2Q Mat2Q::inverse() const {
  const GaussRational dt = det();
  if (dt.is_zero()) throw std::domain_error("singular 2x2 matrix");
  const GaussRational s = dt.inverse();
  Mat2Q r;
  r(0, 0) = s * e[3];
  r(0, 1) = -(s * e[1]);
  r(1, 0) = -(s * e[2]);
  r(1, 1) = s * e[0];
  return r;
}

Mat2c Mat2Q::to_complex() const {
  Mat2c m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(r, c) = (*this)(r, c).to_complex();
  return m;
}

Mat2Q operator+(const Mat2Q& a, const Mat2Q& b) {
  Mat2Q r;
  for (std::size_t i = 0; i < 4; ++i) r.e[i] = a.e[i] + b.e[i];
  return r;
}

Mat2Q operator-(const Mat2Q& a, const Mat2Q& b) {
  Mat2Q r;
  for (std::size_t i = 0; i < 4; ++i) r.e[i] = a.e[i] - b.e[i];
  return r;
}

Mat2Q operator*(const Mat2Q& a, const Mat2Q& b) {
  Mat2Q r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
  return r;
}

Mat2Q operator*(const GaussRational& s, const Mat2Q& a) {
  Mat2Q r;
  for (std::size_t i = 0; i < 4; ++i) r.e[i] = s * a.e[i];
  return r;
}

EigenFrame ExactEigenFrame::to_float() const {
  return {P.to_complex(), Pinv.to_complex(), lambda1.to_double(), lambda2.to_double(), Btilde.to_complex()};
}

namespace {

// Left eigenvector of a 2x2 matrix for eigenvalue lam, normalized so its
// first nonzero entry is 1.
Eigen::RowVector2cd left_eigvec(const Mat2c& A, cd lam) {
  Eigen::RowVector2cd v1(A(1, 0), lam - A(0, 0));
  Eigen::RowVector2cd v2(lam - A(1, 1), A(0, 1));
  Eigen::RowVector2cd v = v1.norm() >= v2.norm() ? v1 : v2;
  const double scale = v.norm();
  if (std::abs(v(0)) > 1e-14 * scale) return v / v(0);
  return Eigen::RowVector2cd(0, 1);
}

std::array<GaussRational, 2> left_eigvec(const Mat2Q& A, const GaussRational& lam) {
  std::array<GaussRational, 2> v{A(1, 0), lam - A(0, 0)};
  if (v[0].is_zero() && v[1].is_zero()) v = {lam - A(1, 1), A(0, 1)};
  const GaussRational lead = v[0].is_zero() ? v[1] : v[0];
  const GaussRational inv = lead.inverse();
  return {v[0] * inv, v[1] * inv};
}

std::optional<Rational> rational_sqrt(const Rational& x) {
  if (x.sign() < 0) return std::nullopt;
  const BigInt n = x.num(), d = x.den();
  if (!is_perfect_square(n) || !is_perfect_square(d)) return std::nullopt;
  return Rational(isqrt(n), isqrt(d));
}

}  // namespace

std::variant<EigenFrame, NotApplicable> eigenframe(const Mat2c& A, const Mat2c& B) {
  const cd s = A.trace();
  const cd p = A.determinant();
  const cd root = std::sqrt(s * s - 4.0 * p);
  cd e1 = (s + root) / 2.0, e2 = (s - root) / 2.0;
  const double scale = 1.0 + A.norm();
  if (std::abs(e1.imag()) > 1e-12 * scale || std::abs(e2.imag()) > 1e-12 * scale)
    return NotApplicable{"eigenvalues are not real", e1, e2};
  if (std::abs(e1 - e2) <= 1e-12 * scale) return NotApplicable{"eigenvalues coincide", e1, e2};
  if (e1.real() < e2.real()) std::swap(e1, e2);
  EigenFrame f;
  f.lambda1 = e1.real();
  f.lambda2 = e2.real();
  f.P.row(0) = left_eigvec(A, f.lambda1);
  f.P.row(1) = left_eigvec(A, f.lambda2);
  f.Pinv = f.P.inverse();
  f.Btilde = f.P * B * f.Pinv;
  return f;
}

std::variant<ExactEigenFrame, NotApplicable> eigenframe(const Mat2Q& A, const Mat2Q& B) {
  const GaussRational s = A.trace();
  const GaussRational p = A.det();
  const cd e1 = std::complex<double>(0), e2 = e1;
  if (!s.is_real() || !p.is_real()) return NotApplicable{"eigenvalues are not real", e1, e2};
  const Rational disc = s.re * s.re - Rational(4) * p.re;
  if (disc.sign() < 0) return NotApplicable{"eigenvalues are not real", e1, e2};
  if (disc.is_zero()) return NotApplicable{"eigenvalues coincide", e1, e2};
  const auto root = rational_sqrt(disc);
  if (!root) return NotApplicable{"eigenvalues are irrational", e1, e2};
  ExactEigenFrame f;
  f.lambda1 = (s.re + *root) / Rational(2);
  f.lambda2 = (s.re - *root) / Rational(2);
  const auto r1 = left_eigvec(A, f.lambda1);
  const auto r2 = left_eigvec(A, f.lambda2);
  f.P(0, 0) = r1[0];
  f.P(0, 1) = r1[1];
  f.P(1, 0) = r2[0];
  f.P(1, 1) = r2[1];
  f.Pinv = f.P.inverse();
  f.Btilde = f.P * B * f.Pinv;
  return f;
}

std::optional<NotApplicable> check_spectrum(const Mat2c& A) {
  auto fr = eigenframe(A);
  if (auto* na = std::get_if<NotApplicable>(&fr)) return *na;
  const auto& f = std::get<EigenFrame>(fr);
  if (f.lambda2 >= 0) return NotApplicable{"both eigenvalues nonnegative: solutions blow up in both directions", f.lambda1, f.lambda2};
  if (f.lambda1 <= 0) return NotApplicable{"both eigenvalues nonpositive: solutions decay in both directions", f.lambda1, f.lambda2};
  return std::nullopt;
}

cd pencil_invariant(const PencilSystem& sys) {
  // b2 b3 / (l1 - l2) = -tr((A - l2)B(A - l1)B) / (l1 - l2)^3, expanded in
  // traces so no frame is needed.
  const Mat2c& A = sys.A;
  const Mat2c& B = sys.B;
  const cd s = A.trace(), p = A.determinant();
  const cd delta = std::sqrt(s * s - 4.0 * p);
  const Mat2c AB = A * B;
  const cd num = -((AB * AB).trace() - s * (AB * B).trace() + p * (B * B).trace());
  return num / (delta * delta * delta);
}

Solvability l2_solvability(const PencilSystem& sys, double tol) {
  if (auto na = check_spectrum(sys.A)) return *na;
  const cd kappa = pencil_invariant(sys);
  const double nearest = std::round(kappa.real());
  if (std::abs(kappa - cd(nearest, 0)) > tol || nearest > 0) return NotSolvable{};
  if (nearest <= -1) return Solvable{static_cast<long long>(-nearest)};
  // kappa = 0: b2 b3 = 0, and only b2 = 0 leaves the plain Gaussian along
  // the lambda2 eigenvector. (A - l2) B (A - l1) = -(l1 - l2)^2 b2 r1 l2^T.
  const cd s = sys.A.trace();
  const cd delta = std::sqrt(s * s - 4.0 * sys.A.determinant());
  const cd l1 = (s + delta) / 2.0, l2 = (s - delta) / 2.0;
  const Mat2c I = Mat2c::Identity();
  const Mat2c M = (sys.A - l2 * I) * sys.B * (sys.A - l1 * I);
  if (M.norm() <= tol * std::norm(delta) * (1 + sys.B.norm())) return Solvable{0};
  return NotSolvable{};
}

Solvability l2_solvability(const ExactPencilSystem& sys) {
  const Mat2Q& A = sys.A;
  const Mat2Q& B = sys.B;
  const GaussRational s = A.trace();
  const GaussRational p = A.det();
  if (!s.is_real() || !p.is_real()) return NotApplicable{"eigenvalues are not real", {}, {}};
  const Rational disc = s.re * s.re - Rational(4) * p.re;
  if (disc.sign() <= 0) return NotApplicable{disc.is_zero() ? "eigenvalues coincide" : "eigenvalues are not real", {}, {}};
  // p = l1 * l2 decides the sign pattern.
  if (p.re.sign() >= 0) {
    return NotApplicable{s.re.sign() > 0 ? "both eigenvalues nonnegative: solutions blow up in both directions"
                                         : "both eigenvalues nonpositive: solutions decay in both directions",
                         {}, {}};
  }
  const Mat2Q AB = A * B;
  const GaussRational num = -((AB * AB).trace() - s * (AB * B).trace() + p * (B * B).trace());
  const auto root = rational_sqrt(disc);
  if (num.is_zero()) {
    // b2 = 0 test, (A - l2) B (A - l1) = R - (delta / 2)(AB - BA) with
    // R = ABA - (s / 2)(AB + BA) + pB; delta is irrational unless disc is a square.
    const Mat2Q BA = B * A;
    const GaussRational half_s = s * GaussRational(Rational(1, 2));
    const Mat2Q R = AB * A - half_s * (AB + BA) + p * B;
    const Mat2Q C = AB - BA;
    const Mat2Q zero{};
    const bool b2_zero = root ? R - GaussRational(*root / Rational(2)) * C == zero : R == zero && C == zero;
    return b2_zero ? Solvability{Solvable{0}} : Solvability{NotSolvable{}};
  }
  if (!num.is_real()) return NotSolvable{};
  // kappa = num / sqrt(disc)^3 is rational only if disc is a rational square.
  if (!root) return NotSolvable{};
  const Rational kappa = num.re / (*root * *root * *root);
  if (!kappa.is_integer() || kappa.sign() >= 0) return NotSolvable{};
  return Solvable{static_cast<long long>(-kappa.num())};
}

}  // namespace kth
