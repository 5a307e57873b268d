#include "kth/ode/matching.hpp"

#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>

namespace kth {

namespace odeint = boost::numeric::odeint;

OracleWindow oracle_window(const PencilSystem& sys) {
  if (auto na = check_spectrum(sys.A)) throw std::invalid_argument("matching oracle: " + na->reason);
  // Scalar parts only rescale every solution by a common factor, which the
  // normalized determinant ignores.
  const Mat2c I = Mat2c::Identity();
  OracleWindow w;
  w.A0 = sys.A - sys.A.trace() / 2.0 * I;
  const Mat2c B0 = sys.B - sys.B.trace() / 2.0 * I;
  w.frame = std::get<EigenFrame>(eigenframe(w.A0, B0));
  const double delta = w.frame.lambda1 - w.frame.lambda2;
  const cd b4 = w.frame.Btilde(1, 1);
  // b1 = -b4 after the trace is removed; this shift zeroes both
  w.centre = b4 / (delta / 2);
  w.B1 = B0 + w.A0 * w.centre;
  const double kappa = std::abs(pencil_invariant(sys));
  w.half_width = std::sqrt((80 + 8 * kappa) / delta);
  return w;
}

namespace {

using State = std::array<cd, 2>;

State shoot(const Mat2c& A, const Mat2c& B, const Vec2c& start, double from, double to, double lambda_max) {
  State y{start(0), start(1)};
  auto rhs = [&](const State& v, State& dv, double x) {
    dv[0] = (A(0, 0) * x + B(0, 0)) * v[0] + (A(0, 1) * x + B(0, 1)) * v[1];
    dv[1] = (A(1, 0) * x + B(1, 0)) * v[0] + (A(1, 1) * x + B(1, 1)) * v[1];
  };
  auto stepper = odeint::make_controlled(1e-14, 1e-12, odeint::runge_kutta_dopri5<State>());
  const double span = std::abs(to - from);
  const double chunk = std::min(0.1, 10.0 / (lambda_max * std::max(span, 1.0)));
  const int pieces = static_cast<int>(std::ceil(span / chunk));
  const double dir = to > from ? 1.0 : -1.0;
  for (int i = 0; i < pieces; ++i) {
    const double x0 = from + dir * span * i / pieces;
    const double x1 = from + dir * span * (i + 1) / pieces;
    try {
      odeint::integrate_adaptive(stepper, rhs, y, x0, x1, dir * chunk / 4);
    } catch (const std::exception& e) {
      throw StepFailure(std::string("matching oracle integration failed: ") + e.what());
    }
    const double nrm = std::hypot(std::abs(y[0]), std::abs(y[1]));
    if (!std::isfinite(nrm) || nrm == 0) throw StepFailure("matching oracle integration lost the solution");
    y[0] /= nrm;
    y[1] /= nrm;
  }
  return y;
}

}  // namespace

MatchResult matching_oracle(const PencilSystem& sys, double half_width, double tol) {
  const OracleWindow w = oracle_window(sys);
  const double W = half_width > 0 ? half_width : w.half_width;
  const Vec2c decaying = w.frame.Pinv.col(1);
  const double lambda_max = std::max(std::abs(w.frame.lambda1), std::abs(w.frame.lambda2));
  const State ym = shoot(w.A0, w.B1, decaying, -W, 0, lambda_max);
  const State yp = shoot(w.A0, w.B1, decaying, W, 0, lambda_max);
  MatchResult r;
  r.defect = std::abs(ym[0] * yp[1] - ym[1] * yp[0]);  // both already unit length
  r.l2_exists = r.defect < tol;
  r.half_width = W;
  r.centre = w.centre;
  return r;
}

}  // namespace kth
