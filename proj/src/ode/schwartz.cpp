#include "kth/ode/schwartz.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kth {

namespace {

// Unknowns (p_0..p_K, q_0..q_K) of the eigenframe pair; rows are the x^j
// coefficients of
//   p' - (delta x + c) p - b2 q   (j = 0..K+1)
//   q' - b3 p                     (j = 0..K)
// with delta = lambda1 - lambda2 and c = b1 - b4.
template <class T>
std::vector<std::vector<T>> ansatz_matrix(int K, const T& delta, const T& c, const T& b2, const T& b3) {
  const int cols = 2 * (K + 1);
  auto P = [](int j) { return j; };
  auto Q = [K](int j) { return K + 1 + j; };
  std::vector<std::vector<T>> m;
  for (int j = 0; j <= K + 1; ++j) {
    std::vector<T> row(static_cast<std::size_t>(cols), T{});
    if (j + 1 <= K) row[static_cast<std::size_t>(P(j + 1))] += T(static_cast<long long>(j + 1));
    if (j - 1 >= 0 && j - 1 <= K) row[static_cast<std::size_t>(P(j - 1))] -= delta;
    if (j <= K) {
      row[static_cast<std::size_t>(P(j))] -= c;
      row[static_cast<std::size_t>(Q(j))] -= b2;
    }
    m.push_back(std::move(row));
  }
  for (int j = 0; j <= K; ++j) {
    std::vector<T> row(static_cast<std::size_t>(cols), T{});
    if (j + 1 <= K) row[static_cast<std::size_t>(Q(j + 1))] += T(static_cast<long long>(j + 1));
    row[static_cast<std::size_t>(P(j))] -= b3;
    m.push_back(std::move(row));
  }
  return m;
}

template <class T>
void trim(Poly<T>& p, auto is_negligible) {
  while (!p.empty() && is_negligible(p.back())) p.pop_back();
}

}  // namespace

Vec2c SchwartzSolution::eval(double x) const {
  const cd e = std::exp(cd(lambda2 * x * x / 2) + mu * x);
  return Vec2c(e * poly_eval(polyF, cd(x)), e * poly_eval(polyG, cd(x)));
}

Vec2c SchwartzSolution::derivative(double x) const {
  const cd e = std::exp(cd(lambda2 * x * x / 2) + mu * x);
  const cd lin = lambda2 * x + mu;
  const cd F = poly_eval(polyF, cd(x)), G = poly_eval(polyG, cd(x));
  const cd dF = poly_eval(poly_derivative(polyF), cd(x)), dG = poly_eval(poly_derivative(polyG), cd(x));
  return Vec2c(e * (lin * F + dF), e * (lin * G + dG));
}

SchwartzSolution ExactSchwartzSolution::to_float() const {
  SchwartzSolution s;
  s.lambda2 = lambda2.to_double();
  s.mu = mu.to_complex();
  for (const auto& c : polyF) s.polyF.push_back(c.to_complex());
  for (const auto& c : polyG) s.polyG.push_back(c.to_complex());
  s.frame = frame.to_float();
  return s;
}

SchwartzSolution construct_schwartz_solution(const PencilSystem& sys) {
  const auto verdict = l2_solvability(sys);
  const auto* ok = std::get_if<Solvable>(&verdict);
  if (!ok) throw std::invalid_argument("construct_schwartz_solution requires a Solvable system");
  const EigenFrame fr = std::get<EigenFrame>(eigenframe(sys.A, sys.B));
  const cd delta = fr.lambda1 - fr.lambda2;
  const cd b1 = fr.Btilde(0, 0), b2 = fr.Btilde(0, 1), b3 = fr.Btilde(1, 0), b4 = fr.Btilde(1, 1);
  const long long k = ok->kindex;
  for (long long K = k + 1; K <= k + 3; ++K) {
    const auto rows = ansatz_matrix<cd>(static_cast<int>(K), delta, b1 - b4, b2, b3);
    Eigen::MatrixXcd M(static_cast<Eigen::Index>(rows.size()), 2 * (K + 1));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < rows[i].size(); ++j) M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (smin > 1e-8 * sv(0)) continue;
    const Eigen::VectorXcd v = svd.matrixV().col(M.cols() - 1);
    Poly<cd> p(v.data(), v.data() + K + 1), q(v.data() + K + 1, v.data() + 2 * (K + 1));
    const double vmax = v.cwiseAbs().maxCoeff();
    auto small = [vmax](const cd& z) { return std::abs(z) <= 1e-10 * vmax; };
    trim(p, small);
    trim(q, small);
    if (q.empty()) continue;
    const cd lead = q.back();
    for (auto& z : p) z /= lead;
    for (auto& z : q) z /= lead;
    SchwartzSolution s;
    s.lambda2 = fr.lambda2;
    s.mu = b4;
    s.frame = fr;
    const std::size_t deg = std::max(p.size(), q.size());
    p.resize(deg);
    q.resize(deg);
    for (std::size_t i = 0; i < deg; ++i) {
      s.polyF.push_back(fr.Pinv(0, 0) * p[i] + fr.Pinv(0, 1) * q[i]);
      s.polyG.push_back(fr.Pinv(1, 0) * p[i] + fr.Pinv(1, 1) * q[i]);
    }
    return s;
  }
  throw DegreeExhausted("no polynomial solution up to degree " + std::to_string(k + 3));
}

ExactSchwartzSolution construct_schwartz_solution(const ExactPencilSystem& sys) {
  const auto verdict = l2_solvability(sys);
  const auto* ok = std::get_if<Solvable>(&verdict);
  if (!ok) throw std::invalid_argument("construct_schwartz_solution requires a Solvable system");
  const auto frv = eigenframe(sys.A, sys.B);
  if (std::holds_alternative<NotApplicable>(frv)) throw std::logic_error("solvable system without a rational eigenframe");
  const ExactEigenFrame& fr = std::get<ExactEigenFrame>(frv);
  const GaussRational delta = fr.lambda1 - fr.lambda2;
  const GaussRational b1 = fr.Btilde(0, 0), b2 = fr.Btilde(0, 1), b3 = fr.Btilde(1, 0), b4 = fr.Btilde(1, 1);
  const long long k = ok->kindex;
  for (long long K = k + 1; K <= k + 3; ++K) {
    const auto rows = ansatz_matrix<GaussRational>(static_cast<int>(K), delta, b1 - b4, b2, b3);
    const auto basis = nullspace(rows, static_cast<std::size_t>(2 * (K + 1)));
    if (basis.empty()) continue;
    const auto& v = basis.front();
    Poly<GaussRational> p(v.begin(), v.begin() + K + 1), q(v.begin() + K + 1, v.end());
    auto zero = [](const GaussRational& z) { return z.is_zero(); };
    trim(p, zero);
    trim(q, zero);
    if (q.empty()) continue;
    const GaussRational inv = q.back().inverse();
    for (auto& z : p) z *= inv;
    for (auto& z : q) z *= inv;
    ExactSchwartzSolution s;
    s.lambda2 = fr.lambda2;
    s.mu = b4;
    s.frame = fr;
    const std::size_t deg = std::max(p.size(), q.size());
    p.resize(deg);
    q.resize(deg);
    for (std::size_t i = 0; i < deg; ++i) {
      s.polyF.push_back(fr.Pinv(0, 0) * p[i] + fr.Pinv(0, 1) * q[i]);
      s.polyG.push_back(fr.Pinv(1, 0) * p[i] + fr.Pinv(1, 1) * q[i]);
    }
    return s;
  }
  throw DegreeExhausted("no polynomial solution up to degree " + std::to_string(k + 3));
}

namespace {

// exp(-phase) * (y' - (Ax+B) y) = (lambda2 x + mu) V + V' - (A x + B) V.
template <class T, class M>
std::array<Poly<T>, 2> residual_polys(const T& lambda2, const T& mu, const Poly<T>& F, const Poly<T>& G, const M& A,
                                      const M& B) {
  const std::size_t n = std::max(F.size(), G.size()) + 1;
  std::array<Poly<T>, 2> V{F, G};
  for (auto& v : V) v.resize(n);
  std::array<Poly<T>, 2> out{Poly<T>(n), Poly<T>(n)};
  for (int r = 0; r < 2; ++r) {
    auto& o = out[static_cast<std::size_t>(r)];
    const auto& vr = V[static_cast<std::size_t>(r)];
    // V is padded by one zero coefficient, so stopping at n - 1 drops nothing.
    for (std::size_t j = 0; j + 1 < n; ++j) {
      o[j + 1] += lambda2 * vr[j];
      o[j] += mu * vr[j];
      o[j] += T(static_cast<long long>(j + 1)) * vr[j + 1];
      for (int c = 0; c < 2; ++c) {
        const auto& vc = V[static_cast<std::size_t>(c)];
        o[j + 1] -= A(r, c) * vc[j];
        o[j] -= B(r, c) * vc[j];
      }
    }
  }
  return out;
}

}  // namespace

std::vector<GaussRational> coefficient_residual(const ExactSchwartzSolution& sol, const ExactPencilSystem& sys) {
  const auto polys = residual_polys<GaussRational>(GaussRational(sol.lambda2), sol.mu, sol.polyF, sol.polyG, sys.A, sys.B);
  std::vector<GaussRational> out(polys[0]);
  out.insert(out.end(), polys[1].begin(), polys[1].end());
  return out;
}

double coefficient_residual(const SchwartzSolution& sol, const PencilSystem& sys) {
  const auto polys = residual_polys<cd>(cd(sol.lambda2), sol.mu, sol.polyF, sol.polyG, sys.A, sys.B);
  double worst = 0, scale = 0;
  for (const auto& p : polys)
    for (const auto& z : p) worst = std::max(worst, std::abs(z));
  for (const auto* p : {&sol.polyF, &sol.polyG})
    for (const auto& z : *p) scale = std::max(scale, std::abs(z));
  return scale > 0 ? worst / scale : worst;
}

double residual(const SchwartzSolution& sol, const PencilSystem& sys, const std::vector<double>& xs) {
  double worst = 0;
  for (double x : xs) {
    const Vec2c y = sol.eval(x);
    const Vec2c r = sol.derivative(x) - (sys.A * x + sys.B) * y;
    worst = std::max(worst, r.norm() / (1 + y.norm()));
  }
  return worst;
}

}  // namespace kth
