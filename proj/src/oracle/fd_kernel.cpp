#include "kth/oracle/fd_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "kth/ode/matching.hpp"

namespace kth {

namespace {

using Block = Eigen::Matrix2cd;
using Stack = Eigen::Matrix<cd, 4, 2>;
using Panel = Eigen::Matrix<cd, Eigen::Dynamic, 4>;  // 2N x 4 block of vectors

// Upper block-bidiagonal R with diagonal blocks D[c] and superdiagonal T[c]
// (coupling column c+1 into row c).
struct BlockR {
  std::vector<Block> D, Dinv, T;
  int N = 0;

  void apply(const Panel& y, Panel& out) const {
    out.resize(y.rows(), 4);
    for (int c = 0; c < N; ++c) {
      out.middleRows<2>(2 * c) = D[static_cast<std::size_t>(c)] * y.middleRows<2>(2 * c);
      if (c + 1 < N) out.middleRows<2>(2 * c) += T[static_cast<std::size_t>(c)] * y.middleRows<2>(2 * c + 2);
    }
  }

  // (R^H R)^{-1} y by a forward sweep with R^H and a backward sweep with R.
  void solve_normal(Panel& y) const {
    for (int c = 0; c < N; ++c) {
      if (c > 0) y.middleRows<2>(2 * c) -= T[static_cast<std::size_t>(c - 1)].adjoint() * y.middleRows<2>(2 * c - 2);
      y.middleRows<2>(2 * c) = Dinv[static_cast<std::size_t>(c)].adjoint() * y.middleRows<2>(2 * c).eval();
    }
    for (int c = N - 1; c >= 0; --c) {
      if (c + 1 < N) y.middleRows<2>(2 * c) -= T[static_cast<std::size_t>(c)] * y.middleRows<2>(2 * c + 2);
      y.middleRows<2>(2 * c) = Dinv[static_cast<std::size_t>(c)] * y.middleRows<2>(2 * c).eval();
    }
  }
};

// Cholesky QR, applied twice to recover orthogonality lost to rounding.
void orthonormalize(Panel& y) {
  for (int pass = 0; pass < 2; ++pass) {
    const Eigen::Matrix4cd gram = y.adjoint() * y;
    const Eigen::LLT<Eigen::Matrix4cd> llt(gram);
    const Eigen::Matrix4cd Linv = llt.matrixL().solve(Eigen::Matrix4cd::Identity());
    y = (y * Linv.adjoint()).eval();
  }
}

Panel random_panel(Eigen::Index rows, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  Panel p(rows, 4);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (int j = 0; j < 4; ++j) p(i, j) = cd(g(rng), g(rng));
  return p;
}

}  // namespace

FdKernelResult fd_sector_kernel(const PencilSystem& sys, const FdOptions& opt) {
  const OracleWindow w = oracle_window(sys);
  const double W = opt.half_width > 0 ? opt.half_width : w.half_width;
  const Block& A = w.A0;
  const Block& B = w.B1;
  int N = opt.N;
  if (N <= 0) {
    const double cmax = A.norm() * W + B.norm();
    const double h_target = std::min(0.05, 0.25 / cmax);
    N = std::max(200, static_cast<int>(std::ceil(2 * W / h_target)) - 1);
  }
  const double h = 2 * W / (N + 1);
  const Block I = Block::Identity();
  auto C = [&](int j) { return (A * (-W + j * h) + B).eval(); };
  auto Lft = [&](int j) {
    const Block c = C(j);
    return ((I - h / 2 * c + h * h / 12 * (A + c * c)) / h).eval();
  };
  auto Rgt = [&](int j) {
    const Block c = C(j);
    return ((I + h / 2 * c + h * h / 12 * (A + c * c)) / h).eval();
  };

  // Block Householder QR, one block column at a time. Column c (node c+1)
  // touches block rows c and c+1 only.
  BlockR R;
  R.N = N;
  R.D.resize(static_cast<std::size_t>(N));
  R.Dinv.resize(static_cast<std::size_t>(N));
  R.T.resize(static_cast<std::size_t>(std::max(N - 1, 0)));
  Block carry = Lft(1);
  for (int c = 0; c < N; ++c) {
    Stack s;
    s.topRows<2>() = carry;
    s.bottomRows<2>() = -Rgt(c + 1);
    Eigen::HouseholderQR<Stack> qr(s);
    const Block Rc = qr.matrixQR().topRows<2>().triangularView<Eigen::Upper>();
    R.D[static_cast<std::size_t>(c)] = Rc;
    R.Dinv[static_cast<std::size_t>(c)] = Rc.inverse();
    if (c + 1 < N) {
      Stack next = Stack::Zero();
      next.bottomRows<2>() = Lft(c + 2);
      next.applyOnTheLeft(qr.householderQ().adjoint());
      R.T[static_cast<std::size_t>(c)] = next.topRows<2>();
      carry = next.bottomRows<2>();
    }
  }

  const Eigen::Index rows = 2 * static_cast<Eigen::Index>(N);
  // Largest singular value by power iteration on R^H R.
  Eigen::VectorXcd v = random_panel(rows, 7).col(0), Rv(rows), back(rows);
  double norm = 0;
  for (int it = 0; it < 40; ++it) {
    v /= v.norm();
    for (int c = 0; c < N; ++c) {
      Rv.segment<2>(2 * c) = R.D[static_cast<std::size_t>(c)] * v.segment<2>(2 * c);
      if (c + 1 < N) Rv.segment<2>(2 * c) += R.T[static_cast<std::size_t>(c)] * v.segment<2>(2 * c + 2);
    }
    for (int c = 0; c < N; ++c) {
      back.segment<2>(2 * c) = R.D[static_cast<std::size_t>(c)].adjoint() * Rv.segment<2>(2 * c);
      if (c > 0) back.segment<2>(2 * c) += R.T[static_cast<std::size_t>(c - 1)].adjoint() * Rv.segment<2>(2 * c - 2);
    }
    norm = std::sqrt(back.norm());
    v = back;
  }

  // Two smallest singular values: inverse subspace iteration with a
  // Rayleigh-Ritz step on the 4-dimensional subspace each round.
  Panel Y = random_panel(rows, 11);
  orthonormalize(Y);
  double s1 = 0, s2 = 0;
  for (int it = 0; it < 200; ++it) {
    R.solve_normal(Y);
    orthonormalize(Y);
    Panel RY;
    R.apply(Y, RY);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(RY.adjoint() * RY);
    Y = Y * eig.eigenvectors();
    const double n1 = std::sqrt(std::max(eig.eigenvalues()(0), 0.0));
    const double n2 = std::sqrt(std::max(eig.eigenvalues()(1), 0.0));
    const bool done = it > 2 && std::abs(n1 - s1) <= 1e-4 * n1 && std::abs(n2 - s2) <= 1e-4 * n2;
    s1 = n1;
    s2 = n2;
    if (done) break;
  }

  FdKernelResult r;
  r.N = N;
  r.half_width = W;
  r.h = h;
  r.sigma_min = s1 / norm;
  r.sigma_gap = (s2 - s1) / norm;
  r.dim = (r.sigma_min < opt.tol ? 1 : 0) + (s2 / norm < opt.tol ? 1 : 0);
  // Fragile when the nearest singular value on either side of the threshold
  // sits within a factor 10 of it. Non-solvable sectors routinely have a
  // near-degenerate lowest pair, so sigma_gap alone says nothing there.
  const double above = r.dim == 0 ? r.sigma_min : s2 / norm;
  const double below = r.dim == 0 ? 0.0 : r.sigma_min;
  r.ill_conditioned = above < 10 * opt.tol || below > opt.tol / 10;
  return r;
}

}  // namespace kth
