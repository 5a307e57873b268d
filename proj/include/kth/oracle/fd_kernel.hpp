#pragma once

#include "kth/ode/pencil.hpp"

namespace kth {

struct FdKernelResult {
  int dim = 0;              // singular values below tol * |M|
  double sigma_min = 0;     // smallest singular value, relative to |M|
  double sigma_gap = 0;     // (sigma_2 - sigma_1) / |M|
  bool ill_conditioned = false;  // a singular value within 10x of tol on the wrong side
  int N = 0;
  double half_width = 0;
  double h = 0;
};

struct FdOptions {
  double half_width = 0;  // <= 0: same window as the matching oracle
  int N = 0;              // interior nodes; <= 0 picks from the local stiffness, at least 200
  double tol = 1e-6;
};

/// Kernel dimension of y -> y' - (Ax+B)y on [-X, X] with zero end values.
/// The operator is discretized with the two-point Hermite rule
///   (I - h/2 C1 + h^2/12 G1) y1 = (I + h/2 C0 + h^2/12 G0) y0,
/// C = A x + B, G = A + C^2, which is fourth order and has no
/// odd-even decoupled mode. The (2N+2) x 2N matrix is block bidiagonal; it
/// is reduced by block Householder QR and its two smallest singular values
/// come from inverse subspace iteration on R^H R.
FdKernelResult fd_sector_kernel(const PencilSystem& sys, const FdOptions& opt = {});

}  // namespace kth
