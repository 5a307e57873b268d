#pragma once

#include <array>
#include <functional>
#include <variant>
#include <vector>

#include "kth/geom/kt.hpp"
#include "kth/ode/schwartz.hpp"

namespace kth {

enum class FormDegree { Zero1, One1 };

/// Constant coefficients times exp(2 pi i (k t + l x + m y)).
/// (0,1): coeffs = {f, g} for s = f conj(phi1) + g conj(phi2).
/// (1,1): coeffs = {f11, f12, f21, f22} on phi_i ^ conj(phi_j).
struct TrigComponent {
  ZeroSector sector;
  std::vector<QPiC> coeffs;
};

/// Weil-Brezin series of a Schwartz pair (f, g) in one Heisenberg sector.
struct WBComponent {
  HeisenbergSector sector;
  SchwartzSolution schwartz;
};

using SectorComponent = std::variant<TrigComponent, WBComponent>;

struct HarmonicForm {
  FormDegree degree = FormDegree::Zero1;
  std::vector<SectorComponent> components;
};

struct Point4 {
  double t = 0, x = 0, y = 0, z = 0;
};

/// 5^4 points of the unit cube at half-step offsets, away from the twisted faces.
std::vector<Point4> half_offset_grid(int per_axis = 5);

/// n = 0 part of the (0,1) harmonic space. Standard metric: the constant
/// form plus (f, g) = (m, i l) for each nonzero lattice point of the circle.
/// h_rho: the candidates left after matching powers of pi, verified exactly.
std::vector<HarmonicForm> zero_sector_solutions(const AcsParams& p, const MetricSpec& metric);

struct WBValue {
  cd value;
  double bound = 0;  // truncation tail plus floating-point rounding allowance
};

/// sum over |xi| <= xi_cut of f(x + xi) exp(2 pi i (k t + (m + n xi) y + n z)).
WBValue weil_brezin_eval(const std::function<cd(double)>& f, const HeisenbergSector& s, const Point4& pt,
                         int xi_cut = 6);

/// Numeric parameters for residual evaluation; rho = 0 for the standard metric.
struct ResidualParams {
  double a = 0;
  double d = 1;
  double rho = 0;
};
ResidualParams residual_params(const AcsParams& p, const MetricSpec& metric);

struct ResidualReport {
  double residual = 0;  // max over the grid of |LHS (V1)| + |LHS (V2)|
  double truncation = 0;
};

/// Harmonicity defect of a form, summed over its components, analytic in
/// every derivative. Parallel over grid points when built with OpenMP.
ResidualReport pde_residual(const HarmonicForm& form, const ResidualParams& p, const std::vector<Point4>& grid,
                            int xi_cut = 6);
ResidualReport pde_residual_serial(const HarmonicForm& form, const ResidualParams& p, const std::vector<Point4>& grid,
                                   int xi_cut = 6);

}  // namespace kth
