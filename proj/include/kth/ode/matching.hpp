#pragma once

#include <stdexcept>

#include "kth/ode/pencil.hpp"

namespace kth {

struct StepFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MatchResult {
  bool l2_exists = false;
  double defect = 0;      // |det[y-, y+]| / (|y-| |y+|) at the window centre
  double half_width = 0;  // integration started at centre -/+ half_width
  cd centre{};
};

inline constexpr double kMatchTolerance = 1e-5;

/// Shoots the decaying branch inward from both ends and measures how far
/// the two arrivals are from being parallel. half_width <= 0 selects the
/// default window, wide enough for 40 e-foldings plus room for the polynomial
/// factor. Throws StepFailure if the integrator gives up; requires real
/// eigenvalues of opposite sign.
MatchResult matching_oracle(const PencilSystem& sys, double half_width = 0, double tol = kMatchTolerance);

/// Window used by the numerical oracles: centre of the decaying Gaussian and
/// its half-width, in the coordinate of sys. The centre is complex in
/// general; the oracles work on the line centre + t, t real. Solutions are
/// entire and Gaussian decay dominates any fixed imaginary offset, so L^2
/// membership is the same on every horizontal line, while on the real line
/// an off-axis centre leaves a Stokes coefficient of size
/// exp(-|Im centre|^2 delta / 2) that double precision cannot resolve.
struct OracleWindow {
  cd centre{};
  double half_width = 0;
  Mat2c A0;  // A with its scalar part removed
  Mat2c B1;  // B with its scalar part removed, re-expanded about the centre
  EigenFrame frame;
};
OracleWindow oracle_window(const PencilSystem& sys);

}  // namespace kth
