#pragma once

#include <stdexcept>
#include <vector>

#include "kth/ode/pencil.hpp"

namespace kth {

struct DegreeExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Coefficients in increasing degree.
template <class T>
using Poly = std::vector<T>;

/// (f, g)(x) = exp(lambda2 x^2 / 2 + mu x) * (F(x), G(x)), where (F, G) is
/// P^-1 applied to the eigenframe polynomial pair (p, q). The pair is scaled
/// so that q has leading coefficient 1.
struct SchwartzSolution {
  double lambda2 = 0;
  cd mu{};
  Poly<cd> polyF, polyG;
  EigenFrame frame;

  Vec2c eval(double x) const;
  Vec2c derivative(double x) const;
};

struct ExactSchwartzSolution {
  Rational lambda2;
  GaussRational mu;
  Poly<GaussRational> polyF, polyG;
  ExactEigenFrame frame;

  SchwartzSolution to_float() const;
};

/// Requires l2_solvability(sys) == Solvable(k). Degree bound k+1, retried up to k+3.
SchwartzSolution construct_schwartz_solution(const PencilSystem& sys);
ExactSchwartzSolution construct_schwartz_solution(const ExactPencilSystem& sys);

/// Polynomial coefficients of exp(-phase) * (y' - (Ax+B) y); all zero for an exact solution.
std::vector<GaussRational> coefficient_residual(const ExactSchwartzSolution& sol, const ExactPencilSystem& sys);
double coefficient_residual(const SchwartzSolution& sol, const PencilSystem& sys);

/// max over xs of |y'(x) - (Ax+B) y(x)| / (1 + |y(x)|); 0 for empty xs.
double residual(const SchwartzSolution& sol, const PencilSystem& sys, const std::vector<double>& xs);

template <class T>
T poly_eval(const Poly<T>& p, const T& x) {
  T acc{};
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

template <class T>
Poly<T> poly_derivative(const Poly<T>& p) {
  Poly<T> d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(T(static_cast<long long>(i)) * p[i]);
  return d;
}

}  // namespace kth
