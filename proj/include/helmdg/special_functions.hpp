#pragma once

#include <functional>

#include "helmdg/types.hpp"

namespace helmdg {

/// Bessel functions of the first kind, |error| <= 1e-8 on [0, 200].
/// Power series for small arguments, Hankel asymptotic expansion beyond.
double bessel_j0(double x);
double bessel_j1(double x);

struct ExactValue {
  Complex u{};
  CVec2 grad{};
};

/// Helmholtz model problem -Laplace(u) - k^2 u = f with the first-order
/// absorbing condition du/dn + i k u = g on the boundary. The exact solution
/// (when known) is used by error norms and trace plots.
struct HelmholtzProblem {
  double k = 0.0;
  std::function<Complex(Vec2)> source;             ///< f(x)
  std::function<Complex(Vec2, Vec2)> robin_datum;  ///< g(x, unit outward normal)
  std::function<ExactValue(Vec2)> exact;           ///< empty when no closed form
  bool has_exact() const { return static_cast<bool>(exact); }
};

/// Radial reference solution u = cos(kr)/k - e^{ik} / (k (J0(k)+iJ1(k))) J0(kr),
/// which satisfies the equation with f = sin(kr)/r; g follows from u.
ExactValue exact_solution(double k, Vec2 p);
Complex source_f(double k, Vec2 p);
Complex boundary_g(double k, Vec2 p, Vec2 n);
HelmholtzProblem make_radial_problem(double k);

/// u = x + i y (f = -k^2 u, g by substitution). P1 schemes reproduce it to
/// solver accuracy, which pins down assembly signs exactly.
HelmholtzProblem make_linear_problem(double k);

}  // namespace helmdg
