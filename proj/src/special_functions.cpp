#include "helmdg/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace helmdg {

namespace {

constexpr double kSeriesCutoff = 12.0;

double j0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int m = 1; m < 200; ++m) {
    term *= -q / (static_cast<double>(m) * m);
    sum += term;
    if (std::abs(term) < 1e-20) break;
  }
  return sum;
}

double j1_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int m = 1; m < 200; ++m) {
    term *= -q / (static_cast<double>(m) * (m + 1));
    sum += term;
    if (std::abs(term) < 1e-20) break;
  }
  return 0.5 * x * sum;
}

// Hankel asymptotic expansion
//   J_nu(x) ~ sqrt(2/(pi x)) (P cos(chi) - Q sin(chi)), chi = x - (2nu+1)pi/4
// with P, Q the usual even/odd series in the coefficients
//   a_j = a_{j-1} (4nu^2 - (2j-1)^2) / (8j).
// Seven terms in each series keep the truncation below 1e-9 for x >= 12.
double j_asymptotic(int nu, double x) {
  double a[15];
  a[0] = 1.0;
  const double four_nu2 = 4.0 * nu * nu;
  for (int j = 1; j < 15; ++j) {
    double odd = 2.0 * j - 1.0;
    a[j] = a[j - 1] * (four_nu2 - odd * odd) / (8.0 * j);
  }
  const double inv_x = 1.0 / x, inv_x2 = inv_x * inv_x;
  double p = 0.0, q = 0.0, sign = 1.0, xp = 1.0;
  for (int j = 0; j < 7; ++j) {
    p += sign * a[2 * j] * xp;
    q += sign * a[2 * j + 1] * xp * inv_x;
    sign = -sign;
    xp *= inv_x2;
  }
  const double chi = x - (2 * nu + 1) * std::numbers::pi / 4.0;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

double j0_impl(double x) { return x <= kSeriesCutoff ? j0_series(x) : j_asymptotic(0, x); }
double j1_impl(double x) { return x <= kSeriesCutoff ? j1_series(x) : j_asymptotic(1, x); }

}  // namespace

double bessel_j0(double x) {
  if (std::isnan(x)) throw std::invalid_argument("bessel_j0: NaN input");
  return j0_impl(std::abs(x));  // J0 is even
}

double bessel_j1(double x) {
  if (std::isnan(x)) throw std::invalid_argument("bessel_j1: NaN input");
  return x < 0.0 ? -j1_impl(-x) : j1_impl(x);  // J1 is odd
}

ExactValue exact_solution(double k, Vec2 p) {
  if (!(k > 0.0)) throw std::invalid_argument("exact_solution: k must be positive");
  const Complex denom{bessel_j0(k), bessel_j1(k)};
  if (std::abs(denom) < 1e-14)
    throw std::runtime_error("exact_solution: J0(k) + i J1(k) vanishes");
  const Complex coeff = std::exp(Complex{0.0, k}) / (k * denom);

  const double r = norm(p);
  ExactValue out;
  out.u = std::cos(k * r) / k - coeff * bessel_j0(k * r);
  if (r > 0.0) {
    // du/dr = -sin(kr) + coeff * k * J1(kr); the field is radial.
    const Complex du_dr = -std::sin(k * r) + coeff * (k * bessel_j1(k * r));
    out.grad = {du_dr * (p.x / r), du_dr * (p.y / r)};
  }
  return out;
}

Complex source_f(double k, Vec2 p) {
  const double kr = k * norm(p);
  if (kr < 1e-4) {
    double kr2 = kr * kr;
    return k * (1.0 - kr2 / 6.0 + kr2 * kr2 / 120.0);
  }
  return std::sin(kr) / norm(p);
}

Complex boundary_g(double k, Vec2 p, Vec2 n) {
  ExactValue e = exact_solution(k, p);
  return dot(e.grad, n) + kImaginary * k * e.u;
}

HelmholtzProblem make_radial_problem(double k) {
  if (!(k > 0.0)) throw std::invalid_argument("make_radial_problem: k must be positive");
  HelmholtzProblem prob;
  prob.k = k;
  prob.source = [k](Vec2 p) { return source_f(k, p); };
  prob.robin_datum = [k](Vec2 p, Vec2 n) { return boundary_g(k, p, n); };
  prob.exact = [k](Vec2 p) { return exact_solution(k, p); };
  return prob;
}

HelmholtzProblem make_linear_problem(double k) {
  if (!(k > 0.0)) throw std::invalid_argument("make_linear_problem: k must be positive");
  HelmholtzProblem prob;
  prob.k = k;
  prob.source = [k](Vec2 p) { return -k * k * Complex{p.x, p.y}; };
  prob.robin_datum = [k](Vec2 p, Vec2 n) {
    return Complex{n.x, n.y} + kImaginary * k * Complex{p.x, p.y};
  };
  prob.exact = [](Vec2 p) {
    ExactValue e;
    e.u = {p.x, p.y};
    e.grad = {Complex{1.0, 0.0}, Complex{0.0, 1.0}};
    return e;
  };
  return prob;
}

}  // namespace helmdg
