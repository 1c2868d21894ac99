#pragma once

#include <optional>
#include <span>
#include <vector>

#include "helmdg/solution.hpp"

namespace helmdg {

/// Per-(k, h) error record. `u_dg` and `pair_dg` are the k-weighted DG norms
/// of the discrete solution itself (not of the error); they feed the
/// stability audits. Relative errors divide by the same norm of the exact
/// solution, computed with the degree-5/7 data rules on the same mesh.
struct ErrorReport {
  Method method = Method::Ldg1;
  double k = 0.0;
  int m = 0;
  double h = 0.0;
  FluxParams params;

  double h1_abs = 0.0, h1_rel = 0.0;
  double l2_abs = 0.0, l2_rel = 0.0;
  double boundary_l2_abs = 0.0, boundary_l2_rel = 0.0;
  double sigma_abs = 0.0, sigma_rel = 0.0;

  double exact_h1 = 0.0, exact_l2 = 0.0, exact_boundary_l2 = 0.0, exact_sigma = 0.0;

  double u_dg = 0.0;    ///< ||u_h||_DG
  double pair_dg = 0.0; ///< |||(u_h, sigma_h)|||_DG

  double assemble_seconds = 0.0;
  double solve_seconds = 0.0;
};

ErrorReport error_norms(const Mesh& mesh, const DiscreteSolution& sol,
                        const HelmholtzProblem& problem, double k);

struct Gammas {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

/// Stability constants over the interior edges, with the per-edge penalty
/// values:
///   gamma1 = 1 + k + max sqrt(beta_e/delta_e)
///              + max ( (k^2+1)/(beta_e h_e) + 1/h_e^2 + 1/(beta_e h_e^3) )
///   gamma2 = k + max ( (k^2+1)/(beta_e h_e) + (beta_e+delta_e)/h_e
///              + delta_e/h_e^3 + 1/(beta_e h_e^3) )
Gammas stability_constants(double k, const Mesh& mesh, const FluxParams& params);
Gammas stability_constants_over_edges(double k, std::span<const double> edge_lengths,
                                      const FluxParams& params);

struct StabilityAudit {
  Method method = Method::Ldg1;
  double k = 0.0;
  int m = 0;
  FluxParams params;
  double gamma = 0.0;    ///< gamma1 (ldg1) or gamma2 (ldg2)
  double data_norm = 0.0;  ///< M(f, g) = ||f|| + ||g||_Gamma
  double dg_norm = 0.0;  ///< ||u_h||_DG or |||(u_h, sigma_h)|||_DG
  double ratio = 0.0;    ///< dg_norm * k / (gamma * data_norm)
};

/// Solves the given mixed method and reports the observed constant of the
/// stability estimate. Requires nonzero data (M(f,g) > 0).
StabilityAudit stability_audit(Method method, const Mesh& mesh, double k,
                               const FluxParams& params, const HelmholtzProblem& problem);

/// Observed order between consecutive reports, log(e1/e2)/log(h1/h2).
/// An empty optional marks an exact (zero-error) denominator.
struct RateTable {
  std::vector<std::optional<double>> h1;
  std::vector<std::optional<double>> l2;
  std::vector<std::optional<double>> sigma;
};

RateTable convergence_rates(std::span<const ErrorReport> reports);

struct TracePoint {
  double x = 0.0;
  double value = 0.0;  ///< Re u(x, 0)
};

/// Samples Re u_h along y = 0 at n uniform points of [-0.5, 0.5]. Points on
/// element boundaries evaluate from the element whose interior lies below
/// the line (and left-continuously at x = 0.5).
std::vector<TracePoint> trace_sample(const Mesh& mesh, const DiscreteSolution& sol, int n);
std::vector<TracePoint> trace_sample(const HelmholtzProblem& problem, int n);

/// Relative broken H1 error of the continuous P1 nodal interpolant.
double interpolation_baseline(const Mesh& mesh, const HelmholtzProblem& problem);

}  // namespace helmdg
