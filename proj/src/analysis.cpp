#include "helmdg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "helmdg/quadrature.hpp"

namespace helmdg {

ErrorReport error_norms(const Mesh& mesh, const DiscreteSolution& sol,
                        const HelmholtzProblem& problem, double k) {
  if (!problem.has_exact())
    throw std::invalid_argument("error_norms: problem carries no exact solution");

  ErrorReport rep;
  rep.method = sol.method;
  rep.k = k;
  rep.m = mesh.m;
  rep.h = mesh.m > 0 ? 1.0 / mesh.m : 0.0;
  rep.assemble_seconds = sol.assemble_seconds;
  rep.solve_seconds = sol.solve_seconds;

  double err_h1 = 0.0, err_l2 = 0.0, err_sig = 0.0;
  double ex_h1 = 0.0, ex_l2 = 0.0, ex_sig = 0.0;
  double uh_l2 = 0.0, uh_h1 = 0.0, sig_l2 = 0.0;

  const TriangleRule& vol = triangle_rule(kDataTriangleDegree);
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    auto verts = triangle_vertices(mesh, t);
    P1Basis basis = p1_basis(verts);
    CVec2 grad_uh = eval_grad_u(mesh, sol, t);
    uh_h1 += basis.area * abs2(grad_uh);
    for (size_t q = 0; q < vol.points.size(); ++q) {
      Vec2 x = barycentric_point(verts, vol.points[q]);
      double w = vol.weights[q] * basis.area;
      ExactValue ex = problem.exact(x);
      Complex uh = eval_u(mesh, sol, t, x);
      CVec2 sh = eval_sigma(mesh, sol, t, x);
      err_l2 += w * abs2(ex.u - uh);
      err_h1 += w * abs2(ex.grad - grad_uh);
      err_sig += w * abs2(ex.grad - sh);
      ex_l2 += w * abs2(ex.u);
      ex_h1 += w * abs2(ex.grad);
      ex_sig += w * abs2(ex.grad);
      uh_l2 += w * abs2(uh);
      sig_l2 += w * abs2(sh);
    }
  }

  double err_bnd = 0.0, ex_bnd = 0.0, uh_bnd = 0.0, grad_uh_bnd = 0.0;
  const EdgeRule& edg = edge_rule(kDataEdgeDegree);
  for (int ei : mesh.boundary_edges) {
    const EdgeInfo& e = mesh.edges[ei];
    const int t = e.tri[0];
    CVec2 grad_uh = eval_grad_u(mesh, sol, t);
    grad_uh_bnd += e.length * abs2(grad_uh);
    Vec2 p0 = mesh.vertices[e.v0], p1 = mesh.vertices[e.v1];
    for (size_t q = 0; q < edg.points.size(); ++q) {
      Vec2 x = p0 + edg.points[q] * (p1 - p0);
      double w = edg.weights[q] * e.length;
      ExactValue ex = problem.exact(x);
      Complex uh = eval_u(mesh, sol, t, x);
      err_bnd += w * abs2(ex.u - uh);
      ex_bnd += w * abs2(ex.u);
      uh_bnd += w * abs2(uh);
    }
  }

  rep.h1_abs = std::sqrt(err_h1);
  rep.l2_abs = std::sqrt(err_l2);
  rep.sigma_abs = std::sqrt(err_sig);
  rep.boundary_l2_abs = std::sqrt(err_bnd);
  rep.exact_h1 = std::sqrt(ex_h1);
  rep.exact_l2 = std::sqrt(ex_l2);
  rep.exact_sigma = std::sqrt(ex_sig);
  rep.exact_boundary_l2 = std::sqrt(ex_bnd);
  auto rel = [](double abs, double ref) { return ref > 0.0 ? abs / ref : 0.0; };
  rep.h1_rel = rel(rep.h1_abs, rep.exact_h1);
  rep.l2_rel = rel(rep.l2_abs, rep.exact_l2);
  rep.sigma_rel = rel(rep.sigma_abs, rep.exact_sigma);
  rep.boundary_l2_rel = rel(rep.boundary_l2_abs, rep.exact_boundary_l2);

  const double c_omega = mesh.domain.star_constant;
  rep.u_dg = std::sqrt(k * k * uh_l2 + k * k * uh_bnd + c_omega * grad_uh_bnd + uh_h1);
  rep.pair_dg = std::sqrt(k * k * uh_l2 + k * k * uh_bnd + sig_l2 + c_omega * grad_uh_bnd);
  return rep;
}

Gammas stability_constants_over_edges(double k, std::span<const double> edge_lengths,
                                      const FluxParams& params) {
  if (edge_lengths.empty())
    throw std::invalid_argument("stability_constants: mesh has no interior edges");
  double max_ratio = 0.0, max_term1 = 0.0, max_term2 = 0.0;
  for (double h : edge_lengths) {
    const double beta = params.beta_on(h);
    const double delta = params.delta_on(h);
    max_ratio = std::max(max_ratio, std::sqrt(beta / delta));
    max_term1 = std::max(max_term1, (k * k + 1.0) / (beta * h) + 1.0 / (h * h) +
                                        1.0 / (beta * h * h * h));
    max_term2 = std::max(max_term2, (k * k + 1.0) / (beta * h) + (beta + delta) / h +
                                        delta / (h * h * h) + 1.0 / (beta * h * h * h));
  }
  return {1.0 + k + max_ratio + max_term1, k + max_term2};
}

Gammas stability_constants(double k, const Mesh& mesh, const FluxParams& params) {
  std::vector<double> lengths;
  lengths.reserve(mesh.interior_edges.size());
  for (int ei : mesh.interior_edges) lengths.push_back(mesh.edges[ei].length);
  return stability_constants_over_edges(k, lengths, params);
}

StabilityAudit stability_audit(Method method, const Mesh& mesh, double k,
                               const FluxParams& params, const HelmholtzProblem& problem) {
  if (method != Method::Ldg1 && method != Method::Ldg2)
    throw std::invalid_argument("stability_audit: only the mixed LDG methods are audited");

  // M(f, g) = ||f||_Omega + ||g||_Gamma with the data quadrature rules.
  double f2 = 0.0, g2 = 0.0;
  const TriangleRule& vol = triangle_rule(kDataTriangleDegree);
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    auto verts = triangle_vertices(mesh, t);
    double area = p1_basis(verts).area;
    for (size_t q = 0; q < vol.points.size(); ++q)
      f2 += vol.weights[q] * area * abs2(problem.source(barycentric_point(verts, vol.points[q])));
  }
  const EdgeRule& edg = edge_rule(kDataEdgeDegree);
  for (int ei : mesh.boundary_edges) {
    const EdgeInfo& e = mesh.edges[ei];
    Vec2 p0 = mesh.vertices[e.v0], p1 = mesh.vertices[e.v1];
    for (size_t q = 0; q < edg.points.size(); ++q) {
      Vec2 x = p0 + edg.points[q] * (p1 - p0);
      g2 += edg.weights[q] * e.length * abs2(problem.robin_datum(x, e.normal));
    }
  }
  const double data_norm = std::sqrt(f2) + std::sqrt(g2);
  if (!(data_norm > 0.0)) throw std::invalid_argument("stability_audit: zero data (f, g)");

  DiscreteSolution sol = solve_helmholtz(mesh, method, k, params, problem);
  // The DG norms of the discrete solution do not need an exact field; pad
  // with zero when none is known.
  HelmholtzProblem normed = problem;
  if (!normed.has_exact()) normed.exact = [](Vec2) { return ExactValue{}; };
  ErrorReport rep = error_norms(mesh, sol, normed, k);

  Gammas g = stability_constants(k, mesh, params);
  StabilityAudit audit;
  audit.method = method;
  audit.k = k;
  audit.m = mesh.m;
  audit.params = params;
  audit.gamma = method == Method::Ldg1 ? g.gamma1 : g.gamma2;
  audit.data_norm = data_norm;
  audit.dg_norm = method == Method::Ldg1 ? rep.u_dg : rep.pair_dg;
  audit.ratio = audit.dg_norm * k / (audit.gamma * data_norm);
  return audit;
}

RateTable convergence_rates(std::span<const ErrorReport> reports) {
  if (reports.size() < 2)
    throw std::invalid_argument("convergence_rates: need at least two reports");
  for (size_t i = 1; i < reports.size(); ++i) {
    const ErrorReport& a = reports[i - 1];
    const ErrorReport& b = reports[i];
    if (a.k != b.k || a.method != b.method)
      throw std::invalid_argument("convergence_rates: mixed (k, method) sequence");
    if (!(b.h < a.h)) throw std::invalid_argument("convergence_rates: h must strictly decrease");
  }
  auto order = [](double e1, double e2, double h1, double h2) -> std::optional<double> {
    if (e2 == 0.0 || e1 == 0.0) return std::nullopt;  // exact
    return std::log(e1 / e2) / std::log(h1 / h2);
  };
  RateTable table;
  for (size_t i = 1; i < reports.size(); ++i) {
    const ErrorReport& a = reports[i - 1];
    const ErrorReport& b = reports[i];
    table.h1.push_back(order(a.h1_abs, b.h1_abs, a.h, b.h));
    table.l2.push_back(order(a.l2_abs, b.l2_abs, a.h, b.h));
    table.sigma.push_back(order(a.sigma_abs, b.sigma_abs, a.h, b.h));
  }
  return table;
}

namespace {

// Deterministic containing-triangle rule for points of the line y = 0:
// gridline points resolve to the cell below, diagonal points to the lower
// triangle, vertical-line points to the right cell (left at x = +0.5).
int trace_triangle(const Mesh& mesh, double x) {
  const int m = mesh.m;
  const double gx = (x + 0.5) * m;
  int i = std::min(m - 1, std::max(0, static_cast<int>(std::floor(gx))));
  const int j = (m % 2 == 0) ? m / 2 - 1 : m / 2;
  const double xi = gx - i;
  const double eta = 0.5 * m - j;
  const int cell = j * m + i;
  return eta <= xi ? 2 * cell : 2 * cell + 1;
}

}  // namespace

std::vector<TracePoint> trace_sample(const Mesh& mesh, const DiscreteSolution& sol, int n) {
  if (n < 2) throw std::invalid_argument("trace_sample: need at least two samples");
  if (mesh.m < 1) throw std::invalid_argument("trace_sample: structured mesh required");
  std::vector<TracePoint> out(n);
  for (int s = 0; s < n; ++s) {
    double x = -0.5 + static_cast<double>(s) / (n - 1);
    int tri = trace_triangle(mesh, x);
    out[s] = {x, eval_u(mesh, sol, tri, {x, 0.0}).real()};
  }
  return out;
}

std::vector<TracePoint> trace_sample(const HelmholtzProblem& problem, int n) {
  if (n < 2) throw std::invalid_argument("trace_sample: need at least two samples");
  if (!problem.has_exact())
    throw std::invalid_argument("trace_sample: problem carries no exact solution");
  std::vector<TracePoint> out(n);
  for (int s = 0; s < n; ++s) {
    double x = -0.5 + static_cast<double>(s) / (n - 1);
    out[s] = {x, problem.exact({x, 0.0}).u.real()};
  }
  return out;
}

double interpolation_baseline(const Mesh& mesh, const HelmholtzProblem& problem) {
  if (!problem.has_exact())
    throw std::invalid_argument("interpolation_baseline: problem carries no exact solution");

  std::vector<Complex> nodal(mesh.vertices.size());
  for (size_t v = 0; v < mesh.vertices.size(); ++v) nodal[v] = problem.exact(mesh.vertices[v]).u;

  double err = 0.0, ref = 0.0;
  const TriangleRule& vol = triangle_rule(kDataTriangleDegree);
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    auto verts = triangle_vertices(mesh, t);
    P1Basis basis = p1_basis(verts);
    CVec2 grad_ih{};
    for (int i = 0; i < 3; ++i) {
      Complex v = nodal[mesh.triangles[t].v[i]];
      grad_ih.x += v * basis.grad[i].x;
      grad_ih.y += v * basis.grad[i].y;
    }
    for (size_t q = 0; q < vol.points.size(); ++q) {
      Vec2 x = barycentric_point(verts, vol.points[q]);
      double w = vol.weights[q] * basis.area;
      CVec2 ge = problem.exact(x).grad;
      err += w * abs2(ge - grad_ih);
      ref += w * abs2(ge);
    }
  }
  return ref > 0.0 ? std::sqrt(err / ref) : 0.0;
}

}  // namespace helmdg
