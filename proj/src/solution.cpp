#include "helmdg/solution.hpp"

#include <chrono>

#include "helmdg/quadrature.hpp"
#include "helmdg/solver.hpp"

namespace helmdg {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

DiscreteSolution solve_helmholtz(const Mesh& mesh, Method method, double k,
                                 const FluxParams& params, const HelmholtzProblem& problem) {
  DiscreteSolution sol;
  sol.method = method;
  const int nt = static_cast<int>(mesh.triangles.size());

  auto t0 = std::chrono::steady_clock::now();
  AssembledSystem sys = [&] {
    switch (method) {
      case Method::Ldg1: return assemble_ldg1(mesh, k, params);
      case Method::Ldg2: return assemble_ldg2(mesh, k, params);
      case Method::IpdgPrimal: return assemble_primal_ipdg(mesh, k, params);
      case Method::FemP1: return assemble_conforming_fem(mesh, k);
    }
    throw std::invalid_argument("solve_helmholtz: unknown method");
  }();
  std::vector<Complex> rhs = assemble_rhs(mesh, k, problem, sys.dofmap);
  sol.assemble_seconds = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  sol.raw = sparse_lu_solve(sys.matrix, rhs);
  sol.solve_seconds = seconds_since(t0);

  switch (method) {
    case Method::Ldg1:
    case Method::Ldg2:
      sol.u_nodal.assign(sol.raw.begin(), sol.raw.begin() + sys.dofmap.n_u());
      sol.sigma_nodal.assign(sol.raw.begin() + sys.dofmap.n_u(), sol.raw.end());
      break;
    case Method::IpdgPrimal:
      sol.u_nodal = sol.raw;
      sol.sigma_nodal = reconstruct_flux(mesh, params, sol.u_nodal);
      break;
    case Method::FemP1: {
      sol.u_nodal.resize(static_cast<size_t>(3) * nt);
      sol.sigma_nodal.resize(static_cast<size_t>(6) * nt);
      for (int t = 0; t < nt; ++t) {
        const Triangle& tri = mesh.triangles[t];
        P1Basis basis = p1_basis(mesh, t);
        CVec2 g{};
        for (int i = 0; i < 3; ++i) {
          Complex v = sol.raw[tri.v[i]];
          sol.u_nodal[3 * t + i] = v;
          g.x += v * basis.grad[i].x;
          g.y += v * basis.grad[i].y;
        }
        for (int i = 0; i < 3; ++i) {
          sol.sigma_nodal[6 * t + i] = g.x;
          sol.sigma_nodal[6 * t + 3 + i] = g.y;
        }
      }
      break;
    }
  }
  return sol;
}

Complex eval_u(const Mesh& mesh, const DiscreteSolution& sol, int tri, Vec2 p) {
  P1Eval e = p1_eval(triangle_vertices(mesh, tri), p);
  Complex out{};
  for (int i = 0; i < 3; ++i) out += sol.u_nodal[3 * tri + i] * e.value[i];
  return out;
}

CVec2 eval_grad_u(const Mesh& mesh, const DiscreteSolution& sol, int tri) {
  P1Basis basis = p1_basis(mesh, tri);
  CVec2 g{};
  for (int i = 0; i < 3; ++i) {
    g.x += sol.u_nodal[3 * tri + i] * basis.grad[i].x;
    g.y += sol.u_nodal[3 * tri + i] * basis.grad[i].y;
  }
  return g;
}

CVec2 eval_sigma(const Mesh& mesh, const DiscreteSolution& sol, int tri, Vec2 p) {
  P1Eval e = p1_eval(triangle_vertices(mesh, tri), p);
  CVec2 s{};
  for (int i = 0; i < 3; ++i) {
    s.x += sol.sigma_nodal[6 * tri + i] * e.value[i];
    s.y += sol.sigma_nodal[6 * tri + 3 + i] * e.value[i];
  }
  return s;
}

}  // namespace helmdg
