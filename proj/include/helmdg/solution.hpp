#pragma once

#include <vector>

#include "helmdg/assembly.hpp"

namespace helmdg {

/// A solved field in a uniform elementwise representation: 3 nodal scalar
/// coefficients per triangle for u_h and 6 for sigma_h (component-major).
/// The primal method fills sigma by flux reconstruction; the conforming FEM
/// baseline exposes its vertex solution in broken form with sigma = grad u_h.
struct DiscreteSolution {
  Method method = Method::Ldg1;
  std::vector<Complex> raw;          ///< solver unknowns in the method's own layout
  std::vector<Complex> u_nodal;      ///< 3 per triangle
  std::vector<Complex> sigma_nodal;  ///< 6 per triangle
  double assemble_seconds = 0.0;
  double solve_seconds = 0.0;
};

DiscreteSolution solve_helmholtz(const Mesh& mesh, Method method, double k,
                                 const FluxParams& params, const HelmholtzProblem& problem);

Complex eval_u(const Mesh& mesh, const DiscreteSolution& sol, int tri, Vec2 p);
CVec2 eval_grad_u(const Mesh& mesh, const DiscreteSolution& sol, int tri);
CVec2 eval_sigma(const Mesh& mesh, const DiscreteSolution& sol, int tri, Vec2 p);

}  // namespace helmdg
