#pragma once

#include <span>
#include <string>
#include <vector>

#include "helmdg/dofmap.hpp"
#include "helmdg/fluxes.hpp"
#include "helmdg/geometry.hpp"
#include "helmdg/sparse.hpp"
#include "helmdg/special_functions.hpp"

namespace helmdg {

enum class Method { Ldg1, Ldg2, IpdgPrimal, FemP1 };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

struct AssembledSystem {
  Method method = Method::Ldg1;
  double k = 0.0;
  FluxParams params;
  DofMap dofmap;
  ComplexSparseMatrix matrix;
};

/// Quadrature policy: products of polynomials are integrated exactly
/// (triangle degree 2, edge degree 3); terms carrying problem data use the
/// degree-5 triangle and degree-7 edge rules.
inline constexpr int kPolyTriangleDegree = 2;
inline constexpr int kPolyEdgeDegree = 3;
inline constexpr int kDataTriangleDegree = 5;
inline constexpr int kDataEdgeDegree = 7;

/// Mixed form of LDG method #1: sigma-hat averages the broken gradient.
/// All forms here are sesquilinear (conjugate-linear in the test argument);
/// with real nodal bases the matrix carries the forms' literal i-terms.
AssembledSystem assemble_ldg1(const Mesh& mesh, double k, const FluxParams& params);

/// Mixed form of LDG method #2: sigma-hat averages the flux unknown itself
/// and the delta-penalty acts on the flux jump, which couples neighboring
/// sigma blocks (the sigma-sigma block is no longer block-diagonal).
AssembledSystem assemble_ldg2(const Mesh& mesh, double k, const FluxParams& params);

/// Primal form equivalent to LDG #1 after elementwise sigma elimination.
AssembledSystem assemble_primal_ipdg(const Mesh& mesh, double k, const FluxParams& params);

/// Continuous P1 baseline: (grad u, grad v) - k^2 (u,v) + ik <u,v> on vertices.
AssembledSystem assemble_conforming_fem(const Mesh& mesh, double k);

/// Load vector (f, v) + <g, v> for the scalar test functions of `dofmap`;
/// sigma test rows (mixed systems) are zero.
std::vector<Complex> assemble_rhs(const Mesh& mesh, double k, const HelmholtzProblem& problem,
                                  const DofMap& dofmap);

/// Solves (sigma_h, tau) = (grad_h u_h, tau)
///                       + sum_e ( i delta <[[grad_h u_h]], [[tau]]> - <[[u_h]], {tau}> )
/// elementwise (the sigma mass matrix is 3x3 block-diagonal per component).
/// `u_nodal` holds 3 coefficients per triangle; the result holds 6.
std::vector<Complex> reconstruct_flux(const Mesh& mesh, const FluxParams& params,
                                      std::span<const Complex> u_nodal);

/// Schur complement of the sigma block of an assembled LDG #1 system. By the
/// derivation of the primal form this equals assemble_primal_ipdg() exactly.
ComplexSparseMatrix eliminate_sigma(const AssembledSystem& mixed);

}  // namespace helmdg
