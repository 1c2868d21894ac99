#include "helmdg/assembly.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>

#include "helmdg/quadrature.hpp"

namespace helmdg {

std::string to_string(Method m) {
  switch (m) {
    case Method::Ldg1: return "ldg1";
    case Method::Ldg2: return "ldg2";
    case Method::IpdgPrimal: return "ipdg-primal";
    case Method::FemP1: return "fem-p1";
  }
  return "?";
}

Method method_from_string(const std::string& s) {
  if (s == "ldg1") return Method::Ldg1;
  if (s == "ldg2") return Method::Ldg2;
  if (s == "ipdg-primal") return Method::IpdgPrimal;
  if (s == "fem-p1") return Method::FemP1;
  throw std::invalid_argument("unknown method '" + s +
                              "' (use ldg1, ldg2, ipdg-primal or fem-p1)");
}

namespace {

struct TriData {
  P1Basis basis;
  Vec2 centroid;
  std::array<Vec2, 3> verts;
};

std::vector<TriData> precompute(const Mesh& mesh) {
  std::vector<TriData> out(mesh.triangles.size());
  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    out[t].verts = triangle_vertices(mesh, static_cast<int>(t));
    out[t].basis = p1_basis(out[t].verts);
    out[t].centroid = (out[t].verts[0] + out[t].verts[1] + out[t].verts[2]) / 3.0;
  }
  return out;
}

std::array<double, 3> trace_values(const TriData& td, Vec2 x) {
  std::array<double, 3> v;
  for (int i = 0; i < 3; ++i) v[i] = 1.0 / 3 + dot(td.basis.grad[i], x - td.centroid);
  return v;
}

void check_preconditions(const Mesh& mesh, double k, const FluxParams& params) {
  if (!(k > 0.0)) throw std::invalid_argument("k must be positive");
  for (int ei : mesh.interior_edges) {
    double h = mesh.edges[ei].length;
    if (!(params.beta_on(h) > 0.0) || !(params.delta_on(h) > 0.0))
      throw std::invalid_argument("flux parameters must be positive on interior edges");
  }
}

// (chi, grad v), -k^2 (w, v), (chi, tau), -(grad w, tau) on one element.
void add_mixed_volume(const TriData& td, double k, int t, const DofMap& dof,
                      std::vector<Triplet>& trip) {
  const TriangleRule& rule = triangle_rule(kPolyTriangleDegree);
  std::array<std::array<double, 3>, 3> mass{};  // int lambda_i lambda_j
  std::array<double, 3> lin{};                  // int lambda_i
  for (size_t q = 0; q < rule.points.size(); ++q) {
    double lam[3] = {rule.points[q].l0, rule.points[q].l1, rule.points[q].l2};
    double w = rule.weights[q] * td.basis.area;
    for (int i = 0; i < 3; ++i) {
      lin[i] += w * lam[i];
      for (int j = 0; j < 3; ++j) mass[i][j] += w * lam[i] * lam[j];
    }
  }
  const double grad_c[2][3] = {{td.basis.grad[0].x, td.basis.grad[1].x, td.basis.grad[2].x},
                               {td.basis.grad[0].y, td.basis.grad[1].y, td.basis.grad[2].y}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      trip.push_back({dof.u_dof(t, i), dof.u_dof(t, j), -k * k * mass[i][j]});
      for (int c = 0; c < 2; ++c) {
        trip.push_back({dof.u_dof(t, i), dof.sigma_dof(t, c, j), grad_c[c][i] * lin[j]});
        trip.push_back({dof.sigma_dof(t, c, i), dof.u_dof(t, j), -grad_c[c][j] * lin[i]});
        trip.push_back({dof.sigma_dof(t, c, i), dof.sigma_dof(t, c, j), mass[i][j]});
      }
    }
  }
}

// +ik <w, v> over one boundary edge, into the scalar dofs given by `udof`.
void add_boundary_mass(const Mesh& mesh, const std::vector<TriData>& tris, int ei, double k,
                       const std::function<int(int, int)>& udof, std::vector<Triplet>& trip) {
  const EdgeInfo& e = mesh.edges[ei];
  const EdgeRule& rule = edge_rule(kPolyEdgeDegree);
  const int t = e.tri[0];
  Vec2 p0 = mesh.vertices[e.v0], p1 = mesh.vertices[e.v1];
  for (size_t q = 0; q < rule.points.size(); ++q) {
    Vec2 x = p0 + rule.points[q] * (p1 - p0);
    double w = rule.weights[q] * e.length;
    auto lam = trace_values(tris[t], x);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        trip.push_back({udof(t, i), udof(t, j), kImaginary * k * w * lam[i] * lam[j]});
  }
}

struct EdgeSide {
  int tri;
  double sign;  // +1 for the owner of n_e, -1 for the neighbor
};

}  // namespace

AssembledSystem assemble_ldg1(const Mesh& mesh, double k, const FluxParams& params) {
  check_preconditions(mesh, k, params);
  auto tris = precompute(mesh);
  DofMap dof = DofMap::mixed(mesh);
  std::vector<Triplet> trip;

  for (int t = 0; t < dof.n_triangles; ++t) add_mixed_volume(tris[t], k, t, dof, trip);

  auto udof = [&dof](int t, int i) { return dof.u_dof(t, i); };
  for (int ei : mesh.boundary_edges) add_boundary_mass(mesh, tris, ei, k, udof, trip);

  const EdgeRule& rule = edge_rule(kPolyEdgeDegree);
  for (int ei : mesh.interior_edges) {
    const EdgeInfo& e = mesh.edges[ei];
    const double beta = params.beta_on(e.length);
    const double delta = params.delta_on(e.length);
    const Vec2 n = e.normal;
    const std::array<EdgeSide, 2> sides{{{e.tri[0], 1.0}, {e.tri[1], -1.0}}};
    Vec2 p0 = mesh.vertices[e.v0], p1 = mesh.vertices[e.v1];

    for (size_t q = 0; q < rule.points.size(); ++q) {
      Vec2 x = p0 + rule.points[q] * (p1 - p0);
      double w = rule.weights[q] * e.length;
      std::array<std::array<double, 3>, 2> lam{trace_values(tris[sides[0].tri], x),
                                               trace_values(tris[sides[1].tri], x)};

      for (const auto& [tw, sw] : sides) {      // trial side (w)
        for (const auto& [tv, sv] : sides) {    // test side (v or tau)
          auto lw = lam[sw > 0 ? 0 : 1];
          auto lv = lam[sv > 0 ? 0 : 1];
          for (int j = 0; j < 3; ++j) {
            const double gwn = dot(tris[tw].basis.grad[j], n);
            for (int i = 0; i < 3; ++i) {
              // - <{grad_h w} - i beta [[w]], [[v]]>
              Complex uu = -0.5 * sv * gwn * w * lv[i] + kImaginary * beta * sw * sv * w * lw[j] * lv[i];
              trip.push_back({dof.u_dof(tv, i), dof.u_dof(tw, j), uu});
              // - ( i delta <[[grad_h w]], [[tau]]> - <[[w]], {tau}> )
              for (int c = 0; c < 2; ++c) {
                const double nc = c == 0 ? n.x : n.y;
                Complex su = -kImaginary * delta * sw * sv * gwn * nc * w * lv[i] +
                             0.5 * sw * nc * w * lw[j] * lv[i];
                trip.push_back({dof.sigma_dof(tv, c, i), dof.u_dof(tw, j), su});
              }
            }
          }
        }
      }
    }
  }

  AssembledSystem sys{Method::Ldg1, k, params, dof,
                      ComplexSparseMatrix::from_triplets(dof.size(), dof.size(), std::move(trip))};
  if (sys.matrix.has_empty_row()) throw std::logic_error("assemble_ldg1: empty matrix row");
  return sys;
}

AssembledSystem assemble_ldg2(const Mesh& mesh, double k, const FluxParams& params) {
  check_preconditions(mesh, k, params);
  auto tris = precompute(mesh);
  DofMap dof = DofMap::mixed(mesh);
  std::vector<Triplet> trip;

  for (int t = 0; t < dof.n_triangles; ++t) add_mixed_volume(tris[t], k, t, dof, trip);

  auto udof = [&dof](int t, int i) { return dof.u_dof(t, i); };
  for (int ei : mesh.boundary_edges) add_boundary_mass(mesh, tris, ei, k, udof, trip);

  const EdgeRule& rule = edge_rule(kPolyEdgeDegree);
  for (int ei : mesh.interior_edges) {
    const EdgeInfo& e = mesh.edges[ei];
    const double beta = params.beta_on(e.length);
    const double delta = params.delta_on(e.length);
    const Vec2 n = e.normal;
    const std::array<EdgeSide, 2> sides{{{e.tri[0], 1.0}, {e.tri[1], -1.0}}};
    Vec2 p0 = mesh.vertices[e.v0], p1 = mesh.vertices[e.v1];

    for (size_t q = 0; q < rule.points.size(); ++q) {
      Vec2 x = p0 + rule.points[q] * (p1 - p0);
      double w = rule.weights[q] * e.length;
      std::array<std::array<double, 3>, 2> lam{trace_values(tris[sides[0].tri], x),
                                               trace_values(tris[sides[1].tri], x)};

      for (const auto& [tw, sw] : sides) {
        for (const auto& [tv, sv] : sides) {
          auto lw = lam[sw > 0 ? 0 : 1];
          auto lv = lam[sv > 0 ? 0 : 1];
          for (int j = 0; j < 3; ++j) {
            for (int i = 0; i < 3; ++i) {
              const double mass_ji = w * lw[j] * lv[i];
              // - <{chi} - i beta [[w]], [[v]]>
              trip.push_back({dof.u_dof(tv, i), dof.u_dof(tw, j), kImaginary * beta * sw * sv * mass_ji});
              for (int c = 0; c < 2; ++c) {
                const double nc = c == 0 ? n.x : n.y;
                trip.push_back({dof.u_dof(tv, i), dof.sigma_dof(tw, c, j), -0.5 * sv * nc * mass_ji});
                // - ( i delta <[[chi]], [[tau]]> - <[[w]], {tau}> )
                trip.push_back({dof.sigma_dof(tv, c, i), dof.u_dof(tw, j), 0.5 * sw * nc * mass_ji});
                for (int cc = 0; cc < 2; ++cc) {
                  const double ncc = cc == 0 ? n.x : n.y;
                  trip.push_back({dof.sigma_dof(tv, c, i), dof.sigma_dof(tw, cc, j),
                                  -kImaginary * delta * sw * sv * ncc * nc * mass_ji});
                }
              }
            }
          }
        }
      }
    }
  }

  AssembledSystem sys{Method::Ldg2, k, params, dof,
                      ComplexSparseMatrix::from_triplets(dof.size(), dof.size(), std::move(trip))};
  if (sys.matrix.has_empty_row()) throw std::logic_error("assemble_ldg2: empty matrix row");
  return sys;
}

AssembledSystem assemble_primal_ipdg(const Mesh& mesh, double k, const FluxParams& params) {
  check_preconditions(mesh, k, params);
  auto tris = precompute(mesh);
  DofMap dof = DofMap::primal(mesh);
  std::vector<Triplet> trip;

  const TriangleRule& vol = triangle_rule(kPolyTriangleDegree);
  for (int t = 0; t < dof.n_triangles; ++t) {
    const TriData& td = tris[t];
    std::array<std::array<double, 3>, 3> mass{};
    for (size_t q = 0; q < vol.points.size(); ++q) {
      double lam[3] = {vol.points[q].l0, vol.points[q].l1, vol.points[q].l2};
      double w = vol.weights[q] * td.basis.area;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) mass[i][j] += w * lam[i] * lam[j];
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        trip.push_back({dof.u_dof(t, i), dof.u_dof(t, j),
                        td.basis.area * dot(td.basis.grad[j], td.basis.grad[i]) -
                            k * k * mass[i][j]});
  }

  auto udof = [&dof](int t, int i) { return dof.u_dof(t, i); };
  for (int ei : mesh.boundary_edges) add_boundary_mass(mesh, tris, ei, k, udof, trip);

  const EdgeRule& rule = edge_rule(kPolyEdgeDegree);
  for (int ei : mesh.interior_edges) {
    const EdgeInfo& e = mesh.edges[ei];
    const double beta = params.beta_on(e.length);
    const double delta = params.delta_on(e.length);
    const Vec2 n = e.normal;
    const std::array<EdgeSide, 2> sides{{{e.tri[0], 1.0}, {e.tri[1], -1.0}}};
    Vec2 p0 = mesh.vertices[e.v0], p1 = mesh.vertices[e.v1];

    for (size_t q = 0; q < rule.points.size(); ++q) {
      Vec2 x = p0 + rule.points[q] * (p1 - p0);
      double w = rule.weights[q] * e.length;
      std::array<std::array<double, 3>, 2> lam{trace_values(tris[sides[0].tri], x),
                                               trace_values(tris[sides[1].tri], x)};

      for (const auto& [tw, sw] : sides) {
        for (const auto& [tv, sv] : sides) {
          auto lw = lam[sw > 0 ? 0 : 1];
          auto lv = lam[sv > 0 ? 0 : 1];
          for (int j = 0; j < 3; ++j) {
            const double gwn = dot(tris[tw].basis.grad[j], n);
            for (int i = 0; i < 3; ++i) {
              const double gvn = dot(tris[tv].basis.grad[i], n);
              // + i ( delta <[[grad_h u]], [[grad_h v]]> + beta <[[u]], [[v]]> )
              // - ( <[[u]], {grad_h v}> + <{grad_h u}, [[v]]> )
              Complex val = kImaginary * (delta * sw * sv * gwn * gvn + beta * sw * sv * lw[j] * lv[i]) -
                            0.5 * sw * gvn * lw[j] - 0.5 * sv * gwn * lv[i];
              trip.push_back({dof.u_dof(tv, i), dof.u_dof(tw, j), w * val});
            }
          }
        }
      }
    }
  }

  AssembledSystem sys{Method::IpdgPrimal, k, params, dof,
                      ComplexSparseMatrix::from_triplets(dof.size(), dof.size(), std::move(trip))};
  if (sys.matrix.has_empty_row()) throw std::logic_error("assemble_primal_ipdg: empty matrix row");
  return sys;
}

AssembledSystem assemble_conforming_fem(const Mesh& mesh, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("k must be positive");
  auto tris = precompute(mesh);
  DofMap dof = DofMap::fem(mesh);
  std::vector<Triplet> trip;

  const TriangleRule& vol = triangle_rule(kPolyTriangleDegree);
  for (int t = 0; t < dof.n_triangles; ++t) {
    const TriData& td = tris[t];
    const Triangle& tv = mesh.triangles[t];
    std::array<std::array<double, 3>, 3> mass{};
    for (size_t q = 0; q < vol.points.size(); ++q) {
      double lam[3] = {vol.points[q].l0, vol.points[q].l1, vol.points[q].l2};
      double w = vol.weights[q] * td.basis.area;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) mass[i][j] += w * lam[i] * lam[j];
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        trip.push_back({dof.vertex_dof(tv.v[i]), dof.vertex_dof(tv.v[j]),
                        td.basis.area * dot(td.basis.grad[j], td.basis.grad[i]) -
                            k * k * mass[i][j]});
  }

  auto udof = [&dof, &mesh](int t, int i) { return dof.vertex_dof(mesh.triangles[t].v[i]); };
  for (int ei : mesh.boundary_edges) add_boundary_mass(mesh, tris, ei, k, udof, trip);

  AssembledSystem sys{Method::FemP1, k, FluxParams{}, dof,
                      ComplexSparseMatrix::from_triplets(dof.size(), dof.size(), std::move(trip))};
  if (sys.matrix.has_empty_row()) throw std::logic_error("assemble_conforming_fem: empty matrix row");
  return sys;
}

std::vector<Complex> assemble_rhs(const Mesh& mesh, double k, const HelmholtzProblem& problem,
                                  const DofMap& dofmap) {
  (void)k;
  auto tris = precompute(mesh);
  std::vector<Complex> rhs(dofmap.size());

  auto udof = [&](int t, int i) {
    return dofmap.kind == SystemKind::FemP1 ? dofmap.vertex_dof(mesh.triangles[t].v[i])
                                            : dofmap.u_dof(t, i);
  };

  const TriangleRule& vol = triangle_rule(kDataTriangleDegree);
  for (int t = 0; t < dofmap.n_triangles; ++t) {
    const TriData& td = tris[t];
    for (size_t q = 0; q < vol.points.size(); ++q) {
      double lam[3] = {vol.points[q].l0, vol.points[q].l1, vol.points[q].l2};
      Vec2 x = barycentric_point(td.verts, vol.points[q]);
      Complex fw = problem.source(x) * (vol.weights[q] * td.basis.area);
      for (int i = 0; i < 3; ++i) rhs[udof(t, i)] += fw * lam[i];
    }
  }

  const EdgeRule& rule = edge_rule(kDataEdgeDegree);
  for (int ei : mesh.boundary_edges) {
    const EdgeInfo& e = mesh.edges[ei];
    const int t = e.tri[0];
    Vec2 p0 = mesh.vertices[e.v0], p1 = mesh.vertices[e.v1];
    for (size_t q = 0; q < rule.points.size(); ++q) {
      Vec2 x = p0 + rule.points[q] * (p1 - p0);
      Complex gw = problem.robin_datum(x, e.normal) * (rule.weights[q] * e.length);
      auto lam = trace_values(tris[t], x);
      for (int i = 0; i < 3; ++i) rhs[udof(t, i)] += gw * lam[i];
    }
  }
  return rhs;
}

std::vector<Complex> reconstruct_flux(const Mesh& mesh, const FluxParams& params,
                                      std::span<const Complex> u_nodal) {
  const int nt = static_cast<int>(mesh.triangles.size());
  if (static_cast<int>(u_nodal.size()) != 3 * nt)
    throw std::invalid_argument("reconstruct_flux: coefficient count mismatch");
  auto tris = precompute(mesh);

  // Right-hand side (grad_h u_h, tau) + edge lifting terms, per sigma dof.
  std::vector<Complex> rhs(static_cast<size_t>(6) * nt);
  std::vector<CVec2> grad_u(nt);
  for (int t = 0; t < nt; ++t) {
    CVec2 g{};
    for (int j = 0; j < 3; ++j) {
      g.x += u_nodal[3 * t + j] * tris[t].basis.grad[j].x;
      g.y += u_nodal[3 * t + j] * tris[t].basis.grad[j].y;
    }
    grad_u[t] = g;
    const double third = tris[t].basis.area / 3.0;
    for (int i = 0; i < 3; ++i) {
      rhs[6 * t + i] += g.x * third;
      rhs[6 * t + 3 + i] += g.y * third;
    }
  }

  const EdgeRule& rule = edge_rule(kPolyEdgeDegree);
  for (int ei : mesh.interior_edges) {
    const EdgeInfo& e = mesh.edges[ei];
    const double delta = params.delta_on(e.length);
    const Vec2 n = e.normal;
    const int ta = e.tri[0], tb = e.tri[1];
    const Complex jump_grad = dot(grad_u[ta] - grad_u[tb], n);
    Vec2 p0 = mesh.vertices[e.v0], p1 = mesh.vertices[e.v1];

    for (size_t q = 0; q < rule.points.size(); ++q) {
      Vec2 x = p0 + rule.points[q] * (p1 - p0);
      double w = rule.weights[q] * e.length;
      auto la = trace_values(tris[ta], x);
      auto lb = trace_values(tris[tb], x);
      Complex ua{}, ub{};
      for (int j = 0; j < 3; ++j) {
        ua += u_nodal[3 * ta + j] * la[j];
        ub += u_nodal[3 * tb + j] * lb[j];
      }
      const Complex jump_u = ua - ub;  // [[u]] = jump_u * n
      const std::array<std::pair<int, double>, 2> sides{{{ta, 1.0}, {tb, -1.0}}};
      for (const auto& [t, s] : sides) {
        const auto& lam = s > 0 ? la : lb;
        for (int c = 0; c < 2; ++c) {
          const double nc = c == 0 ? n.x : n.y;
          for (int i = 0; i < 3; ++i)
            rhs[6 * t + 3 * c + i] +=
                w * lam[i] * (kImaginary * delta * jump_grad * s * nc - 0.5 * jump_u * nc);
        }
      }
    }
  }

  // Elementwise solve with the exact P1 mass inverse: M = a (I + J) with
  // a = |K|/12, so M^{-1} = (I - J/4) / a.
  std::vector<Complex> sigma(rhs.size());
  for (int t = 0; t < nt; ++t) {
    const double a = tris[t].basis.area / 12.0;
    if (!(a > 0.0)) throw std::runtime_error("reconstruct_flux: degenerate element mass matrix");
    for (int c = 0; c < 2; ++c) {
      Complex total{};
      for (int i = 0; i < 3; ++i) total += rhs[6 * t + 3 * c + i];
      for (int i = 0; i < 3; ++i)
        sigma[6 * t + 3 * c + i] = (rhs[6 * t + 3 * c + i] - 0.25 * total) / a;
    }
  }
  return sigma;
}

ComplexSparseMatrix eliminate_sigma(const AssembledSystem& mixed) {
  if (mixed.dofmap.kind != SystemKind::Mixed)
    throw std::invalid_argument("eliminate_sigma: system is not mixed");
  const DofMap& dof = mixed.dofmap;
  const int n_u = dof.n_u();
  const ComplexSparseMatrix& a = mixed.matrix;
  auto offsets = a.row_offsets();
  auto cols = a.col_indices();
  auto vals = a.values();

  std::vector<Triplet> trip;
  // Copy the u-u block.
  for (int r = 0; r < n_u; ++r)
    for (int p = offsets[r]; p < offsets[r + 1]; ++p)
      if (cols[p] < n_u) trip.push_back({r, cols[p], vals[p]});

  for (int t = 0; t < dof.n_triangles; ++t) {
    const int s0 = dof.sigma_dof(t, 0, 0);
    // Gather the element's sigma rows: mass block M (6x6) and the u-coupled
    // part R (6 x scattered u columns).
    Complex M[6][6] = {};
    std::vector<int> ucols;
    for (int li = 0; li < 6; ++li) {
      const int r = s0 + li;
      for (int p = offsets[r]; p < offsets[r + 1]; ++p) {
        if (cols[p] >= n_u) {
          int lj = cols[p] - s0;
          if (lj < 0 || lj >= 6)
            throw std::invalid_argument(
                "eliminate_sigma: sigma block is not element-diagonal (not an LDG #1 system)");
          M[li][lj] = vals[p];
        } else {
          ucols.push_back(cols[p]);
        }
      }
    }
    std::sort(ucols.begin(), ucols.end());
    ucols.erase(std::unique(ucols.begin(), ucols.end()), ucols.end());
    const int L = static_cast<int>(ucols.size());
    std::vector<Complex> R(static_cast<size_t>(6) * L);
    auto col_slot = [&ucols](int c) {
      return static_cast<int>(std::lower_bound(ucols.begin(), ucols.end(), c) - ucols.begin());
    };
    for (int li = 0; li < 6; ++li) {
      const int r = s0 + li;
      for (int p = offsets[r]; p < offsets[r + 1]; ++p)
        if (cols[p] < n_u) R[static_cast<size_t>(li) * L + col_slot(cols[p])] += vals[p];
    }

    // Invert M in place (Gauss-Jordan with partial pivoting; 6x6).
    Complex inv[6][6] = {};
    for (int i = 0; i < 6; ++i) inv[i][i] = 1.0;
    for (int col = 0; col < 6; ++col) {
      int piv = col;
      for (int r = col + 1; r < 6; ++r)
        if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
      if (std::abs(M[piv][col]) == 0.0)
        throw std::runtime_error("eliminate_sigma: singular sigma mass block");
      if (piv != col)
        for (int c = 0; c < 6; ++c) {
          std::swap(M[piv][c], M[col][c]);
          std::swap(inv[piv][c], inv[col][c]);
        }
      const Complex d = M[col][col];
      for (int c = 0; c < 6; ++c) {
        M[col][c] /= d;
        inv[col][c] /= d;
      }
      for (int r = 0; r < 6; ++r) {
        if (r == col) continue;
        const Complex f = M[r][col];
        if (f == Complex{}) continue;
        for (int c = 0; c < 6; ++c) {
          M[r][c] -= f * M[col][c];
          inv[r][c] -= f * inv[col][c];
        }
      }
    }

    // The u-sigma block B lives in the element's own u rows (volume coupling).
    Complex B[3][6] = {};
    for (int li = 0; li < 3; ++li) {
      const int r = dof.u_dof(t, li);
      for (int p = offsets[r]; p < offsets[r + 1]; ++p) {
        if (cols[p] < n_u) continue;
        int lj = cols[p] - s0;
        if (lj < 0 || lj >= 6)
          throw std::invalid_argument(
              "eliminate_sigma: u row couples to a foreign sigma block");
        B[li][lj] = vals[p];
      }
    }

    // Schur update: S -= B M^{-1} R.
    Complex C[3][6] = {};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 6; ++j) {
        Complex acc{};
        for (int q = 0; q < 6; ++q) acc += B[i][q] * inv[q][j];
        C[i][j] = acc;
      }
    for (int i = 0; i < 3; ++i)
      for (int c = 0; c < L; ++c) {
        Complex acc{};
        for (int q = 0; q < 6; ++q) acc += C[i][q] * R[static_cast<size_t>(q) * L + c];
        if (acc != Complex{}) trip.push_back({dof.u_dof(t, i), ucols[c], -acc});
      }
  }

  return ComplexSparseMatrix::from_triplets(n_u, n_u, std::move(trip));
}

}  // namespace helmdg
