#include "support/dense_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace helmdg::testsupport {

namespace {

constexpr Complex kI{0.0, 1.0};

// Affine nodal functions lambda_i = a_i + b_i x + c_i y from Cramer's rule.
struct Affine {
  double a[3], b[3], c[3];
  double area;
  double value(int i, Vec2 p) const { return a[i] + b[i] * p.x + c[i] * p.y; }
};

Affine affine_basis(const Mesh& mesh, int t) {
  auto v = triangle_vertices(mesh, t);
  double det = (v[1].x - v[0].x) * (v[2].y - v[0].y) - (v[2].x - v[0].x) * (v[1].y - v[0].y);
  Affine f;
  f.area = 0.5 * det;
  for (int i = 0; i < 3; ++i) {
    Vec2 pj = v[(i + 1) % 3], pk = v[(i + 2) % 3];
    f.a[i] = (pj.x * pk.y - pk.x * pj.y) / det;
    f.b[i] = (pj.y - pk.y) / det;
    f.c[i] = (pk.x - pj.x) / det;
  }
  return f;
}

// int_e f g and int_e f for linear f, g given endpoint values.
double edge_fg(double len, double f0, double f1, double g0, double g1) {
  return len / 6.0 * (2 * f0 * g0 + f0 * g1 + f1 * g0 + 2 * f1 * g1);
}
double edge_f(double len, double f0, double f1) { return len / 2.0 * (f0 + f1); }

struct Side {
  int tri;
  Vec2 n;  // that triangle's own outward normal on the edge
};

// Outward normal of triangle t along edge (p, q) recomputed from coordinates.
Vec2 own_normal(const Mesh& mesh, int t, Vec2 p, Vec2 q) {
  auto v = triangle_vertices(mesh, t);
  Vec2 d = q - p;
  double len = std::hypot(d.x, d.y);
  Vec2 n{d.y / len, -d.x / len};
  Vec2 centroid = (v[0] + v[1] + v[2]) / 3.0;
  Vec2 mid = 0.5 * (p + q);
  if (dot(n, mid - centroid) < 0.0) n = {-n.x, -n.y};
  return n;
}

}  // namespace

DenseMatrix dense_mixed_matrix(const Mesh& mesh, Method method, double k,
                               const FluxParams& params) {
  if (method != Method::Ldg1 && method != Method::Ldg2)
    throw std::invalid_argument("dense_mixed_matrix: expected an LDG method");
  const int nt = static_cast<int>(mesh.triangles.size());
  const int n_u = 3 * nt;
  const int n = 9 * nt;
  auto u_dof = [](int t, int i) { return 3 * t + i; };
  auto s_dof = [n_u](int t, int c, int i) { return n_u + 6 * t + 3 * c + i; };

  DenseMatrix A(n, std::vector<Complex>(n));
  std::vector<Affine> basis(nt);
  for (int t = 0; t < nt; ++t) basis[t] = affine_basis(mesh, t);

  // Volume parts of the two local equations.
  for (int t = 0; t < nt; ++t) {
    const Affine& f = basis[t];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double mass = f.area * (i == j ? 2.0 : 1.0) / 12.0;
        // equation tested with v: int_K sigma . grad v - k^2 int_K u v
        A[u_dof(t, i)][u_dof(t, j)] += -k * k * mass;
        A[u_dof(t, i)][s_dof(t, 0, j)] += f.b[i] * f.area / 3.0;
        A[u_dof(t, i)][s_dof(t, 1, j)] += f.c[i] * f.area / 3.0;
        // equation tested with tau = lambda_i e_c:
        // int_K sigma . tau + int_K u div(tau)
        A[s_dof(t, 0, i)][s_dof(t, 0, j)] += mass;
        A[s_dof(t, 1, i)][s_dof(t, 1, j)] += mass;
        A[s_dof(t, 0, i)][u_dof(t, j)] += f.b[i] * f.area / 3.0;
        A[s_dof(t, 1, i)][u_dof(t, j)] += f.c[i] * f.area / 3.0;
      }
    }
  }

  // Flux terms, one edge at a time: subtract int_{dK} u_hat (n_K . tau) from
  // the sigma equation and int_{dK} sigma_hat . n_K v from the u equation.
  for (const EdgeInfo& e : mesh.edges) {
    Vec2 p = mesh.vertices[e.v0], q = mesh.vertices[e.v1];
    const double len = std::hypot(q.x - p.x, q.y - p.y);

    if (e.kind == EdgeKind::Boundary) {
      const int t = e.tri[0];
      Vec2 nK = own_normal(mesh, t, p, q);
      const Affine& f = basis[t];
      for (int i = 0; i < 3; ++i) {
        double ti0 = f.value(i, p), ti1 = f.value(i, q);
        for (int j = 0; j < 3; ++j) {
          double tj0 = f.value(j, p), tj1 = f.value(j, q);
          double mass = edge_fg(len, tj0, tj1, ti0, ti1);
          // u_hat = u on the boundary.
          A[s_dof(t, 0, i)][u_dof(t, j)] -= nK.x * mass;
          A[s_dof(t, 1, i)][u_dof(t, j)] -= nK.y * mass;
          // sigma_hat . n = -i k u + g; the g part goes to the load vector.
          A[u_dof(t, i)][u_dof(t, j)] += kI * k * mass;
        }
      }
      continue;
    }

    const std::array<Side, 2> sides{Side{e.tri[0], own_normal(mesh, e.tri[0], p, q)},
                                    Side{e.tri[1], own_normal(mesh, e.tri[1], p, q)}};
    const double beta = params.beta_on(len);
    const double delta = params.delta_on(len);

    for (const Side& test : sides) {  // the element whose local equation we extend
      const Affine& ft = basis[test.tri];
      for (const Side& trial : sides) {
        const Affine& fw = basis[trial.tri];
        for (int i = 0; i < 3; ++i) {
          double ti0 = ft.value(i, p), ti1 = ft.value(i, q);
          double int_ti = edge_f(len, ti0, ti1);
          for (int j = 0; j < 3; ++j) {
            double tj0 = fw.value(j, p), tj1 = fw.value(j, q);
            double mass = edge_fg(len, tj0, tj1, ti0, ti1);
            double grad_n_trial = fw.b[j] * trial.n.x + fw.c[j] * trial.n.y;

            // u equation: - int_e sigma_hat . n_K v
            //   sigma_hat = {grad u} - i beta [[u]]   (method #1)
            //   sigma_hat = {sigma}  - i beta [[u]]   (method #2)
            A[u_dof(test.tri, i)][u_dof(trial.tri, j)] +=
                kI * beta * dot(trial.n, test.n) * mass;
            if (method == Method::Ldg1) {
              // {grad u} of a one-sided trial function against v integrates
              // as -(1/2) (grad lambda_j . n_K) int_e v_i.
              double grad_nK = fw.b[j] * test.n.x + fw.c[j] * test.n.y;
              A[u_dof(test.tri, i)][u_dof(trial.tri, j)] += -0.5 * grad_nK * int_ti;
            } else {
              A[u_dof(test.tri, i)][s_dof(trial.tri, 0, j)] += -0.5 * test.n.x * mass;
              A[u_dof(test.tri, i)][s_dof(trial.tri, 1, j)] += -0.5 * test.n.y * mass;
            }

            // sigma equation: - int_e u_hat (n_K . tau)
            //   u_hat = {u} + i delta [[grad u]]   (method #1)
            //   u_hat = {u} + i delta [[sigma]]    (method #2)
            A[s_dof(test.tri, 0, i)][u_dof(trial.tri, j)] += -0.5 * test.n.x * mass;
            A[s_dof(test.tri, 1, i)][u_dof(trial.tri, j)] += -0.5 * test.n.y * mass;
            if (method == Method::Ldg1) {
              A[s_dof(test.tri, 0, i)][u_dof(trial.tri, j)] +=
                  -kI * delta * grad_n_trial * test.n.x * int_ti;
              A[s_dof(test.tri, 1, i)][u_dof(trial.tri, j)] +=
                  -kI * delta * grad_n_trial * test.n.y * int_ti;
            } else {
              for (int cc = 0; cc < 2; ++cc) {
                double ncc = cc == 0 ? trial.n.x : trial.n.y;
                A[s_dof(test.tri, 0, i)][s_dof(trial.tri, cc, j)] +=
                    -kI * delta * ncc * test.n.x * mass;
                A[s_dof(test.tri, 1, i)][s_dof(trial.tri, cc, j)] +=
                    -kI * delta * ncc * test.n.y * mass;
              }
            }
          }
        }
      }
    }
  }
  return A;
}

DenseMatrix dense_primal_matrix(const Mesh& mesh, double k, const FluxParams& params) {
  const int nt = static_cast<int>(mesh.triangles.size());
  const int n = 3 * nt;
  auto u_dof = [](int t, int i) { return 3 * t + i; };
  DenseMatrix A(n, std::vector<Complex>(n));
  std::vector<Affine> basis(nt);
  for (int t = 0; t < nt; ++t) basis[t] = affine_basis(mesh, t);

  for (int t = 0; t < nt; ++t) {
    const Affine& f = basis[t];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        A[u_dof(t, i)][u_dof(t, j)] +=
            f.area * (f.b[i] * f.b[j] + f.c[i] * f.c[j]) -
            k * k * f.area * (i == j ? 2.0 : 1.0) / 12.0;
  }

  for (const EdgeInfo& e : mesh.edges) {
    Vec2 p = mesh.vertices[e.v0], q = mesh.vertices[e.v1];
    const double len = std::hypot(q.x - p.x, q.y - p.y);

    if (e.kind == EdgeKind::Boundary) {
      const int t = e.tri[0];
      const Affine& f = basis[t];
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          A[u_dof(t, i)][u_dof(t, j)] +=
              kI * k * edge_fg(len, f.value(j, p), f.value(j, q), f.value(i, p), f.value(i, q));
      continue;
    }

    const std::array<Side, 2> sides{Side{e.tri[0], own_normal(mesh, e.tri[0], p, q)},
                                    Side{e.tri[1], own_normal(mesh, e.tri[1], p, q)}};
    const double beta = params.beta_on(len);
    const double delta = params.delta_on(len);

    for (const Side& test : sides) {
      const Affine& ft = basis[test.tri];
      for (const Side& trial : sides) {
        const Affine& fw = basis[trial.tri];
        for (int i = 0; i < 3; ++i) {
          double ti0 = ft.value(i, p), ti1 = ft.value(i, q);
          double grad_n_test = ft.b[i] * test.n.x + ft.c[i] * test.n.y;
          for (int j = 0; j < 3; ++j) {
            double tj0 = fw.value(j, p), tj1 = fw.value(j, q);
            double grad_n_trial = fw.b[j] * trial.n.x + fw.c[j] * trial.n.y;
            Complex val = kI * (delta * grad_n_trial * grad_n_test * len +
                                beta * dot(trial.n, test.n) * edge_fg(len, tj0, tj1, ti0, ti1));
            // -<[[u]], {grad v}> - <{grad u}, [[v]]>
            val += -0.5 * (ft.b[i] * trial.n.x + ft.c[i] * trial.n.y) * edge_f(len, tj0, tj1);
            val += -0.5 * (fw.b[j] * test.n.x + fw.c[j] * test.n.y) * edge_f(len, ti0, ti1);
            A[u_dof(test.tri, i)][u_dof(trial.tri, j)] += val;
          }
        }
      }
    }
  }
  return A;
}

DenseMatrix dense_fem_matrix(const Mesh& mesh, double k) {
  const int n = static_cast<int>(mesh.vertices.size());
  DenseMatrix A(n, std::vector<Complex>(n));
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    Affine f = affine_basis(mesh, t);
    const auto& tv = mesh.triangles[t].v;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        A[tv[i]][tv[j]] += f.area * (f.b[i] * f.b[j] + f.c[i] * f.c[j]) -
                           k * k * f.area * (i == j ? 2.0 : 1.0) / 12.0;
  }
  for (int ei : mesh.boundary_edges) {
    const EdgeInfo& e = mesh.edges[ei];
    Vec2 p = mesh.vertices[e.v0], q = mesh.vertices[e.v1];
    const double len = std::hypot(q.x - p.x, q.y - p.y);
    const int t = e.tri[0];
    Affine f = affine_basis(mesh, t);
    const auto& tv = mesh.triangles[t].v;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        A[tv[i]][tv[j]] +=
            kI * k * edge_fg(len, f.value(j, p), f.value(j, q), f.value(i, p), f.value(i, q));
  }
  return A;
}

DenseMatrix to_dense(const ComplexSparseMatrix& a) {
  DenseMatrix out(a.rows(), std::vector<Complex>(a.cols()));
  auto offsets = a.row_offsets();
  auto cols = a.col_indices();
  auto vals = a.values();
  for (int i = 0; i < a.rows(); ++i)
    for (int p = offsets[i]; p < offsets[i + 1]; ++p) out[i][cols[p]] = vals[p];
  return out;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) throw std::invalid_argument("max_abs_diff: shape mismatch");
    for (size_t j = 0; j < a[i].size(); ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
  }
  return m;
}

std::vector<Complex> dense_solve(DenseMatrix a, std::vector<Complex> b) {
  const int n = static_cast<int>(a.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) == 0.0) throw std::runtime_error("dense_solve: singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < n; ++r) {
      Complex f = a[r][col] / a[col][col];
      if (f == Complex{}) continue;
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Complex> x(n);
  for (int r = n - 1; r >= 0; --r) {
    Complex acc = b[r];
    for (int c = r + 1; c < n; ++c) acc -= a[r][c] * x[c];
    x[r] = acc / a[r][r];
  }
  return x;
}

}  // namespace helmdg::testsupport
