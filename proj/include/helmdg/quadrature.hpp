#pragma once

#include <array>
#include <vector>

#include "helmdg/geometry.hpp"
#include "helmdg/types.hpp"

namespace helmdg {

/// Quadrature on the reference triangle, in barycentric coordinates.
/// Weights sum to 1; integrals scale by the physical element area.
struct TriangleRule {
  struct Point {
    double l0, l1, l2;
  };
  std::vector<Point> points;
  std::vector<double> weights;
  int degree = 0;
};

/// Gauss rule on [0,1]; weights sum to 1, integrals scale by edge length.
struct EdgeRule {
  std::vector<double> points;
  std::vector<double> weights;
  int degree = 0;
};

/// Supported degrees: 1 (centroid), 2 (edge midpoints), 5 (7-point).
const TriangleRule& triangle_rule(int degree);

/// Supported degrees: 1, 3, 7 (Gauss with 1, 2, 4 points).
const EdgeRule& edge_rule(int degree);

/// Per-triangle P1 data: area and the constant nodal gradients.
/// The nodal functions are the barycentric coordinates lambda_i with
/// lambda_i(v_j) = delta_ij and sum_i lambda_i == 1.
struct P1Basis {
  double area = 0.0;
  std::array<Vec2, 3> grad{};
};

P1Basis p1_basis(const std::array<Vec2, 3>& v);
inline P1Basis p1_basis(const Mesh& mesh, int tri) { return p1_basis(triangle_vertices(mesh, tri)); }

struct P1Eval {
  std::array<double, 3> value{};
  std::array<Vec2, 3> grad{};
};

/// Nodal values (= barycentric coordinates) and gradients at a point.
P1Eval p1_eval(const std::array<Vec2, 3>& v, Vec2 p);

inline Vec2 barycentric_point(const std::array<Vec2, 3>& v, const TriangleRule::Point& b) {
  return b.l0 * v[0] + b.l1 * v[1] + b.l2 * v[2];
}

}  // namespace helmdg
