#include "helmdg/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace helmdg {

namespace {

TriangleRule make_triangle_rule(int degree) {
  TriangleRule r;
  r.degree = degree;
  switch (degree) {
    case 1:
      r.points = {{1.0 / 3, 1.0 / 3, 1.0 / 3}};
      r.weights = {1.0};
      break;
    case 2:
      // Edge-midpoint rule, exact for quadratics.
      r.points = {{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}};
      r.weights = {1.0 / 3, 1.0 / 3, 1.0 / 3};
      break;
    case 5: {
      // Classic 7-point rule: centroid plus two symmetric orbits.
      const double s = std::sqrt(15.0);
      const double b1 = (6.0 - s) / 21.0, a1 = 1.0 - 2.0 * b1, w1 = (155.0 - s) / 1200.0;
      const double b2 = (6.0 + s) / 21.0, a2 = 1.0 - 2.0 * b2, w2 = (155.0 + s) / 1200.0;
      r.points = {{1.0 / 3, 1.0 / 3, 1.0 / 3},
                  {a1, b1, b1}, {b1, a1, b1}, {b1, b1, a1},
                  {a2, b2, b2}, {b2, a2, b2}, {b2, b2, a2}};
      r.weights = {9.0 / 40, w1, w1, w1, w2, w2, w2};
      break;
    }
    default:
      throw std::invalid_argument("triangle_rule: unsupported degree (use 1, 2 or 5)");
  }
  return r;
}

EdgeRule make_edge_rule(int degree) {
  EdgeRule r;
  r.degree = degree;
  switch (degree) {
    case 1:
      r.points = {0.5};
      r.weights = {1.0};
      break;
    case 3: {
      const double d = 0.5 / std::sqrt(3.0);
      r.points = {0.5 - d, 0.5 + d};
      r.weights = {0.5, 0.5};
      break;
    }
    case 7: {
      // 4-point Gauss-Legendre mapped from [-1,1] to [0,1].
      const double x1 = 0.3399810435848563, w1 = 0.6521451548625461;
      const double x2 = 0.8611363115940526, w2 = 0.3478548451374538;
      r.points = {0.5 * (1 - x2), 0.5 * (1 - x1), 0.5 * (1 + x1), 0.5 * (1 + x2)};
      r.weights = {0.5 * w2, 0.5 * w1, 0.5 * w1, 0.5 * w2};
      break;
    }
    default:
      throw std::invalid_argument("edge_rule: unsupported degree (use 1, 3 or 7)");
  }
  return r;
}

}  // namespace

const TriangleRule& triangle_rule(int degree) {
  static const TriangleRule r1 = make_triangle_rule(1);
  static const TriangleRule r2 = make_triangle_rule(2);
  static const TriangleRule r5 = make_triangle_rule(5);
  switch (degree) {
    case 1: return r1;
    case 2: return r2;
    case 5: return r5;
    default: throw std::invalid_argument("triangle_rule: unsupported degree (use 1, 2 or 5)");
  }
}

const EdgeRule& edge_rule(int degree) {
  static const EdgeRule r1 = make_edge_rule(1);
  static const EdgeRule r3 = make_edge_rule(3);
  static const EdgeRule r7 = make_edge_rule(7);
  switch (degree) {
    case 1: return r1;
    case 3: return r3;
    case 7: return r7;
    default: throw std::invalid_argument("edge_rule: unsupported degree (use 1, 3 or 7)");
  }
}

P1Basis p1_basis(const std::array<Vec2, 3>& v) {
  double twice_area = cross(v[1] - v[0], v[2] - v[0]);
  if (twice_area <= 0.0) throw std::invalid_argument("p1_basis: degenerate or clockwise triangle");
  P1Basis b;
  b.area = 0.5 * twice_area;
  // grad lambda_i is the inward-scaled normal of the opposite side.
  for (int i = 0; i < 3; ++i) {
    Vec2 pj = v[(i + 1) % 3];
    Vec2 pk = v[(i + 2) % 3];
    b.grad[i] = {(pj.y - pk.y) / twice_area, (pk.x - pj.x) / twice_area};
  }
  return b;
}

P1Eval p1_eval(const std::array<Vec2, 3>& v, Vec2 p) {
  P1Basis b = p1_basis(v);
  P1Eval e;
  e.grad = b.grad;
  for (int i = 0; i < 3; ++i) e.value[i] = 1.0 / 3 + dot(b.grad[i], p - (v[0] + v[1] + v[2]) / 3.0);
  return e;
}

}  // namespace helmdg
