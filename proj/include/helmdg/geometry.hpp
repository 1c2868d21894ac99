#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "helmdg/types.hpp"

namespace helmdg {

enum class EdgeKind { Interior, Boundary };

/// One mesh edge. For interior edges the adjacent triangles are ordered so
/// that `tri[0]` is the one with the bigger global label, and the unit normal
/// points out of it. For boundary edges `tri[1] == -1` and the normal is the
/// outward normal of the domain.
struct EdgeInfo {
  int v0 = -1;
  int v1 = -1;
  EdgeKind kind = EdgeKind::Boundary;
  std::array<int, 2> tri{-1, -1};
  std::array<int, 2> side{-1, -1};  ///< local side index of this edge in tri[0]/tri[1]
  double length = 0.0;
  Vec2 normal;
  Vec2 midpoint;
};

struct Triangle {
  std::array<int, 3> v{};          ///< vertex indices, counterclockwise
  std::array<int, 3> edge{};       ///< edge index per local side s (vertices v[s], v[s+1])
  std::array<int, 3> edge_sign{};  ///< +1 if the edge normal is this triangle's outward normal
};

/// Star-shape data of the domain: the DG norm weights the boundary gradient
/// term by star_constant = min over the boundary of (x - star_center) . n.
struct DomainInfo {
  Vec2 star_center;
  double star_constant = 0.0;
};

struct Mesh {
  int m = 0;  ///< subdivision count of the structured family; 0 for ad-hoc meshes
  std::vector<Vec2> vertices;
  std::vector<Triangle> triangles;  ///< index == global label, totally ordered
  std::vector<EdgeInfo> edges;
  std::vector<int> interior_edges;
  std::vector<int> boundary_edges;
  DomainInfo domain;
};

struct MeshSummary {
  int triangles = 0;
  int vertices = 0;
  int edges = 0;
  int interior_edges = 0;
  int boundary_edges = 0;
  double min_edge_length = 0.0;
  double max_edge_length = 0.0;
};

/// Uniform triangulation of [-0.5,0.5]^2 into 2m^2 right-angled equicrural
/// triangles of leg 1/m. Every cell is split along the lower-left to
/// upper-right diagonal; global labels are row-major cell index * 2, plus one
/// for the upper triangle.
Mesh build_structured_mesh(int m);

/// General builder from a triangle soup (labels assigned by position).
/// Used for ad-hoc meshes in tests; `build_structured_mesh` goes through it.
Mesh mesh_from_triangles(std::vector<Vec2> vertices,
                         std::vector<std::array<int, 3>> triangle_vertices,
                         int m = 0);

MeshSummary mesh_summary(const Mesh& mesh);

/// Copy of `mesh` with triangle t relabeled to new_label[t]. Edge ownership
/// and normals follow the new labels.
Mesh relabeled(const Mesh& mesh, std::span<const int> new_label);

/// Checks every structural invariant (counts, orientation, normals, edge
/// adjacency); throws std::logic_error on the first violation.
void validate(const Mesh& mesh);

/// Debug dump: one vertex per line "x y", then one triangle per line "i j k".
void write_mesh_ascii(const Mesh& mesh, std::ostream& out);

double triangle_area(const Mesh& mesh, int tri);

inline Vec2 vertex(const Mesh& mesh, int v) { return mesh.vertices[v]; }

inline std::array<Vec2, 3> triangle_vertices(const Mesh& mesh, int tri) {
  const Triangle& t = mesh.triangles[tri];
  return {mesh.vertices[t.v[0]], mesh.vertices[t.v[1]], mesh.vertices[t.v[2]]};
}

}  // namespace helmdg
