#include "helmdg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace helmdg {

namespace {

double signed_area(Vec2 a, Vec2 b, Vec2 c) { return 0.5 * cross(b - a, c - a); }

// Outward unit normal of a CCW triangle along the directed side a -> b.
Vec2 outward_normal(Vec2 a, Vec2 b) {
  Vec2 d = b - a;
  double len = norm(d);
  return {d.y / len, -d.x / len};
}

}  // namespace

Mesh mesh_from_triangles(std::vector<Vec2> vertices,
                         std::vector<std::array<int, 3>> triangle_vertices,
                         int m) {
  Mesh mesh;
  mesh.m = m;
  mesh.vertices = std::move(vertices);
  mesh.triangles.reserve(triangle_vertices.size());

  for (const auto& tv : triangle_vertices) {
    Vec2 a = mesh.vertices.at(tv[0]);
    Vec2 b = mesh.vertices.at(tv[1]);
    Vec2 c = mesh.vertices.at(tv[2]);
    if (signed_area(a, b, c) <= 0.0)
      throw std::invalid_argument("mesh_from_triangles: triangle not counterclockwise");
    Triangle t;
    t.v = tv;
    t.edge = {-1, -1, -1};
    t.edge_sign = {0, 0, 0};
    mesh.triangles.push_back(t);
  }

  // Collect edges in first-encounter order (triangles by label, sides 0..2).
  std::map<std::pair<int, int>, int> edge_of;
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    for (int s = 0; s < 3; ++s) {
      int a = mesh.triangles[t].v[s];
      int b = mesh.triangles[t].v[(s + 1) % 3];
      auto key = std::minmax(a, b);
      auto [it, inserted] = edge_of.try_emplace(key, static_cast<int>(mesh.edges.size()));
      if (inserted) {
        EdgeInfo e;
        e.v0 = a;
        e.v1 = b;
        e.tri = {t, -1};
        e.side = {s, -1};
        mesh.edges.push_back(e);
      } else {
        EdgeInfo& e = mesh.edges[it->second];
        if (e.tri[1] != -1)
          throw std::invalid_argument("mesh_from_triangles: edge shared by more than two triangles");
        e.tri[1] = t;
        e.side[1] = s;
      }
      mesh.triangles[t].edge[s] = it->second;
    }
  }

  for (int ei = 0; ei < static_cast<int>(mesh.edges.size()); ++ei) {
    EdgeInfo& e = mesh.edges[ei];
    if (e.tri[1] == -1) {
      e.kind = EdgeKind::Boundary;
      mesh.boundary_edges.push_back(ei);
    } else {
      e.kind = EdgeKind::Interior;
      mesh.interior_edges.push_back(ei);
      // Jump convention: the owner K is whichever adjacent triangle has
      // the bigger global label; n_e points out of K.
      if (e.tri[0] < e.tri[1]) {
        std::swap(e.tri[0], e.tri[1]);
        std::swap(e.side[0], e.side[1]);
      }
    }
    const Triangle& owner = mesh.triangles[e.tri[0]];
    int s = e.side[0];
    Vec2 a = mesh.vertices[owner.v[s]];
    Vec2 b = mesh.vertices[owner.v[(s + 1) % 3]];
    e.length = norm(b - a);
    e.normal = outward_normal(a, b);
    e.midpoint = 0.5 * (a + b);
    mesh.triangles[e.tri[0]].edge_sign[e.side[0]] = 1;
    if (e.tri[1] != -1) mesh.triangles[e.tri[1]].edge_sign[e.side[1]] = -1;
  }

  mesh.domain.star_center = {0.0, 0.0};
  double c = std::numeric_limits<double>::infinity();
  for (int ei : mesh.boundary_edges) {
    const EdgeInfo& e = mesh.edges[ei];
    c = std::min(c, dot(e.midpoint - mesh.domain.star_center, e.normal));
  }
  mesh.domain.star_constant = mesh.boundary_edges.empty() ? 0.0 : c;

  return mesh;
}

Mesh build_structured_mesh(int m) {
  if (m < 1) throw std::invalid_argument("build_structured_mesh: m must be >= 1");

  std::vector<Vec2> vertices;
  vertices.reserve(static_cast<size_t>(m + 1) * (m + 1));
  for (int j = 0; j <= m; ++j)
    for (int i = 0; i <= m; ++i)
      vertices.push_back({-0.5 + static_cast<double>(i) / m, -0.5 + static_cast<double>(j) / m});

  auto vid = [m](int i, int j) { return j * (m + 1) + i; };

  std::vector<std::array<int, 3>> tris;
  tris.reserve(static_cast<size_t>(2) * m * m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      int ll = vid(i, j), lr = vid(i + 1, j), ul = vid(i, j + 1), ur = vid(i + 1, j + 1);
      tris.push_back({ll, lr, ur});  // lower triangle, label 2*(j*m+i)
      tris.push_back({ll, ur, ul});  // upper triangle, label 2*(j*m+i)+1
    }
  }

  return mesh_from_triangles(std::move(vertices), std::move(tris), m);
}

MeshSummary mesh_summary(const Mesh& mesh) {
  MeshSummary s;
  s.triangles = static_cast<int>(mesh.triangles.size());
  s.vertices = static_cast<int>(mesh.vertices.size());
  s.edges = static_cast<int>(mesh.edges.size());
  s.interior_edges = static_cast<int>(mesh.interior_edges.size());
  s.boundary_edges = static_cast<int>(mesh.boundary_edges.size());
  s.min_edge_length = std::numeric_limits<double>::infinity();
  s.max_edge_length = 0.0;
  for (const EdgeInfo& e : mesh.edges) {
    s.min_edge_length = std::min(s.min_edge_length, e.length);
    s.max_edge_length = std::max(s.max_edge_length, e.length);
  }
  if (mesh.edges.empty()) s.min_edge_length = 0.0;
  return s;
}

Mesh relabeled(const Mesh& mesh, std::span<const int> new_label) {
  const int n = static_cast<int>(mesh.triangles.size());
  if (static_cast<int>(new_label.size()) != n)
    throw std::invalid_argument("relabeled: permutation size mismatch");
  std::vector<bool> seen(n, false);
  for (int l : new_label) {
    if (l < 0 || l >= n || seen[l]) throw std::invalid_argument("relabeled: not a permutation");
    seen[l] = true;
  }
  std::vector<std::array<int, 3>> tris(n);
  for (int t = 0; t < n; ++t) tris[new_label[t]] = mesh.triangles[t].v;
  return mesh_from_triangles(mesh.vertices, std::move(tris), mesh.m);
}

double triangle_area(const Mesh& mesh, int tri) {
  auto v = triangle_vertices(mesh, tri);
  return signed_area(v[0], v[1], v[2]);
}

void validate(const Mesh& mesh) {
  auto fail = [](const char* what) { throw std::logic_error(std::string("mesh invariant: ") + what); };

  if (mesh.m > 0) {
    const int m = mesh.m;
    if (static_cast<int>(mesh.triangles.size()) != 2 * m * m) fail("triangle count != 2m^2");
    if (static_cast<int>(mesh.vertices.size()) != (m + 1) * (m + 1)) fail("vertex count != (m+1)^2");
    if (static_cast<int>(mesh.edges.size()) != 3 * m * m + 2 * m) fail("edge count != 3m^2+2m");
    if (static_cast<int>(mesh.boundary_edges.size()) != 4 * m) fail("boundary edge count != 4m");
  }
  if (2 * mesh.edges.size() != 3 * mesh.triangles.size() + mesh.boundary_edges.size())
    fail("edge count identity violated");

  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    if (triangle_area(mesh, t) <= 0.0) fail("triangle not counterclockwise");
    for (int s = 0; s < 3; ++s) {
      const EdgeInfo& e = mesh.edges[mesh.triangles[t].edge[s]];
      if (e.tri[0] != t && e.tri[1] != t) fail("triangle->edge adjacency broken");
    }
  }
  for (const EdgeInfo& e : mesh.edges) {
    if (std::abs(norm(e.normal) - 1.0) > 1e-14) fail("edge normal not unit");
    if (e.kind == EdgeKind::Interior && e.tri[0] <= e.tri[1]) fail("interior edge owner not the bigger label");
    if (e.kind == EdgeKind::Boundary && e.tri[1] != -1) fail("boundary edge with two triangles");
    // The stored normal must be the outward normal of the owner triangle.
    const Triangle& owner = mesh.triangles[e.tri[0]];
    Vec2 a = mesh.vertices[owner.v[e.side[0]]];
    Vec2 b = mesh.vertices[owner.v[(e.side[0] + 1) % 3]];
    Vec2 n = outward_normal(a, b);
    if (std::abs(n.x - e.normal.x) > 1e-14 || std::abs(n.y - e.normal.y) > 1e-14)
      fail("edge normal is not the owner's outward normal");
  }
}

void write_mesh_ascii(const Mesh& mesh, std::ostream& out) {
  out << "# vertices " << mesh.vertices.size() << "\n";
  for (const Vec2& v : mesh.vertices) out << v.x << " " << v.y << "\n";
  out << "# triangles " << mesh.triangles.size() << "\n";
  for (const Triangle& t : mesh.triangles) out << t.v[0] << " " << t.v[1] << " " << t.v[2] << "\n";
}

}  // namespace helmdg
