#pragma once

#include "helmdg/geometry.hpp"

namespace helmdg {

enum class SystemKind { Mixed, Primal, FemP1 };

/// Unknown numbering. Discontinuous spaces carry 3 complex scalar dofs per
/// triangle (V_h) and 6 vector dofs (Sigma_h; component-major, 3 per
/// component). The mixed system orders all u dofs before all sigma dofs.
struct DofMap {
  SystemKind kind = SystemKind::Mixed;
  int n_triangles = 0;
  int n_vertices = 0;

  static DofMap mixed(const Mesh& mesh) {
    return {SystemKind::Mixed, static_cast<int>(mesh.triangles.size()),
            static_cast<int>(mesh.vertices.size())};
  }
  static DofMap primal(const Mesh& mesh) {
    return {SystemKind::Primal, static_cast<int>(mesh.triangles.size()),
            static_cast<int>(mesh.vertices.size())};
  }
  static DofMap fem(const Mesh& mesh) {
    return {SystemKind::FemP1, static_cast<int>(mesh.triangles.size()),
            static_cast<int>(mesh.vertices.size())};
  }

  int n_u() const { return kind == SystemKind::FemP1 ? n_vertices : 3 * n_triangles; }
  int n_sigma() const { return kind == SystemKind::Mixed ? 6 * n_triangles : 0; }
  int size() const { return n_u() + n_sigma(); }

  int u_dof(int tri, int local) const { return 3 * tri + local; }
  int sigma_dof(int tri, int component, int local) const {
    return n_u() + 6 * tri + 3 * component + local;
  }
  int vertex_dof(int v) const { return v; }
};

}  // namespace helmdg
