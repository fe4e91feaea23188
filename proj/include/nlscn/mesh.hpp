// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <memory>
#include <vector>

#include "nlscn/types.hpp"

namespace nlscn {

/// Uniform nested triangulation of an axis-aligned rectangle.
///
/// Level k has n = 2^k cells per side; every grid square is split along the
/// diagonal from its lower-left to its upper-right corner. Nodes are stored
/// in lexicographic order (x fastest). Boundary nodes carry no degree of
/// freedom (homogeneous Dirichlet); interior nodes are numbered
/// lexicographically as well.
///
/// Immutable after construction; safe to share across threads.
class Mesh {
 public:
  Mesh(Rect domain, int level);

  const Rect& domain() const { return domain_; }
  int level() const { return level_; }
  int cells_per_side() const { return n_; }

  /// Element diameter (cell-diagonal length).
  double h() const { return h_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }

  int num_nodes() const { return (n_ + 1) * (n_ + 1); }
  int num_triangles() const { return 2 * n_ * n_; }
  int num_interior() const { return (n_ - 1) * (n_ - 1); }

  Eigen::Vector2d node(int node_index) const {
    const int i = node_index % (n_ + 1);
    const int j = node_index / (n_ + 1);
    return {domain_.x0 + i * dx_, domain_.y0 + j * dy_};
  }

  int node_index(int i, int j) const { return j * (n_ + 1) + i; }

  bool is_boundary_node(int node_index) const {
    const int i = node_index % (n_ + 1);
    const int j = node_index / (n_ + 1);
    return i == 0 || i == n_ || j == 0 || j == n_;
  }

  /// Interior-dof index of a node, or -1 for boundary nodes.
  int interior_index(int node_index) const { return interior_map_[node_index]; }

  /// Node index of an interior dof.
  int interior_node(int dof) const { return interior_nodes_[dof]; }

  /// Vertex node indices of a triangle, positively oriented.
  const std::array<int, 3>& triangle(int t) const { return triangles_[t]; }

  double triangle_area() const { return 0.5 * dx_ * dy_; }

  /// Expands interior-dof coefficients to the full node set (boundary zeros).
  ComplexVector to_nodal(const ComplexVector& interior_values) const;

  /// Restricts full nodal values to the interior dofs.
  ComplexVector to_interior(const ComplexVector& nodal_values) const;

 private:
  Rect domain_;
  int level_;
  int n_;
  double dx_, dy_, h_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<int> interior_map_;
  std::vector<int> interior_nodes_;
};

using MeshPtr = std::shared_ptr<const Mesh>;

/// Builds the level-`level` uniform triangulation of `domain`.
/// Throws MeshError for non-positive extents or negative level.
MeshPtr build_uniform_mesh(Rect domain, int level);

/// Complex P1 coefficient vector over the interior nodes of a mesh.
struct FeField {
  MeshPtr mesh;
  ComplexVector values;

  FeField() = default;
  FeField(MeshPtr m, ComplexVector v) : mesh(std::move(m)), values(std::move(v)) {}

  static FeField zero(MeshPtr m) {
    return FeField(m, ComplexVector::Zero(m->num_interior()));
  }
};

/// Represents a coarse field exactly on a finer nested mesh of the same
/// domain. Throws MeshError for mismatched domains or fine.level < coarse.
FeField prolongate(const FeField& coarse, const MeshPtr& fine);

/// Evaluates a P1 field (given by full nodal values) at an arbitrary point
/// of the mesh domain.
Complex eval_p1(const Mesh& mesh, const ComplexVector& nodal_values, double x,
                double y);

}  // namespace nlscn
