// SPDX-License-Identifier: Apache-2.0
#include "nlscn/mesh.hpp"

#include <cmath>

namespace nlscn {

Mesh::Mesh(Rect domain, int level) : domain_(domain), level_(level) {
  if (level < 0) {
    throw MeshError("mesh level must be nonnegative");
  }
  if (!(domain.x1 > domain.x0) || !(domain.y1 > domain.y0)) {
    throw MeshError("invalid domain: rectangle extents must be positive");
  }
  n_ = 1 << level;
  dx_ = domain.width() / n_;
  dy_ = domain.height() / n_;
  h_ = std::hypot(dx_, dy_);

  triangles_.reserve(static_cast<size_t>(2) * n_ * n_);
  for (int j = 0; j < n_; ++j) {
    for (int i = 0; i < n_; ++i) {
      const int a = node_index(i, j);
      const int b = node_index(i + 1, j);
      const int c = node_index(i + 1, j + 1);
      const int d = node_index(i, j + 1);
      // split along the lower-left -> upper-right diagonal
      triangles_.push_back({a, b, c});
      triangles_.push_back({a, c, d});
    }
  }

  interior_map_.assign(num_nodes(), -1);
  interior_nodes_.reserve(static_cast<size_t>(std::max(0, num_interior())));
  for (int j = 1; j < n_; ++j) {
    for (int i = 1; i < n_; ++i) {
      const int idx = node_index(i, j);
      interior_map_[idx] = static_cast<int>(interior_nodes_.size());
      interior_nodes_.push_back(idx);
    }
  }
}

ComplexVector Mesh::to_nodal(const ComplexVector& interior_values) const {
  ComplexVector full = ComplexVector::Zero(num_nodes());
  for (int d = 0; d < static_cast<int>(interior_nodes_.size()); ++d) {
    full[interior_nodes_[d]] = interior_values[d];
  }
  return full;
}

ComplexVector Mesh::to_interior(const ComplexVector& nodal_values) const {
  ComplexVector vals(num_interior());
  for (int d = 0; d < static_cast<int>(interior_nodes_.size()); ++d) {
    vals[d] = nodal_values[interior_nodes_[d]];
  }
  return vals;
}

MeshPtr build_uniform_mesh(Rect domain, int level) {
  return std::make_shared<const Mesh>(domain, level);
}

Complex eval_p1(const Mesh& mesh, const ComplexVector& nodal_values, double x,
                double y) {
  const Rect& d = mesh.domain();
  const int n = mesh.cells_per_side();
  // locate the grid cell, clamping points on the upper/right boundary
  int ci = static_cast<int>(std::floor((x - d.x0) / mesh.dx()));
  int cj = static_cast<int>(std::floor((y - d.y0) / mesh.dy()));
  ci = std::min(std::max(ci, 0), n - 1);
  cj = std::min(std::max(cj, 0), n - 1);
  const double xi = (x - d.x0) / mesh.dx() - ci;
  const double eta = (y - d.y0) / mesh.dy() - cj;

  const Complex va = nodal_values[mesh.node_index(ci, cj)];
  const Complex vb = nodal_values[mesh.node_index(ci + 1, cj)];
  const Complex vc = nodal_values[mesh.node_index(ci + 1, cj + 1)];
  const Complex vd = nodal_values[mesh.node_index(ci, cj + 1)];
  if (xi >= eta) {
    // lower triangle (a, b, c)
    return va * (1.0 - xi) + vb * (xi - eta) + vc * eta;
  }
  // upper triangle (a, c, d)
  return va * (1.0 - eta) + vc * xi + vd * (eta - xi);
}

FeField prolongate(const FeField& coarse, const MeshPtr& fine) {
  const Mesh& cm = *coarse.mesh;
  const Mesh& fm = *fine;
  if (!(cm.domain() == fm.domain())) {
    throw MeshError("incompatible meshes: domains differ");
  }
  if (fm.level() < cm.level()) {
    throw MeshError("incompatible meshes: target level is coarser");
  }
  if (fm.level() == cm.level()) {
    return FeField(fine, coarse.values);
  }

  const ComplexVector nodal = cm.to_nodal(coarse.values);
  const int ratio = 1 << (fm.level() - cm.level());
  const int nf = fm.cells_per_side();
  ComplexVector out(fm.num_interior());
  for (int j = 1; j < nf; ++j) {
    for (int i = 1; i < nf; ++i) {
      const int dof = fm.interior_index(fm.node_index(i, j));
      // coarse-grid coordinates of the fine node
      const int qi = i / ratio, ri = i % ratio;
      const int qj = j / ratio, rj = j % ratio;
      if (ri == 0 && rj == 0) {
        out[dof] = nodal[cm.node_index(qi, qj)];
        continue;
      }
      const double xi = static_cast<double>(ri) / ratio;
      const double eta = static_cast<double>(rj) / ratio;
      const Complex va = nodal[cm.node_index(qi, qj)];
      const Complex vb = nodal[cm.node_index(qi + 1, qj)];
      const Complex vc = nodal[cm.node_index(qi + 1, qj + 1)];
      const Complex vd = nodal[cm.node_index(qi, qj + 1)];
      out[dof] = (xi >= eta) ? va * (1.0 - xi) + vb * (xi - eta) + vc * eta
                             : va * (1.0 - eta) + vc * xi + vd * (eta - xi);
    }
  }
  return FeField(fine, std::move(out));
}

}  // namespace nlscn
