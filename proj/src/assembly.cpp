// SPDX-License-Identifier: Apache-2.0
#include "nlscn/assembly.hpp"

#include <cmath>
#include <vector>

namespace nlscn {

namespace {

using Triplet = Eigen::Triplet<Complex>;

int matrix_dim(const Mesh& mesh, NodeSet nodes) {
  return nodes == NodeSet::Interior ? mesh.num_interior() : mesh.num_nodes();
}

int dof_of(const Mesh& mesh, NodeSet nodes, int node) {
  return nodes == NodeSet::Interior ? mesh.interior_index(node) : node;
}

// Builds the symmetric matrix from upper-triangle triplets so that each
// unordered pair is accumulated exactly once.
SparseComplexMatrix from_upper_triplets(int dim, std::vector<Triplet>& triplets) {
  SparseComplexMatrix upper(dim, dim);
  upper.setFromTriplets(triplets.begin(), triplets.end());
  SparseComplexMatrix full(dim, dim);
  full = upper.selfadjointView<Eigen::Upper>();
  full.makeCompressed();
  return full;
}

template <class ElementMatrixFn>
SparseComplexMatrix assemble_symmetric(const Mesh& mesh, NodeSet nodes,
                                       ElementMatrixFn&& element_matrix) {
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<size_t>(mesh.num_triangles()) * 6);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    const Eigen::Matrix3d el = element_matrix(t, tri);
    for (int li = 0; li < 3; ++li) {
      const int gi = dof_of(mesh, nodes, tri[li]);
      if (gi < 0) continue;
      for (int lj = li; lj < 3; ++lj) {
        const int gj = dof_of(mesh, nodes, tri[lj]);
        if (gj < 0) continue;
        const double v = el(li, lj);
        triplets.emplace_back(std::min(gi, gj), std::max(gi, gj), Complex(v, 0.0));
      }
    }
  }
  return from_upper_triplets(matrix_dim(mesh, nodes), triplets);
}

struct TriangleGeometry {
  Eigen::Vector2d p[3];
  double area;
  Eigen::Vector2d grad[3];  // gradients of the barycentric coordinates
};

TriangleGeometry triangle_geometry(const Mesh& mesh, const std::array<int, 3>& tri) {
  TriangleGeometry g;
  for (int l = 0; l < 3; ++l) g.p[l] = mesh.node(tri[l]);
  const Eigen::Vector2d e1 = g.p[1] - g.p[0];
  const Eigen::Vector2d e2 = g.p[2] - g.p[0];
  g.area = 0.5 * (e1.x() * e2.y() - e1.y() * e2.x());
  for (int l = 0; l < 3; ++l) {
    const Eigen::Vector2d& pa = g.p[(l + 1) % 3];
    const Eigen::Vector2d& pb = g.p[(l + 2) % 3];
    g.grad[l] = Eigen::Vector2d(pa.y() - pb.y(), pb.x() - pa.x()) / (2.0 * g.area);
  }
  return g;
}

}  // namespace

Eigen::Matrix3d mass_element_matrix(const Eigen::Vector2d& p0,
                                    const Eigen::Vector2d& p1,
                                    const Eigen::Vector2d& p2) {
  const Eigen::Vector2d e1 = p1 - p0;
  const Eigen::Vector2d e2 = p2 - p0;
  const double area = 0.5 * std::abs(e1.x() * e2.y() - e1.y() * e2.x());
  Eigen::Matrix3d m;
  m << 2, 1, 1, 1, 2, 1, 1, 1, 2;
  return (area / 12.0) * m;
}

Eigen::Matrix3d stiffness_element_matrix(const Eigen::Vector2d& p0,
                                         const Eigen::Vector2d& p1,
                                         const Eigen::Vector2d& p2) {
  const Eigen::Vector2d p[3] = {p0, p1, p2};
  const Eigen::Vector2d e1 = p1 - p0;
  const Eigen::Vector2d e2 = p2 - p0;
  const double area = 0.5 * (e1.x() * e2.y() - e1.y() * e2.x());
  Eigen::Matrix3d k;
  for (int i = 0; i < 3; ++i) {
    const Eigen::Vector2d gi(p[(i + 1) % 3].y() - p[(i + 2) % 3].y(),
                             p[(i + 2) % 3].x() - p[(i + 1) % 3].x());
    for (int j = 0; j < 3; ++j) {
      const Eigen::Vector2d gj(p[(j + 1) % 3].y() - p[(j + 2) % 3].y(),
                               p[(j + 2) % 3].x() - p[(j + 1) % 3].x());
      k(i, j) = gi.dot(gj) / (4.0 * area);
    }
  }
  return k;
}

SparseComplexMatrix assemble_mass(const Mesh& mesh, NodeSet nodes) {
  return assemble_symmetric(mesh, nodes, [&](int, const std::array<int, 3>& tri) {
    return mass_element_matrix(mesh.node(tri[0]), mesh.node(tri[1]),
                               mesh.node(tri[2]));
  });
}

SparseComplexMatrix assemble_stiffness(const Mesh& mesh, NodeSet nodes) {
  return assemble_symmetric(mesh, nodes, [&](int, const std::array<int, 3>& tri) {
    return stiffness_element_matrix(mesh.node(tri[0]), mesh.node(tri[1]),
                                    mesh.node(tri[2]));
  });
}

SparseComplexMatrix assemble_weighted_mass(const Mesh& mesh,
                                           const PotentialSpec& potential,
                                           const Quadrature& quad, NodeSet nodes,
                                           AssemblyStats* stats) {
  long negative = 0;
  auto result = assemble_symmetric(
      mesh, nodes, [&](int, const std::array<int, 3>& tri) {
        const TriangleGeometry g = triangle_geometry(mesh, tri);
        Eigen::Matrix3d el = Eigen::Matrix3d::Zero();
        for (const auto& qp : quad.points) {
          const Eigen::Vector2d x =
              qp.bary[0] * g.p[0] + qp.bary[1] * g.p[1] + qp.bary[2] * g.p[2];
          const double v = potential(x.x(), x.y());
          if (v < 0.0) ++negative;
          const double w = qp.weight * g.area * v;
          for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) el(i, j) += w * qp.bary[i] * qp.bary[j];
        }
        el.triangularView<Eigen::StrictlyLower>() =
            el.triangularView<Eigen::StrictlyUpper>().transpose();
        return el;
      });
  if (stats) stats->negative_potential_samples += negative;
  return result;
}

SparseComplexMatrix assemble_g_weighted_mass(const Mesh& mesh, const FeField& a,
                                             const FeField& b,
                                             const NonlinearitySpec& nl,
                                             const Quadrature& quad) {
  const ComplexVector an = mesh.to_nodal(a.values);
  const ComplexVector bn = mesh.to_nodal(b.values);
  return assemble_symmetric(mesh, NodeSet::Interior,
                            [&](int, const std::array<int, 3>& tri) {
    const TriangleGeometry g = triangle_geometry(mesh, tri);
    Eigen::Matrix3d el = Eigen::Matrix3d::Zero();
    for (const auto& qp : quad.points) {
      Complex aq = 0.0, bq = 0.0;
      for (int l = 0; l < 3; ++l) {
        aq += qp.bary[l] * an[tri[l]];
        bq += qp.bary[l] * bn[tri[l]];
      }
      const double gval = g_divided(std::norm(aq), std::norm(bq), nl);
      const double w = qp.weight * g.area * gval;
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) el(i, j) += w * qp.bary[i] * qp.bary[j];
    }
    el.triangularView<Eigen::StrictlyLower>() =
        el.triangularView<Eigen::StrictlyUpper>().transpose();
    return el;
  });
}

ComplexVector assemble_nonlinear_vector(const Mesh& mesh, const FeField& a,
                                        const FeField& b, const FeField& m,
                                        const NonlinearitySpec& nl,
                                        const Quadrature& quad) {
  const ComplexVector an = mesh.to_nodal(a.values);
  const ComplexVector bn = mesh.to_nodal(b.values);
  const ComplexVector mn = mesh.to_nodal(m.values);
  ComplexVector out = ComplexVector::Zero(mesh.num_interior());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    const TriangleGeometry g = triangle_geometry(mesh, tri);
    for (const auto& qp : quad.points) {
      Complex aq = 0.0, bq = 0.0, mq = 0.0;
      for (int l = 0; l < 3; ++l) {
        aq += qp.bary[l] * an[tri[l]];
        bq += qp.bary[l] * bn[tri[l]];
        mq += qp.bary[l] * mn[tri[l]];
      }
      const Complex contrib =
          qp.weight * g.area * g_divided(std::norm(aq), std::norm(bq), nl) * mq;
      for (int l = 0; l < 3; ++l) {
        const int dof = mesh.interior_index(tri[l]);
        if (dof >= 0) out[dof] += contrib * qp.bary[l];
      }
    }
  }
  return out;
}

namespace {

FeField solve_stiffness_system(const MeshPtr& mesh, const ComplexVector& load) {
  const SparseComplexMatrix k = assemble_stiffness(*mesh);
  Eigen::SimplicialLDLT<SparseComplexMatrix> solver(k);
  if (solver.info() != Eigen::Success) {
    throw SolverError("stiffness factorization failed in Ritz projection");
  }
  ComplexVector c = solver.solve(load);
  if (solver.info() != Eigen::Success) {
    throw SolverError("stiffness solve failed in Ritz projection");
  }
  return FeField(mesh, std::move(c));
}

}  // namespace

FeField ritz_project(const MeshPtr& mesh, const ScalarField& f,
                     const Quadrature& quad) {
  if (!f.gradient) {
    // nodal interpolation followed by the discrete projection
    ComplexVector vals(mesh->num_interior());
    for (int d = 0; d < mesh->num_interior(); ++d) {
      const Eigen::Vector2d x = mesh->node(mesh->interior_node(d));
      vals[d] = f.value(x.x(), x.y());
    }
    return ritz_project(mesh, FeField(mesh, std::move(vals)));
  }
  ComplexVector load = ComplexVector::Zero(mesh->num_interior());
  for (int t = 0; t < mesh->num_triangles(); ++t) {
    const auto& tri = mesh->triangle(t);
    const TriangleGeometry g = triangle_geometry(*mesh, tri);
    for (const auto& qp : quad.points) {
      const Eigen::Vector2d x =
          qp.bary[0] * g.p[0] + qp.bary[1] * g.p[1] + qp.bary[2] * g.p[2];
      const Eigen::Vector2cd grad = f.gradient(x.x(), x.y());
      for (int l = 0; l < 3; ++l) {
        const int dof = mesh->interior_index(tri[l]);
        if (dof < 0) continue;
        load[dof] += qp.weight * g.area *
                     (grad.x() * g.grad[l].x() + grad.y() * g.grad[l].y());
      }
    }
  }
  return solve_stiffness_system(mesh, load);
}

FeField ritz_project(const MeshPtr& mesh, const FeField& v) {
  const SparseComplexMatrix k = assemble_stiffness(*mesh);
  return solve_stiffness_system(mesh, k * v.values);
}

FormSet assemble_forms(const MeshPtr& mesh, const PotentialSpec& potential,
                       const Quadrature& quad) {
  FormSet forms;
  forms.mesh = mesh;
  forms.quad = quad;
  forms.mass = assemble_mass(*mesh);
  forms.stiffness = assemble_stiffness(*mesh);
  forms.weighted_mass =
      assemble_weighted_mass(*mesh, potential, quad, NodeSet::Interior, &forms.stats);
  forms.mass_solver = std::make_shared<Eigen::SimplicialLDLT<SparseComplexMatrix>>();
  if (mesh->num_interior() > 0) {
    forms.mass_solver->compute(forms.mass);
    if (forms.mass_solver->info() != Eigen::Success) {
      throw SolverError("mass factorization failed");
    }
  }
  return forms;
}

double nonlinear_energy(const Mesh& mesh, const FeField& v,
                        const NonlinearitySpec& nl, const Quadrature& quad) {
  if (nl.kind() == NonlinearitySpec::Kind::None) return 0.0;
  const ComplexVector vn = mesh.to_nodal(v.values);
  double total = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    const double area = mesh.triangle_area();
    for (const auto& qp : quad.points) {
      Complex vq = 0.0;
      for (int l = 0; l < 3; ++l) vq += qp.bary[l] * vn[tri[l]];
      total += qp.weight * area * nl.gamma_integral(std::norm(vq));
    }
  }
  return total;
}

double energy(const FeField& field, const ModelSpec& model, const FormSet& forms) {
  const double kinetic =
      (field.values.dot(forms.stiffness * field.values)).real();
  const double potential =
      (field.values.dot(forms.weighted_mass * field.values)).real();
  return model.kinetic * kinetic + potential +
         nonlinear_energy(*forms.mesh, field, model.nonlinearity, forms.quad);
}

double h1_seminorm_sq(const FeField& field, const SparseComplexMatrix& stiffness) {
  return (field.values.dot(stiffness * field.values)).real();
}

}  // namespace nlscn
