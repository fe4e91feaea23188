// SPDX-License-Identifier: Apache-2.0
#include "nlscn/oracles.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace nlscn::oracle {

namespace {

int dim_of(const Mesh& mesh, NodeSet nodes) {
  return nodes == NodeSet::Interior ? mesh.num_interior() : mesh.num_nodes();
}

int dof_of(const Mesh& mesh, NodeSet nodes, int node) {
  return nodes == NodeSet::Interior ? mesh.interior_index(node) : node;
}

struct Geometry {
  Eigen::Vector2d p[3];
  double area;
  Eigen::Vector2d grad[3];
};

Geometry geometry(const Mesh& mesh, int t) {
  const auto& tri = mesh.triangle(t);
  Geometry g;
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

Eigen::MatrixXcd dense_mass(const Mesh& mesh, NodeSet nodes) {
  const Quadrature& quad = Quadrature::degree6();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_of(mesh, nodes), dim_of(mesh, nodes));
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    const Geometry g = geometry(mesh, t);
    for (const auto& qp : quad.points) {
      for (int i = 0; i < 3; ++i) {
        const int gi = dof_of(mesh, nodes, tri[i]);
        if (gi < 0) continue;
        for (int j = 0; j < 3; ++j) {
          const int gj = dof_of(mesh, nodes, tri[j]);
          if (gj < 0) continue;
          m(gi, gj) += qp.weight * g.area * qp.bary[i] * qp.bary[j];
        }
      }
    }
  }
  return m;
}

Eigen::MatrixXcd dense_stiffness(const Mesh& mesh, NodeSet nodes) {
  const Quadrature& quad = Quadrature::degree6();
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(dim_of(mesh, nodes), dim_of(mesh, nodes));
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    const Geometry g = geometry(mesh, t);
    for (const auto& qp : quad.points) {
      for (int i = 0; i < 3; ++i) {
        const int gi = dof_of(mesh, nodes, tri[i]);
        if (gi < 0) continue;
        for (int j = 0; j < 3; ++j) {
          const int gj = dof_of(mesh, nodes, tri[j]);
          if (gj < 0) continue;
          k(gi, gj) += qp.weight * g.area * g.grad[i].dot(g.grad[j]);
        }
      }
    }
  }
  return k;
}

Eigen::MatrixXcd dense_weighted_mass(const Mesh& mesh, const PotentialSpec& v,
                                     const Quadrature& quad, NodeSet nodes) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_of(mesh, nodes), dim_of(mesh, nodes));
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    const Geometry g = geometry(mesh, t);
    for (const auto& qp : quad.points) {
      const Eigen::Vector2d x =
          qp.bary[0] * g.p[0] + qp.bary[1] * g.p[1] + qp.bary[2] * g.p[2];
      const double w = qp.weight * g.area * v(x.x(), x.y());
      for (int i = 0; i < 3; ++i) {
        const int gi = dof_of(mesh, nodes, tri[i]);
        if (gi < 0) continue;
        for (int j = 0; j < 3; ++j) {
          const int gj = dof_of(mesh, nodes, tri[j]);
          if (gj < 0) continue;
          m(gi, gj) += w * qp.bary[i] * qp.bary[j];
        }
      }
    }
  }
  return m;
}

ComplexVector dense_nonlinear_vector(const Mesh& mesh, const ComplexVector& a,
                                     const ComplexVector& b,
                                     const ComplexVector& m,
                                     const NonlinearitySpec& nl,
                                     const Quadrature& quad) {
  ComplexVector out = ComplexVector::Zero(mesh.num_interior());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    const Geometry g = geometry(mesh, t);
    for (const auto& qp : quad.points) {
      Complex aq = 0.0, bq = 0.0, mq = 0.0;
      for (int l = 0; l < 3; ++l) {
        aq += qp.bary[l] * a[tri[l]];
        bq += qp.bary[l] * b[tri[l]];
        mq += qp.bary[l] * m[tri[l]];
      }
      const Complex f =
          qp.weight * g.area * g_divided(std::norm(aq), std::norm(bq), nl) * mq;
      for (int l = 0; l < 3; ++l) {
        const int dof = mesh.interior_index(tri[l]);
        if (dof >= 0) out[dof] += f * qp.bary[l];
      }
    }
  }
  return out;
}

ComplexVector dense_cayley_step(const Mesh& mesh, const ModelSpec& model,
                                const Quadrature& quad, const ComplexVector& c,
                                double tau) {
  const Eigen::MatrixXcd m = dense_mass(mesh);
  const Eigen::MatrixXcd h =
      model.kinetic * dense_stiffness(mesh) + dense_weighted_mass(mesh, model.potential, quad);
  const Complex half_i_tau(0.0, 0.5 * tau);
  const Eigen::MatrixXcd lhs = m + half_i_tau * h;
  const Eigen::VectorXcd rhs = (m - half_i_tau * h) * c;
  return Eigen::PartialPivLU<Eigen::MatrixXcd>(lhs).solve(rhs);
}

std::pair<double, Eigen::VectorXd> dense_smallest_eigenpair(
    const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, b);
  if (solver.info() != Eigen::Success) {
    throw SolverError("dense generalized eigensolver failed");
  }
  Eigen::VectorXd vec = solver.eigenvectors().col(0);
  // fix the sign so the dominant component is nonnegative
  int imax = 0;
  vec.cwiseAbs().maxCoeff(&imax);
  if (vec[imax] < 0.0) vec = -vec;
  return {solver.eigenvalues()[0], vec};
}

ComplexVector dense_ritz_project(const Mesh& mesh, const ScalarField& f,
                                 const Quadrature& quad) {
  const Eigen::MatrixXcd k = dense_stiffness(mesh);
  ComplexVector load = ComplexVector::Zero(mesh.num_interior());
  if (f.gradient) {
    for (int t = 0; t < mesh.num_triangles(); ++t) {
      const auto& tri = mesh.triangle(t);
      const Geometry g = geometry(mesh, t);
      for (const auto& qp : quad.points) {
        const Eigen::Vector2d x =
            qp.bary[0] * g.p[0] + qp.bary[1] * g.p[1] + qp.bary[2] * g.p[2];
        const Eigen::Vector2cd grad = f.gradient(x.x(), x.y());
        for (int l = 0; l < 3; ++l) {
          const int dof = mesh.interior_index(tri[l]);
          if (dof < 0) continue;
          load[dof] += qp.weight * g.area *
                       (grad.x() * g.grad[l].x() + grad.y() * g.grad[l].y());
        }
      }
    }
  } else {
    ComplexVector nodal(mesh.num_interior());
    for (int d = 0; d < mesh.num_interior(); ++d) {
      const Eigen::Vector2d x = mesh.node(mesh.interior_node(d));
      nodal[d] = f.value(x.x(), x.y());
    }
    load = k * nodal;
  }
  return Eigen::FullPivLU<Eigen::MatrixXcd>(k).solve(load);
}

std::array<double, 4> dense_part_norms(const Mesh& mesh, const ComplexVector& c) {
  const Eigen::MatrixXcd m = dense_mass(mesh);
  const Eigen::MatrixXcd k = dense_stiffness(mesh);
  ComplexVector re(c.size()), im(c.size());
  for (int i = 0; i < c.size(); ++i) {
    re[i] = Complex(c[i].real(), 0.0);
    im[i] = Complex(c[i].imag(), 0.0);
  }
  const auto norm = [](const Eigen::MatrixXcd& form, const ComplexVector& v) {
    return std::sqrt(std::max(0.0, v.dot(form * v).real()));
  };
  return {norm(m, re), norm(m, im), norm(k, re), norm(k, im)};
}

}  // namespace nlscn::oracle
