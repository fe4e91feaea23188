// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>

#include "nlscn/mesh.hpp"
#include "nlscn/model.hpp"
#include "nlscn/quadrature.hpp"
#include "nlscn/types.hpp"

namespace nlscn {

/// Which node set a matrix is assembled on. Interior eliminates boundary
/// dofs (the reduced system); All keeps every node (used by the kernel /
/// partition-of-unity checks).
enum class NodeSet { Interior, All };

struct AssemblyStats {
  long negative_potential_samples = 0;
};

/// P1 element mass matrix (exact): area/12 * [[2,1,1],[1,2,1],[1,1,2]].
Eigen::Matrix3d mass_element_matrix(const Eigen::Vector2d& p0,
                                    const Eigen::Vector2d& p1,
                                    const Eigen::Vector2d& p2);

/// P1 element stiffness matrix (exact, constant gradients).
Eigen::Matrix3d stiffness_element_matrix(const Eigen::Vector2d& p0,
                                         const Eigen::Vector2d& p1,
                                         const Eigen::Vector2d& p2);

SparseComplexMatrix assemble_mass(const Mesh& mesh,
                                  NodeSet nodes = NodeSet::Interior);

SparseComplexMatrix assemble_stiffness(const Mesh& mesh,
                                       NodeSet nodes = NodeSet::Interior);

/// Entries sum_T sum_q w_q area(T) V(x_q) phi_i(x_q) phi_j(x_q). Negative
/// potential samples are counted in `stats` (the analysis assumes V >= 0)
/// but are not fatal.
SparseComplexMatrix assemble_weighted_mass(const Mesh& mesh,
                                           const PotentialSpec& potential,
                                           const Quadrature& quad,
                                           NodeSet nodes = NodeSet::Interior,
                                           AssemblyStats* stats = nullptr);

/// Mass matrix weighted by the divided-difference kernel of the two fields:
/// weight(x) = G(|a(x)|^2, |b(x)|^2) sampled at quadrature points.
SparseComplexMatrix assemble_g_weighted_mass(const Mesh& mesh, const FeField& a,
                                             const FeField& b,
                                             const NonlinearitySpec& nl,
                                             const Quadrature& quad);

/// Component i = sum_T sum_q w_q area(T) G(|a|^2,|b|^2)(x_q) m(x_q) phi_i(x_q)
/// over interior dofs.
ComplexVector assemble_nonlinear_vector(const Mesh& mesh, const FeField& a,
                                        const FeField& b, const FeField& m,
                                        const NonlinearitySpec& nl,
                                        const Quadrature& quad);

/// Pointwise-evaluable function with an optional gradient. When the gradient
/// is absent, Ritz projection falls back to nodal interpolation followed by
/// the discrete projection.
struct ScalarField {
  std::function<Complex(double, double)> value;
  std::function<Eigen::Vector2cd(double, double)> gradient;
};

FeField ritz_project(const MeshPtr& mesh, const ScalarField& f,
                     const Quadrature& quad = Quadrature::degree4());

/// Ritz projection of a discrete field onto the same space: solves
/// K c = K v (identity up to solver roundoff).
FeField ritz_project(const MeshPtr& mesh, const FeField& v);

/// Assembled forms shared by the stepper, ground-state flow and functionals.
/// The quadrature rule committed here is used consistently for the potential
/// and nonlinear terms, which is what makes the discrete energy an exact
/// invariant of the scheme.
struct FormSet {
  MeshPtr mesh;
  SparseComplexMatrix mass;
  SparseComplexMatrix stiffness;
  SparseComplexMatrix weighted_mass;
  Quadrature quad;
  std::shared_ptr<Eigen::SimplicialLDLT<SparseComplexMatrix>> mass_solver;
  AssemblyStats stats;
};

FormSet assemble_forms(const MeshPtr& mesh, const PotentialSpec& potential,
                       const Quadrature& quad = Quadrature::degree4());

/// int_D Gamma(|v|^2) by quadrature.
double nonlinear_energy(const Mesh& mesh, const FeField& v,
                        const NonlinearitySpec& nl, const Quadrature& quad);

/// kinetic * <K v, v> + <W v, v> + int Gamma(|v|^2); nonnegative for V >= 0.
double energy(const FeField& field, const ModelSpec& model, const FormSet& forms);

/// H1 seminorm squared, <K v, v>.
double h1_seminorm_sq(const FeField& field, const SparseComplexMatrix& stiffness);

}  // namespace nlscn
