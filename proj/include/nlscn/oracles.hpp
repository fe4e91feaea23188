// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nlscn/assembly.hpp"
#include "nlscn/mesh.hpp"
#include "nlscn/model.hpp"

namespace nlscn::oracle {

/// Dense reference implementations used to cross-check the sparse path on
/// small meshes. They are built deliberately differently: quadrature where
/// the production assembly uses closed forms, dense factorizations where it
/// uses sparse ones.

/// Mass matrix by degree-6 quadrature of the basis products.
Eigen::MatrixXcd dense_mass(const Mesh& mesh, NodeSet nodes = NodeSet::Interior);

/// Stiffness matrix by quadrature of the constant basis gradients.
Eigen::MatrixXcd dense_stiffness(const Mesh& mesh,
                                 NodeSet nodes = NodeSet::Interior);

Eigen::MatrixXcd dense_weighted_mass(const Mesh& mesh, const PotentialSpec& v,
                                     const Quadrature& quad,
                                     NodeSet nodes = NodeSet::Interior);

/// Nonlinear load by a flat loop over every element and quadrature point.
ComplexVector dense_nonlinear_vector(const Mesh& mesh, const ComplexVector& a,
                                     const ComplexVector& b,
                                     const ComplexVector& m,
                                     const NonlinearitySpec& nl,
                                     const Quadrature& quad);

/// One linear Crank-Nicolson step by a dense Cayley solve
/// (M + i tau/2 H)^{-1} (M - i tau/2 H) c with H = kinetic K + W.
ComplexVector dense_cayley_step(const Mesh& mesh, const ModelSpec& model,
                                const Quadrature& quad, const ComplexVector& c,
                                double tau);

/// Smallest generalized eigenpair of (A, B), B symmetric positive definite.
std::pair<double, Eigen::VectorXd> dense_smallest_eigenpair(
    const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Ritz projection through a dense stiffness system and dense factorization.
ComplexVector dense_ritz_project(const Mesh& mesh, const ScalarField& f,
                                 const Quadrature& quad);

/// L2 norms of real/imag parts via the dense mass/stiffness matrices.
std::array<double, 4> dense_part_norms(const Mesh& mesh, const ComplexVector& c);

}  // namespace nlscn::oracle
