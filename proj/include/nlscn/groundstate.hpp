// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "nlscn/assembly.hpp"
#include "nlscn/mesh.hpp"
#include "nlscn/model.hpp"

namespace nlscn {

/// Discrete normalized gradient flow (semi-implicit backward Euler with the
/// nonlinearity lagged, renormalized each step).
struct DngfConfig {
  double flow_step = 0.1;
  double stop_tol = 1e-10;
  int max_outer = 100000;

  enum class Seed { Gaussian, PositiveConstant };
  Seed seed_profile = Seed::Gaussian;
  double seed_width = 1.0;
};

struct DngfResult {
  FeField state;          // real, nonnegative nodal values, unit mass
  double mu = 0.0;        // discrete Rayleigh quotient (chemical potential)
  int iterations = 0;
  double final_increment = 0.0;
  int flow_step_halvings = 0;
  std::vector<double> energies;  // per accepted outer iterate
};

/// Minimizes the discrete energy of `model` over the unit L2 sphere of the
/// mesh's P1 space. Throws SolverError when max_outer is exceeded or the
/// flow step cannot be stabilized.
DngfResult dngf_solve(const MeshPtr& mesh, const ModelSpec& model,
                      const DngfConfig& cfg = {});

/// One flow step (solve + renormalize); used by fixed-point diagnostics.
FeField dngf_step(const FeField& phi, double flow_step, const ModelSpec& model,
                  const FormSet& forms);

/// Discrete initial value: exact prolongation for nested discrete data,
/// identity on the same mesh.
FeField project_initial(const FeField& u0, const MeshPtr& mesh);

/// Discrete initial value of a pointwise function via Ritz projection.
FeField project_initial(const ScalarField& u0, const MeshPtr& mesh);

}  // namespace nlscn
