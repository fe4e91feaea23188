// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "nlscn/groundstate.hpp"
#include "nlscn/oracles.hpp"
#include "nlscn/run_config.hpp"

using namespace nlscn;

namespace {

const Rect kSquare{-6.0, -6.0, 6.0, 6.0};

ModelSpec harmonic_linear_model() {
  ModelSpec model;
  model.domain = kSquare;
  model.kinetic = 0.5;
  model.potential = PotentialSpec::harmonic({0.0, 0.0}, 0.5);
  return model;
}

ModelSpec experiment_groundstate_model() {
  ModelSpec model;
  model.domain = kSquare;
  model.kinetic = 0.5;
  model.potential = PotentialSpec::sum(
      {PotentialSpec::disorder_sine(), PotentialSpec::harmonic({0.0, 0.0}, 0.5)});
  model.nonlinearity = NonlinearitySpec::cubic(10.0);
  return model;
}

}  // namespace

TEST_CASE("linear ground state matches the dense generalized eigenpair") {
  const ModelSpec model = harmonic_linear_model();
  for (int level : {2, 3}) {
    const MeshPtr mesh = build_uniform_mesh(kSquare, level);
    const DngfResult gs = dngf_solve(mesh, model);

    const FormSet forms = assemble_forms(mesh, model.potential);
    const Eigen::MatrixXd a =
        (model.kinetic * oracle::dense_stiffness(*mesh) +
         oracle::dense_weighted_mass(*mesh, model.potential, forms.quad))
            .real();
    const Eigen::MatrixXd b = oracle::dense_mass(*mesh).real();
    const auto [lambda, vec] = oracle::dense_smallest_eigenpair(a, b);

    CHECK(std::abs(gs.mu - lambda) <= 1e-8);
    FeField diff = gs.state;
    diff.values -= vec.cast<Complex>();
    CHECK(l2_norm(diff, forms.mass) <= 1e-6);
  }
}

TEST_CASE("the flow normalizes to unit mass") {
  const MeshPtr mesh = build_uniform_mesh(kSquare, 3);
  const ModelSpec model = experiment_groundstate_model();
  const DngfResult gs = dngf_solve(mesh, model);
  const FormSet forms = assemble_forms(mesh, model.potential);
  CHECK(mass(gs.state, forms.mass) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("experiment ground state at level 5 decreases the energy monotonically") {
  const MeshPtr mesh = build_uniform_mesh(kSquare, 5);
  const ModelSpec model = experiment_groundstate_model();
  const DngfResult gs = dngf_solve(mesh, model);

  REQUIRE(gs.energies.size() >= 2);
  for (size_t i = 1; i < gs.energies.size(); ++i) {
    REQUIRE(gs.energies[i] <=
            gs.energies[i - 1] + 1e-12 * std::max(1.0, std::abs(gs.energies[i - 1])));
  }
  // the seed is the first energy entry; the minimizer must not exceed it
  CHECK(gs.energies.back() <= gs.energies.front());
}

TEST_CASE("result is real and a flow fixed point") {
  const MeshPtr mesh = build_uniform_mesh(kSquare, 4);
  const ModelSpec model = experiment_groundstate_model();
  DngfConfig cfg;
  const DngfResult gs = dngf_solve(mesh, model, cfg);

  double undershoot = 0.0;
  for (int i = 0; i < gs.state.values.size(); ++i) {
    REQUIRE(gs.state.values[i].imag() == 0.0);
    undershoot = std::min(undershoot, gs.state.values[i].real());
  }
  // the consistent-mass minimizer undershoots slightly where the tail is
  // under-resolved; the undershoot shrinks rapidly with the level (see the
  // level-6 case below for the resolved regime)
  CHECK(undershoot >= -1e-3);

  const FormSet forms = assemble_forms(mesh, model.potential);
  const double step = cfg.flow_step / std::pow(2.0, gs.flow_step_halvings);
  const FeField moved = dngf_step(gs.state, step, model, forms);
  const double drift = (moved.values - gs.state.values).cwiseAbs().maxCoeff();
  CHECK(drift < 10.0 * cfg.stop_tol);
}

TEST_CASE("at the experiment resolution the state is nonnegative at every node") {
  const MeshPtr mesh = build_uniform_mesh(kSquare, 6);
  const DngfResult gs = dngf_solve(mesh, experiment_groundstate_model());
  for (int i = 0; i < gs.state.values.size(); ++i) {
    REQUIRE(gs.state.values[i].imag() == 0.0);
    REQUIRE(gs.state.values[i].real() >= 0.0);
  }
}

TEST_CASE("exceeding max_outer raises a solver error") {
  const MeshPtr mesh = build_uniform_mesh(kSquare, 3);
  const ModelSpec model = experiment_groundstate_model();
  DngfConfig cfg;
  cfg.max_outer = 2;
  CHECK_THROWS_AS(dngf_solve(mesh, model, cfg), SolverError);
}

TEST_CASE("positive-constant seed converges to the same minimizer") {
  const MeshPtr mesh = build_uniform_mesh(kSquare, 3);
  const ModelSpec model = harmonic_linear_model();
  DngfConfig constant_seed;
  constant_seed.seed_profile = DngfConfig::Seed::PositiveConstant;
  const DngfResult a = dngf_solve(mesh, model);
  const DngfResult b = dngf_solve(mesh, model, constant_seed);
  CHECK((a.state.values - b.state.values).cwiseAbs().maxCoeff() <= 1e-7);
}

TEST_CASE("project_initial is the identity on the same mesh") {
  const MeshPtr mesh = build_uniform_mesh(kSquare, 3);
  const ModelSpec model = harmonic_linear_model();
  const DngfResult gs = dngf_solve(mesh, model);
  const FeField same = project_initial(gs.state, mesh);
  CHECK((same.values - gs.state.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("prolonged ground state keeps unit mass") {
  const MeshPtr coarse = build_uniform_mesh(kSquare, 3);
  const MeshPtr fine = build_uniform_mesh(kSquare, 5);
  const ModelSpec model = harmonic_linear_model();
  const DngfResult gs = dngf_solve(coarse, model);
  const FeField lifted = project_initial(gs.state, fine);
  const FormSet fine_forms = assemble_forms(fine, model.potential);
  CHECK(mass(lifted, fine_forms.mass) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("projection of a smooth function decays at second order") {
  FunctionProfile bump;
  std::vector<double> errors;
  for (int level : {3, 4, 5}) {
    const MeshPtr mesh = build_uniform_mesh(kSquare, level);
    const ScalarField f = bump.as_scalar_field(kSquare);
    const FeField ph = project_initial(f, mesh);
    const ComplexVector nodal = mesh->to_nodal(ph.values);
    double err_sq = 0.0;
    for (int t = 0; t < mesh->num_triangles(); ++t) {
      const auto& tri = mesh->triangle(t);
      for (const auto& qp : Quadrature::degree6().points) {
        Eigen::Vector2d x = Eigen::Vector2d::Zero();
        Complex uh = 0.0;
        for (int l = 0; l < 3; ++l) {
          x += qp.bary[l] * mesh->node(tri[l]);
          uh += qp.bary[l] * nodal[tri[l]];
        }
        err_sq +=
            qp.weight * mesh->triangle_area() * std::norm(uh - f.value(x.x(), x.y()));
      }
    }
    errors.push_back(std::sqrt(err_sq));
  }
  for (size_t i = 0; i + 1 < errors.size(); ++i) {
    const double ratio = errors[i] / errors[i + 1];
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);
  }
}
