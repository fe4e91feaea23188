// SPDX-License-Identifier: Apache-2.0
#include "nlscn/check_suites.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nlscn/analysis_checks.hpp"
#include "nlscn/convergence.hpp"
#include "nlscn/groundstate.hpp"
#include "nlscn/oracles.hpp"
#include "nlscn/run_config.hpp"

namespace nlscn {

using nlohmann::json;

CheckSuite check_suite_from_string(const std::string& name) {
  if (name == "identities") return CheckSuite::Identities;
  if (name == "stability") return CheckSuite::Stability;
  if (name == "oracles") return CheckSuite::Oracles;
  throw ConfigError("unknown check suite: " + name);
}

bool SuiteReport::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

json SuiteReport::to_json() const {
  json checks_json = json::array();
  for (const auto& c : checks) {
    checks_json.push_back({{"name", c.name},
                           {"passed", c.passed},
                           {"measured", c.measured},
                           {"limit", c.limit},
                           {"detail", c.detail}});
  }
  return {{"suite", suite}, {"passed", all_passed()}, {"checks", checks_json}};
}

namespace {

Complex sample_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = radius * std::sqrt(unit(rng));
  const double phi = 2.0 * M_PI * unit(rng);
  return {r * std::cos(phi), r * std::sin(phi)};
}

/// Margin keeping the identity's quotient well conditioned; pairs whose
/// squared moduli nearly coincide are redrawn (precondition of the check).
constexpr double kHalfIdentityGapMargin = 1e-2;

double max_half_identity_defect(long samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (long s = 0; s < samples; ++s) {
    Complex z0, z1;
    do {
      z0 = sample_disk(rng, 10.0);
      z1 = sample_disk(rng, 10.0);
    } while (std::abs(std::norm(z0) - std::norm(z1)) <=
             kHalfIdentityGapMargin *
                 std::max({1.0, std::norm(z0), std::norm(z1)}));
    const auto [lhs, rhs] = half_identity(z0, z1);
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + rhs));
  }
  return worst;
}

CheckResult make_check(const std::string& name, double measured, double limit,
                       const std::string& detail = {}) {
  CheckResult c;
  c.name = name;
  c.measured = measured;
  c.limit = limit;
  c.passed = measured <= limit;
  c.detail = detail;
  return c;
}

SuiteReport identities_suite(std::uint64_t seed) {
  SuiteReport report;
  report.suite = "identities";

  report.checks.push_back(make_check("half_identity_defect",
                                     max_half_identity_defect(100000, seed ^ 0x1),
                                     1e-12, "1e5 pairs, |z| <= 10"));

  for (double beta : {1.0, 20.0}) {
    for (double m : {1.0, 2.0}) {
      const auto rep = check_gm_lipschitz(NonlinearitySpec::cubic(beta), m,
                                          100000, seed ^ 0x2);
      std::ostringstream name;
      name << "gm_lipschitz_beta" << beta << "_M" << m;
      std::ostringstream detail;
      detail << "bound constant " << rep.bound_constant << ", worst witness z0=("
             << rep.worst_witness[0].real() << "," << rep.worst_witness[0].imag()
             << ")";
      report.checks.push_back(
          make_check(name.str(), rep.worst_violation, 0.0, detail.str()));
    }
  }

  const auto fm = check_fm_cond3(NonlinearitySpec::cubic(1.0), 1.0, 10000,
                                 seed ^ 0x3);
  std::ostringstream detail;
  detail << "fitted C1 = C2 = " << fm.fitted_c1 << " over " << fm.samples
         << " samples";
  CheckResult fm_check;
  fm_check.name = "fm_cond3_fitted_constants";
  fm_check.measured = fm.fitted_c1;
  fm_check.limit = std::numeric_limits<double>::infinity();
  fm_check.passed = std::isfinite(fm.fitted_c1) && fm.passed();
  fm_check.detail = detail.str();
  report.checks.push_back(fm_check);
  return report;
}

SuiteReport stability_suite(std::uint64_t seed) {
  SuiteReport report;
  report.suite = "stability";

  const Rect domain{-6.0, -6.0, 6.0, 6.0};
  const MeshPtr mesh = build_uniform_mesh(domain, 3);
  const int steps = 16;
  const TimeGrid grid = TimeGrid::equidistant(1.0, steps);

  FunctionProfile bump;
  const FeField u0 = ritz_project(mesh, bump.as_scalar_field(domain));

  std::mt19937_64 rng(seed ^ 0x51ab);
  std::uniform_real_distribution<double> beta_dist(0.0, 20.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  double worst_ratio = 0.0;
  for (int run = 0; run < 21; ++run) {
    ModelSpec model;
    model.domain = domain;
    model.kinetic = 0.5;
    model.potential = PotentialSpec::disorder_sine();
    model.nonlinearity = NonlinearitySpec::cubic(run == 0 ? 20.0 : beta_dist(rng));
    model.horizon = 1.0;
    const FormSet forms = assemble_forms(mesh, model.potential);

    StepperConfig cfg;
    if (run > 0) {
      // random L2 perturbations, one per step
      for (int n = 0; n < steps; ++n) {
        ComplexVector f(mesh->num_interior());
        for (int i = 0; i < f.size(); ++i) f[i] = Complex(normal(rng), normal(rng));
        FeField field(mesh, std::move(f));
        field.values /= l2_norm(field, forms.mass);
        cfg.perturbation.push_back(std::move(field));
      }
    }

    const Trajectory traj = evolve(u0, grid, model, forms, cfg);
    const StabilityReport stab = check_stability_bound(
        traj.final_state, u0, cfg.perturbation, grid, forms.mass);
    worst_ratio = std::max(worst_ratio, stab.lhs / stab.rhs);
    std::ostringstream name;
    name << (run == 0 ? "stability_unperturbed" : "stability_perturbed_run");
    if (run > 0) name << run;
    std::ostringstream detail;
    detail << "lhs " << stab.lhs << " rhs " << stab.rhs;
    report.checks.push_back(
        make_check(name.str(), stab.lhs / stab.rhs, 1.0, detail.str()));
  }
  return report;
}

SuiteReport oracles_suite(std::uint64_t seed) {
  SuiteReport report;
  report.suite = "oracles";

  const Rect domain{-6.0, -6.0, 6.0, 6.0};
  const MeshPtr mesh = build_uniform_mesh(domain, 3);
  std::mt19937_64 rng(seed ^ 0x07ac1e);
  std::normal_distribution<double> normal(0.0, 1.0);

  // (a) linear step against the dense Cayley solve
  {
    ModelSpec model;
    model.domain = domain;
    model.kinetic = 1.0;
    const FormSet forms = assemble_forms(mesh, model.potential);
    FunctionProfile bump;
    FeField u0 = ritz_project(mesh, bump.as_scalar_field(domain));
    u0.values *= Complex(1.0, 0.3);
    const double tau = 0.01;
    const auto [u1, st] = cn_step(u0, tau, model, forms, StepperConfig{});
    const ComplexVector dense =
        oracle::dense_cayley_step(*mesh, model, forms.quad, u0.values, tau);
    const double diff = (u1.values - dense).cwiseAbs().maxCoeff();
    report.checks.push_back(make_check("linear_step_vs_dense_cayley", diff, 1e-10));
  }

  // (b) linear ground state against the dense generalized eigenpair
  {
    ModelSpec model;
    model.domain = domain;
    model.kinetic = 0.5;
    model.potential = PotentialSpec::harmonic({0.0, 0.0}, 0.5);
    const FormSet forms = assemble_forms(mesh, model.potential);
    const DngfResult gs = dngf_solve(mesh, model);
    const Eigen::MatrixXd a =
        (model.kinetic * oracle::dense_stiffness(*mesh) +
         oracle::dense_weighted_mass(*mesh, model.potential, forms.quad))
            .real();
    const Eigen::MatrixXd b = oracle::dense_mass(*mesh).real();
    const auto [lambda, vec] = oracle::dense_smallest_eigenpair(a, b);
    report.checks.push_back(
        make_check("dngf_mu_vs_dense_eigenvalue", std::abs(gs.mu - lambda), 1e-8));
    FeField diff = gs.state;
    diff.values -= vec.cast<Complex>();
    report.checks.push_back(
        make_check("dngf_state_vs_dense_eigenvector", l2_norm(diff, forms.mass), 1e-6));
  }

  // (c) Ritz projection against a dense solve
  {
    FunctionProfile bump;
    const ScalarField f = bump.as_scalar_field(domain);
    const FeField proj = ritz_project(mesh, f);
    const ComplexVector dense =
        oracle::dense_ritz_project(*mesh, f, Quadrature::degree4());
    const double diff = (proj.values - dense).cwiseAbs().maxCoeff();
    report.checks.push_back(make_check("ritz_vs_dense_solve", diff, 1e-10));
  }

  // (d) projection idempotence on the discrete space
  {
    ComplexVector coeffs(mesh->num_interior());
    for (int i = 0; i < coeffs.size(); ++i) {
      coeffs[i] = Complex(normal(rng), normal(rng));
    }
    const FeField vh(mesh, coeffs);
    const FeField again = ritz_project(mesh, vh);
    const double diff = (again.values - vh.values).cwiseAbs().maxCoeff() /
                        vh.values.cwiseAbs().maxCoeff();
    report.checks.push_back(make_check("ritz_idempotent_on_discrete_space", diff, 1e-12));
  }

  // (e) relative errors against dense norms
  {
    const MeshPtr coarse = build_uniform_mesh(domain, 2);
    ComplexVector cc(coarse->num_interior());
    for (int i = 0; i < cc.size(); ++i) cc[i] = Complex(normal(rng), normal(rng));
    ComplexVector cf(mesh->num_interior());
    for (int i = 0; i < cf.size(); ++i) cf[i] = Complex(normal(rng), normal(rng));
    const FeField u(coarse, cc);
    const FeField u_ref(mesh, cf);
    const FormSet forms = assemble_forms(mesh, PotentialSpec::zero());
    const RelativeErrors errors = compute_relative_errors(u_ref, u, forms);

    const ComplexVector diff = u_ref.values - prolongate(u, mesh).values;
    const auto num = oracle::dense_part_norms(*mesh, diff);
    const auto den = oracle::dense_part_norms(*mesh, u_ref.values);
    const double expected[4] = {num[0] / den[0], num[1] / den[1], num[2] / den[2],
                                num[3] / den[3]};
    const double measured[4] = {errors.re_l2, errors.im_l2, errors.re_h1,
                                errors.im_h1};
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
      worst = std::max(worst, std::abs(measured[k] - expected[k]) /
                                  std::max(1.0, expected[k]));
    }
    report.checks.push_back(make_check("relative_errors_vs_dense_norms", worst, 1e-12));
  }

  return report;
}

}  // namespace

SuiteReport run_check_suite(CheckSuite suite, std::uint64_t seed) {
  switch (suite) {
    case CheckSuite::Identities:
      return identities_suite(seed);
    case CheckSuite::Stability:
      return stability_suite(seed);
    case CheckSuite::Oracles:
      return oracles_suite(seed);
  }
  throw ConfigError("unhandled check suite");
}

}  // namespace nlscn
