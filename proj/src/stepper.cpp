// SPDX-License-Identifier: Apache-2.0
#include "nlscn/stepper.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace nlscn {

TimeGrid TimeGrid::equidistant(double horizon, int steps) {
  if (!(horizon > 0.0) || steps < 0) {
    throw std::invalid_argument("time grid needs positive horizon and steps >= 0");
  }
  TimeGrid grid;
  if (steps == 0) {
    grid.times = {0.0};
    return grid;
  }
  grid.times.resize(steps + 1);
  for (int n = 0; n <= steps; ++n) {
    grid.times[n] = horizon * n / steps;
  }
  grid.times[steps] = horizon;
  return grid;
}

double TimeGrid::quasi_uniformity() const {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int n = 0; n < num_steps(); ++n) {
    lo = std::min(lo, step(n));
    hi = std::max(hi, step(n));
  }
  return num_steps() > 0 ? hi / lo : 1.0;
}

std::string ConservationLog::to_csv() const {
  std::ostringstream os;
  os << "step,time,mass,energy,fp_iters,residual\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%d,%.17g\n", r.step,
                  r.time, r.mass, r.energy, r.fp_iterations, r.residual);
    os << buf;
  }
  return os.str();
}

namespace {

ComplexVector solve_linear(const SparseComplexMatrix& system, const ComplexVector& rhs,
                           const StepperConfig& cfg) {
  if (cfg.linear_solver == LinearSolverKind::SparseDirect) {
    Eigen::SparseLU<SparseComplexMatrix> lu(system);
    if (lu.info() != Eigen::Success) {
      throw SolverError("sparse LU factorization failed in cn_step");
    }
    ComplexVector x = lu.solve(rhs);
    if (lu.info() != Eigen::Success) {
      throw SolverError("sparse LU solve failed in cn_step");
    }
    return x;
  }
  Eigen::BiCGSTAB<SparseComplexMatrix> it(system);
  it.setTolerance(cfg.iterative_tol);
  it.setMaxIterations(cfg.iterative_max_iter);
  ComplexVector x = it.solve(rhs);
  if (it.info() != Eigen::Success) {
    throw SolverError("iterative solver did not converge in cn_step");
  }
  return x;
}

// L2 dual norm of an algebraic residual, sqrt(r^H M^{-1} r)
double dual_norm(const FormSet& forms, const ComplexVector& r) {
  const ComplexVector mr = forms.mass_solver->solve(r);
  return std::sqrt(std::max(0.0, r.dot(mr).real()));
}

}  // namespace

std::pair<FeField, StepStats> cn_step(const FeField& u_prev, double tau,
                                      const ModelSpec& model, const FormSet& forms,
                                      const StepperConfig& cfg,
                                      const FeField* perturbation) {
  if (tau == 0.0) throw std::invalid_argument("cn_step: tau must be nonzero");
  const Mesh& mesh = *forms.mesh;
  const Complex half_i_tau(0.0, 0.5 * tau);

  const SparseComplexMatrix linear_part =
      Complex(model.kinetic) * forms.stiffness + forms.weighted_mass;

  ComplexVector rhs_forcing = ComplexVector::Zero(u_prev.values.size());
  if (perturbation) {
    rhs_forcing = Complex(0.0, tau) * (forms.mass * perturbation->values);
  }

  const double prev_norm = l2_norm(u_prev, forms.mass);
  const bool linear_model = model.nonlinearity.kind() == NonlinearitySpec::Kind::None;

  const auto coefficient_matrix = [&](const FeField& iterate) {
    if (linear_model) return linear_part;
    return SparseComplexMatrix(linear_part +
                               assemble_g_weighted_mass(mesh, iterate, u_prev,
                                                        model.nonlinearity,
                                                        forms.quad));
  };

  FeField u_next = u_prev;
  StepStats stats;
  SparseComplexMatrix a = coefficient_matrix(u_next);
  double residual = std::numeric_limits<double>::infinity();
  for (int k = 0; k < cfg.fp_max_iter; ++k) {
    const SparseComplexMatrix lhs_mat = forms.mass + half_i_tau * a;
    const ComplexVector rhs =
        forms.mass * u_prev.values - half_i_tau * (a * u_prev.values) + rhs_forcing;
    ComplexVector next = solve_linear(lhs_mat, rhs, cfg);

    const double increment = (next - u_next.values).norm();
    const double scale = std::max(next.norm(), 1e-300);
    u_next.values = std::move(next);
    stats.fp_iterations = k + 1;

    // algebraic residual with the coefficient re-evaluated at the new iterate;
    // the refreshed matrix doubles as the next Picard coefficient
    a = coefficient_matrix(u_next);
    const ComplexVector r = forms.mass * (u_next.values - u_prev.values) +
                            half_i_tau * (a * (u_next.values + u_prev.values)) -
                            rhs_forcing;
    residual = dual_norm(forms, r);
    stats.residual = residual;

    const bool increment_ok = increment <= cfg.fp_tol * scale;
    const bool residual_ok = residual <= cfg.fp_tol * std::max(prev_norm, 1e-300);
    if ((increment_ok && residual_ok) || (linear_model && residual_ok)) {
      return {std::move(u_next), stats};
    }
  }
  std::ostringstream msg;
  msg << "fixed-point iteration did not converge within " << cfg.fp_max_iter
      << " iterations (residual " << residual << ")";
  throw StepFailure(msg.str(), -1, residual);
}

Trajectory evolve(const FeField& u0, const TimeGrid& grid, const ModelSpec& model,
                  const FormSet& forms, const StepperConfig& cfg,
                  const EvolveOptions& options) {
  const int steps = grid.num_steps();
  if (!cfg.perturbation.empty() &&
      static_cast<int>(cfg.perturbation.size()) != steps) {
    throw std::invalid_argument("perturbation sequence must have one field per step");
  }

  // map requested snapshot times to nearest grid indices
  std::vector<char> want(steps + 1, 0);
  for (double t : options.snapshot_times) {
    int best = 0;
    for (int n = 1; n <= steps; ++n) {
      if (std::abs(grid.times[n] - t) < std::abs(grid.times[best] - t)) best = n;
    }
    want[best] = 1;
  }
  if (options.store_full_trajectory) {
    std::fill(want.begin(), want.end(), 1);
  }

  Trajectory traj;
  FeField u = u0;
  const auto record = [&](int n, const FeField& field, const StepStats& st) {
    traj.log.rows.push_back({n, grid.times[n], mass(field, forms.mass),
                             energy(field, model, forms), st.fp_iterations,
                             st.residual});
    if (want[n]) {
      traj.snapshot_times.push_back(grid.times[n]);
      traj.snapshots.push_back(field);
    }
  };
  record(0, u, StepStats{});

  for (int n = 1; n <= steps; ++n) {
    const FeField* forcing =
        cfg.perturbation.empty() ? nullptr : &cfg.perturbation[n - 1];
    try {
      auto [next, st] = cn_step(u, grid.step(n - 1), model, forms, cfg, forcing);
      u = std::move(next);
      record(n, u, st);
    } catch (const StepFailure& f) {
      std::ostringstream msg;
      msg << "step " << n << " of " << steps << " failed: " << f.what();
      throw StepFailure(msg.str(), n, f.last_residual);
    }
  }
  traj.final_state = std::move(u);
  return traj;
}

StabilityReport check_stability_bound(const FeField& u_final, const FeField& u0,
                                      const std::vector<FeField>& perturbation,
                                      const TimeGrid& grid,
                                      const SparseComplexMatrix& massmat) {
  StabilityReport report;
  report.lhs = mass(u_final, massmat);
  const double horizon = grid.times.back();
  double forcing = 0.0;
  for (int n = 0; n < grid.num_steps(); ++n) {
    if (n < static_cast<int>(perturbation.size())) {
      forcing += grid.step(n) * mass(perturbation[n], massmat);
    }
  }
  report.rhs = std::exp(4.0) * (mass(u0, massmat) + horizon * forcing);
  report.holds = report.lhs <= report.rhs;
  return report;
}

}  // namespace nlscn
