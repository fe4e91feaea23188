// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlscn/assembly.hpp"
#include "nlscn/mesh.hpp"
#include "nlscn/model.hpp"

namespace nlscn {

/// Strictly increasing time partition t0 = 0 < t1 < ... < tN = T.
struct TimeGrid {
  std::vector<double> times;

  static TimeGrid equidistant(double horizon, int steps);

  int num_steps() const { return static_cast<int>(times.size()) - 1; }
  double step(int n) const { return times[n + 1] - times[n]; }
  double quasi_uniformity() const;
};

enum class LinearSolverKind { SparseDirect, Iterative };

struct StepperConfig {
  double fp_tol = 1e-12;
  int fp_max_iter = 50;
  LinearSolverKind linear_solver = LinearSolverKind::SparseDirect;
  double iterative_tol = 1e-14;
  int iterative_max_iter = 10000;
  /// Optional L2 perturbations F^n, one per step, for stability-bound runs.
  std::vector<FeField> perturbation;
};

struct StepStats {
  int fp_iterations = 0;
  double residual = 0.0;
};

/// Per-step conservation record, one row per grid time including t = 0.
struct ConservationLog {
  struct Row {
    int step;
    double time;
    double mass;
    double energy;
    int fp_iterations;
    double residual;
  };
  std::vector<Row> rows;

  /// CSV with header `step,time,mass,energy,fp_iters,residual`.
  std::string to_csv() const;
};

/// One Crank-Nicolson step: solves
///   [M + i tau/2 (kappa K + W + N)] u_next
///     = [M - i tau/2 (kappa K + W + N)] u_prev + i tau M F
/// with the divided-difference coefficient of N lagged across Picard
/// iterations. Throws StepFailure when the iteration does not reach fp_tol
/// within fp_max_iter.
std::pair<FeField, StepStats> cn_step(const FeField& u_prev, double tau,
                                      const ModelSpec& model, const FormSet& forms,
                                      const StepperConfig& cfg,
                                      const FeField* perturbation = nullptr);

struct Trajectory {
  std::vector<double> snapshot_times;   // grid times actually hit
  std::vector<FeField> snapshots;
  FeField final_state;
  ConservationLog log;
};

struct EvolveOptions {
  std::vector<double> snapshot_times;  // matched to nearest grid times
  bool store_full_trajectory = false;
};

Trajectory evolve(const FeField& u0, const TimeGrid& grid, const ModelSpec& model,
                  const FormSet& forms, const StepperConfig& cfg,
                  const EvolveOptions& options = {});

/// Check of the perturbation stability bound
///   ||u^N||^2 <= e^4 (||u^0||^2 + T sum_n tau_n ||F^n||^2).
struct StabilityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

StabilityReport check_stability_bound(const FeField& u_final, const FeField& u0,
                                      const std::vector<FeField>& perturbation,
                                      const TimeGrid& grid,
                                      const SparseComplexMatrix& massmat);

}  // namespace nlscn
