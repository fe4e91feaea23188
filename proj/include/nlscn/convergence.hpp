// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <nlohmann/json_fwd.hpp>

#include "nlscn/norms.hpp"
#include "nlscn/run_config.hpp"

namespace nlscn {

enum class StudyMode { Coupled, SpaceOnly, TimeOnly };

StudyMode study_mode_from_string(const std::string& name);
std::string to_string(StudyMode mode);

struct RunSummary {
  int mesh_level = 0;
  double tau = 0.0;
  int steps = 0;
  long total_fp_iterations = 0;
  double max_residual = 0.0;
  double mass_initial = 0.0, mass_final = 0.0;
  double energy_initial = 0.0, energy_final = 0.0;
};

/// One full forward run of a config: mesh, initial value, evolution.
struct RunResult {
  MeshPtr mesh;
  FormSet forms;
  FeField u0;
  Trajectory trajectory;
  RunSummary summary;
};

RunResult execute_run(const RunConfig& config);

/// Reference solution per the convergence settings of the config (its own
/// mesh level and plain time step, not tau_rel).
struct ReferenceSolution {
  RunResult run;
};

ReferenceSolution compute_reference(const RunConfig& base);

/// Runs the requested study, producing the error table and (optionally) a
/// manifest describing every run. The reference isolates the refined
/// dimension: coupled studies compare against the configured
/// (reference_level, reference_tau) run, space studies pin the reference to
/// the study time step, and time studies pin it to the study mesh level.
/// A precomputed reference may be supplied for the coupled mode.
EocTable run_convergence(StudyMode mode, const RunConfig& base,
                         const ReferenceSolution* reference = nullptr,
                         nlohmann::json* manifest = nullptr);

}  // namespace nlscn
