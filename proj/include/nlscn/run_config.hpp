// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nlscn/assembly.hpp"
#include "nlscn/groundstate.hpp"
#include "nlscn/model.hpp"
#include "nlscn/stepper.hpp"

namespace nlscn {

/// Named closed-form profile usable as an initial value (the gradient is
/// available in closed form, so the Ritz projection uses its load directly).
struct FunctionProfile {
  std::string name = "product-bump";  // or "gaussian"
  double width = 1.0;
  double amplitude = 1.0;
  Eigen::Vector2d center{0.0, 0.0};

  ScalarField as_scalar_field(const Rect& domain) const;
};

struct InitSpec {
  enum class Kind { RitzOfFunction, GroundState, FieldFile };
  Kind kind = Kind::GroundState;
  FunctionProfile function;                 // RitzOfFunction
  std::optional<ModelSpec> groundstate_model;  // GroundState; main model if absent
  DngfConfig dngf;                          // GroundState
  std::string path;                         // FieldFile
};

struct OutputSpec {
  std::vector<double> snapshot_times;
  std::string directory = ".";
};

struct ConvergenceSpec {
  std::vector<int> levels = {2, 3, 4, 5};
  std::vector<double> tau_rels = {0.25, 0.125, 0.0625, 0.03125, 0.015625};
  int fixed_level = 5;          // time-only studies
  double fixed_tau_rel = 0.015625;  // space-only studies
  int reference_level = 6;
  double reference_tau = 0.01;
};

struct RunConfig {
  ModelSpec model;
  int mesh_level = 5;
  double tau_rel = 0.03125;
  InitSpec init;
  OutputSpec outputs;
  std::uint64_t seed = 0;
  StepperConfig stepper;
  ConvergenceSpec convergence;
};

/// Parses the single JSON document mirroring RunConfig. Throws ConfigError
/// on malformed input.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);

nlohmann::json run_config_to_json(const RunConfig& config);

/// tau = (2/3) tau_rel; the step count is rounded so an equidistant grid
/// lands exactly on the horizon.
TimeGrid time_grid_for(double horizon, double tau_rel);

/// Resolves the configured initial value on the given mesh.
FeField build_initial_value(const RunConfig& config, const MeshPtr& mesh);

}  // namespace nlscn
