// SPDX-License-Identifier: Apache-2.0
#include "nlscn/convergence.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace nlscn {

using nlohmann::json;

StudyMode study_mode_from_string(const std::string& name) {
  if (name == "coupled") return StudyMode::Coupled;
  if (name == "space") return StudyMode::SpaceOnly;
  if (name == "time") return StudyMode::TimeOnly;
  throw ConfigError("unknown convergence mode: " + name);
}

std::string to_string(StudyMode mode) {
  switch (mode) {
    case StudyMode::Coupled:
      return "coupled";
    case StudyMode::SpaceOnly:
      return "space";
    case StudyMode::TimeOnly:
      return "time";
  }
  return "?";
}

namespace {

RunResult run_on_grid(const RunConfig& config, const TimeGrid& grid) {
  RunResult result;
  result.mesh = build_uniform_mesh(config.model.domain, config.mesh_level);
  result.forms = assemble_forms(result.mesh, config.model.potential);
  result.u0 = build_initial_value(config, result.mesh);

  EvolveOptions options;
  options.snapshot_times = config.outputs.snapshot_times;
  result.trajectory =
      evolve(result.u0, grid, config.model, result.forms, config.stepper, options);

  RunSummary& s = result.summary;
  s.mesh_level = config.mesh_level;
  s.steps = grid.num_steps();
  s.tau = s.steps > 0 ? grid.step(0) : 0.0;
  for (const auto& row : result.trajectory.log.rows) {
    s.total_fp_iterations += row.fp_iterations;
    s.max_residual = std::max(s.max_residual, row.residual);
  }
  s.mass_initial = result.trajectory.log.rows.front().mass;
  s.mass_final = result.trajectory.log.rows.back().mass;
  s.energy_initial = result.trajectory.log.rows.front().energy;
  s.energy_final = result.trajectory.log.rows.back().energy;
  return result;
}

json summary_to_json(const RunSummary& s) {
  return {{"mesh_level", s.mesh_level},
          {"tau", s.tau},
          {"steps", s.steps},
          {"total_fp_iterations", s.total_fp_iterations},
          {"max_residual", s.max_residual},
          {"mass_initial", s.mass_initial},
          {"mass_final", s.mass_final},
          {"energy_initial", s.energy_initial},
          {"energy_final", s.energy_final}};
}

}  // namespace

RunResult execute_run(const RunConfig& config) {
  return run_on_grid(config, time_grid_for(config.model.horizon, config.tau_rel));
}

namespace {

ReferenceSolution reference_at(const RunConfig& base, int level, double tau) {
  RunConfig ref_config = base;
  ref_config.mesh_level = level;
  const int steps =
      std::max(1, static_cast<int>(std::llround(base.model.horizon / tau)));
  ReferenceSolution ref;
  ref.run = run_on_grid(ref_config, TimeGrid::equidistant(base.model.horizon, steps));
  return ref;
}

}  // namespace

ReferenceSolution compute_reference(const RunConfig& base) {
  return reference_at(base, base.convergence.reference_level,
                      base.convergence.reference_tau);
}

EocTable run_convergence(StudyMode mode, const RunConfig& base,
                         const ReferenceSolution* reference, json* manifest) {
  if (base.init.kind == InitSpec::Kind::FieldFile) {
    throw ConfigError(
        "convergence studies recompute the initial value per level; "
        "field-file init is not supported");
  }

  struct StudyPoint {
    int level;
    double tau_rel;
  };
  std::vector<StudyPoint> points;
  switch (mode) {
    case StudyMode::Coupled:
      for (int level : base.convergence.levels) {
        points.push_back({level, std::pow(2.0, -level)});
      }
      break;
    case StudyMode::SpaceOnly:
      for (int level : base.convergence.levels) {
        points.push_back({level, base.convergence.fixed_tau_rel});
      }
      break;
    case StudyMode::TimeOnly:
      for (double tau_rel : base.convergence.tau_rels) {
        points.push_back({base.convergence.fixed_level, tau_rel});
      }
      break;
  }
  if (points.empty()) throw ConfigError("empty convergence study");

  // the reference refines the study dimension: space/coupled studies need a
  // strictly finer mesh, time studies a strictly smaller step on the study mesh
  ReferenceSolution local_reference;
  if (mode == StudyMode::TimeOnly) {
    for (const auto& p : points) {
      if ((2.0 / 3.0) * p.tau_rel <= base.convergence.reference_tau) {
        throw ConfigError("study steps must be strictly coarser than the reference");
      }
    }
    local_reference = reference_at(base, base.convergence.fixed_level,
                                   base.convergence.reference_tau);
    reference = &local_reference;
  } else {
    for (const auto& p : points) {
      if (p.level >= base.convergence.reference_level) {
        throw ConfigError("study levels must be strictly coarser than the reference");
      }
    }
    if (!reference) {
      const double ref_tau = mode == StudyMode::SpaceOnly
                                 ? (2.0 / 3.0) * base.convergence.fixed_tau_rel
                                 : base.convergence.reference_tau;
      local_reference =
          reference_at(base, base.convergence.reference_level, ref_tau);
      reference = &local_reference;
    }
  }
  const RunResult& ref = reference->run;

  json runs = json::array();
  EocTable table;
  for (const auto& p : points) {
    RunConfig config = base;
    config.mesh_level = p.level;
    config.tau_rel = p.tau_rel;
    RunResult run;
    try {
      run = execute_run(config);
    } catch (const SolverError&) {
      table.complete = false;
      if (manifest) {
        runs.push_back({{"mesh_level", p.level}, {"tau_rel", p.tau_rel},
                        {"status", "failed"}});
        (*manifest)["runs"] = runs;
      }
      throw;
    }
    EocTable::Row row;
    row.h_rel = std::pow(2.0, -p.level);
    row.tau_rel = p.tau_rel;
    row.errors = compute_relative_errors(ref.trajectory.final_state,
                                         run.trajectory.final_state, ref.forms);
    table.rows.push_back(row);
    if (manifest) {
      json entry = summary_to_json(run.summary);
      entry["tau_rel"] = p.tau_rel;
      entry["h_rel"] = row.h_rel;
      entry["errors"] = {{"re_l2", row.errors.re_l2},
                         {"im_l2", row.errors.im_l2},
                         {"re_h1", row.errors.re_h1},
                         {"im_h1", row.errors.im_h1}};
      runs.push_back(entry);
    }
  }
  table.compute_averages();

  if (manifest) {
    (*manifest)["mode"] = to_string(mode);
    (*manifest)["base_config"] = run_config_to_json(base);
    (*manifest)["reference"] = summary_to_json(ref.summary);
    (*manifest)["runs"] = runs;
    if (table.eoc_defined) {
      (*manifest)["eoc"] = {{"re_l2", table.eoc[0]},
                            {"im_l2", table.eoc[1]},
                            {"re_h1", table.eoc[2]},
                            {"im_h1", table.eoc[3]}};
    }
  }
  return table;
}

}  // namespace nlscn
