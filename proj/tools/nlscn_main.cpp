// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: ground states, time evolution, convergence
// studies and the built-in verification suites.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "nlscn/check_suites.hpp"
#include "nlscn/convergence.hpp"
#include "nlscn/field_io.hpp"
#include "nlscn/run_config.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitCheck = 4;

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw nlscn::ConfigError("cannot write " + path.string());
  os << text;
}

int cmd_groundstate(const std::string& config_path, const std::string& out_path) {
  const nlscn::RunConfig config = nlscn::load_run_config(config_path);
  const nlscn::MeshPtr mesh =
      nlscn::build_uniform_mesh(config.model.domain, config.mesh_level);
  const nlscn::ModelSpec& model = config.init.groundstate_model
                                      ? *config.init.groundstate_model
                                      : config.model;
  const nlscn::DngfResult result = nlscn::dngf_solve(mesh, model, config.init.dngf);
  nlscn::write_field_file(out_path, result.state);
  std::printf("groundstate: level %d, mu %.12g, %d outer iterations, energy %.12g\n",
              config.mesh_level, result.mu, result.iterations,
              result.energies.back());
  return kExitOk;
}

int cmd_evolve(const std::string& config_path, const std::string& out_dir) {
  nlscn::RunConfig config = nlscn::load_run_config(config_path);
  config.outputs.directory = out_dir;
  fs::create_directories(out_dir);

  const nlscn::RunResult run = nlscn::execute_run(config);
  if (run.forms.stats.negative_potential_samples > 0) {
    std::fprintf(stderr,
                 "warning: %ld negative potential samples (analysis assumes V >= 0)\n",
                 run.forms.stats.negative_potential_samples);
  }

  write_text_file(fs::path(out_dir) / "conservation.csv",
                  run.trajectory.log.to_csv());
  nlscn::write_field_file((fs::path(out_dir) / "u_final.field").string(),
                          run.trajectory.final_state);
  nlscn::write_field_file((fs::path(out_dir) / "u_initial.field").string(), run.u0);
  for (size_t s = 0; s < run.trajectory.snapshots.size(); ++s) {
    char name[64];
    std::snprintf(name, sizeof(name), "snapshot_%03zu.field", s);
    nlscn::write_field_file((fs::path(out_dir) / name).string(),
                            run.trajectory.snapshots[s]);
  }

  json manifest;
  manifest["config"] = nlscn::run_config_to_json(config);
  manifest["summary"] = {
      {"mesh_level", run.summary.mesh_level},
      {"tau", run.summary.tau},
      {"steps", run.summary.steps},
      {"total_fp_iterations", run.summary.total_fp_iterations},
      {"max_residual", run.summary.max_residual},
      {"mass_initial", run.summary.mass_initial},
      {"mass_final", run.summary.mass_final},
      {"energy_initial", run.summary.energy_initial},
      {"energy_final", run.summary.energy_final}};
  json snaps = json::array();
  for (double t : run.trajectory.snapshot_times) snaps.push_back(t);
  manifest["snapshot_times"] = snaps;
  write_text_file(fs::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");

  const double mass_drift =
      std::abs(run.summary.mass_final - run.summary.mass_initial) /
      std::max(run.summary.mass_initial, 1e-300);
  const double energy_drift =
      std::abs(run.summary.energy_final - run.summary.energy_initial) /
      std::max(std::abs(run.summary.energy_initial), 1e-300);
  std::printf("evolve: %d steps at tau %.6g, relative mass drift %.3e, "
              "relative energy drift %.3e\n",
              run.summary.steps, run.summary.tau, mass_drift, energy_drift);
  return kExitOk;
}

int cmd_convergence(const std::string& mode_name, const std::string& config_path,
                    const std::string& out_path) {
  const nlscn::RunConfig config = nlscn::load_run_config(config_path);
  const nlscn::StudyMode mode = nlscn::study_mode_from_string(mode_name);
  json manifest;
  const nlscn::EocTable table =
      nlscn::run_convergence(mode, config, nullptr, &manifest);
  write_text_file(out_path, table.to_csv());
  write_text_file(out_path + ".manifest.json", manifest.dump(2) + "\n");
  if (table.eoc_defined) {
    std::printf("convergence (%s): EOC re_l2 %.2f, im_l2 %.2f, re_h1 %.2f, im_h1 %.2f\n",
                mode_name.c_str(), table.eoc[0], table.eoc[1], table.eoc[2],
                table.eoc[3]);
  }
  return kExitOk;
}

int cmd_check(const std::string& suite_name, std::uint64_t seed,
              const std::string& out_path) {
  const nlscn::SuiteReport report =
      nlscn::run_check_suite(nlscn::check_suite_from_string(suite_name), seed);
  const std::string text = report.to_json().dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
  for (const auto& check : report.checks) {
    std::fprintf(stderr, "%s %s (measured %.3e, limit %.3e)\n",
                 check.passed ? "pass" : "FAIL", check.name.c_str(),
                 check.measured, check.limit);
  }
  return report.all_passed() ? kExitOk : kExitCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conservative Crank-Nicolson finite elements for 2D nonlinear "
               "Schroedinger equations with rough potentials"};
  app.require_subcommand(1);

  std::string config_path, out_path, out_dir, mode, suite;
  std::uint64_t seed = 0;

  auto* gs = app.add_subcommand("groundstate", "Compute the discrete energy minimizer");
  gs->add_option("--config", config_path, "JSON run config")->required();
  gs->add_option("--out", out_path, "Output field file")->required();

  auto* ev = app.add_subcommand("evolve", "Run the time integrator");
  ev->add_option("--config", config_path, "JSON run config")->required();
  ev->add_option("--out-dir", out_dir, "Output directory")->required();

  auto* cv = app.add_subcommand("convergence", "Refinement study with EOC table");
  cv->add_option("--mode", mode, "coupled|space|time")->required();
  cv->add_option("--config", config_path, "JSON run config")->required();
  cv->add_option("--out", out_path, "Output CSV")->required();

  auto* ck = app.add_subcommand("check", "Run a verification suite");
  ck->add_option("--suite", suite, "identities|stability|oracles")->required();
  ck->add_option("--seed", seed, "Sampling seed");
  ck->add_option("--out", out_path, "Write the JSON report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gs->parsed()) return cmd_groundstate(config_path, out_path);
    if (ev->parsed()) return cmd_evolve(config_path, out_dir);
    if (cv->parsed()) return cmd_convergence(mode, config_path, out_path);
    if (ck->parsed()) return cmd_check(suite, seed, out_path);
  } catch (const nlscn::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const nlscn::SolverError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return kExitSolver;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitSolver;
  }
  return kExitOk;
}
