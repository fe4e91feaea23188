// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nlscn/convergence.hpp"
#include "nlscn/field_io.hpp"
#include "nlscn/norms.hpp"
#include "nlscn/oracles.hpp"
#include "nlscn/run_config.hpp"

using namespace nlscn;
using nlohmann::json;

namespace {

const Rect kSquare{-6.0, -6.0, 6.0, 6.0};

FeField random_field(const MeshPtr& mesh, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(mesh->num_interior());
  for (int i = 0; i < v.size(); ++i) v[i] = Complex(normal(rng), normal(rng));
  return FeField(mesh, std::move(v));
}

}  // namespace

TEST_CASE("relative errors vanish for identical fields and scale exactly") {
  const MeshPtr mesh = build_uniform_mesh(kSquare, 4);
  const FormSet forms = assemble_forms(mesh, PotentialSpec::zero());
  FeField u_ref = random_field(mesh, 3);
  for (int i = 0; i < u_ref.values.size(); ++i) {
    u_ref.values[i] = Complex(std::abs(u_ref.values[i].real()) + 0.1, 0.0);
  }

  const RelativeErrors zero = compute_relative_errors(u_ref, u_ref, forms);
  CHECK(zero.re_l2 == 0.0);
  CHECK(zero.re_h1 == 0.0);
  CHECK_FALSE(zero.defined[1]);  // purely real reference: im norm undefined

  FeField doubled = u_ref;
  doubled.values *= 2.0;
  const RelativeErrors scaled = compute_relative_errors(u_ref, doubled, forms);
  CHECK(scaled.re_l2 == 1.0);
  CHECK(scaled.re_h1 == 1.0);
}

TEST_CASE("relative errors across nested levels match the dense oracle") {
  const MeshPtr coarse = build_uniform_mesh(kSquare, 3);
  const MeshPtr fine = build_uniform_mesh(kSquare, 5);
  const FormSet forms = assemble_forms(fine, PotentialSpec::zero());
  const FeField u = random_field(coarse, 11);
  const FeField u_ref = random_field(fine, 13);

  const RelativeErrors errors = compute_relative_errors(u_ref, u, forms);
  const ComplexVector diff = u_ref.values - prolongate(u, fine).values;
  const auto num = oracle::dense_part_norms(*fine, diff);
  const auto den = oracle::dense_part_norms(*fine, u_ref.values);
  CHECK(errors.re_l2 == doctest::Approx(num[0] / den[0]).epsilon(1e-12));
  CHECK(errors.im_l2 == doctest::Approx(num[1] / den[1]).epsilon(1e-12));
  CHECK(errors.re_h1 == doctest::Approx(num[2] / den[2]).epsilon(1e-12));
  CHECK(errors.im_h1 == doctest::Approx(num[3] / den[3]).epsilon(1e-12));
}

TEST_CASE("compute_eoc: exact single ratio and error handling") {
  CHECK(compute_eoc({1.0, 0.25}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(compute_eoc({1.0}), std::domain_error);
  CHECK_THROWS_AS(compute_eoc({1.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(compute_eoc({1.0, -0.5}), std::domain_error);
}

TEST_CASE("compute_eoc reproduces the published table averages") {
  const struct {
    std::vector<double> errors;
    double eoc;
  } cases[] = {
      // coupled refinement
      {{0.7157, 0.1753, 0.0236, 0.0050}, 2.38},
      {{0.7603, 0.2370, 0.0338, 0.0069}, 2.26},
      {{0.9929, 0.4045, 0.0881, 0.0205}, 1.86},
      {{0.8506, 0.4379, 0.0935, 0.0217}, 1.76},
      // space refinement at fixed time step
      {{0.5571, 0.2063, 0.0259, 0.0015}, 2.85},
      {{1.1710, 0.2415, 0.0297, 0.0017}, 3.15},
      {{0.7954, 0.4562, 0.1006, 0.0195}, 1.78},
      {{1.1367, 0.4780, 0.1061, 0.0206}, 1.93},
      // time refinement at fixed mesh
      {{0.3629, 0.1088, 0.0269, 0.0050, 0.0015}, 1.98},
      {{0.5156, 0.1451, 0.0356, 0.0069, 0.0017}, 2.06},
      {{0.5020, 0.1696, 0.0471, 0.0205, 0.0195}, 1.17},
      {{0.5665, 0.1832, 0.0506, 0.0217, 0.0206}, 1.20},
  };
  for (const auto& c : cases) {
    CHECK(std::abs(compute_eoc(c.errors) - c.eoc) <= 0.01);
  }
}

TEST_CASE("field files round-trip bit for bit") {
  const MeshPtr mesh = build_uniform_mesh(kSquare, 3);
  const FeField field = random_field(mesh, 17);
  std::stringstream stream;
  write_field(stream, field);
  const FeField back = read_field(stream);
  CHECK(back.mesh->level() == 3);
  CHECK(back.mesh->domain() == kSquare);
  REQUIRE(back.values.size() == field.values.size());
  for (int i = 0; i < field.values.size(); ++i) {
    REQUIRE(back.values[i] == field.values[i]);
  }

  std::stringstream again;
  write_field(again, back);
  CHECK(again.str() == stream.str());
}

TEST_CASE("field reader rejects malformed input") {
  std::stringstream bad("NLSFIELD v2\n");
  CHECK_THROWS_AS(read_field(bad), ConfigError);
  std::stringstream truncated("NLSFIELD v1\nlevel 1 domain 0 0 1 1\n0 0\n");
  CHECK_THROWS_AS(read_field(truncated), ConfigError);
}

TEST_CASE("run config parses the experiment document") {
  const json doc = {
      {"model",
       {{"domain", {-6.0, -6.0, 6.0, 6.0}},
        {"kinetic", 0.5},
        {"potential", {{"kind", "disorder_sine"}}},
        {"nonlinearity", {{"kind", "cubic"}, {"beta", 20.0}}},
        {"horizon", 1.0}}},
      {"mesh_level", 5},
      {"tau_rel", 0.03125},
      {"init",
       {{"kind", "ground-state"},
        {"model",
         {{"domain", {-6.0, -6.0, 6.0, 6.0}},
          {"kinetic", 0.5},
          {"potential",
           {{"kind", "sum"},
            {"terms",
             {{{"kind", "disorder_sine"}},
              {{"kind", "harmonic"}, {"center", {0.0, 0.0}}, {"weight", 0.5}}}}}},
          {"nonlinearity", {{"kind", "cubic"}, {"beta", 10.0}}},
          {"horizon", 1.0}}}}},
      {"seed", 42},
      {"stepper", {{"fp_tol", 1e-12}, {"fp_max_iter", 50}}},
  };
  const RunConfig config = parse_run_config(doc);
  CHECK(config.model.kinetic == 0.5);
  CHECK(config.model.nonlinearity.beta() == 20.0);
  CHECK(config.init.kind == InitSpec::Kind::GroundState);
  REQUIRE(config.init.groundstate_model.has_value());
  CHECK(config.init.groundstate_model->nonlinearity.beta() == 10.0);
  CHECK(config.init.groundstate_model->potential(1.5, 1.5) ==
        doctest::Approx(7.0 + 0.5 * (1.5 * 1.5 + 1.5 * 1.5)));
  CHECK(config.seed == 42);

  // round trip through serialization
  const RunConfig back = parse_run_config(run_config_to_json(config));
  CHECK(back.tau_rel == config.tau_rel);
  CHECK(back.model.kinetic == config.model.kinetic);
}

TEST_CASE("invalid configs raise ConfigError") {
  CHECK_THROWS_AS(parse_run_config(json{{"mesh_level", 3}}), ConfigError);
  const json negative_extent = {{"model", {{"domain", {0.0, 0.0, -1.0, 1.0}}}}};
  CHECK_THROWS_AS(parse_run_config(negative_extent), ConfigError);
  const json bad_tau = {{"model", {{"domain", {0.0, 0.0, 1.0, 1.0}}}},
                        {"tau_rel", -0.5}};
  CHECK_THROWS_AS(parse_run_config(bad_tau), ConfigError);
}

TEST_CASE("time grid inverts the rescaled step and lands on the horizon") {
  // tau_rel = 2^-5 with T = 1: tau = 1/48, N = 48
  const TimeGrid grid = time_grid_for(1.0, 0.03125);
  CHECK(grid.num_steps() == 48);
  CHECK(grid.times.back() == 1.0);
  CHECK(grid.step(0) == doctest::Approx(1.0 / 48.0).epsilon(1e-15));
  CHECK(grid.quasi_uniformity() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("deterministic evolution: identical configs give identical artifacts") {
  json doc = {{"model",
               {{"domain", {-6.0, -6.0, 6.0, 6.0}},
                {"kinetic", 0.5},
                {"potential", {{"kind", "disorder_sine"}}},
                {"nonlinearity", {{"kind", "cubic"}, {"beta", 20.0}}},
                {"horizon", 0.125}}},
              {"mesh_level", 3},
              {"tau_rel", 0.0625},
              {"init",
               {{"kind", "ritz-of-function"},
                {"function", {{"name", "product-bump"}}}}}};
  const RunConfig config = parse_run_config(doc);

  const auto run_once = [&]() {
    const RunResult run = execute_run(config);
    std::stringstream field;
    write_field(field, run.trajectory.final_state);
    return std::make_pair(run.trajectory.log.to_csv(), field.str());
  };
  const auto [csv_a, field_a] = run_once();
  const auto [csv_b, field_b] = run_once();
  CHECK(csv_a == csv_b);
  CHECK(field_a == field_b);
}

TEST_CASE("convergence study on a tiny model produces a complete table") {
  // linear model so the runs are fast; coupled study over levels 2..3
  json doc = {{"model",
               {{"domain", {-6.0, -6.0, 6.0, 6.0}},
                {"kinetic", 1.0},
                {"potential", {{"kind", "harmonic"}, {"center", {0.0, 0.0}}, {"weight", 0.5}}},
                {"horizon", 0.25}}},
              {"mesh_level", 3},
              {"tau_rel", 0.125},
              {"init",
               {{"kind", "ritz-of-function"},
                {"function", {{"name", "product-bump"}}}}},
              {"convergence",
               {{"levels", {2, 3}},
                {"reference_level", 4},
                {"reference_tau", 0.01}}}};
  const RunConfig config = parse_run_config(doc);
  json manifest;
  const EocTable table =
      run_convergence(StudyMode::Coupled, config, nullptr, &manifest);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.complete);
  CHECK(table.rows[0].h_rel == 0.25);
  CHECK(table.rows[1].h_rel == 0.125);
  CHECK(table.eoc_defined);
  CHECK(table.eoc[0] > 0.5);  // refining helps even on this tiny study

  const std::string csv = table.to_csv();
  CHECK(csv.rfind("h_rel,tau_rel,err_re_l2,err_im_l2,err_re_h1,err_im_h1\n", 0) == 0);
  CHECK(csv.find("EOC,") != std::string::npos);

  CHECK(manifest["runs"].size() == 2);
  CHECK(manifest["reference"]["mesh_level"] == 4);
  CHECK(manifest["base_config"]["tau_rel"] == 0.125);
}

TEST_CASE("study levels must stay below the reference level") {
  json doc = {{"model", {{"domain", {-6.0, -6.0, 6.0, 6.0}}, {"horizon", 0.25}}},
              {"init",
               {{"kind", "ritz-of-function"},
                {"function", {{"name", "product-bump"}}}}},
              {"convergence", {{"levels", {2, 4}}, {"reference_level", 4}}}};
  const RunConfig config = parse_run_config(doc);
  CHECK_THROWS_AS(run_convergence(StudyMode::Coupled, config), ConfigError);
}
