// SPDX-License-Identifier: Apache-2.0
#include "nlscn/run_config.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "nlscn/field_io.hpp"

namespace nlscn {

using nlohmann::json;

ScalarField FunctionProfile::as_scalar_field(const Rect& domain) const {
  ScalarField f;
  if (name == "gaussian") {
    const double cx = center.x(), cy = center.y();
    const double w2 = width * width;
    const double a = amplitude;
    f.value = [=](double x, double y) {
      const double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
      return Complex(a * std::exp(-r2 / (2.0 * w2)), 0.0);
    };
    f.gradient = [=](double x, double y) {
      const double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
      const double v = a * std::exp(-r2 / (2.0 * w2));
      return Eigen::Vector2cd(Complex(-v * (x - cx) / w2, 0.0),
                              Complex(-v * (y - cy) / w2, 0.0));
    };
    return f;
  }
  if (name == "product-bump") {
    const double x0 = domain.x0, x1 = domain.x1, y0 = domain.y0, y1 = domain.y1;
    const double norm = (0.25 * domain.width() * domain.width()) *
                        (0.25 * domain.height() * domain.height());
    const double a = amplitude / norm;
    f.value = [=](double x, double y) {
      return Complex(a * (x - x0) * (x1 - x) * (y - y0) * (y1 - y), 0.0);
    };
    f.gradient = [=](double x, double y) {
      const double gx = (x - x0) * (x1 - x), dgx = x0 + x1 - 2.0 * x;
      const double gy = (y - y0) * (y1 - y), dgy = y0 + y1 - 2.0 * y;
      return Eigen::Vector2cd(Complex(a * dgx * gy, 0.0), Complex(a * gx * dgy, 0.0));
    };
    return f;
  }
  throw ConfigError("unknown function profile: " + name);
}

namespace {

PotentialSpec parse_potential(const json& j) {
  const std::string kind = j.value("kind", "zero");
  if (kind == "zero") return PotentialSpec::zero();
  if (kind == "harmonic") {
    Eigen::Vector2d center(0.0, 0.0);
    if (j.contains("center")) {
      center = {j["center"].at(0).get<double>(), j["center"].at(1).get<double>()};
    }
    return PotentialSpec::harmonic(center, j.value("weight", 0.5));
  }
  if (kind == "disorder_sine") return PotentialSpec::disorder_sine();
  if (kind == "sum") {
    std::vector<PotentialSpec> terms;
    for (const auto& term : j.at("terms")) terms.push_back(parse_potential(term));
    return PotentialSpec::sum(std::move(terms));
  }
  throw ConfigError("unknown potential kind: " + kind);
}

json potential_to_json(const PotentialSpec& v) {
  switch (v.kind()) {
    case PotentialSpec::Kind::Zero:
      return {{"kind", "zero"}};
    case PotentialSpec::Kind::Harmonic:
      return {{"kind", "harmonic"},
              {"center", {v.center().x(), v.center().y()}},
              {"weight", v.weight()}};
    case PotentialSpec::Kind::DisorderSine:
      return {{"kind", "disorder_sine"}};
    case PotentialSpec::Kind::Sum: {
      json terms = json::array();
      for (const auto& t : v.terms()) terms.push_back(potential_to_json(t));
      return {{"kind", "sum"}, {"terms", terms}};
    }
    case PotentialSpec::Kind::Custom:
      return {{"kind", "custom"}};
  }
  return {};
}

NonlinearitySpec parse_nonlinearity(const json& j) {
  const std::string kind = j.value("kind", "none");
  if (kind == "none") return NonlinearitySpec::none();
  if (kind == "cubic") {
    const double beta = j.value("beta", 0.0);
    if (beta < 0.0) throw ConfigError("cubic nonlinearity needs beta >= 0");
    return NonlinearitySpec::cubic(beta);
  }
  throw ConfigError("unknown nonlinearity kind: " + kind);
}

json nonlinearity_to_json(const NonlinearitySpec& nl) {
  switch (nl.kind()) {
    case NonlinearitySpec::Kind::None:
      return {{"kind", "none"}};
    case NonlinearitySpec::Kind::Cubic:
      return {{"kind", "cubic"}, {"beta", nl.beta()}};
    case NonlinearitySpec::Kind::Custom:
      return {{"kind", "custom"}};
  }
  return {};
}

ModelSpec parse_model(const json& j) {
  ModelSpec model;
  const auto& dom = j.at("domain");
  if (dom.size() != 4) throw ConfigError("model.domain must be [x0, y0, x1, y1]");
  model.domain = {dom.at(0).get<double>(), dom.at(1).get<double>(),
                  dom.at(2).get<double>(), dom.at(3).get<double>()};
  if (!(model.domain.x1 > model.domain.x0) || !(model.domain.y1 > model.domain.y0)) {
    throw ConfigError("model.domain extents must be positive");
  }
  model.kinetic = j.value("kinetic", 1.0);
  if (!(model.kinetic > 0.0)) throw ConfigError("model.kinetic must be positive");
  if (j.contains("potential")) model.potential = parse_potential(j["potential"]);
  if (j.contains("nonlinearity")) {
    model.nonlinearity = parse_nonlinearity(j["nonlinearity"]);
  }
  model.horizon = j.value("horizon", 1.0);
  if (!(model.horizon > 0.0)) throw ConfigError("model.horizon must be positive");
  return model;
}

json model_to_json(const ModelSpec& m) {
  return {{"domain", {m.domain.x0, m.domain.y0, m.domain.x1, m.domain.y1}},
          {"kinetic", m.kinetic},
          {"potential", potential_to_json(m.potential)},
          {"nonlinearity", nonlinearity_to_json(m.nonlinearity)},
          {"horizon", m.horizon}};
}

DngfConfig parse_dngf(const json& j) {
  DngfConfig cfg;
  cfg.flow_step = j.value("flow_step", cfg.flow_step);
  cfg.stop_tol = j.value("stop_tol", cfg.stop_tol);
  cfg.max_outer = j.value("max_outer", cfg.max_outer);
  if (j.contains("seed_profile")) {
    const auto& sp = j["seed_profile"];
    const std::string kind = sp.value("kind", "gaussian");
    if (kind == "gaussian") {
      cfg.seed_profile = DngfConfig::Seed::Gaussian;
      cfg.seed_width = sp.value("width", 1.0);
    } else if (kind == "positive-constant") {
      cfg.seed_profile = DngfConfig::Seed::PositiveConstant;
    } else {
      throw ConfigError("unknown seed profile: " + kind);
    }
  }
  if (!(cfg.flow_step > 0.0) || !(cfg.stop_tol > 0.0) || cfg.max_outer < 1) {
    throw ConfigError("invalid groundstate flow parameters");
  }
  return cfg;
}

json dngf_to_json(const DngfConfig& cfg) {
  json sp;
  if (cfg.seed_profile == DngfConfig::Seed::Gaussian) {
    sp = {{"kind", "gaussian"}, {"width", cfg.seed_width}};
  } else {
    sp = {{"kind", "positive-constant"}};
  }
  return {{"flow_step", cfg.flow_step},
          {"stop_tol", cfg.stop_tol},
          {"max_outer", cfg.max_outer},
          {"seed_profile", sp}};
}

InitSpec parse_init(const json& j) {
  InitSpec init;
  const std::string kind = j.value("kind", "ground-state");
  if (kind == "ground-state") {
    init.kind = InitSpec::Kind::GroundState;
    if (j.contains("model")) init.groundstate_model = parse_model(j["model"]);
    if (j.contains("dngf")) init.dngf = parse_dngf(j["dngf"]);
  } else if (kind == "ritz-of-function") {
    init.kind = InitSpec::Kind::RitzOfFunction;
    if (j.contains("function")) {
      const auto& fn = j["function"];
      init.function.name = fn.value("name", init.function.name);
      init.function.width = fn.value("width", init.function.width);
      init.function.amplitude = fn.value("amplitude", init.function.amplitude);
      if (fn.contains("center")) {
        init.function.center = {fn["center"].at(0).get<double>(),
                                fn["center"].at(1).get<double>()};
      }
    }
  } else if (kind == "field-file") {
    init.kind = InitSpec::Kind::FieldFile;
    init.path = j.at("path").get<std::string>();
  } else {
    throw ConfigError("unknown init kind: " + kind);
  }
  return init;
}

json init_to_json(const InitSpec& init) {
  switch (init.kind) {
    case InitSpec::Kind::GroundState: {
      json j = {{"kind", "ground-state"}, {"dngf", dngf_to_json(init.dngf)}};
      if (init.groundstate_model) j["model"] = model_to_json(*init.groundstate_model);
      return j;
    }
    case InitSpec::Kind::RitzOfFunction:
      return {{"kind", "ritz-of-function"},
              {"function",
               {{"name", init.function.name},
                {"width", init.function.width},
                {"amplitude", init.function.amplitude},
                {"center", {init.function.center.x(), init.function.center.y()}}}}};
    case InitSpec::Kind::FieldFile:
      return {{"kind", "field-file"}, {"path", init.path}};
  }
  return {};
}

StepperConfig parse_stepper(const json& j) {
  StepperConfig cfg;
  cfg.fp_tol = j.value("fp_tol", cfg.fp_tol);
  cfg.fp_max_iter = j.value("fp_max_iter", cfg.fp_max_iter);
  const std::string solver = j.value("linear_solver", "sparse-direct");
  if (solver == "sparse-direct") {
    cfg.linear_solver = LinearSolverKind::SparseDirect;
  } else if (solver == "iterative") {
    cfg.linear_solver = LinearSolverKind::Iterative;
    cfg.iterative_tol = j.value("iterative_tol", cfg.iterative_tol);
    cfg.iterative_max_iter = j.value("iterative_max_iter", cfg.iterative_max_iter);
  } else {
    throw ConfigError("unknown linear solver: " + solver);
  }
  if (!(cfg.fp_tol > 0.0) || cfg.fp_max_iter < 1) {
    throw ConfigError("invalid stepper tolerances");
  }
  return cfg;
}

json stepper_to_json(const StepperConfig& cfg) {
  json j = {{"fp_tol", cfg.fp_tol}, {"fp_max_iter", cfg.fp_max_iter}};
  if (cfg.linear_solver == LinearSolverKind::SparseDirect) {
    j["linear_solver"] = "sparse-direct";
  } else {
    j["linear_solver"] = "iterative";
    j["iterative_tol"] = cfg.iterative_tol;
    j["iterative_max_iter"] = cfg.iterative_max_iter;
  }
  return j;
}

}  // namespace

RunConfig parse_run_config(const json& doc) {
  try {
    RunConfig config;
    config.model = parse_model(doc.at("model"));
    config.mesh_level = doc.value("mesh_level", config.mesh_level);
    if (config.mesh_level < 0) throw ConfigError("mesh_level must be nonnegative");
    config.tau_rel = doc.value("tau_rel", config.tau_rel);
    if (!(config.tau_rel > 0.0)) throw ConfigError("tau_rel must be positive");
    if (doc.contains("init")) config.init = parse_init(doc["init"]);
    if (doc.contains("outputs")) {
      config.outputs.directory = doc["outputs"].value("dir", config.outputs.directory);
      if (doc["outputs"].contains("snapshot_times")) {
        config.outputs.snapshot_times =
            doc["outputs"]["snapshot_times"].get<std::vector<double>>();
      }
    }
    config.seed = doc.value("seed", config.seed);
    if (doc.contains("stepper")) config.stepper = parse_stepper(doc["stepper"]);
    if (doc.contains("convergence")) {
      const auto& c = doc["convergence"];
      if (c.contains("levels")) {
        config.convergence.levels = c["levels"].get<std::vector<int>>();
      }
      if (c.contains("tau_rels")) {
        config.convergence.tau_rels = c["tau_rels"].get<std::vector<double>>();
      }
      config.convergence.fixed_level =
          c.value("fixed_level", config.convergence.fixed_level);
      config.convergence.fixed_tau_rel =
          c.value("fixed_tau_rel", config.convergence.fixed_tau_rel);
      config.convergence.reference_level =
          c.value("reference_level", config.convergence.reference_level);
      config.convergence.reference_tau =
          c.value("reference_tau", config.convergence.reference_tau);
    }
    return config;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file: " + path);
  json doc;
  try {
    is >> doc;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return parse_run_config(doc);
}

nlohmann::json run_config_to_json(const RunConfig& config) {
  json j;
  j["model"] = model_to_json(config.model);
  j["mesh_level"] = config.mesh_level;
  j["tau_rel"] = config.tau_rel;
  j["init"] = init_to_json(config.init);
  j["outputs"] = {{"dir", config.outputs.directory},
                  {"snapshot_times", config.outputs.snapshot_times}};
  j["seed"] = config.seed;
  j["stepper"] = stepper_to_json(config.stepper);
  j["convergence"] = {{"levels", config.convergence.levels},
                      {"tau_rels", config.convergence.tau_rels},
                      {"fixed_level", config.convergence.fixed_level},
                      {"fixed_tau_rel", config.convergence.fixed_tau_rel},
                      {"reference_level", config.convergence.reference_level},
                      {"reference_tau", config.convergence.reference_tau}};
  return j;
}

TimeGrid time_grid_for(double horizon, double tau_rel) {
  if (!(tau_rel > 0.0) || !(horizon > 0.0)) {
    throw ConfigError("time grid needs positive horizon and tau_rel");
  }
  const double tau = (2.0 / 3.0) * tau_rel;
  const int steps = std::max(1, static_cast<int>(std::llround(horizon / tau)));
  return TimeGrid::equidistant(horizon, steps);
}

FeField build_initial_value(const RunConfig& config, const MeshPtr& mesh) {
  switch (config.init.kind) {
    case InitSpec::Kind::RitzOfFunction:
      return ritz_project(
          mesh, config.init.function.as_scalar_field(config.model.domain));
    case InitSpec::Kind::GroundState: {
      const ModelSpec& gs_model = config.init.groundstate_model
                                      ? *config.init.groundstate_model
                                      : config.model;
      if (!(gs_model.domain == config.model.domain)) {
        throw ConfigError("groundstate model domain must match the run domain");
      }
      return dngf_solve(mesh, gs_model, config.init.dngf).state;
    }
    case InitSpec::Kind::FieldFile: {
      const FeField from_file = read_field_file(config.init.path);
      if (!(from_file.mesh->domain() == mesh->domain())) {
        throw ConfigError("field file domain does not match the run domain");
      }
      return project_initial(from_file, mesh);
    }
  }
  throw ConfigError("unhandled init kind");
}

}  // namespace nlscn
