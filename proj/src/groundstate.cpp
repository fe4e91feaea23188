// SPDX-License-Identifier: Apache-2.0
#include "nlscn/groundstate.hpp"

#include <cmath>
#include <sstream>

namespace nlscn {

namespace {

FeField seed_field(const MeshPtr& mesh, const DngfConfig& cfg,
                   const SparseComplexMatrix& massmat) {
  const Rect& d = mesh->domain();
  const double cx = 0.5 * (d.x0 + d.x1);
  const double cy = 0.5 * (d.y0 + d.y1);
  ComplexVector vals(mesh->num_interior());
  for (int i = 0; i < mesh->num_interior(); ++i) {
    const Eigen::Vector2d x = mesh->node(mesh->interior_node(i));
    if (cfg.seed_profile == DngfConfig::Seed::Gaussian) {
      const double r2 = (x.x() - cx) * (x.x() - cx) + (x.y() - cy) * (x.y() - cy);
      vals[i] = std::exp(-r2 / (2.0 * cfg.seed_width * cfg.seed_width));
    } else {
      vals[i] = 1.0;
    }
  }
  FeField phi(mesh, std::move(vals));
  phi.values /= l2_norm(phi, massmat);
  return phi;
}

// One backward-Euler flow step with the nonlinear coefficient lagged at the
// current iterate but applied to the new one; the fixed points of the
// normalized iteration are then exactly the critical points of the discrete
// constrained energy.
FeField flow_advance(const FeField& phi, double flow_step, const ModelSpec& model,
                     const FormSet& forms) {
  SparseComplexMatrix system = forms.mass / Complex(flow_step) +
                               Complex(model.kinetic) * forms.stiffness +
                               forms.weighted_mass;
  if (model.nonlinearity.kind() != NonlinearitySpec::Kind::None) {
    system = system + assemble_g_weighted_mass(*forms.mesh, phi, phi,
                                               model.nonlinearity, forms.quad);
  }
  Eigen::SimplicialLDLT<SparseComplexMatrix> solver(system);
  if (solver.info() != Eigen::Success) {
    throw SolverError("gradient-flow system factorization failed");
  }
  FeField next(phi.mesh, solver.solve((forms.mass * phi.values) / Complex(flow_step)));
  next.values /= l2_norm(next, forms.mass);
  return next;
}

double chemical_potential(const FeField& phi, const ModelSpec& model,
                          const FormSet& forms) {
  const double quad_form =
      (phi.values.dot((Complex(model.kinetic) * forms.stiffness +
                       forms.weighted_mass) *
                      phi.values))
          .real();
  double nonlinear = 0.0;
  if (model.nonlinearity.kind() != NonlinearitySpec::Kind::None) {
    nonlinear = phi.values
                    .dot(assemble_nonlinear_vector(*forms.mesh, phi, phi, phi,
                                                   model.nonlinearity, forms.quad))
                    .real();
  }
  return (quad_form + nonlinear) / mass(phi, forms.mass);
}

}  // namespace

FeField dngf_step(const FeField& phi, double flow_step, const ModelSpec& model,
                  const FormSet& forms) {
  return flow_advance(phi, flow_step, model, forms);
}

DngfResult dngf_solve(const MeshPtr& mesh, const ModelSpec& model,
                      const DngfConfig& cfg) {
  if (!(cfg.flow_step > 0.0) || !(cfg.stop_tol > 0.0) || cfg.max_outer < 1) {
    throw std::invalid_argument("invalid gradient-flow configuration");
  }
  const FormSet forms = assemble_forms(mesh, model.potential);

  DngfResult result;
  double flow_step = cfg.flow_step;
  FeField phi = seed_field(mesh, cfg, forms.mass);
  double current_energy = energy(phi, model, forms);
  result.energies.push_back(current_energy);

  constexpr int kMaxHalvings = 20;

  for (int outer = 0; outer < cfg.max_outer; ++outer) {
    FeField next = flow_advance(phi, flow_step, model, forms);
    double next_energy = energy(next, model, forms);

    // diminishing-energy safeguard: retry the step with a halved flow step
    while (next_energy >
           current_energy + 1e-12 * std::max(1.0, std::abs(current_energy))) {
      if (result.flow_step_halvings >= kMaxHalvings) {
        std::ostringstream msg;
        msg << "gradient flow stalled: energy increases at flow step " << flow_step;
        throw SolverError(msg.str());
      }
      flow_step *= 0.5;
      ++result.flow_step_halvings;
      next = flow_advance(phi, flow_step, model, forms);
      next_energy = energy(next, model, forms);
    }

    const double increment =
        (next.values - phi.values).cwiseAbs().maxCoeff();
    phi = std::move(next);
    current_energy = next_energy;
    result.energies.push_back(current_energy);
    result.iterations = outer + 1;
    result.final_increment = increment;
    if (increment < cfg.stop_tol) {
      // global phase fixed: make the state real and nonnegative, clipping
      // only sub-1e-13 negative roundoff
      for (int i = 0; i < phi.values.size(); ++i) {
        double re = phi.values[i].real();
        if (re < 0.0 && re >= -1e-13) re = 0.0;
        phi.values[i] = Complex(re, 0.0);
      }
      result.state = std::move(phi);
      result.mu = chemical_potential(result.state, model, forms);
      return result;
    }
  }
  std::ostringstream msg;
  msg << "gradient flow did not converge within " << cfg.max_outer
      << " outer iterations (last increment " << result.final_increment << ")";
  throw SolverError(msg.str());
}

FeField project_initial(const FeField& u0, const MeshPtr& mesh) {
  if (u0.mesh->level() == mesh->level() && u0.mesh->domain() == mesh->domain()) {
    return FeField(mesh, u0.values);
  }
  return prolongate(u0, mesh);
}

FeField project_initial(const ScalarField& u0, const MeshPtr& mesh) {
  return ritz_project(mesh, u0);
}

}  // namespace nlscn
