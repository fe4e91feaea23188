// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

#include "nlscn/assembly.hpp"
#include "nlscn/mesh.hpp"

namespace nlscn {

/// Relative L2 and H1-seminorm errors of real and imaginary parts against a
/// reference field. A zero reference norm leaves the corresponding column
/// undefined rather than dividing by zero.
struct RelativeErrors {
  double re_l2 = 0.0;
  double im_l2 = 0.0;
  double re_h1 = 0.0;
  double im_h1 = 0.0;
  std::array<bool, 4> defined = {true, true, true, true};
};

/// Prolongates `u` to the reference mesh and evaluates the four relative
/// errors with the reference-mesh matrices.
RelativeErrors compute_relative_errors(const FeField& u_ref, const FeField& u,
                                       const FormSet& ref_forms);

/// Mean of log(e_i / e_{i+1}) / log(refinement_ratio) over consecutive pairs.
/// Throws std::domain_error unless there are >= 2 strictly positive errors.
double compute_eoc(const std::vector<double>& errors, double refinement_ratio = 2.0);

/// Error rows over (h_rel, tau_rel) pairs plus per-column average
/// experimental orders of convergence.
struct EocTable {
  struct Row {
    double h_rel;
    double tau_rel;
    RelativeErrors errors;
  };
  std::vector<Row> rows;
  std::array<double, 4> eoc{};  // re_l2, im_l2, re_h1, im_h1
  bool eoc_defined = false;
  bool complete = true;

  void compute_averages(double refinement_ratio = 2.0);

  /// CSV rows `h_rel,tau_rel,err_re_l2,err_im_l2,err_re_h1,err_im_h1` with a
  /// trailing EOC row.
  std::string to_csv() const;
};

}  // namespace nlscn
