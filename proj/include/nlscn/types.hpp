// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <stdexcept>
#include <string>

namespace nlscn {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Assembled bilinear forms. Mass/stiffness/weighted-mass carry real values
/// but live in the complex scalar type so they combine directly with the
/// i*tau terms of the time-stepping system.
using SparseComplexMatrix = Eigen::SparseMatrix<Complex>;

/// Axis-aligned rectangle [x0,x1] x [y0,y1].
struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }

  bool operator==(const Rect&) const = default;
};

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixed-point iteration ran out of iterations inside a time step.
class StepFailure : public SolverError {
 public:
  StepFailure(const std::string& what, int step, double residual)
      : SolverError(what), step_index(step), last_residual(residual) {}

  int step_index;
  double last_residual;
};

class UnsupportedNonlinearity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nlscn
