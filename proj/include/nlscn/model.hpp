// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "nlscn/mesh.hpp"
#include "nlscn/types.hpp"

namespace nlscn {

/// Density nonlinearity gamma and its antiderivative Gamma.
/// gamma maps [0,inf) -> [0,inf) with gamma(0) = 0; Gamma(rho) is the
/// integral of gamma from 0 to rho.
class NonlinearitySpec {
 public:
  enum class Kind { None, Cubic, Custom };

  static NonlinearitySpec none();
  static NonlinearitySpec cubic(double beta);
  static NonlinearitySpec custom(std::function<double(double)> gamma,
                                 std::function<double(double)> gamma_integral,
                                 std::optional<double> growth_exponent_q = {});

  Kind kind() const { return kind_; }
  double beta() const { return beta_; }
  std::optional<double> growth_exponent_q() const { return growth_exponent_q_; }

  double gamma(double rho) const;
  /// Gamma(rho) = int_0^rho gamma(t) dt
  double gamma_integral(double rho) const;

 private:
  Kind kind_ = Kind::None;
  double beta_ = 0.0;
  std::function<double(double)> gamma_fn_;
  std::function<double(double)> gamma_integral_fn_;
  std::optional<double> growth_exponent_q_;
};

/// Real nonnegative potential, evaluated pointwise (no projection or
/// averaging; roughness is sampled at quadrature points).
class PotentialSpec {
 public:
  enum class Kind { Zero, Harmonic, DisorderSine, Sum, Custom };

  static PotentialSpec zero();
  /// V(x) = weight * |x - center|^2
  static PotentialSpec harmonic(Eigen::Vector2d center, double weight);
  /// V(x) = floor(5 + 2 sin(pi x1 / 3) sin(pi x2 / 3))
  static PotentialSpec disorder_sine();
  static PotentialSpec sum(std::vector<PotentialSpec> terms);
  static PotentialSpec custom(std::function<double(double, double)> fn);

  Kind kind() const { return kind_; }
  const std::vector<PotentialSpec>& terms() const { return terms_; }
  const Eigen::Vector2d& center() const { return center_; }
  double weight() const { return weight_; }

  double operator()(double x, double y) const;

 private:
  Kind kind_ = Kind::Zero;
  Eigen::Vector2d center_{0.0, 0.0};
  double weight_ = 0.0;
  std::vector<PotentialSpec> terms_;
  std::function<double(double, double)> fn_;
};

/// Continuous model data: i u_t = -kinetic * Lap(u) + V u + gamma(|u|^2) u
/// on `domain` up to time `horizon`, with u = 0 on the boundary.
struct ModelSpec {
  Rect domain;
  double kinetic = 1.0;
  PotentialSpec potential = PotentialSpec::zero();
  NonlinearitySpec nonlinearity = NonlinearitySpec::none();
  double horizon = 1.0;
};

/// Stabilized divided difference of Gamma:
///   (Gamma(t1) - Gamma(t2)) / (t1 - t2)            away from the diagonal,
///   gamma((t1 + t2) / 2)                            near it.
/// Continuous, total, and symmetric in (t1, t2).
double g_divided(double t1, double t2, const NonlinearitySpec& nl);

/// Relative gap below which g_divided switches to the midpoint branch.
inline constexpr double kGDividedBranchEps = 1e-8;

/// Smooth bounded replacement of gamma beyond amplitude M: equals gamma on
/// [0, theta_dom], blends with a C^2 quintic Hermite piece on
/// [theta_dom, 2 theta_dom], and is constant beyond.
class TruncationSpec {
 public:
  double truncation_radius() const { return M_; }
  double theta_dom() const { return theta_; }
  double tail_value() const { return tail_; }

  double gamma_m(double s) const;
  /// k-th derivative of gamma_m, k in {0,1,2}
  double gamma_m_deriv(double s, int k) const;
  /// Gamma_M(s) by exact piecewise integration
  double gamma_integral_m(double s) const;
  /// Divided-difference kernel built on the truncated pair (gamma_M, Gamma_M)
  double g_divided_m(double t1, double t2) const;

  /// sup of |gamma^(k)| over [0, M^2], k in {0,1,2}
  double gamma_sup(int k) const { return gamma_sup_[k]; }

  friend TruncationSpec build_truncation(const NonlinearitySpec& nl, double M);

 private:
  double M_ = 0.0;
  double theta_ = 0.0;
  double tail_ = 0.0;
  std::array<double, 6> blend_{};         // quintic coefficients in u = (s - theta)/theta
  double gamma_integral_theta_ = 0.0;     // Gamma(theta)
  double blend_integral_full_ = 0.0;      // int_theta^{2 theta} blend
  std::array<double, 3> gamma_sup_{};
  NonlinearitySpec nl_;
};

/// Builds the truncation for (nl, M) with theta_dom = max(M^2, gamma(M^2)).
/// Throws UnsupportedNonlinearity when derivative sampling of a custom
/// gamma is inconsistent (non-smooth input).
TruncationSpec build_truncation(const NonlinearitySpec& nl, double M);

/// conj(c)^T massmat c; the imaginary residue is discarded (|.| <= 1e-13 rel).
double mass(const FeField& field, const SparseComplexMatrix& massmat);

double l2_norm(const FeField& field, const SparseComplexMatrix& massmat);

}  // namespace nlscn
