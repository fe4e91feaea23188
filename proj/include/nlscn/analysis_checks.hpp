// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "nlscn/model.hpp"
#include "nlscn/types.hpp"

namespace nlscn {

/// Outcome of a randomized inequality check. worst_violation <= 0 means the
/// inequality held at every sampled point.
struct SampleReport {
  long samples = 0;
  double worst_violation = 0.0;
  std::array<Complex, 4> worst_witness{};
  double bound_constant = 0.0;
  /// Constants fitted when the checked inequality only asserts existence.
  double fitted_c1 = 0.0;
  double fitted_c2 = 0.0;

  bool passed() const { return worst_violation <= 0.0; }
};

/// Both sides of the exact algebraic identity
///   [ (|z0|^2-|zh|^2)^2 - (|z1|^2-|zh|^2)^2 ] / (|z0|^2-|z1|^2) = |z0-z1|^2/2
/// with zh = (z0+z1)/2. Throws std::domain_error when |z0|^2 == |z1|^2 up to
/// roundoff (the quotient is undefined there).
std::pair<double, double> half_identity(Complex z0, Complex z1);

/// Samples the Lipschitz bound of the truncated divided-difference kernel:
///   |G_M(|v1|^2,|z0|^2) - G_M(|v2|^2,|z0|^2)|
///     <= max{4 M gamma^{M,1}, Gamma_M(M^2)} |v1 - v2|    for |z0| <= M.
SampleReport check_gm_lipschitz(const NonlinearitySpec& nl, double M,
                                long samples, std::uint64_t seed = 0x9e3779b9u);

/// Samples the two-sided truncation inequality (pairs (v1,w1) inside the
/// truncation radius, (v2,w2) free) and reports the smallest constant C with
///   lhs <= C (sum_k M^{2k-1} gamma^{M,k}) |v1-w1|^2
///        + C (sum_k M^{2k} gamma^{M,k}) (|v1-v2| + |w1-w2|)
/// violated nowhere on the sample set (fitted jointly, C1 = C2 = C).
SampleReport check_fm_cond3(const NonlinearitySpec& nl, double M, long samples,
                            std::uint64_t seed = 0x9e3779b9u);

}  // namespace nlscn
