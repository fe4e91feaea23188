// SPDX-License-Identifier: Apache-2.0
#include "nlscn/analysis_checks.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace nlscn {

std::pair<double, double> half_identity(Complex z0, Complex z1) {
  const double a = std::norm(z0);
  const double b = std::norm(z1);
  if (std::abs(a - b) <= 1e-300 * std::max({1.0, a, b})) {
    throw std::domain_error("half_identity requires |z0|^2 != |z1|^2");
  }
  const Complex zh = 0.5 * (z0 + z1);
  const double c = std::norm(zh);
  const double lhs = ((a - c) * (a - c) - (b - c) * (b - c)) / (a - b);
  const double rhs = 0.5 * std::norm(z0 - z1);
  return {lhs, rhs};
}

namespace {

Complex sample_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = radius * std::sqrt(unit(rng));
  const double phi = 2.0 * M_PI * unit(rng);
  return {r * std::cos(phi), r * std::sin(phi)};
}

// radii exercising the case splits of the truncation estimates
constexpr std::array<double, 4> kRadiusFactors = {0.5, 1.0, 2.0, 4.0};

}  // namespace

SampleReport check_gm_lipschitz(const NonlinearitySpec& nl, double M,
                                long samples, std::uint64_t seed) {
  const TruncationSpec trunc = build_truncation(nl, M);
  const double bound_constant =
      std::max(4.0 * M * trunc.gamma_sup(1), trunc.gamma_integral_m(M * M));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> radius_pick(0, 3);

  SampleReport report;
  report.samples = samples;
  report.bound_constant = bound_constant;
  report.worst_violation = -std::numeric_limits<double>::infinity();
  for (long s = 0; s < samples; ++s) {
    const Complex z0 = sample_disk(rng, M);
    const Complex v1 = sample_disk(rng, M * kRadiusFactors[radius_pick(rng)]);
    const Complex v2 = sample_disk(rng, M * kRadiusFactors[radius_pick(rng)]);
    const double t0 = std::norm(z0);
    const double lhs = std::abs(trunc.g_divided_m(std::norm(v1), t0) -
                                trunc.g_divided_m(std::norm(v2), t0));
    const double violation = lhs - bound_constant * std::abs(v1 - v2);
    if (violation > report.worst_violation) {
      report.worst_violation = violation;
      report.worst_witness = {z0, v1, v2, Complex(0.0)};
    }
  }
  return report;
}

SampleReport check_fm_cond3(const NonlinearitySpec& nl, double M, long samples,
                            std::uint64_t seed) {
  const TruncationSpec trunc = build_truncation(nl, M);
  double weight_sq = 0.0, weight_lin = 0.0;  // coefficient sums of the bound
  for (int k = 1; k <= 2; ++k) {
    weight_sq += std::pow(M, 2 * k - 1) * trunc.gamma_sup(k);
  }
  for (int k = 0; k <= 2; ++k) {
    weight_lin += std::pow(M, 2 * k) * trunc.gamma_sup(k);
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> radius_pick(0, 3);

  SampleReport report;
  report.samples = samples;
  report.worst_violation = -std::numeric_limits<double>::infinity();
  double fitted = 0.0;
  for (long s = 0; s < samples; ++s) {
    const Complex v1 = sample_disk(rng, M);
    const Complex w1 = sample_disk(rng, M);
    const Complex v2 = sample_disk(rng, M * kRadiusFactors[radius_pick(rng)]);
    const Complex w2 = sample_disk(rng, M * kRadiusFactors[radius_pick(rng)]);

    const double theta1 = trunc.g_divided_m(std::norm(v1), std::norm(w1));
    const double theta2 = trunc.g_divided_m(std::norm(v2), std::norm(w2));
    const double lhs = std::abs((theta1 - theta2) * (v1 + w1));
    const double budget = weight_sq * std::norm(v1 - w1) +
                          weight_lin * (std::abs(v1 - v2) + std::abs(w1 - w2));
    if (budget > 0.0) {
      const double c = lhs / budget;
      if (c > fitted) {
        fitted = c;
        report.worst_witness = {v1, w1, v2, w2};
      }
    } else if (lhs > 0.0) {
      report.worst_violation = lhs;  // zero budget cannot cover a nonzero lhs
      report.worst_witness = {v1, w1, v2, w2};
    }
  }
  report.fitted_c1 = fitted;
  report.fitted_c2 = fitted;
  report.bound_constant = fitted;
  if (report.worst_violation == -std::numeric_limits<double>::infinity()) {
    report.worst_violation = std::isfinite(fitted) ? 0.0 : 1.0;
  }
  return report;
}

}  // namespace nlscn
