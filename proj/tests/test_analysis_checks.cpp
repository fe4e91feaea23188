// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "nlscn/analysis_checks.hpp"

using namespace nlscn;

TEST_CASE("half identity: direct arithmetic example") {
  const auto [lhs, rhs] = half_identity(Complex(1.0, 0.0), Complex(2.0, 0.0));
  CHECK(lhs == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rhs == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("half identity: both sides vanish for nearby points") {
  const Complex z0(1.0, 0.5);
  const Complex z1 = z0 + Complex(1e-6, 0.0);
  const auto [lhs, rhs] = half_identity(z0, z1);
  CHECK(std::abs(rhs) <= 1e-12);
  CHECK(std::abs(lhs - rhs) <= 1e-12);
}

TEST_CASE("half identity: equal moduli violate the precondition") {
  CHECK_THROWS_AS(half_identity(Complex(1.0, 0.0), Complex(0.0, 1.0)),
                  std::domain_error);
}

TEST_CASE("half identity: sampled over the disk of radius 10") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto draw = [&]() {
    const double r = 10.0 * std::sqrt(unit(rng));
    const double phi = 2.0 * M_PI * unit(rng);
    return Complex(r * std::cos(phi), r * std::sin(phi));
  };
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    Complex z0, z1;
    do {
      z0 = draw();
      z1 = draw();
    } while (std::abs(std::norm(z0) - std::norm(z1)) <=
             1e-2 * std::max({1.0, std::norm(z0), std::norm(z1)}));
    const auto [lhs, rhs] = half_identity(z0, z1);
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + rhs));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("Lipschitz bound: equal arguments give zero left-hand side") {
  const TruncationSpec trunc = build_truncation(NonlinearitySpec::cubic(20.0), 1.0);
  const double t0 = 0.49;
  CHECK(trunc.g_divided_m(0.3, t0) - trunc.g_divided_m(0.3, t0) == 0.0);
}

TEST_CASE("Lipschitz bound holds over random samples for cubic nonlinearities") {
  for (double beta : {1.0, 20.0}) {
    for (double m : {1.0, 2.0}) {
      const SampleReport report =
          check_gm_lipschitz(NonlinearitySpec::cubic(beta), m, 100000, 77);
      CHECK(report.passed());
      CHECK(report.samples == 100000);
      CHECK(report.bound_constant > 0.0);
    }
  }
}

TEST_CASE("constant gamma makes all divided differences equal") {
  const double c = 3.25;
  const NonlinearitySpec constant = NonlinearitySpec::custom(
      [c](double) { return c; }, [c](double rho) { return c * rho; });
  const TruncationSpec trunc = build_truncation(constant, 2.0);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> dist(0.0, 30.0);
  for (int i = 0; i < 1000; ++i) {
    REQUIRE(trunc.g_divided_m(dist(rng), dist(rng)) == doctest::Approx(c).epsilon(1e-12));
  }
  const SampleReport report = check_gm_lipschitz(constant, 2.0, 10000, 5);
  CHECK(report.passed());
}

TEST_CASE("truncation inequality: degenerate samples give zero left-hand side") {
  const TruncationSpec trunc = build_truncation(NonlinearitySpec::cubic(1.0), 1.0);
  const Complex v(0.4, 0.1);
  // v1 = v2, w1 = w2, v1 = w1
  CHECK(std::abs(trunc.g_divided_m(std::norm(v), std::norm(v)) -
                 trunc.g_divided_m(std::norm(v), std::norm(v))) == 0.0);
}

TEST_CASE("truncation inequality admits finite fitted constants") {
  const SampleReport report = check_fm_cond3(NonlinearitySpec::cubic(1.0), 1.0, 10000, 19);
  CHECK(report.passed());
  CHECK(std::isfinite(report.fitted_c1));
  CHECK(report.fitted_c1 > 0.0);
  CHECK(report.fitted_c1 == report.fitted_c2);
  MESSAGE("fitted constant: ", report.fitted_c1);
}

TEST_CASE("midpoint substitution reduces to the Taylor term with explicit constants") {
  // with (v2, w2) both replaced by the midpoint, the kernel difference becomes
  // the divided-difference-versus-derivative defect, bounded with the explicit
  // Taylor constants (1/4, 1/3)
  const NonlinearitySpec nl = NonlinearitySpec::cubic(5.0);
  const double m = 2.0;
  const TruncationSpec trunc = build_truncation(nl, m);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto draw_disk = [&](double radius) {
    const double r = radius * std::sqrt(unit(rng));
    const double phi = 2.0 * M_PI * unit(rng);
    return Complex(r * std::cos(phi), r * std::sin(phi));
  };
  for (int i = 0; i < 20000; ++i) {
    const Complex v1 = draw_disk(m);
    const Complex w1 = draw_disk(m);
    const Complex mid = 0.5 * (v1 + w1);
    const double theta1 = trunc.g_divided_m(std::norm(v1), std::norm(w1));
    const double theta2 = trunc.g_divided_m(std::norm(mid), std::norm(mid));
    const double lhs = std::abs((theta1 - theta2) * (v1 + w1));
    const double d2 = std::abs(v1 - w1) * std::abs(v1 - w1);
    const double pair_sum = std::abs(v1) + std::abs(w1);
    const double bound = d2 *
                         (0.25 * trunc.gamma_sup(1) +
                          (1.0 / 3.0) * pair_sum * pair_sum * trunc.gamma_sup(2)) *
                         std::abs(v1 + w1);
    REQUIRE(lhs <= bound * (1.0 + 1e-9) + 1e-12);
  }
}

TEST_CASE("truncated and plain kernels agree below the truncation radius") {
  const NonlinearitySpec nl = NonlinearitySpec::cubic(20.0);
  const double m = 2.0;
  const TruncationSpec trunc = build_truncation(nl, m);
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> dist(0.0, m * m);
  for (int i = 0; i < 10000; ++i) {
    const double t1 = dist(rng), t2 = dist(rng);
    const double plain = g_divided(t1, t2, nl);
    // the truncated kernel evaluates the generic quotient; agreement up to
    // its cancellation floor
    REQUIRE(std::abs(trunc.g_divided_m(t1, t2) - plain) <=
            1e-7 * std::max(1.0, std::abs(plain)));
  }
}
