// SPDX-License-Identifier: Apache-2.0
#include "nlscn/model.hpp"

#include <algorithm>
#include <cmath>

namespace nlscn {

NonlinearitySpec NonlinearitySpec::none() { return NonlinearitySpec{}; }

NonlinearitySpec NonlinearitySpec::cubic(double beta) {
  NonlinearitySpec nl;
  nl.kind_ = Kind::Cubic;
  nl.beta_ = beta;
  return nl;
}

NonlinearitySpec NonlinearitySpec::custom(
    std::function<double(double)> gamma,
    std::function<double(double)> gamma_integral,
    std::optional<double> growth_exponent_q) {
  NonlinearitySpec nl;
  nl.kind_ = Kind::Custom;
  nl.gamma_fn_ = std::move(gamma);
  nl.gamma_integral_fn_ = std::move(gamma_integral);
  nl.growth_exponent_q_ = growth_exponent_q;
  return nl;
}

double NonlinearitySpec::gamma(double rho) const {
  switch (kind_) {
    case Kind::None:
      return 0.0;
    case Kind::Cubic:
      return beta_ * rho;
    case Kind::Custom:
      return gamma_fn_(rho);
  }
  return 0.0;
}

double NonlinearitySpec::gamma_integral(double rho) const {
  switch (kind_) {
    case Kind::None:
      return 0.0;
    case Kind::Cubic:
      return 0.5 * beta_ * rho * rho;
    case Kind::Custom:
      return gamma_integral_fn_(rho);
  }
  return 0.0;
}

PotentialSpec PotentialSpec::zero() { return PotentialSpec{}; }

PotentialSpec PotentialSpec::harmonic(Eigen::Vector2d center, double weight) {
  PotentialSpec v;
  v.kind_ = Kind::Harmonic;
  v.center_ = center;
  v.weight_ = weight;
  return v;
}

PotentialSpec PotentialSpec::disorder_sine() {
  PotentialSpec v;
  v.kind_ = Kind::DisorderSine;
  return v;
}

PotentialSpec PotentialSpec::sum(std::vector<PotentialSpec> terms) {
  PotentialSpec v;
  v.kind_ = Kind::Sum;
  v.terms_ = std::move(terms);
  return v;
}

PotentialSpec PotentialSpec::custom(std::function<double(double, double)> fn) {
  PotentialSpec v;
  v.kind_ = Kind::Custom;
  v.fn_ = std::move(fn);
  return v;
}

double PotentialSpec::operator()(double x, double y) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Harmonic: {
      const double rx = x - center_.x();
      const double ry = y - center_.y();
      return weight_ * (rx * rx + ry * ry);
    }
    case Kind::DisorderSine: {
      constexpr double third_pi = M_PI / 3.0;
      return std::floor(5.0 + 2.0 * std::sin(third_pi * x) * std::sin(third_pi * y));
    }
    case Kind::Sum: {
      double v = 0.0;
      for (const auto& t : terms_) v += t(x, y);
      return v;
    }
    case Kind::Custom:
      return fn_(x, y);
  }
  return 0.0;
}

double g_divided(double t1, double t2, const NonlinearitySpec& nl) {
  // cubic: the divided difference collapses to beta (t1 + t2) / 2 exactly,
  // which is also the midpoint value, so both branches coincide
  if (nl.kind() == NonlinearitySpec::Kind::Cubic) {
    return nl.beta() * (0.5 * (t1 + t2));
  }
  const double gap = std::abs(t1 - t2);
  const double scale = std::max({1.0, t1, t2});
  if (gap > kGDividedBranchEps * scale) {
    return (nl.gamma_integral(t1) - nl.gamma_integral(t2)) / (t1 - t2);
  }
  return nl.gamma(0.5 * (t1 + t2));
}

namespace {

// quintic Hermite coefficients in u for data (v0, d0, s0) at u=0 and
// (v1, 0, 0) at u=1
std::array<double, 6> hermite_quintic(double v0, double d0, double s0, double v1) {
  return {v0,
          d0,
          0.5 * s0,
          10.0 * (v1 - v0) - 6.0 * d0 - 1.5 * s0,
          -15.0 * (v1 - v0) + 8.0 * d0 + 1.5 * s0,
          6.0 * (v1 - v0) - 3.0 * d0 - 0.5 * s0};
}

double poly_eval(const std::array<double, 6>& a, double u) {
  double r = 0.0;
  for (int k = 5; k >= 0; --k) r = r * u + a[k];
  return r;
}

double poly_deriv1(const std::array<double, 6>& a, double u) {
  double r = 0.0;
  for (int k = 5; k >= 1; --k) r = r * u + k * a[k];
  return r;
}

double poly_deriv2(const std::array<double, 6>& a, double u) {
  double r = 0.0;
  for (int k = 5; k >= 2; --k) r = r * u + k * (k - 1) * a[k];
  return r;
}

// int_0^u p
double poly_integral(const std::array<double, 6>& a, double u) {
  double r = 0.0;
  for (int k = 5; k >= 0; --k) r = r * u + a[k] / (k + 1);
  return r * u;
}

struct SampledDerivatives {
  double d1;
  double d2;
};

// central differences with a step-halving consistency check
SampledDerivatives sample_derivatives(const NonlinearitySpec& nl, double s) {
  const auto d1_at = [&](double h) {
    return (nl.gamma(s + h) - nl.gamma(s - h)) / (2.0 * h);
  };
  const auto d2_at = [&](double h) {
    return (nl.gamma(s + h) - 2.0 * nl.gamma(s) + nl.gamma(s - h)) / (h * h);
  };
  const double h1 = 1e-4 * std::max(1.0, s);
  const double h2 = 1e-3 * std::max(1.0, s);
  const double d1a = d1_at(h1), d1b = d1_at(2.0 * h1);
  const double d2a = d2_at(h2), d2b = d2_at(2.0 * h2);
  if (std::abs(d1a - d1b) > 1e-2 * std::max(1.0, std::abs(d1a)) ||
      std::abs(d2a - d2b) > 1e-1 * std::max(1.0, std::abs(d2a)) ||
      !std::isfinite(d1a) || !std::isfinite(d2a)) {
    throw UnsupportedNonlinearity(
        "derivative sampling of custom nonlinearity is inconsistent");
  }
  return {d1a, d2a};
}

}  // namespace

TruncationSpec build_truncation(const NonlinearitySpec& nl, double M) {
  if (!(M > 0.0)) {
    throw std::invalid_argument("truncation radius M must be positive");
  }
  TruncationSpec t;
  t.nl_ = nl;
  t.M_ = M;
  const double theta = std::max(M * M, nl.gamma(M * M));
  t.theta_ = theta;

  double d1 = 0.0, d2 = 0.0;
  switch (nl.kind()) {
    case NonlinearitySpec::Kind::None:
      break;
    case NonlinearitySpec::Kind::Cubic:
      d1 = nl.beta();
      d2 = 0.0;
      break;
    case NonlinearitySpec::Kind::Custom: {
      const auto d = sample_derivatives(nl, theta);
      d1 = d.d1;
      d2 = d.d2;
      break;
    }
  }

  const double v0 = nl.gamma(theta);
  // constant tail, capped so that sup |gamma_M| <= 2 gamma(theta)
  t.tail_ = std::clamp(v0 + theta * d1, 0.0, 2.0 * v0);
  t.blend_ = hermite_quintic(v0, theta * d1, theta * theta * d2, t.tail_);
  t.gamma_integral_theta_ = nl.gamma_integral(theta);
  t.blend_integral_full_ = theta * poly_integral(t.blend_, 1.0);

  // sup of |gamma^(k)| over [0, M^2]
  switch (nl.kind()) {
    case NonlinearitySpec::Kind::None:
      t.gamma_sup_ = {0.0, 0.0, 0.0};
      break;
    case NonlinearitySpec::Kind::Cubic:
      t.gamma_sup_ = {nl.beta() * M * M, nl.beta(), 0.0};
      break;
    case NonlinearitySpec::Kind::Custom: {
      const int samples = 2048;
      std::array<double, 3> sup{};
      for (int i = 0; i <= samples; ++i) {
        const double s = (M * M) * i / samples;
        const double h = std::max(1e-5, 1e-5 * s);
        sup[0] = std::max(sup[0], std::abs(nl.gamma(s)));
        if (s - h < 0.0) {
          sup[1] = std::max(sup[1], std::abs((nl.gamma(s + h) - nl.gamma(s)) / h));
          continue;
        }
        sup[1] = std::max(sup[1],
                          std::abs((nl.gamma(s + h) - nl.gamma(s - h)) / (2.0 * h)));
        sup[2] = std::max(sup[2], std::abs((nl.gamma(s + h) - 2.0 * nl.gamma(s) +
                                            nl.gamma(s - h)) /
                                           (h * h)));
      }
      t.gamma_sup_ = sup;
      break;
    }
  }
  return t;
}

double TruncationSpec::gamma_m(double s) const {
  if (s <= theta_) return nl_.gamma(s);
  if (s >= 2.0 * theta_) return tail_;
  return poly_eval(blend_, (s - theta_) / theta_);
}

double TruncationSpec::gamma_m_deriv(double s, int k) const {
  if (k == 0) return gamma_m(s);
  if (s >= 2.0 * theta_) return 0.0;
  if (s > theta_) {
    const double u = (s - theta_) / theta_;
    if (k == 1) return poly_deriv1(blend_, u) / theta_;
    return poly_deriv2(blend_, u) / (theta_ * theta_);
  }
  switch (nl_.kind()) {
    case NonlinearitySpec::Kind::None:
      return 0.0;
    case NonlinearitySpec::Kind::Cubic:
      return k == 1 ? nl_.beta() : 0.0;
    case NonlinearitySpec::Kind::Custom: {
      const auto d = sample_derivatives(nl_, s);
      return k == 1 ? d.d1 : d.d2;
    }
  }
  return 0.0;
}

double TruncationSpec::gamma_integral_m(double s) const {
  if (s <= theta_) return nl_.gamma_integral(s);
  if (s <= 2.0 * theta_) {
    return gamma_integral_theta_ + theta_ * poly_integral(blend_, (s - theta_) / theta_);
  }
  return gamma_integral_theta_ + blend_integral_full_ + tail_ * (s - 2.0 * theta_);
}

double TruncationSpec::g_divided_m(double t1, double t2) const {
  const double gap = std::abs(t1 - t2);
  const double scale = std::max({1.0, t1, t2});
  if (gap > kGDividedBranchEps * scale) {
    return (gamma_integral_m(t1) - gamma_integral_m(t2)) / (t1 - t2);
  }
  return gamma_m(0.5 * (t1 + t2));
}

double mass(const FeField& field, const SparseComplexMatrix& massmat) {
  return (field.values.dot(massmat * field.values)).real();
}

double l2_norm(const FeField& field, const SparseComplexMatrix& massmat) {
  return std::sqrt(std::max(0.0, mass(field, massmat)));
}

}  // namespace nlscn
