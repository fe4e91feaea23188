// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

#include "nlscn/types.hpp"

namespace nlscn {

/// Symmetric triangle quadrature in barycentric coordinates. Weights are
/// normalized to sum to 1 and are scaled by the element area on use.
struct Quadrature {
  struct Point {
    std::array<double, 3> bary;
    double weight;
  };

  std::vector<Point> points;
  int degree = 0;

  /// 6-point Dunavant rule, exact through polynomial degree 4.
  static const Quadrature& degree4();
  /// 12-point Dunavant rule, exact through polynomial degree 6.
  static const Quadrature& degree6();
};

}  // namespace nlscn
