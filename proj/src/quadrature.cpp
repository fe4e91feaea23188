// SPDX-License-Identifier: Apache-2.0
#include "nlscn/quadrature.hpp"

namespace nlscn {

namespace {

void push_perm3(std::vector<Quadrature::Point>& pts, double a, double b, double w) {
  const double c = 1.0 - a - b;
  pts.push_back({{a, b, c}, w});
  pts.push_back({{b, c, a}, w});
  pts.push_back({{c, a, b}, w});
}

void push_perm6(std::vector<Quadrature::Point>& pts, double a, double b, double w) {
  const double c = 1.0 - a - b;
  pts.push_back({{a, b, c}, w});
  pts.push_back({{a, c, b}, w});
  pts.push_back({{b, a, c}, w});
  pts.push_back({{b, c, a}, w});
  pts.push_back({{c, a, b}, w});
  pts.push_back({{c, b, a}, w});
}

Quadrature make_degree4() {
  Quadrature q;
  q.degree = 4;
  push_perm3(q.points, 0.108103018168070, 0.445948490915965, 0.223381589678011);
  push_perm3(q.points, 0.816847572980459, 0.091576213509771, 0.109951743655322);
  return q;
}

Quadrature make_degree6() {
  Quadrature q;
  q.degree = 6;
  push_perm3(q.points, 0.501426509658179, 0.249286745170910, 0.116786275726379);
  push_perm3(q.points, 0.873821971016996, 0.063089014491502, 0.050844906370207);
  push_perm6(q.points, 0.053145049844816, 0.310352451033785, 0.082851075618374);
  return q;
}

}  // namespace

const Quadrature& Quadrature::degree4() {
  static const Quadrature q = make_degree4();
  return q;
}

const Quadrature& Quadrature::degree6() {
  static const Quadrature q = make_degree6();
  return q;
}

}  // namespace nlscn
