// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "nlscn/assembly.hpp"
#include "nlscn/mesh.hpp"

using namespace nlscn;

namespace {

const Rect kSquare{-6.0, -6.0, 6.0, 6.0};

ComplexVector random_field(int size, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(size);
  for (int i = 0; i < size; ++i) v[i] = Complex(normal(rng), normal(rng));
  return v;
}

}  // namespace

TEST_CASE("level 0 has a single cell with boundary-only nodes") {
  const MeshPtr mesh = build_uniform_mesh(kSquare, 0);
  CHECK(mesh->num_triangles() == 2);
  CHECK(mesh->num_nodes() == 4);
  CHECK(mesh->num_interior() == 0);
}

TEST_CASE("level 2 counts") {
  const MeshPtr mesh = build_uniform_mesh(kSquare, 2);
  CHECK(mesh->num_triangles() == 32);
  CHECK(mesh->num_nodes() == 25);
  CHECK(mesh->num_interior() == 9);
}

TEST_CASE("level 6 diameter and node count") {
  const MeshPtr mesh = build_uniform_mesh(kSquare, 6);
  CHECK(mesh->num_nodes() == 4225);
  CHECK(mesh->h() == doctest::Approx(12.0 * std::sqrt(2.0) / 64.0).epsilon(1e-14));
}

TEST_CASE("counting identities hold through level 8") {
  for (int level = 0; level <= 8; ++level) {
    const MeshPtr mesh = build_uniform_mesh(kSquare, level);
    const long n = 1L << level;
    CHECK(mesh->num_nodes() == (n + 1) * (n + 1));
    CHECK(mesh->num_triangles() == 2 * n * n);
    CHECK(mesh->num_interior() == (n - 1) * (n - 1));
  }
}

TEST_CASE("triangles are positively oriented with area (side/n)^2 / 2") {
  for (int level : {1, 3, 5}) {
    const MeshPtr mesh = build_uniform_mesh(kSquare, level);
    const double side = 12.0 / (1 << level);
    for (int t = 0; t < mesh->num_triangles(); ++t) {
      const auto& tri = mesh->triangle(t);
      const Eigen::Vector2d a = mesh->node(tri[0]);
      const Eigen::Vector2d b = mesh->node(tri[1]);
      const Eigen::Vector2d c = mesh->node(tri[2]);
      const double signed_area =
          0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x()));
      REQUIRE(signed_area == doctest::Approx(side * side / 2.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("node sets nest across levels") {
  const MeshPtr coarse = build_uniform_mesh(kSquare, 3);
  const MeshPtr fine = build_uniform_mesh(kSquare, 4);
  for (int i = 0; i < coarse->num_nodes(); ++i) {
    const Eigen::Vector2d x = coarse->node(i);
    // every coarse node maps to the fine node with doubled grid indices
    const int ci = i % (coarse->cells_per_side() + 1);
    const int cj = i / (coarse->cells_per_side() + 1);
    const Eigen::Vector2d y = fine->node(fine->node_index(2 * ci, 2 * cj));
    REQUIRE(x.x() == doctest::Approx(y.x()).epsilon(1e-15));
    REQUIRE(x.y() == doctest::Approx(y.y()).epsilon(1e-15));
  }
}

TEST_CASE("boundary nodes carry no interior dof") {
  const MeshPtr mesh = build_uniform_mesh(kSquare, 3);
  int interior_seen = 0;
  for (int i = 0; i < mesh->num_nodes(); ++i) {
    if (mesh->is_boundary_node(i)) {
      CHECK(mesh->interior_index(i) == -1);
    } else {
      CHECK(mesh->interior_index(i) >= 0);
      ++interior_seen;
    }
  }
  CHECK(interior_seen == mesh->num_interior());
}

TEST_CASE("invalid domains are rejected") {
  CHECK_THROWS_AS(build_uniform_mesh({0.0, 0.0, 0.0, 1.0}, 2), MeshError);
  CHECK_THROWS_AS(build_uniform_mesh({0.0, 2.0, 1.0, 1.0}, 2), MeshError);
  CHECK_THROWS_AS(build_uniform_mesh(kSquare, -1), MeshError);
}

TEST_CASE("prolongation to the same level is the identity") {
  const MeshPtr mesh = build_uniform_mesh(kSquare, 3);
  const FeField field(mesh, random_field(mesh->num_interior(), 11));
  const FeField same = prolongate(field, mesh);
  CHECK((same.values - field.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("hat function prolongates to 1 at the node and 1/2 on incident edges") {
  const MeshPtr coarse = build_uniform_mesh(kSquare, 1);
  REQUIRE(coarse->num_interior() == 1);
  ComplexVector hat(1);
  hat[0] = 1.0;
  const MeshPtr fine = build_uniform_mesh(kSquare, 2);
  const FeField fine_field = prolongate(FeField(coarse, hat), fine);

  const auto value_at = [&](double x, double y) {
    const int i = static_cast<int>(std::lround((x + 6.0) / 3.0));
    const int j = static_cast<int>(std::lround((y + 6.0) / 3.0));
    const int dof = fine->interior_index(fine->node_index(i, j));
    REQUIRE(dof >= 0);
    return fine_field.values[dof].real();
  };

  CHECK(value_at(0.0, 0.0) == doctest::Approx(1.0));
  // midpoints of the six coarse edges meeting the center node
  CHECK(value_at(3.0, 0.0) == doctest::Approx(0.5));
  CHECK(value_at(-3.0, 0.0) == doctest::Approx(0.5));
  CHECK(value_at(0.0, 3.0) == doctest::Approx(0.5));
  CHECK(value_at(0.0, -3.0) == doctest::Approx(0.5));
  CHECK(value_at(3.0, 3.0) == doctest::Approx(0.5));
  CHECK(value_at(-3.0, -3.0) == doctest::Approx(0.5));
  // cell midpoints on the diagonals that avoid the center
  CHECK(value_at(3.0, -3.0) == doctest::Approx(0.0));
  CHECK(value_at(-3.0, 3.0) == doctest::Approx(0.0));
}

TEST_CASE("prolongation preserves L2 norm and H1 seminorm") {
  for (int level = 1; level <= 5; ++level) {
    const MeshPtr coarse = build_uniform_mesh(kSquare, level);
    const MeshPtr fine = build_uniform_mesh(kSquare, std::min(level + 2, 6));
    const FeField field(coarse, random_field(coarse->num_interior(), 100 + level));
    const FeField lifted = prolongate(field, fine);

    const SparseComplexMatrix mc = assemble_mass(*coarse);
    const SparseComplexMatrix mf = assemble_mass(*fine);
    const double l2c = mass(field, mc);
    const double l2f = mass(lifted, mf);
    CHECK(std::abs(l2c - l2f) <= 1e-12 * l2c);

    const SparseComplexMatrix kc = assemble_stiffness(*coarse);
    const SparseComplexMatrix kf = assemble_stiffness(*fine);
    const double h1c = h1_seminorm_sq(field, kc);
    const double h1f = h1_seminorm_sq(lifted, kf);
    CHECK(std::abs(h1c - h1f) <= 1e-12 * h1c);
  }
}

TEST_CASE("prolongation rejects mismatched domains and coarser targets") {
  const MeshPtr mesh = build_uniform_mesh(kSquare, 3);
  const FeField field(mesh, ComplexVector::Zero(mesh->num_interior()));
  CHECK_THROWS_AS(prolongate(field, build_uniform_mesh({0, 0, 1, 1}, 4)), MeshError);
  CHECK_THROWS_AS(prolongate(field, build_uniform_mesh(kSquare, 2)), MeshError);
}

TEST_CASE("rectangular domains are accepted") {
  const MeshPtr mesh = build_uniform_mesh({0.0, 0.0, 4.0, 2.0}, 2);
  CHECK(mesh->num_interior() == 9);
  CHECK(mesh->h() == doctest::Approx(std::hypot(1.0, 0.5)));
  const SparseComplexMatrix m = assemble_mass(*mesh, NodeSet::All);
  Complex total = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseComplexMatrix::InnerIterator it(m, k); it; ++it) total += it.value();
  }
  CHECK(total.real() == doctest::Approx(8.0).epsilon(1e-13));
}
