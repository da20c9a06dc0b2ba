#include "doctest.h"

#include "convexlab/bodies.hpp"
#include "convexlab/polytope.hpp"

#include <cmath>

using namespace convexlab;

namespace {

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

}  // namespace

TEST_CASE("hpolytope validation") {
  CHECK_THROWS(make_hpolytope(2, {{Vec::Zero(2), 1.0}}));
  Vec e(2);
  e << 1, 0;
  CHECK_THROWS(make_hpolytope(2, {{e, -1.0}}));
  CHECK_THROWS(make_hpolytope(2, {{e, 1.0}, {2.0 * e, 2.0}}));
  CHECK_FALSE(is_bounded(2, {{e, 1.0}, {-e, 1.0}}));
  CHECK_THROWS_AS(enumerate_vertices(make_hpolytope(2, {{e, 1.0}, {-e, 1.0}})), GeometryError);
}

TEST_CASE("box closed forms") {
  const auto cube = poly3_intrinsic_volumes(make_box({1.0, 1.0, 1.0}));
  CHECK(std::abs(cube.v1 - 6.0) < 1e-12);
  CHECK(std::abs(cube.v2 - 12.0) < 1e-12);
  CHECK(std::abs(cube.v3 - 8.0) < 1e-12);
  CHECK(cube.vertices == 8);
  CHECK(cube.edges == 12);
  CHECK(cube.faces == 6);
  const auto flat = poly3_intrinsic_volumes(make_box({1.0, 1.0, 0.5}));
  CHECK(std::abs(flat.v1 - 5.0) < 1e-12);
  CHECK(std::abs(flat.v2 - 8.0) < 1e-12);
  CHECK(std::abs(flat.v3 - 4.0) < 1e-12);
}

TEST_CASE("regular tetrahedron: V1 from edges and dihedral angles") {
  // vertices (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1); facet normals -vertex/sqrt3 at offset 1/sqrt3
  std::vector<Facet> f;
  for (const auto& w : {v3(1, 1, 1), v3(1, -1, -1), v3(-1, 1, -1), v3(-1, -1, 1)}) f.push_back({-w / std::sqrt(3.0), 1.0 / std::sqrt(3.0)});
  const auto t = poly3_intrinsic_volumes(make_hpolytope(3, f));
  const double edge = 2.0 * std::sqrt(2.0);
  const double exterior = kPi - std::acos(1.0 / 3.0);
  CHECK(std::abs(t.v1 - 6.0 * edge * exterior / (2.0 * kPi)) < 1e-12);
  CHECK(std::abs(t.v3 - edge * edge * edge / (6.0 * std::sqrt(2.0))) < 1e-12);
  CHECK(std::abs(t.v2 - std::sqrt(3.0) * edge * edge / 2.0) < 1e-12);
}

TEST_CASE("euler relation for the constructed pairs") {
  const auto c = build_polytope_pair({1.0, 1.2, 1.5}, {1, 1, 1}, {1, 1, -1});
  for (const auto* p : {&c.K, &c.L}) {
    const auto v = poly3_intrinsic_volumes(*p);
    CHECK(v.vertices - v.edges + v.faces == 2);
    CHECK(v.vertices == 12);
    CHECK(v.faces == 8);
  }
  const auto k = poly3_intrinsic_volumes(c.K);
  const auto l = poly3_intrinsic_volumes(c.L);
  CHECK(std::abs(k.v1 - l.v1) < 1e-12);
  CHECK(std::abs(k.v2 - l.v2) < 1e-12);
  CHECK(std::abs(k.v3 - l.v3) < 1e-12);
}

TEST_CASE("steiner formula in 3D against Monte Carlo on the distance function") {
  const auto c = build_polytope_pair({1.0, 1.2, 1.5}, {1, 1, 1}, {1, 1, -1});
  const VRep vr = enumerate_vertices(c.K);
  const auto iv = poly3_intrinsic_volumes(c.K, vr);
  const Poly3Distance dist(c.K, vr);
  const double eps = 0.3;
  const double exact = iv.v3 + 2.0 * iv.v2 * eps + kPi * iv.v1 * eps * eps + 4.0 * kPi / 3.0 * eps * eps * eps;
  const double half[3] = {1.0 + eps, 1.2 + eps, 1.5 + eps};
  const double box = 8.0 * half[0] * half[1] * half[2];
  RngStream rng(41, 0);
  const int m = 1000000;
  int hits = 0;
  for (int j = 0; j < m; ++j) {
    const Vec x = v3(rng.uniform(-half[0], half[0]), rng.uniform(-half[1], half[1]), rng.uniform(-half[2], half[2]));
    hits += dist(x) <= eps;
  }
  const double p = static_cast<double>(hits) / m;
  const double sigma = box * std::sqrt(p * (1 - p) / m);
  CHECK(std::abs(box * p - exact) <= 4.0 * sigma);
}

TEST_CASE("distance function basics") {
  const HPolytope cube = make_box({1.0, 1.0, 1.0});
  const Poly3Distance d(cube, enumerate_vertices(cube));
  CHECK(d(v3(0.2, 0.1, 0.0)) == 0.0);
  CHECK(std::abs(d(v3(2.0, 0.0, 0.0)) - 1.0) < 1e-14);
  CHECK(std::abs(d(v3(2.0, 2.0, 0.0)) - std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(d(v3(2.0, 2.0, 2.0)) - std::sqrt(3.0)) < 1e-14);
}

TEST_CASE("polygon kernel") {
  Polygon sq{{Vec2(-1, -1), Vec2(1, -1), Vec2(1, 1), Vec2(-1, 1)}};
  auto m = polygon_metrics(sq);
  CHECK(m.area == 4.0);
  CHECK(m.perimeter == 8.0);
  const Polygon half = clip_halfplane(sq, Vec2(1, 0), 0.0);
  CHECK(std::abs(polygon_metrics(half).area - 2.0) < 1e-15);
  const Polygon hull = convex_hull_2d({Vec2(0, 0), Vec2(1, 0), Vec2(0.5, 0.2), Vec2(1, 1), Vec2(0, 1), Vec2(0.5, 0)});
  CHECK(hull.vertices.size() == 4);
  CHECK(polygon_metrics(hull).area == doctest::Approx(1.0));
}

TEST_CASE("section polygon agrees with the radial function") {
  const auto c = build_polytope_pair({1.0, 1.2, 1.5}, {1, 1, 1}, {1, 1, -1});
  RngStream rng(6, 0);
  for (int j = 0; j < 20; ++j) {
    const Subspace h = sample_haar_subspace(3, 2, rng);
    const Polygon q = section_polygon(c.K, h);
    for (const auto& v : q.vertices) {
      Vec u(2);
      u << v.x(), v.y();
      const double r = u.norm();
      CHECK(std::abs(polytope_radial(c.K, h.embed(u / r)) - r) < 1e-9);
    }
    // points just inside the radial boundary belong to the body
    for (int s = 0; s < 50; ++s) {
      const double a = 2.0 * kPi * s / 50;
      Vec u(2);
      u << std::cos(a), std::sin(a);
      const double r = polytope_radial(c.K, h.embed(u));
      CHECK(polytope_member(c.K, h.embed((r - 1e-9) * u)));
    }
  }
}

TEST_CASE("rigid motions of H-representations") {
  const HPolytope cube = make_box({1.0, 2.0, 3.0});
  Mat q = Mat::Zero(3, 3);
  q(0, 1) = -1;
  q(1, 0) = 1;
  q(2, 2) = 1;
  const HPolytope r = rotated(cube, q);
  CHECK(polytope_member(r, v3(-1.9, 0.9, 2.9)));
  CHECK_FALSE(polytope_member(r, v3(0.0, 1.9, 0.0)));
  const HPolytope t = translated(cube, v3(0.5, 0.0, 0.0));
  CHECK(polytope_member(t, v3(-1.4, 0.0, 0.0)));
  CHECK_FALSE(polytope_member(t, v3(0.6, 0.0, 0.0)));
  CHECK_THROWS(translated(cube, v3(1.5, 0.0, 0.0)));
  CHECK(std::abs(poly3_intrinsic_volumes(scaled(cube, 2.0)).v3 - 8.0 * 48.0) < 1e-9);
}
