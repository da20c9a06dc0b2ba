#include "doctest.h"

#include "convexlab/linalg.hpp"
#include "convexlab/numeric.hpp"

#include <cmath>

using namespace convexlab;

TEST_CASE("gamma and ball volumes") {
  for (double x : {0.5, 1.0, 1.5, 2.5, 3.7, 7.0}) CHECK(std::abs(gamma_fn(x) - std::tgamma(x)) <= 1e-12 * std::tgamma(x));
  CHECK(std::abs(kappa(1) - 2.0) < 1e-14);
  CHECK(std::abs(kappa(2) - kPi) < 1e-14);
  CHECK(std::abs(kappa(3) - 4.0 * kPi / 3.0) < 1e-13);
  CHECK(std::abs(kappa(4) - kPi * kPi / 2.0) < 1e-13);
  CHECK(kappa(0) == doctest::Approx(1.0));
  CHECK(binomial(4, 2) == 6.0);
  CHECK(binomial(8, 0) == 1.0);
}

TEST_CASE("unit rejects zero") {
  CHECK_THROWS_AS(unit(Vec::Zero(3)), std::invalid_argument);
  Vec v(2);
  v << 3.0, 4.0;
  CHECK(std::abs(unit(v)(0) - 0.6) < 1e-15);
}

TEST_CASE("rng streams are pure functions of seed and index") {
  RngStream a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  bool differ_c = false, differ_d = false;
  for (int j = 0; j < 100; ++j) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    differ_c |= x != c.uniform();
    differ_d |= x != d.uniform();
  }
  CHECK(differ_c);
  CHECK(differ_d);
}

TEST_CASE("uniform and normal moments") {
  RngStream rng(11, 0);
  const int m = 200000;
  double su = 0, su2 = 0, sn = 0, sn2 = 0;
  for (int j = 0; j < m; ++j) {
    const double u = rng.uniform();
    CHECK((u >= 0.0 && u < 1.0));
    su += u;
    su2 += u * u;
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
  }
  CHECK(std::abs(su / m - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / m));
  CHECK(std::abs(su2 / m - 1.0 / 3.0) < 0.005);
  CHECK(std::abs(sn / m) < 4.0 / std::sqrt(m));
  CHECK(std::abs(sn2 / m - 1.0) < 4.0 * std::sqrt(2.0 / m));
}

TEST_CASE("directions are unit and centered") {
  RngStream rng(5, 1);
  Vec mean = Vec::Zero(4);
  const int m = 50000;
  for (int j = 0; j < m; ++j) {
    const Vec d = rng.direction(4);
    CHECK(std::abs(d.norm() - 1.0) < 1e-14);
    mean += d;
  }
  mean /= m;
  // each coordinate has variance 1/4
  CHECK(mean.cwiseAbs().maxCoeff() < 5.0 * 0.5 / std::sqrt(m));
}

TEST_CASE("subspace construction and validation") {
  Mat bad(3, 2);
  bad << 1, 1, 0, 0, 0, 1;
  CHECK_THROWS_AS(Subspace{bad}, std::invalid_argument);
  const Subspace s = Subspace::span(bad);
  CHECK((s.basis().transpose() * s.basis()).isIdentity(1e-12));
  CHECK(s.basis()(0, 0) > 0.0);
  const Subspace c = Subspace::coordinate(4, {1, 3});
  Vec x(4);
  x << 1, 2, 3, 4;
  CHECK(c.coords(x)(0) == 2.0);
  CHECK(c.coords(x)(1) == 4.0);
  CHECK_THROWS_AS(c.embed(x), std::invalid_argument);
  Vec nu(3);
  nu << 1, 2, 2;
  const Subspace comp = Subspace::complement(nu);
  CHECK(comp.dim() == 2);
  CHECK((comp.basis().transpose() * unit(nu)).norm() < 1e-14);
}

TEST_CASE("haar subspaces: orthonormal with mean projector (k/n) I") {
  for (auto [n, k] : {std::pair{3, 1}, std::pair{3, 2}, std::pair{4, 2}, std::pair{5, 3}}) {
    RngStream rng(99, static_cast<std::uint64_t>(n * 10 + k));
    Mat mean = Mat::Zero(n, n);
    const int m = 20000;
    for (int j = 0; j < m; ++j) {
      const Subspace s = sample_haar_subspace(n, k, rng);
      CHECK((s.basis().transpose() * s.basis()).isIdentity(1e-12));
      mean += s.projector();
    }
    mean /= m;
    const Mat target = Mat::Identity(n, n) * (static_cast<double>(k) / n);
    CHECK((mean - target).cwiseAbs().maxCoeff() < 0.02);
  }
}

TEST_CASE("haar planes in R^3: normal is uniform on the sphere") {
  // The squared normal component along e3 is uniform on [0, 1] for a Haar plane.
  RngStream rng(3, 0);
  const int m = 40000;
  int below = 0;
  for (int j = 0; j < m; ++j) {
    const Subspace s = sample_haar_subspace(3, 2, rng);
    const Vec e3 = basis_vector(3, 2);
    const double c = (e3 - s.projector() * e3).norm();
    below += c < 0.5;
  }
  CHECK(std::abs(static_cast<double>(below) / m - 0.5) < 4.0 * 0.5 / std::sqrt(m));
}

TEST_CASE("fibonacci lattice integrates low-degree polynomials") {
  const auto pts = fibonacci_sphere(100000);
  double z2 = 0, x = 0;
  for (const auto& p : pts) {
    CHECK(std::abs(p.norm() - 1.0) < 1e-14);
    z2 += p(2) * p(2);
    x += p(0);
  }
  CHECK(std::abs(z2 / pts.size() - 1.0 / 3.0) < 1e-6);
  CHECK(std::abs(x / pts.size()) < 1e-4);
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  const auto r = numeric::gauss_legendre(12);
  for (int p = 0; p <= 23; ++p) {
    double s = 0.0;
    for (std::size_t j = 0; j < r.nodes.size(); ++j) s += r.weights[j] * std::pow(r.nodes[j], p);
    const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
    CHECK(std::abs(s - exact) < 1e-14);
  }
}

TEST_CASE("golden section on convex and unimodal functions") {
  auto r = numeric::golden_max([](double x) { return -(x - 0.3) * (x - 0.3); }, -1.0, 1.0, 1e-12);
  CHECK(std::abs(r.first - 0.3) < 1e-9);
  auto m = numeric::convex_min_on_line([](double x) { return std::abs(x - 37.0) + 1.0; }, 1.0, 1e-11);
  CHECK(std::abs(m.second - 1.0) < 1e-9);
}
