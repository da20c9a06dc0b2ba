#include "convexlab/intrinsic_volumes.hpp"

#include "convexlab/numeric.hpp"
#include "convexlab/parallel.hpp"
#include "convexlab/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace convexlab {

std::string to_string(IVMethod m) {
  switch (m) {
    case IVMethod::ExactPolygon:
      return "exact-polygon";
    case IVMethod::ExactPoly3:
      return "exact-poly3";
    case IVMethod::Polyline:
      return "polyline";
    case IVMethod::Quadrature:
      return "quadrature";
    case IVMethod::KubotaMC:
      return "kubota-mc";
  }
  return "unknown";
}

namespace {

Vec circle_point(double a) {
  Vec d(2);
  d << std::cos(a), std::sin(a);
  return d;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Ordered sum of per-index values computed in parallel.
double parallel_sum(std::size_t n, const std::function<double(std::size_t)>& term) {
  std::vector<double> parts(n);
  parallel_for(n, [&](std::size_t j) { parts[j] = term(j); });
  return std::accumulate(parts.begin(), parts.end(), 0.0);
}

// Minimizes fn(origin + B p) over p in R^m, one coordinate per nesting level.
double nested_convex_min(const std::function<double(const Vec&)>& fn, const Vec& origin, const Mat& b,
                         double tol) {
  const int m = static_cast<int>(b.cols());
  Vec p = Vec::Zero(m);
  std::function<double(int)> level = [&](int d) -> double {
    if (d == m) return fn(origin + b * p);
    auto g = [&](double x) {
      p(d) = x;
      return level(d + 1);
    };
    const auto r = numeric::convex_min_on_line(g, 2.0, tol);
    p(d) = r.first;
    return r.second;
  };
  return level(0);
}

}  // namespace

Polygon boundary_polyline(const ConvexBodyOracle& body2d, int n_points) {
  if (body2d.dim != 2) throw std::invalid_argument("boundary_polyline: body must be 2-dimensional");
  if (n_points < 64 || !is_power_of_two(n_points))
    throw std::invalid_argument("boundary_polyline: N must be a power of two >= 64");
  Polygon q;
  q.vertices.resize(n_points);
  parallel_for(static_cast<std::size_t>(n_points), [&](std::size_t j) {
    const Vec d = circle_point(2.0 * kPi * static_cast<double>(j) / n_points);
    const double r = body2d.radial(d);
    q.vertices[j] = Vec2(r * d(0), r * d(1));
  });
  return q;
}

PlanarEstimate planar_metrics_from_oracle(const ConvexBodyOracle& body2d, int n_points) {
  const Polygon fine = boundary_polyline(body2d, n_points);
  Polygon coarse;
  for (int j = 0; j < n_points; j += 2) coarse.vertices.push_back(fine.vertices[j]);
  const PlanarMetrics mf = polygon_metrics(fine);
  const PlanarMetrics mc = polygon_metrics(coarse);
  PlanarEstimate e;
  e.v1 = {1, mf.perimeter / 2.0, std::abs(mf.perimeter - mc.perimeter) / 6.0, IVMethod::Polyline, n_points};
  e.v2 = {2, mf.area, std::abs(mf.area - mc.area) / 3.0, IVMethod::Polyline, n_points};
  return e;
}

double support_from_radial(const ConvexBodyOracle& body, const Vec& xi, double tol) {
  if (static_cast<int>(xi.size()) != body.dim) throw std::invalid_argument("support_from_radial: dimension mismatch");
  const Vec u = unit(xi);
  const Mat b = Subspace::complement(u).basis();
  auto gauge = [&](const Vec& y) {
    const double len = y.norm();
    return len / body.radial(y / len);
  };
  return 1.0 / nested_convex_min(gauge, u, b, tol);
}

double radial_from_support(const SupportFn& h, int dim, const Vec& theta, double tol) {
  if (static_cast<int>(theta.size()) != dim) throw std::invalid_argument("radial_from_support: dimension mismatch");
  const Vec u = unit(theta);
  const Mat b = Subspace::complement(u).basis();
  auto hom = [&](const Vec& y) {
    const double len = y.norm();
    return len * h(y / len);
  };
  return nested_convex_min(hom, u, b, tol);
}

IVEstimate volume_radial(const std::function<double(const Vec&)>& radial, int k, const VolumeQuadrature& q) {
  IVEstimate e;
  e.index = k;
  e.method = IVMethod::Quadrature;
  if (k == 2) {
    const int n = q.circle_points;
    std::vector<double> r2(n);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t j) {
      const double r = radial(circle_point(2.0 * kPi * static_cast<double>(j) / n));
      r2[j] = r * r;
    });
    double fine = 0.0;
    double coarse = 0.0;
    for (int j = 0; j < n; ++j) {
      fine += r2[j];
      if (j % 2 == 0) coarse += r2[j];
    }
    fine *= kPi / n;
    coarse *= 2.0 * kPi / n;
    e.value = fine;
    e.std_error = std::abs(fine - coarse) / 3.0;
    e.samples = n;
  } else if (k == 3) {
    auto lattice_volume = [&](int count) {
      const std::vector<Vec> nodes = fibonacci_sphere(count);
      const double s = parallel_sum(nodes.size(), [&](std::size_t j) { return std::pow(radial(nodes[j]), 3); });
      return 4.0 * kPi / 3.0 * s / count;
    };
    const double fine = lattice_volume(q.lattice_points);
    const double coarse = lattice_volume(q.lattice_points / 2);
    e.value = fine;
    e.std_error = std::abs(fine - coarse);
    e.samples = q.lattice_points;
  } else {
    constexpr int kChunk = 1000;
    const int chunks = std::max(1, q.mc_samples / kChunk);
    std::vector<double> s1(chunks);
    std::vector<double> s2(chunks);
    parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c) {
      RngStream rng(q.seed, c);
      double a = 0.0;
      double b = 0.0;
      for (int j = 0; j < kChunk; ++j) {
        const double v = std::pow(radial(rng.direction(k)), k);
        a += v;
        b += v * v;
      }
      s1[c] = a;
      s2[c] = b;
    });
    const double m = static_cast<double>(chunks) * kChunk;
    const double mean = std::accumulate(s1.begin(), s1.end(), 0.0) / m;
    const double var = std::max(0.0, (std::accumulate(s2.begin(), s2.end(), 0.0) / m - mean * mean) * m / (m - 1));
    e.value = kappa(k) * mean;
    e.std_error = kappa(k) * std::sqrt(var / m);
    e.samples = static_cast<long>(m);
  }
  return e;
}

IVEstimate volume_radial(const ConvexBodyOracle& body, const VolumeQuadrature& q) {
  return volume_radial(body.radial, body.dim, q);
}

double kubota_constant(int k, int i) {
  if (i < 0 || i > k) throw std::invalid_argument("kubota_constant: need 0 <= i <= k");
  return binomial(k, i) * kappa(k) / (kappa(i) * kappa(k - i));
}

double ball_intrinsic_volume(int k, int i) {
  if (i < 0 || i > k) throw std::invalid_argument("ball_intrinsic_volume: need 0 <= i <= k");
  return binomial(k, i) * kappa(k) / kappa(k - i);
}

double area_from_support_2d(const SupportFn& h, int n_points) {
  if (n_points < 8) throw std::invalid_argument("area_from_support_2d: too few points");
  std::vector<double> v(n_points);
  parallel_for(static_cast<std::size_t>(n_points), [&](std::size_t j) {
    v[j] = h(circle_point(2.0 * kPi * static_cast<double>(j) / n_points));
  });
  const double step = 2.0 * kPi / n_points;
  double sum = 0.0;
  for (int j = 0; j < n_points; ++j) {
    const double d = (v[(j + 1) % n_points] - v[(j + n_points - 1) % n_points]) / (2.0 * step);
    sum += v[j] * v[j] - d * d;
  }
  const double area = 0.5 * sum * step;
  if (!(area > 0.0)) throw GeometryError("area_from_support_2d: non-positive area (support not convex or too noisy)");
  return area;
}

double steiner_disc_area(const Polygon& q, double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("steiner_disc_area: eps must be nonnegative");
  const PlanarMetrics m = polygon_metrics(q);
  return m.area + m.perimeter * eps + kPi * eps * eps;
}

IVEstimate exact_poly3(const HPolytope& p, int i) {
  if (p.dim != 3 || i < 1 || i > 3) throw std::invalid_argument("exact_poly3: need a 3-polytope and 1 <= i <= 3");
  const Poly3Volumes v = poly3_intrinsic_volumes(p);
  const double value = i == 1 ? v.v1 : (i == 2 ? v.v2 : v.v3);
  return {i, value, 0.0, IVMethod::ExactPoly3, 0};
}

IVEstimate kubota_intrinsic_volume(const ConvexBodyOracle& body, int i, const KubotaOptions& opt) {
  const int k = body.dim;
  if (i < 1 || i > k) throw std::invalid_argument("kubota_intrinsic_volume: need 1 <= i <= k");
  if (i == k) {
    VolumeQuadrature q;
    q.seed = opt.seed;
    return volume_radial(body, q);
  }
  if (opt.subspaces < 2) throw std::invalid_argument("kubota_intrinsic_volume: need at least two subspaces");
  const int m = opt.subspaces;
  std::vector<double> vols(m);
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t j) {
    RngStream rng(opt.seed, j);
    const Subspace v = sample_haar_subspace(k, i, rng);
    auto h = [&](const Vec& u) { return body.support(v.embed(u)); };
    if (i == 1) {
      const Vec d = v.basis().col(0);
      vols[j] = body.support(d) + body.support(-d);
    } else if (i == 2) {
      if (body.is_polytope()) vols[j] = polygon_metrics(projection_polygon(body.polytope->vrep, v)).area;
      else vols[j] = area_from_support_2d(h, opt.area_points);
    } else {
      VolumeQuadrature q;
      q.lattice_points = opt.lattice_points;
      q.mc_samples = opt.lattice_points;
      q.seed = derive_seed(opt.seed, j);
      vols[j] = volume_radial([&](const Vec& theta) { return radial_from_support(h, i, theta); }, i, q).value;
    }
  });
  const double c = kubota_constant(k, i);
  const double mean = std::accumulate(vols.begin(), vols.end(), 0.0) / m;
  double ss = 0.0;
  for (double x : vols) ss += (x - mean) * (x - mean);
  IVEstimate e;
  e.index = i;
  e.value = c * mean;
  e.std_error = c * std::sqrt(ss / (m - 1) / m);
  e.method = IVMethod::KubotaMC;
  e.samples = m;
  return e;
}

namespace {

struct PoleFrame {
  Vec xi;
  Vec e1;
  Vec e2;
  Vec dir(double alpha, double phi) const {
    return std::cos(alpha) * xi + std::sin(alpha) * (std::cos(phi) * e1 + std::sin(phi) * e2);
  }
};

// Root of rho(alpha) cos(alpha) = level on [lo, hi]; sign changes once.
double crease_angle(const ConvexBodyOracle& body, const PoleFrame& f, double phi, double level, double lo,
                    double hi) {
  auto g = [&](double a) { return body.radial(f.dir(a, phi)) * std::cos(a) - level; };
  const bool lo_positive = g(lo) > 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((g(mid) > 0.0) == lo_positive) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double slab_band_rule(const ConvexBodyOracle& body, const PoleFrame& f, double t, int i, int n_phi, int n_alpha) {
  const numeric::QuadratureRule gl = numeric::gauss_legendre(n_alpha);
  const double dphi = 2.0 * kPi / n_phi;
  constexpr double kDiff = 1e-5;
  const double total = parallel_sum(static_cast<std::size_t>(n_phi), [&](std::size_t j) {
    const double phi = dphi * static_cast<double>(j);
    const double a_top = crease_angle(body, f, phi, t, 0.0, kPi / 2.0);
    const double a_bot = crease_angle(body, f, phi, -t, kPi / 2.0, kPi);
    const double half = 0.5 * (a_bot - a_top);
    const double mid = 0.5 * (a_bot + a_top);
    double band = 0.0;
    for (int q = 0; q < n_alpha; ++q) {
      const double a = mid + half * gl.nodes[q];
      const double w = half * gl.weights[q];
      const double r = body.radial(f.dir(a, phi));
      if (i == 3) {
        band += w * r * r * r * std::sin(a) / 3.0;
      } else {
        const double ra = (body.radial(f.dir(a + kDiff, phi)) - body.radial(f.dir(a - kDiff, phi))) / (2.0 * kDiff);
        const double rp =
            (body.radial(f.dir(a, phi + kDiff)) - body.radial(f.dir(a, phi - kDiff))) / (2.0 * kDiff);
        const double s = std::sin(a);
        band += w * r * std::sqrt(r * r + ra * ra + rp * rp / (s * s)) * s;
      }
    }
    const double ct = std::cos(a_top);
    const double cb = std::cos(a_bot);
    if (i == 3) return band + t * t * t / 6.0 * (1.0 / (ct * ct) - 1.0 + 1.0 / (cb * cb) - 1.0);
    const double tt = std::tan(a_top);
    const double tb = std::tan(a_bot);
    return band + 0.5 * t * t * (tt * tt + tb * tb);
  });
  const double integral = total * dphi;
  return i == 3 ? integral : integral / 2.0;
}

double slab_mean_width_rule(const SupportFn& h, const PoleFrame& f, int n_phi, int n_alpha) {
  const numeric::QuadratureRule gl = numeric::gauss_legendre(n_alpha);
  const double dphi = 2.0 * kPi / n_phi;
  const double total = parallel_sum(static_cast<std::size_t>(n_phi) * n_alpha, [&](std::size_t idx) {
    const double phi = dphi * static_cast<double>(idx / n_alpha);
    const int q = static_cast<int>(idx % n_alpha);
    const double a = kPi / 2.0 * (1.0 + gl.nodes[q]);
    return kPi / 2.0 * gl.weights[q] * std::sin(a) * h(f.dir(a, phi));
  });
  return total * dphi / kPi;
}

}  // namespace

IVEstimate smooth_slab_intrinsic_volume(const ConvexBodyOracle& body, const Vec& xi, double t, int i,
                                        const SlabQuadrature& q) {
  if (body.dim != 3) throw std::invalid_argument("smooth_slab_intrinsic_volume: body must be 3-dimensional");
  if (i < 1 || i > 3) throw std::invalid_argument("smooth_slab_intrinsic_volume: need 1 <= i <= 3");
  PoleFrame f;
  f.xi = unit(xi);
  const Mat b = Subspace::complement(f.xi).basis();
  f.e1 = b.col(0);
  f.e2 = b.col(1);
  double fine = 0.0;
  double coarse = 0.0;
  long nodes = 0;
  if (i == 1) {
    const ConvexBodyOracle slab = slab_oracle(body, {f.xi, t});
    fine = slab_mean_width_rule(slab.support, f, q.support_azimuth, q.support_polar);
    coarse = slab_mean_width_rule(slab.support, f, q.support_azimuth / 2, q.support_polar / 2);
    nodes = static_cast<long>(q.support_azimuth) * q.support_polar;
  } else {
    fine = slab_band_rule(body, f, t, i, q.azimuth, q.polar);
    coarse = slab_band_rule(body, f, t, i, q.azimuth / 2, q.polar / 2);
    nodes = static_cast<long>(q.azimuth) * q.polar;
  }
  return {i, fine, std::abs(fine - coarse), IVMethod::Quadrature, nodes};
}

}  // namespace convexlab
