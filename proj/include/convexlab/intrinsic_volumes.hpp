#pragma once

#include "convexlab/bodies.hpp"
#include "convexlab/linalg.hpp"
#include "convexlab/polytope.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace convexlab {

enum class IVMethod { ExactPolygon, ExactPoly3, Polyline, Quadrature, KubotaMC };

std::string to_string(IVMethod m);

struct IVEstimate {
  int index = 0;
  double value = 0.0;
  double std_error = 0.0;
  IVMethod method = IVMethod::Quadrature;
  long samples = 0;
};

using SupportFn = std::function<double(const Vec&)>;

/// Vertices rho(theta_j) theta_j at theta_j = 2 pi j / N. N >= 64, a power of two.
Polygon boundary_polyline(const ConvexBodyOracle& body2d, int n_points);

struct PlanarEstimate {
  IVEstimate v1;
  IVEstimate v2;
};

/// V1 = perimeter / 2 and V2 = area of the polyline; std_error is the
/// N vs N/2 Richardson estimate |X_N - X_{N/2}| / 3.
PlanarEstimate planar_metrics_from_oracle(const ConvexBodyOracle& body2d, int n_points = 8192);

/// h(xi) = 1 / min_p ||xi + p||_K over p orthogonal to xi, where the gauge
/// ||y||_K = |y| / rho(y / |y|) is convex. Minimized by nested golden-section
/// line searches; any dimension, intended for 2 and 3.
double support_from_radial(const ConvexBodyOracle& body, const Vec& xi, double tol = 1e-11);

/// rho(theta) = min over w orthogonal to theta of h(theta + w).
double radial_from_support(const SupportFn& h, int dim, const Vec& theta, double tol = 1e-10);

struct VolumeQuadrature {
  int circle_points = 8192;
  int lattice_points = 200000;
  int mc_samples = 200000;
  std::uint64_t seed = 0;
};

/// vol_k = (1/k) int rho^k: trapezoid (k = 2), Fibonacci lattice (k = 3),
/// Monte Carlo kappa_k E[rho^k] otherwise.
IVEstimate volume_radial(const std::function<double(const Vec&)>& radial, int k,
                         const VolumeQuadrature& q = {});
IVEstimate volume_radial(const ConvexBodyOracle& body, const VolumeQuadrature& q = {});

/// C(k,i) kappa_k / (kappa_i kappa_{k-i}).
double kubota_constant(int k, int i);

/// Closed form V_i(B^k) = C(k,i) kappa_k / kappa_{k-i}.
double ball_intrinsic_volume(int k, int i);

struct KubotaOptions {
  int subspaces = 1000;
  std::uint64_t seed = 0;
  int area_points = 1024;
  int lattice_points = 400;
};

/// c_{i,k} times the Haar mean of vol_i(K|V), V in G(k,i). Subspace j uses
/// RngStream(seed, j), so the result does not depend on thread count.
IVEstimate kubota_intrinsic_volume(const ConvexBodyOracle& body, int i, const KubotaOptions& opt);

/// (1/2) int (h^2 - h'^2) d theta with centered differences. Throws
/// GeometryError if the result is not positive.
double area_from_support_2d(const SupportFn& h, int n_points = 8192);

/// area + perimeter eps + pi eps^2.
double steiner_disc_area(const Polygon& q, double eps);

/// Exact V_1, V_2, V_3 of a 3-polytope, tagged ExactPoly3.
IVEstimate exact_poly3(const HPolytope& p, int i);

/// Intrinsic volumes of the slab body K ∩ S_t(xi) for a smooth 3-dimensional
/// star body K. The sphere is parametrized with pole xi; each azimuth has two
/// crease angles where rho cos(alpha) = +-t. Volume and half surface area
/// integrate the band between creases (Gauss-Legendre in alpha) plus the
/// two planar caps in closed form; V1 is (1/pi) times the integral of the
/// slab support function. Trapezoid in azimuth throughout. std_error is the
/// difference against the half-resolution rule.
struct SlabQuadrature {
  int azimuth = 256;
  int polar = 96;
  int support_azimuth = 96;
  int support_polar = 48;
};

IVEstimate smooth_slab_intrinsic_volume(const ConvexBodyOracle& body, const Vec& xi, double t, int i,
                                        const SlabQuadrature& q = {});

}  // namespace convexlab
