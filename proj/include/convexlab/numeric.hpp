#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace convexlab::numeric {

inline constexpr double kInvPhi = 0.6180339887498949;

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
/// Returns (argmax, max); the endpoints are not evaluated.
template <class Fn>
std::pair<double, double> golden_max(Fn&& g, double lo, double hi, double tol) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double gc = g(c);
  double gd = g(d);
  while (b - a > tol) {
    if (gc >= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - kInvPhi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + kInvPhi * (b - a);
      gd = g(d);
    }
  }
  return gc >= gd ? std::make_pair(c, gc) : std::make_pair(d, gd);
}

template <class Fn>
std::pair<double, double> golden_min(Fn&& g, double lo, double hi, double tol) {
  auto r = golden_max([&](double x) { return -g(x); }, lo, hi, tol);
  return {r.first, -r.second};
}

/// Minimum of a convex function on the real line. The bracket [-reach, reach]
/// is widened until the minimizer sits away from its ends.
template <class Fn>
std::pair<double, double> convex_min_on_line(Fn&& g, double reach, double tol) {
  for (int attempt = 0; attempt < 40; ++attempt, reach *= 4.0) {
    auto r = golden_min(g, -reach, reach, tol);
    if (std::abs(r.first) < reach * (1.0 - 1e-6)) return r;
  }
  return golden_min(g, -reach, reach, tol);
}

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton on P_n from Chebyshev guesses).
inline QuadratureRule gauss_legendre(int n) {
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

}  // namespace convexlab::numeric
