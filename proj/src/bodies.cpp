#include "convexlab/bodies.hpp"

#include "convexlab/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace convexlab {

std::string to_string(Variant v) { return v == Variant::K ? "K" : "L"; }

double bump(double u, int d) {
  if (std::abs(u) >= 1.0) return 0.0;
  const double s = 1.0 - u * u;
  if (s < 1.0 / 700.0) return 0.0;  // exp(-700) underflows every term
  const double b = std::exp(-1.0 / s);
  switch (d) {
    case 0:
      return b;
    case 1:
      return b * (-2.0 * u / (s * s));
    case 2: {
      const double g1 = -2.0 * u / (s * s);
      const double g2 = -2.0 / (s * s) - 8.0 * u * u / (s * s * s);
      return b * (g1 * g1 + g2);
    }
    default:
      throw std::invalid_argument("bump: derivative order must be 0, 1 or 2");
  }
}

double profile(const RevolutionBodySpec& spec, double t, int order) {
  if (!(std::abs(t) <= 1.0)) throw std::domain_error("profile: |t| > 1");
  if (order < 0 || order > 2) throw std::invalid_argument("profile: order must be 0, 1 or 2");
  const double s = 1.0 - t * t;
  if (order >= 1 && s <= 0.0) throw std::domain_error("profile: derivative is singular at |t| = 1");

  double base = 0.0;
  switch (order) {
    case 0: base = std::sqrt(std::max(0.0, s)); break;
    case 1: base = -t / std::sqrt(s); break;
    default: base = -1.0 / (s * std::sqrt(s)); break;
  }
  if (spec.epsilon == 0.0) return base;

  const double inv_delta = 1.0 / spec.delta;
  const double scale = std::pow(inv_delta, order);
  const double phi = bump((t - kBumpCenterLow) * inv_delta, order) * scale;
  double psi = 0.0;
  if (spec.variant == Variant::K) {
    psi = bump((t - kBumpCenterHigh) * inv_delta, order) * scale;
  } else {
    const double sign = (order % 2 == 1) ? -1.0 : 1.0;
    psi = sign * bump((-t - kBumpCenterHigh) * inv_delta, order) * scale;
  }
  return base + spec.epsilon * (phi + psi);
}

ConcavityReport validate_revolution_spec(const RevolutionBodySpec& spec) {
  constexpr int kGrid = 100000;
  constexpr double kMargin = 1e-6;
  ConcavityReport r;
  r.max_second_derivative = -std::numeric_limits<double>::infinity();
  r.min_profile = std::numeric_limits<double>::infinity();
  const double lo = -1.0 + kMargin;
  const double step = (2.0 - 2.0 * kMargin) / (kGrid - 1);
  for (int j = 0; j < kGrid; ++j) {
    const double t = lo + j * step;
    r.max_second_derivative = std::max(r.max_second_derivative, profile(spec, t, 2));
    r.min_profile = std::min(r.min_profile, profile(spec, t, 0));
  }
  r.ok = r.max_second_derivative <= 0.0 && r.min_profile > 0.0;
  return r;
}

RevolutionBodySpec make_revolution_spec(int n, double epsilon, double delta, Variant variant) {
  if (n < 2 || n > kMaxDim) {
    throw std::invalid_argument("n = " + std::to_string(n) + " violates 2 <= n <= " + std::to_string(kMaxDim));
  }
  if (!(delta > 0.0 && delta < 1.0 / 6.0)) {
    std::ostringstream msg;
    msg << "delta = " << delta << " violates 0 < delta < 1/6";
    throw std::invalid_argument(msg.str());
  }
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    std::ostringstream msg;
    msg << "epsilon = " << epsilon << " violates epsilon >= 0";
    throw std::invalid_argument(msg.str());
  }
  RevolutionBodySpec spec{n, epsilon, delta, variant, epsilon};
  for (int halvings = 0; halvings <= 40; ++halvings) {
    if (validate_revolution_spec(spec).ok) return spec;
    spec.epsilon *= 0.5;
  }
  std::ostringstream msg;
  msg << "epsilon = " << epsilon << ": profile not concave after 40 halvings";
  throw std::invalid_argument(msg.str());
}

RevolutionBodySpec make_ball_spec(int n) { return make_revolution_spec(n, 0.0, kDefaultDelta, Variant::K); }

bool revolution_member(const RevolutionBodySpec& spec, const Vec& x) {
  const int n = spec.n;
  const double xn = x(n - 1);
  if (std::abs(xn) > 1.0) return false;
  const double lateral = x.head(n - 1).norm();
  return lateral <= profile(spec, xn, 0);
}

double revolution_radial(const RevolutionBodySpec& spec, const Vec& theta) {
  const int n = spec.n;
  const double axial = theta(n - 1);
  const double lateral = theta.head(n - 1).norm();
  if (lateral < 1e-15) return 1.0;

  double hi = 1.0 + spec.epsilon;
  if (std::abs(axial) > 0.0) hi = std::min(hi, 1.0 / std::abs(axial));
  double lo = 0.0;
  auto height = [&](double r) { return std::clamp(r * axial, -1.0, 1.0); };
  auto F = [&](double r) { return r * lateral - profile(spec, height(r), 0); };

  // F is convex with F(0) < 0, so Newton iterates started right of the root
  // decrease monotonically; bisection covers the singular endpoint.
  double r = hi;
  for (int iter = 0; iter < 200; ++iter) {
    const double fr = F(r);
    if (fr > 0.0) {
      hi = r;
    } else if (fr < 0.0) {
      lo = r;
    } else {
      return r;
    }
    if (hi - lo < 1e-13) break;
    const double h = r * axial;
    double next = 0.5 * (lo + hi);
    if (std::abs(h) < 1.0) {
      const double slope = lateral - axial * profile(spec, h, 1);
      const double newton = r - fr / slope;
      if (std::isfinite(newton) && newton > lo && newton < hi) {
        if (std::abs(newton - r) < 1e-15) return newton;
        next = newton;
      }
    }
    r = next;
  }
  return 0.5 * (lo + hi);
}


double revolution_support(const RevolutionBodySpec& spec, const Vec& xi) {
  const int n = spec.n;
  const double axial = xi(n - 1);
  const double lateral = xi.head(n - 1).norm();
  if (lateral < 1e-15) return std::abs(axial);
  auto g = [&](double t) { return lateral * profile(spec, t, 0) + axial * t; };
  const double inner = numeric::golden_max(g, -1.0, 1.0, 1e-12).second;
  return std::max({inner, g(-1.0), g(1.0)});
}

// ---------------------------------------------------------------------------

namespace {

struct CutCheck {
  bool ok = false;
  std::string reason;
};

std::vector<Vec> box_vertices(const std::vector<double>& a) {
  const int n = static_cast<int>(a.size());
  std::vector<Vec> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vec w(n);
    for (int i = 0; i < n; ++i) w(i) = ((mask >> i) & 1) ? a[i] : -a[i];
    out.push_back(w);
  }
  return out;
}

// Only `corner` may satisfy <x, normal> >= level among the box vertices.
bool isolates_corner(const std::vector<Vec>& corners, const Vec& corner, const Vec& normal, double level) {
  if (!(corner.dot(normal) > level)) return false;
  for (const auto& w : corners) {
    if ((w - corner).norm() < 1e-12) continue;
    if (w.dot(normal) >= level - 1e-12) return false;
  }
  return true;
}

// Cut regions R ∩ {<x,n1> >= l1} and R ∩ {<x,n2> >= l2} share no point.
bool cuts_disjoint(const HPolytope& box, const Vec& n1, double l1, const Vec& n2, double l2) {
  std::vector<Facet> hs = box.facets;
  hs.push_back({-n1, -l1});
  hs.push_back({-n2, -l2});
  return feasible_vertices(box.dim, hs).empty();
}

CutCheck check_cuts(const std::vector<double>& a, const Vec& u, const Vec& xi, double t, const Vec& v, const Vec& eta,
                    double s, double lambda) {
  if (!(lambda > 0.0)) return {false, "lambda must be positive"};
  const HPolytope box = make_box(a);
  const auto corners = box_vertices(a);
  if (!isolates_corner(corners, u, xi, t - lambda)) return {false, "first cut reaches a second box vertex"};
  if (!isolates_corner(corners, v, eta, s - lambda)) return {false, "second cut of K reaches a second box vertex"};
  if (!isolates_corner(corners, -v, -eta, s - lambda)) return {false, "second cut of L reaches a second box vertex"};
  if (!cuts_disjoint(box, xi, t - lambda, eta, s - lambda)) return {false, "cut regions of K overlap"};
  if (!cuts_disjoint(box, xi, t - lambda, -eta, s - lambda)) return {false, "cut regions of L overlap"};
  return {true, ""};
}

}  // namespace

PolytopeConstruction build_polytope_pair(const std::vector<double>& a, const std::vector<int>& u_signs,
                                         const std::vector<int>& v_signs, std::optional<double> lambda) {
  const int n = static_cast<int>(a.size());
  if (n < 2 || n > 4) throw std::invalid_argument("build_polytope_pair: need 2 <= n <= 4 box half-widths");
  for (int i = 0; i < n; ++i) {
    if (!(a[i] > 0.0) || !std::isfinite(a[i])) {
      throw std::invalid_argument("build_polytope_pair: entries of a must be positive");
    }
    for (int j = 0; j < i; ++j) {
      if (a[i] == a[j]) throw std::invalid_argument("build_polytope_pair: entries of a must be pairwise distinct");
    }
  }
  if (static_cast<int>(u_signs.size()) != n || static_cast<int>(v_signs.size()) != n) {
    throw std::invalid_argument("build_polytope_pair: sign vectors must have length n");
  }
  int differing = 0;
  for (int i = 0; i < n; ++i) {
    if (std::abs(u_signs[i]) != 1 || std::abs(v_signs[i]) != 1) {
      throw std::invalid_argument("build_polytope_pair: signs must be +1 or -1");
    }
    differing += u_signs[i] != v_signs[i];
  }
  if (differing != 1) {
    throw std::invalid_argument("build_polytope_pair: u and v must differ in exactly one sign (edge-adjacent)");
  }

  PolytopeConstruction pc;
  pc.a = a;
  pc.u_signs = u_signs;
  pc.v_signs = v_signs;
  const double root_n = std::sqrt(static_cast<double>(n));
  Vec u(n), v(n);
  pc.xi = Vec(n);
  pc.eta = Vec(n);
  for (int i = 0; i < n; ++i) {
    u(i) = u_signs[i] * a[i];
    v(i) = v_signs[i] * a[i];
    pc.xi(i) = u_signs[i] / root_n;
    pc.eta(i) = v_signs[i] / root_n;
  }
  pc.t_off = u.dot(pc.xi);
  pc.s_off = v.dot(pc.eta);
  const double gap = 2.0 * *std::min_element(a.begin(), a.end()) / root_n;

  // Largest admissible depth, by bisection on the verification predicate.
  double good = 0.0;
  double bad = pc.t_off;
  for (int iter = 0; iter < 60; ++iter) {
    const double mid = 0.5 * (good + bad);
    if (mid > 0.0 && check_cuts(a, u, pc.xi, pc.t_off, v, pc.eta, pc.s_off, mid).ok) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  pc.lambda_max = good;

  pc.lambda = lambda.value_or(0.5 * gap);
  const CutCheck check = check_cuts(a, u, pc.xi, pc.t_off, v, pc.eta, pc.s_off, pc.lambda);
  if (!check.ok) {
    std::ostringstream msg;
    msg << "build_polytope_pair: lambda = " << pc.lambda << " rejected (" << check.reason
        << "); largest admissible lambda is " << pc.lambda_max;
    throw std::invalid_argument(msg.str());
  }

  std::vector<Facet> box = make_box(a).facets;
  std::vector<Facet> k_facets = box;
  k_facets.push_back({pc.xi, pc.t_off - pc.lambda});
  k_facets.push_back({pc.eta, pc.s_off - pc.lambda});
  std::vector<Facet> l_facets = box;
  l_facets.push_back({pc.xi, pc.t_off - pc.lambda});
  l_facets.push_back({-pc.eta, pc.s_off - pc.lambda});
  pc.K = make_hpolytope(n, std::move(k_facets));
  pc.L = make_hpolytope(n, std::move(l_facets));
  return pc;
}

// ---------------------------------------------------------------------------

ConvexBodyOracle oracle_of(const RevolutionBodySpec& spec) {
  ConvexBodyOracle o;
  o.dim = spec.n;
  o.radial = [spec](const Vec& theta) { return revolution_radial(spec, theta); };
  o.support = [spec](const Vec& xi) { return revolution_support(spec, xi); };
  o.member = [spec](const Vec& x) { return revolution_member(spec, x); };
  o.eval_tol = kSmoothEvalTol;
  std::ostringstream label;
  label << "revolution(n=" << spec.n << ", epsilon=" << spec.epsilon << ", delta=" << spec.delta
        << ", variant=" << to_string(spec.variant) << ")";
  o.label = label.str();
  return o;
}

ConvexBodyOracle oracle_of(const HPolytope& p, std::string label) {
  auto data = std::make_shared<PolytopeData>(PolytopeData{p, enumerate_vertices(p)});
  ConvexBodyOracle o;
  o.dim = p.dim;
  o.radial = [data](const Vec& theta) { return polytope_radial(data->hrep, theta); };
  o.support = [data](const Vec& xi) { return polytope_support(data->vrep, xi); };
  o.member = [data](const Vec& x) { return polytope_member(data->hrep, x, 1e-12); };
  o.eval_tol = kPolytopeEvalTol;
  o.polytope = std::move(data);
  o.label = std::move(label);
  return o;
}

}  // namespace convexlab
