#include "convexlab/transforms.hpp"

#include "convexlab/intrinsic_volumes.hpp"
#include "convexlab/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace convexlab {

namespace {

constexpr double kSlabGuard = 1e-14;
constexpr double kParallelTol = 1e-12;

// Keeps the tightest of any parallel facets.
std::vector<Facet> merge_parallel(std::vector<Facet> facets) {
  std::vector<Facet> out;
  for (auto& f : facets) {
    bool merged = false;
    for (auto& g : out) {
      if ((g.normal - f.normal).norm() < kParallelTol) {
        g.offset = std::min(g.offset, f.offset);
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(std::move(f));
  }
  return out;
}

HPolytope section_polytope(const HPolytope& p, const Subspace& h) {
  std::vector<Facet> facets;
  for (const auto& f : p.facets) {
    Vec m = h.basis().transpose() * f.normal;
    const double len = m.norm();
    if (len < kParallelTol) continue;
    facets.push_back({m / len, f.offset / len});
  }
  return make_hpolytope(h.dim(), merge_parallel(std::move(facets)));
}

std::string describe(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < v.size(); ++i) os << (i ? "," : "") << v(i);
  os << ")";
  return os.str();
}

}  // namespace

ConvexBodyOracle section_oracle(const ConvexBodyOracle& body, const Subspace& h) {
  if (h.ambient_dim() != body.dim) throw std::invalid_argument("section_oracle: dimension mismatch");
  if (body.is_polytope()) {
    return oracle_of(section_polytope(body.polytope->hrep, h), body.label + " ∩ H");
  }
  ConvexBodyOracle o;
  o.dim = h.dim();
  auto parent = std::make_shared<const ConvexBodyOracle>(body);
  auto sub = std::make_shared<const Subspace>(h);
  o.radial = [parent, sub](const Vec& u) { return parent->radial(sub->embed(u)); };
  o.member = [parent, sub](const Vec& y) { return parent->member(sub->embed(y)); };
  o.eval_tol = std::max(body.eval_tol, 1e-10);
  o.label = body.label + " ∩ H";
  // The support is recovered from the section's own radial function.
  auto radial_only = std::make_shared<ConvexBodyOracle>(o);
  o.support = [radial_only](const Vec& u) { return support_from_radial(*radial_only, u); };
  return o;
}

SupportOracle projection_support_oracle(const ConvexBodyOracle& body, const Subspace& v) {
  if (v.ambient_dim() != body.dim) throw std::invalid_argument("projection_support_oracle: dimension mismatch");
  SupportOracle o;
  o.dim = v.dim();
  auto parent = std::make_shared<const ConvexBodyOracle>(body);
  auto sub = std::make_shared<const Subspace>(v);
  o.support = [parent, sub](const Vec& u) { return parent->support(sub->embed(u)); };
  o.eval_tol = body.eval_tol;
  if (body.is_polytope()) {
    auto verts = std::make_shared<std::vector<Vec>>();
    for (const auto& x : body.polytope->vrep.vertices) verts->push_back(v.coords(x));
    o.vertices = std::move(verts);
  }
  return o;
}

HPolytope slab_polytope(const HPolytope& p, const SlabSpec& slab) {
  if (!(slab.half_width > 0.0)) throw std::invalid_argument("slab: half_width must be positive");
  const Vec xi = unit(slab.xi);
  std::vector<Facet> facets = p.facets;
  facets.push_back({xi, slab.half_width});
  facets.push_back({-xi, slab.half_width});
  return make_hpolytope(p.dim, merge_parallel(std::move(facets)));
}

ConvexBodyOracle slab_oracle(const ConvexBodyOracle& body, const SlabSpec& slab) {
  if (static_cast<int>(slab.xi.size()) != body.dim) throw std::invalid_argument("slab_oracle: dimension mismatch");
  if (!(slab.half_width > 0.0)) throw std::invalid_argument("slab: half_width must be positive");
  if (body.is_polytope()) {
    return oracle_of(slab_polytope(body.polytope->hrep, slab), body.label + " ∩ S_t");
  }
  const Vec xi = unit(slab.xi);
  const double t = slab.half_width;
  auto parent = std::make_shared<const ConvexBodyOracle>(body);
  ConvexBodyOracle o;
  o.dim = body.dim;
  o.radial = [parent, xi, t](const Vec& theta) {
    const double r = parent->radial(theta);
    const double c = std::abs(theta.dot(xi));
    if (c < kSlabGuard) return r;
    return std::min(r, t / c);
  };
  o.member = [parent, xi, t](const Vec& x) { return std::abs(x.dot(xi)) <= t && parent->member(x); };
  // h_{K ∩ S}(u) = min over lambda of h_K(u - lambda xi) + t |lambda|.
  o.support = [parent, xi, t](const Vec& u) {
    const double reach = (parent->support(u) + parent->support(-u)) / t + 1.0;
    auto g = [&](double lambda) {
      Vec w = u - lambda * xi;
      const double len = w.norm();
      const double hw = len > 0.0 ? len * parent->support(w / len) : 0.0;
      return hw + t * std::abs(lambda);
    };
    return numeric::convex_min_on_line(g, reach, 1e-10).second;
  };
  o.eval_tol = std::max(body.eval_tol, 1e-10);
  o.label = body.label + " ∩ S_t";
  return o;
}

ConvexBodyOracle translate_oracle(const ConvexBodyOracle& body, const Vec& shift) {
  if (static_cast<int>(shift.size()) != body.dim) throw std::invalid_argument("translate_oracle: dimension mismatch");
  const double s = shift.norm();
  if (s > 0.0 && !(s < body.radial(shift / s) - 1e-9)) {
    throw std::invalid_argument("translate_oracle: shift " + describe(shift) + " is not interior to the body");
  }
  if (s == 0.0) return body;
  if (body.is_polytope()) {
    return oracle_of(translated(body.polytope->hrep, shift), body.label + " - shift");
  }
  auto parent = std::make_shared<const ConvexBodyOracle>(body);
  ConvexBodyOracle o;
  o.dim = body.dim;
  o.member = [parent, shift](const Vec& x) { return parent->member(x + shift); };
  o.support = [parent, shift](const Vec& xi) { return parent->support(xi) - shift.dot(xi); };
  o.radial = [parent, shift](const Vec& theta) {
    double lo = 0.0;
    double hi = parent->support(theta) - shift.dot(theta) + 1e-9;
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      if (parent->member(shift + mid * theta)) lo = mid;
      else hi = mid;
    }
    return 0.5 * (lo + hi);
  };
  o.eval_tol = std::max(body.eval_tol, 1e-11);
  o.label = body.label + " - shift";
  return o;
}

ConvexBodyOracle rotate_oracle(const ConvexBodyOracle& body, const Mat& rotation) {
  if (rotation.rows() != body.dim || rotation.cols() != body.dim)
    throw std::invalid_argument("rotate_oracle: dimension mismatch");
  if (!(rotation.transpose() * rotation).isIdentity(1e-10))
    throw std::invalid_argument("rotate_oracle: matrix is not orthogonal");
  if (body.is_polytope()) return oracle_of(rotated(body.polytope->hrep, rotation), "Q " + body.label);
  auto parent = std::make_shared<const ConvexBodyOracle>(body);
  const Mat qt = rotation.transpose();
  ConvexBodyOracle o;
  o.dim = body.dim;
  o.radial = [parent, qt](const Vec& theta) { return parent->radial(qt * theta); };
  o.support = [parent, qt](const Vec& xi) { return parent->support(qt * xi); };
  o.member = [parent, qt](const Vec& x) { return parent->member(qt * x); };
  o.eval_tol = body.eval_tol;
  o.label = "Q " + body.label;
  return o;
}

ConvexBodyOracle scale_oracle(const ConvexBodyOracle& body, double factor) {
  if (!(factor > 0.0)) throw std::invalid_argument("scale_oracle: factor must be positive");
  if (body.is_polytope()) return oracle_of(scaled(body.polytope->hrep, factor), "c " + body.label);
  auto parent = std::make_shared<const ConvexBodyOracle>(body);
  ConvexBodyOracle o;
  o.dim = body.dim;
  o.radial = [parent, factor](const Vec& theta) { return factor * parent->radial(theta); };
  o.support = [parent, factor](const Vec& xi) { return factor * parent->support(xi); };
  o.member = [parent, factor](const Vec& x) { return parent->member(x / factor); };
  o.eval_tol = body.eval_tol * factor;
  o.label = "c " + body.label;
  return o;
}

Mat plane_rotation(int n, int i, int j, double angle) {
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw std::invalid_argument("plane_rotation: bad axes");
  Mat q = Mat::Identity(n, n);
  q(i, i) = std::cos(angle);
  q(j, j) = std::cos(angle);
  q(j, i) = std::sin(angle);
  q(i, j) = -std::sin(angle);
  return q;
}

double min_radial(const ConvexBodyOracle& body) {
  if (body.is_polytope()) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& f : body.polytope->hrep.facets) best = std::min(best, f.offset);
    return best;
  }
  const int n = body.dim;
  constexpr int kGrid = 10000;
  std::vector<Vec> dirs;
  if (n == 2) {
    for (int j = 0; j < kGrid; ++j) {
      const double a = 2.0 * kPi * j / kGrid;
      Vec d(2);
      d << std::cos(a), std::sin(a);
      dirs.push_back(d);
    }
  } else if (n == 3) {
    dirs = fibonacci_sphere(kGrid);
  } else {
    RngStream rng(0x6d696e72ULL, 0);
    for (int j = 0; j < kGrid; ++j) dirs.push_back(rng.direction(n));
  }
  Vec best_dir = dirs[0];
  double best = body.radial(best_dir);
  for (const auto& d : dirs) {
    const double r = body.radial(d);
    if (r < best) {
      best = r;
      best_dir = d;
    }
  }
  // Pattern search on the sphere around the grid minimizer.
  double step = n == 2 ? 2.0 * kPi / kGrid : 4.0 / std::sqrt(static_cast<double>(kGrid));
  while (step > 1e-10) {
    bool improved = false;
    for (int a = 0; a < n; ++a) {
      for (double sgn : {1.0, -1.0}) {
        Vec trial = best_dir + sgn * step * basis_vector(n, a);
        trial -= best_dir * (trial - best_dir).dot(best_dir);
        trial = unit(trial);
        const double r = body.radial(trial);
        if (r < best) {
          best = r;
          best_dir = trial;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

void require_admissible_slab(const ConvexBodyOracle& body, double half_width) {
  if (!(half_width > 0.0)) throw std::invalid_argument("slab: t must be positive");
  const double limit = min_radial(body) - 1e-9;
  if (!(half_width < limit)) {
    std::ostringstream os;
    os.precision(12);
    os << "slab: t = " << half_width << " is too large for " << body.label
       << "; the maximum admissible t is " << limit << " (t B^n must lie inside the body)";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace convexlab
