#include "convexlab/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

namespace convexlab {

namespace {

// Calls fn(indices) for every r-subset of {0, ..., m-1} in lexicographic order.
template <class Fn>
void for_each_subset(int m, int r, Fn&& fn) {
  if (r > m) return;
  std::vector<int> idx(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    int pos = r - 1;
    while (pos >= 0 && idx[pos] == m - r + pos) --pos;
    if (pos < 0) return;
    ++idx[pos];
    for (int j = pos + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

std::vector<Vec> solve_vertices(int dim, const std::vector<Facet>& hs) {
  std::vector<Vec> out;
  const int m = static_cast<int>(hs.size());
  for_each_subset(m, dim, [&](const std::vector<int>& idx) {
    Mat a(dim, dim);
    Vec b(dim);
    for (int r = 0; r < dim; ++r) {
      a.row(r) = hs[idx[r]].normal.transpose();
      b(r) = hs[idx[r]].offset;
    }
    Eigen::FullPivLU<Mat> lu(a);
    lu.setThreshold(1e-12);
    if (lu.rank() < dim) return;
    const Vec x = lu.solve(b);
    if (!x.allFinite()) return;
    for (const auto& f : hs) {
      if (f.normal.dot(x) > f.offset + kFeasibilityTol) return;
    }
    for (const auto& y : out) {
      if ((y - x).norm() < kDedupTol) return;
    }
    out.push_back(x);
  });
  return out;
}

}  // namespace

HPolytope make_hpolytope(int dim, std::vector<Facet> facets) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("make_hpolytope: bad dimension");
  for (auto& f : facets) {
    if (f.normal.size() != dim) throw std::invalid_argument("make_hpolytope: normal has wrong dimension");
    const double norm = f.normal.norm();
    if (!(norm > 0.0)) throw std::invalid_argument("make_hpolytope: zero normal");
    f.normal /= norm;
    f.offset /= norm;
    if (!(f.offset > 0.0)) {
      throw std::invalid_argument("make_hpolytope: offsets must be positive (origin strictly interior)");
    }
  }
  for (std::size_t i = 0; i < facets.size(); ++i) {
    for (std::size_t j = i + 1; j < facets.size(); ++j) {
      if (facets[i].normal.dot(facets[j].normal) > 1.0 - 1e-12 &&
          std::abs(facets[i].offset - facets[j].offset) < 1e-12) {
        throw std::invalid_argument("make_hpolytope: duplicate facet");
      }
    }
  }
  return HPolytope{dim, std::move(facets)};
}

HPolytope make_box(const std::vector<double>& half_widths) {
  const int n = static_cast<int>(half_widths.size());
  std::vector<Facet> facets;
  for (int i = 0; i < n; ++i) {
    facets.push_back({basis_vector(n, i), half_widths[i]});
    facets.push_back({-basis_vector(n, i), half_widths[i]});
  }
  return make_hpolytope(n, std::move(facets));
}

HPolytope rotated(const HPolytope& p, const Mat& rotation) {
  HPolytope q = p;
  for (auto& f : q.facets) f.normal = rotation * f.normal;
  return q;
}

HPolytope translated(const HPolytope& p, const Vec& shift) {
  HPolytope q = p;
  for (auto& f : q.facets) {
    f.offset -= f.normal.dot(shift);
    if (!(f.offset > 0.0)) throw std::invalid_argument("translated: shift leaves the origin outside");
  }
  return q;
}

HPolytope scaled(const HPolytope& p, double factor) {
  if (!(factor > 0.0)) throw std::invalid_argument("scaled: factor must be positive");
  HPolytope q = p;
  for (auto& f : q.facets) f.offset *= factor;
  return q;
}

bool is_bounded(int dim, const std::vector<Facet>& halfspaces) {
  const int m = static_cast<int>(halfspaces.size());
  if (m == 0) return false;
  // m may exceed kMaxDim, so the rank test uses a heap-backed matrix.
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(m, dim);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < dim; ++j) dense(i, j) = halfspaces[i].normal(j);
  Eigen::FullPivLU<Eigen::MatrixXd> full(dense);
  full.setThreshold(1e-12);
  if (full.rank() < dim) return false;

  auto is_recession = [&](const Vec& d) {
    for (const auto& h : halfspaces)
      if (h.normal.dot(d) > 1e-12) return false;
    return true;
  };
  if (dim == 1) {
    Vec d(1);
    d(0) = 1.0;
    return !is_recession(d) && !is_recession(-d);
  }
  bool bounded = true;
  for_each_subset(m, dim - 1, [&](const std::vector<int>& idx) {
    if (!bounded) return;
    Mat a(dim - 1, dim);
    for (int r = 0; r < dim - 1; ++r) a.row(r) = halfspaces[idx[r]].normal.transpose();
    Eigen::FullPivLU<Mat> lu(a);
    lu.setThreshold(1e-12);
    if (lu.rank() < dim - 1) return;
    const Mat ker = lu.kernel();
    if (ker.cols() != 1) return;
    const Vec d = unit(Vec(ker.col(0)));
    if (is_recession(d) || is_recession(-d)) bounded = false;
  });
  return bounded;
}

std::vector<Vec> feasible_vertices(int dim, const std::vector<Facet>& halfspaces) {
  if (dim < 1 || dim > 4) throw std::invalid_argument("feasible_vertices: dimension must be 1..4");
  if (!is_bounded(dim, halfspaces)) throw GeometryError("feasible_vertices: unbounded system");
  return solve_vertices(dim, halfspaces);
}

VRep enumerate_vertices(const HPolytope& p) {
  if (p.dim < 1 || p.dim > 4) throw std::invalid_argument("enumerate_vertices: dimension must be 1..4");
  if (!is_bounded(p.dim, p.facets)) throw GeometryError("enumerate_vertices: polytope is unbounded");
  VRep v;
  v.dim = p.dim;
  v.vertices = solve_vertices(p.dim, p.facets);
  if (static_cast<int>(v.vertices.size()) < p.dim + 1) {
    throw GeometryError("enumerate_vertices: polytope is empty or lower-dimensional");
  }
  v.active.resize(v.vertices.size());
  for (std::size_t i = 0; i < v.vertices.size(); ++i) {
    for (int f = 0; f < static_cast<int>(p.facets.size()); ++f) {
      const double gap = p.facets[f].offset - p.facets[f].normal.dot(v.vertices[i]);
      if (std::abs(gap) <= kFeasibilityTol) v.active[i].push_back(f);
    }
  }
  return v;
}

double polytope_radial(const HPolytope& p, const Vec& theta) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : p.facets) {
    const double d = f.normal.dot(theta);
    if (d > 1e-14) best = std::min(best, f.offset / d);
  }
  if (!std::isfinite(best)) throw GeometryError("polytope_radial: unbounded direction");
  return best;
}

double polytope_support(const VRep& v, const Vec& xi) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& x : v.vertices) best = std::max(best, x.dot(xi));
  return best;
}

bool polytope_member(const HPolytope& p, const Vec& x, double tol) {
  for (const auto& f : p.facets)
    if (f.normal.dot(x) > f.offset + tol) return false;
  return true;
}

// ---------------------------------------------------------------------------

PlanarMetrics polygon_metrics(const Polygon& q) {
  PlanarMetrics m;
  const auto& v = q.vertices;
  const std::size_t n = v.size();
  if (n < 2) return m;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % n];
    m.perimeter += (b - a).norm();
    if (n >= 3) m.area += cross2(a, b);
  }
  m.area *= 0.5;
  return m;
}

Polygon convex_hull_2d(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return Polygon{pts};
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross2(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const auto& p = pts[i];
    while (k >= lower && cross2(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return Polygon{hull};
}

Polygon clip_halfplane(const Polygon& q, const Vec2& m, double b) {
  const auto& v = q.vertices;
  const std::size_t n = v.size();
  Polygon out;
  if (n == 0) return out;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = v[i];
    const Vec2& r = v[(i + 1) % n];
    const double fp = m.dot(p) - b;
    const double fr = m.dot(r) - b;
    if (fp <= 0.0) out.vertices.push_back(p);
    if ((fp < 0.0 && fr > 0.0) || (fp > 0.0 && fr < 0.0)) {
      out.vertices.push_back(p + (r - p) * (fp / (fp - fr)));
    }
  }
  // drop near-coincident neighbours produced by clipping through a vertex
  Polygon clean;
  for (const auto& p : out.vertices) {
    if (clean.vertices.empty() || (p - clean.vertices.back()).norm() > 1e-10) clean.vertices.push_back(p);
  }
  while (clean.vertices.size() > 1 && (clean.vertices.front() - clean.vertices.back()).norm() <= 1e-10) {
    clean.vertices.pop_back();
  }
  return clean;
}

Polygon section_polygon(const HPolytope& p, const Subspace& plane) {
  if (plane.dim() != 2 || plane.ambient_dim() != p.dim) {
    throw std::invalid_argument("section_polygon: need a 2-dimensional subspace of the polytope's space");
  }
  std::vector<std::pair<Vec2, double>> halfplanes;
  for (const auto& f : p.facets) {
    const Vec mm = plane.coords(f.normal);
    const Vec2 m2(mm(0), mm(1));
    if (m2.norm() < 1e-14) continue;  // facet parallel to the plane; offset > 0 so inactive
    halfplanes.emplace_back(m2, f.offset);
  }
  double reach = 0.0;
  for (int j = 0; j < 8; ++j) {
    const double a = 2.0 * kPi * j / 8.0;
    Vec u(2);
    u << std::cos(a), std::sin(a);
    reach = std::max(reach, polytope_radial(p, plane.embed(u)));
  }
  double half = 2.0 * reach;
  for (int attempt = 0; attempt < 30; ++attempt, half *= 4.0) {
    Polygon q{{Vec2(-half, -half), Vec2(half, -half), Vec2(half, half), Vec2(-half, half)}};
    for (const auto& [m, b] : halfplanes) q = clip_halfplane(q, m, b);
    bool touches_frame = false;
    for (const auto& v : q.vertices) {
      touches_frame |= std::max(std::abs(v.x()), std::abs(v.y())) >= half * (1.0 - 1e-9);
    }
    if (touches_frame) continue;
    if (q.vertices.size() < 3) throw GeometryError("section_polygon: degenerate section");
    return q;
  }
  throw GeometryError("section_polygon: section is unbounded");
}

Polygon projection_polygon(const VRep& v, const Subspace& plane) {
  if (plane.dim() != 2 || plane.ambient_dim() != v.dim) {
    throw std::invalid_argument("projection_polygon: need a 2-dimensional subspace of the polytope's space");
  }
  std::vector<Vec2> pts;
  pts.reserve(v.vertices.size());
  for (const auto& x : v.vertices) {
    const Vec c = plane.coords(x);
    pts.emplace_back(c(0), c(1));
  }
  return convex_hull_2d(std::move(pts));
}

// ---------------------------------------------------------------------------

namespace {

// In-plane orthonormal pair (e1, e2) with e1 x e2 = n.
std::pair<Eigen::Vector3d, Eigen::Vector3d> plane_frame(const Eigen::Vector3d& n) {
  Eigen::Vector3d helper = std::abs(n.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  Eigen::Vector3d e1 = (helper - n * n.dot(helper)).normalized();
  Eigen::Vector3d e2 = n.cross(e1);
  return {e1, e2};
}

Eigen::Vector3d to3(const Vec& v) { return Eigen::Vector3d(v(0), v(1), v(2)); }

double segment_distance(const Eigen::Vector3d& x, const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  const Eigen::Vector3d ab = b - a;
  const double len2 = ab.squaredNorm();
  double s = len2 > 0.0 ? (x - a).dot(ab) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return (a + s * ab - x).norm();
}

}  // namespace

std::vector<std::vector<int>> facet_cycles(const HPolytope& p, const VRep& v) {
  if (p.dim != 3) throw std::invalid_argument("facet_cycles: polytope must be 3-dimensional");
  std::vector<std::vector<int>> cycles(p.facets.size());
  for (std::size_t f = 0; f < p.facets.size(); ++f) {
    std::vector<int> members;
    for (std::size_t i = 0; i < v.vertices.size(); ++i) {
      if (std::find(v.active[i].begin(), v.active[i].end(), static_cast<int>(f)) != v.active[i].end()) {
        members.push_back(static_cast<int>(i));
      }
    }
    if (members.size() < 3) continue;
    Eigen::Vector3d c = Eigen::Vector3d::Zero();
    for (int i : members) c += to3(v.vertices[i]);
    c /= static_cast<double>(members.size());
    const auto [e1, e2] = plane_frame(to3(p.facets[f].normal));
    std::vector<std::pair<double, int>> keyed;
    for (int i : members) {
      const Eigen::Vector3d d = to3(v.vertices[i]) - c;
      keyed.emplace_back(std::atan2(d.dot(e2), d.dot(e1)), i);
    }
    std::sort(keyed.begin(), keyed.end());
    for (const auto& [angle, i] : keyed) cycles[f].push_back(i);
  }
  return cycles;
}

Poly3Volumes poly3_intrinsic_volumes(const HPolytope& p) {
  return poly3_intrinsic_volumes(p, enumerate_vertices(p));
}

Poly3Volumes poly3_intrinsic_volumes(const HPolytope& p, const VRep& v) {
  if (p.dim != 3) throw std::invalid_argument("poly3_intrinsic_volumes: polytope must be 3-dimensional");
  const auto cycles = facet_cycles(p, v);
  Poly3Volumes out;
  out.vertices = static_cast<int>(v.vertices.size());
  std::map<std::pair<int, int>, std::vector<int>> edge_facets;
  double surface = 0.0;
  double volume = 0.0;
  for (std::size_t f = 0; f < cycles.size(); ++f) {
    const auto& cyc = cycles[f];
    if (cyc.empty()) continue;
    ++out.faces;
    const Eigen::Vector3d n = to3(p.facets[f].normal);
    const Eigen::Vector3d base = to3(v.vertices[cyc[0]]);
    double area = 0.0;
    for (std::size_t j = 1; j + 1 < cyc.size(); ++j) {
      const Eigen::Vector3d a = to3(v.vertices[cyc[j]]) - base;
      const Eigen::Vector3d b = to3(v.vertices[cyc[j + 1]]) - base;
      area += 0.5 * a.cross(b).dot(n);
    }
    surface += area;
    volume += p.facets[f].offset * area / 3.0;
    for (std::size_t j = 0; j < cyc.size(); ++j) {
      int a = cyc[j];
      int b = cyc[(j + 1) % cyc.size()];
      if (a > b) std::swap(a, b);
      edge_facets[{a, b}].push_back(static_cast<int>(f));
    }
  }
  double mean_curvature_sum = 0.0;
  for (const auto& [edge, fs] : edge_facets) {
    if (fs.size() != 2) {
      throw GeometryError("poly3_intrinsic_volumes: edge shared by " + std::to_string(fs.size()) +
                          " facets (non-simple or degenerate polytope)");
    }
    const double len = (v.vertices[edge.first] - v.vertices[edge.second]).norm();
    const double c = std::clamp(p.facets[fs[0]].normal.dot(p.facets[fs[1]].normal), -1.0, 1.0);
    mean_curvature_sum += len * std::acos(c);
  }
  out.edges = static_cast<int>(edge_facets.size());
  out.v3 = volume;
  out.v2 = 0.5 * surface;
  out.v1 = mean_curvature_sum / (2.0 * kPi);
  return out;
}

Poly3Distance::Poly3Distance(const HPolytope& p, const VRep& v) : polytope_(p) {
  const auto cycles = facet_cycles(p, v);
  for (std::size_t f = 0; f < cycles.size(); ++f) {
    if (cycles[f].empty()) continue;
    Face face;
    face.normal = to3(p.facets[f].normal);
    face.offset = p.facets[f].offset;
    for (int i : cycles[f]) face.ring.push_back(to3(v.vertices[i]));
    faces_.push_back(std::move(face));
  }
}

double Poly3Distance::operator()(const Vec& x) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& f : polytope_.facets) worst = std::max(worst, f.normal.dot(x) - f.offset);
  if (worst <= 0.0) return 0.0;
  const Eigen::Vector3d x3 = to3(x);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& face : faces_) {
    const double height = face.normal.dot(x3) - face.offset;
    const Eigen::Vector3d foot = x3 - height * face.normal;
    const std::size_t n = face.ring.size();
    bool inside = true;
    for (std::size_t j = 0; j < n && inside; ++j) {
      const Eigen::Vector3d& a = face.ring[j];
      const Eigen::Vector3d& b = face.ring[(j + 1) % n];
      inside = (b - a).cross(foot - a).dot(face.normal) >= -1e-14;
    }
    if (inside) {
      best = std::min(best, std::abs(height));
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) {
      best = std::min(best, segment_distance(x3, face.ring[j], face.ring[(j + 1) % n]));
    }
  }
  return best;
}

}  // namespace convexlab
