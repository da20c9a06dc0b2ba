#pragma once

#include "convexlab/linalg.hpp"

#include <stdexcept>
#include <vector>

namespace convexlab {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Half-space {x : <normal, x> <= offset} with a unit normal.
struct Facet {
  Vec normal;
  double offset = 0.0;
};

/// Bounded polytope in H-representation with the origin strictly inside
/// (every offset positive). Dimension at most 4 for the exact kernel.
struct HPolytope {
  int dim = 0;
  std::vector<Facet> facets;
};

/// Validates unit normals, positive offsets and the absence of duplicates.
/// Does not check boundedness (enumerate_vertices does).
HPolytope make_hpolytope(int dim, std::vector<Facet> facets);

/// Box [-a_1, a_1] x ... x [-a_n, a_n].
HPolytope make_box(const std::vector<double>& half_widths);

HPolytope rotated(const HPolytope& p, const Mat& rotation);
/// The polytope p - shift. Throws if the origin leaves the interior.
HPolytope translated(const HPolytope& p, const Vec& shift);
HPolytope scaled(const HPolytope& p, double factor);

/// Vertices plus, for each vertex, the indices of the facets active at it.
struct VRep {
  int dim = 0;
  std::vector<Vec> vertices;
  std::vector<std::vector<int>> active;
};

inline constexpr double kFeasibilityTol = 1e-9;
inline constexpr double kDedupTol = 1e-8;

/// Brute-force vertex enumeration over all n-subsets of facets.
/// Throws GeometryError for unbounded input.
VRep enumerate_vertices(const HPolytope& p);

/// Vertices of {x : <n_i, x> <= b_i} for arbitrary offsets (the origin need
/// not be inside). Empty result means infeasible. Requires the system to be
/// bounded; used for construction checks on regions away from the origin.
std::vector<Vec> feasible_vertices(int dim, const std::vector<Facet>& halfspaces);

/// True when the recession cone {d : <n_i, d> <= 0} is {0}.
bool is_bounded(int dim, const std::vector<Facet>& halfspaces);

double polytope_radial(const HPolytope& p, const Vec& theta);
double polytope_support(const VRep& v, const Vec& xi);
bool polytope_member(const HPolytope& p, const Vec& x, double tol = 1e-12);

/// Convex polygon, vertices counterclockwise.
struct Polygon {
  std::vector<Vec2> vertices;
};

struct PlanarMetrics {
  double area = 0.0;
  double perimeter = 0.0;
};

/// Shoelace area and edge-length sum. Fewer than three vertices gives zero
/// area and the length of the (closed) segment path.
PlanarMetrics polygon_metrics(const Polygon& q);

/// Monotone-chain convex hull, counterclockwise, collinear points dropped.
Polygon convex_hull_2d(std::vector<Vec2> points);

/// Clip a convex polygon by {y : <m, y> <= b}.
Polygon clip_halfplane(const Polygon& q, const Vec2& m, double b);

/// Section P ∩ H in the coordinates of the plane's basis.
Polygon section_polygon(const HPolytope& p, const Subspace& plane);

/// Orthogonal projection of the vertex set onto the plane, as a hull.
Polygon projection_polygon(const VRep& v, const Subspace& plane);

struct Poly3Volumes {
  double v1 = 0.0;
  double v2 = 0.0;
  double v3 = 0.0;
  int vertices = 0;
  int edges = 0;
  int faces = 0;
};

/// Exact intrinsic volumes of a 3-polytope: V3 from facet pyramids, V2 as half
/// the surface area, V1 from edge lengths and exterior dihedral angles.
Poly3Volumes poly3_intrinsic_volumes(const HPolytope& p);
Poly3Volumes poly3_intrinsic_volumes(const HPolytope& p, const VRep& v);

/// Facet polygons of a 3-polytope (vertex indices ordered around each facet).
/// Facets touching fewer than three vertices are returned empty.
std::vector<std::vector<int>> facet_cycles(const HPolytope& p, const VRep& v);

/// Euclidean distance to a 3-polytope (0 inside), with facet polygons
/// precomputed for repeated queries.
class Poly3Distance {
 public:
  Poly3Distance(const HPolytope& p, const VRep& v);
  double operator()(const Vec& x) const;

 private:
  struct Face {
    Eigen::Vector3d normal;
    double offset = 0.0;
    std::vector<Eigen::Vector3d> ring;
  };
  HPolytope polytope_;
  std::vector<Face> faces_;
};

}  // namespace convexlab
