#pragma once

#include "convexlab/bodies.hpp"
#include "convexlab/linalg.hpp"

#include <functional>
#include <memory>

namespace convexlab {

/// S_t(xi) = {x : |<x, xi>| <= t}.
struct SlabSpec {
  Vec xi;
  double half_width = 0.0;
};

/// Support function of a body living in a k-dimensional coordinate space.
struct SupportOracle {
  int dim = 0;
  std::function<double(const Vec&)> support;
  double eval_tol = 0.0;
  /// Vertices of the projection, when the parent is a polytope.
  std::shared_ptr<const std::vector<Vec>> vertices;
};

/// K ∩ H in the coordinates of H. Polytopes map to exact k-dimensional
/// polytopes. For smooth bodies the radial function is the restriction and
/// the support function is support_from_radial on that restriction.
ConvexBodyOracle section_oracle(const ConvexBodyOracle& body, const Subspace& h);

/// Support function of K|V: the restriction of h_K to V.
SupportOracle projection_support_oracle(const ConvexBodyOracle& body, const Subspace& v);

/// K ∩ S_t(xi). Polytopes gain the two facets (+-xi, t) exactly.
ConvexBodyOracle slab_oracle(const ConvexBodyOracle& body, const SlabSpec& slab);

/// H-representation of P ∩ S_t(xi); dominated parallel facets are dropped.
HPolytope slab_polytope(const HPolytope& p, const SlabSpec& slab);

/// K - shift. Throws std::invalid_argument unless shift lies inside K with
/// margin 1e-9.
ConvexBodyOracle translate_oracle(const ConvexBodyOracle& body, const Vec& shift);

/// Q K for an orthogonal matrix Q.
ConvexBodyOracle rotate_oracle(const ConvexBodyOracle& body, const Mat& rotation);

/// c K for c > 0.
ConvexBodyOracle scale_oracle(const ConvexBodyOracle& body, double factor);

/// Rotation by `angle` in the (i, j) coordinate plane of R^n.
Mat plane_rotation(int n, int i, int j, double angle);

/// min over the sphere of the radial function: exact for polytopes,
/// otherwise a 10^4-point scan refined locally.
double min_radial(const ConvexBodyOracle& body);

/// Throws std::invalid_argument naming the largest admissible half-width
/// unless t B^n lies inside the body with margin 1e-9.
void require_admissible_slab(const ConvexBodyOracle& body, double half_width);

}  // namespace convexlab
