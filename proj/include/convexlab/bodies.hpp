#pragma once

#include "convexlab/linalg.hpp"
#include "convexlab/polytope.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace convexlab {

/// Which member of a counterexample pair.
enum class Variant { K, L };

std::string to_string(Variant v);

// ---------------------------------------------------------------------------
// Smooth bodies of revolution

inline constexpr double kBumpCenterLow = 1.0 / 3.0;
inline constexpr double kBumpCenterHigh = 2.0 / 3.0;
inline constexpr double kDefaultEpsilon = 1e-3;
inline constexpr double kDefaultDelta = 0.1;

/// Profile parameters for the body {x : |x'| <= f(x_n)} with
/// f(t) = sqrt(1 - t^2) + eps*phi(t) + eps*psi(+-t).
struct RevolutionBodySpec {
  int n = 3;
  double epsilon = kDefaultEpsilon;
  double delta = kDefaultDelta;
  Variant variant = Variant::K;
  /// The amplitude the caller asked for; epsilon may be smaller after the
  /// concavity auto-shrink.
  double epsilon_requested = kDefaultEpsilon;
};

/// exp(-1/(1-u^2)) on |u| < 1, zero elsewhere; d is the derivative order (0..2).
double bump(double u, int d = 0);

/// f (variant K) or g (variant L) and its first two derivatives.
/// Throws std::domain_error for |t| > 1, or for order >= 1 at |t| = 1.
double profile(const RevolutionBodySpec& spec, double t, int order = 0);

struct ConcavityReport {
  double max_second_derivative = 0.0;
  double min_profile = 0.0;
  bool ok = false;
};

/// Scans f'' and f on 10^5 points of [-1 + 1e-6, 1 - 1e-6].
ConcavityReport validate_revolution_spec(const RevolutionBodySpec& spec);

/// Checks 0 < delta < 1/6, epsilon >= 0 and 2 <= n <= kMaxDim, then halves
/// epsilon (up to 40 times) until the profile is concave.
RevolutionBodySpec make_revolution_spec(int n, double epsilon, double delta, Variant variant);

/// Unit ball as the epsilon = 0 member of the family.
RevolutionBodySpec make_ball_spec(int n);

double revolution_radial(const RevolutionBodySpec& spec, const Vec& theta);
double revolution_support(const RevolutionBodySpec& spec, const Vec& xi);
bool revolution_member(const RevolutionBodySpec& spec, const Vec& x);

// ---------------------------------------------------------------------------
// Polytopal pair: a box with two vertices cut off

struct PolytopeConstruction {
  std::vector<double> a;
  std::vector<int> u_signs;
  std::vector<int> v_signs;
  Vec xi;
  Vec eta;
  double t_off = 0.0;
  double s_off = 0.0;
  double lambda = 0.0;
  double lambda_max = 0.0;
  HPolytope K;
  HPolytope L;

  const HPolytope& member(Variant v) const { return v == Variant::K ? K : L; }
};

/// Builds K = R ∩ {<x,xi> <= t - lambda} ∩ {<x,eta> <= s - lambda} and
/// L = R ∩ {<x,xi> <= t - lambda} ∩ {<x,eta> >= -s + lambda}, then verifies
/// by vertex enumeration that each cut region holds exactly its own box
/// vertex and that the two cut regions of each body are disjoint.
/// lambda defaults to half the vertex-functional gap 2 min(a)/sqrt(n).
PolytopeConstruction build_polytope_pair(const std::vector<double>& a, const std::vector<int>& u_signs,
                                         const std::vector<int>& v_signs,
                                         std::optional<double> lambda = std::nullopt);

// ---------------------------------------------------------------------------
// Uniform evaluation contract

/// Cached exact data for polytopal bodies; exact paths key off its presence.
struct PolytopeData {
  HPolytope hrep;
  VRep vrep;
};

/// Radial, support and membership of a convex body containing the origin in
/// its interior. Direction arguments must be unit vectors. Functions are
/// pure and safe to call concurrently.
struct ConvexBodyOracle {
  int dim = 0;
  std::function<double(const Vec&)> radial;
  std::function<double(const Vec&)> support;
  std::function<bool(const Vec&)> member;
  double eval_tol = 0.0;
  std::shared_ptr<const PolytopeData> polytope;
  std::string label;

  bool is_polytope() const { return polytope != nullptr; }
};

inline constexpr double kSmoothEvalTol = 1e-11;
inline constexpr double kPolytopeEvalTol = 1e-12;

ConvexBodyOracle oracle_of(const RevolutionBodySpec& spec);
ConvexBodyOracle oracle_of(const HPolytope& p, std::string label = "polytope");

}  // namespace convexlab
