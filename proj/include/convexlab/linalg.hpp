#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

namespace convexlab {

/// Largest ambient dimension supported anywhere in the library. Vectors and
/// matrices use fixed-capacity storage so hot loops never touch the heap.
inline constexpr int kMaxDim = 8;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;
using Vec2 = Eigen::Vector2d;

inline constexpr double kPi = 3.14159265358979323846;

/// Gamma function via a Lanczos approximation (g = 7, 9 terms), x > 0.
double gamma_fn(double x);

/// Volume of the d-dimensional unit ball, pi^{d/2} / Gamma(d/2 + 1).
double kappa(int d);

double binomial(int n, int k);

/// Returns v / |v|. Throws std::invalid_argument on a zero vector.
Vec unit(const Vec& v);

/// Standard basis vector e_i in R^n.
Vec basis_vector(int n, int i);

/// Reproducible random stream. A stream is a pure function of
/// (seed, stream_index): the engine is seeded from a SplitMix64 hash of the
/// pair, and all derived variates are computed here rather than through
/// implementation-defined standard distributions.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_index);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Marsaglia polar method).
  double normal();
  /// Uniform point on S^{n-1}.
  Vec direction(int n);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Derive an independent seed for a named purpose (e.g. subspaces vs. points).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

/// A k-dimensional linear subspace of R^n, stored as an n x k matrix with
/// orthonormal columns.
class Subspace {
 public:
  /// Throws std::invalid_argument unless basis^T basis = I within 1e-10.
  explicit Subspace(Mat basis);

  /// Span of the given coordinate axes.
  static Subspace coordinate(int n, const std::vector<int>& axes);
  /// Orthonormalized span of the given columns (must be independent).
  static Subspace span(const Mat& columns);
  /// Orthogonal complement of a unit vector, as an (n-1)-dimensional subspace.
  static Subspace complement(const Vec& normal);

  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Mat& basis() const { return basis_; }

  /// basis * u. Throws std::invalid_argument if u.size() != dim().
  Vec embed(const Vec& u) const;
  /// basis^T * x. Throws std::invalid_argument if x.size() != ambient_dim().
  Vec coords(const Vec& x) const;
  Mat projector() const { return basis_ * basis_.transpose(); }

 private:
  Mat basis_;
};

/// Haar-distributed element of G(n, k): Gaussian n x k matrix, Householder QR,
/// signs fixed so that diag(R) > 0. Rank-deficient draws are redrawn.
Subspace sample_haar_subspace(int n, int k, RngStream& rng);

/// Deterministic quasi-uniform point set on S^2 (spherical Fibonacci lattice).
std::vector<Vec> fibonacci_sphere(int count);

}  // namespace convexlab
