#include "convexlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace convexlab {

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczosCoeffs[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

double gamma_fn(double x) {
  if (x <= 0.0 && x == std::floor(x)) {
    throw std::domain_error("gamma_fn: pole at non-positive integer");
  }
  if (x < 0.5) {
    return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
  }
  x -= 1.0;
  double a = kLanczosCoeffs[0];
  const double t = x + kLanczosG + 0.5;
  for (int i = 1; i < 9; ++i) a += kLanczosCoeffs[i] / (x + i);
  return std::sqrt(2.0 * kPi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

double kappa(int d) {
  if (d < 0) throw std::invalid_argument("kappa: negative dimension");
  if (d == 0) return 1.0;
  return std::pow(kPi, 0.5 * d) / gamma_fn(0.5 * d + 1.0);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

Vec unit(const Vec& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("unit: zero or non-finite vector");
  }
  return v / norm;
}

Vec basis_vector(int n, int i) {
  Vec e = Vec::Zero(n);
  e(i) = 1.0;
  return e;
}

// ---------------------------------------------------------------------------

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_index)
    : seed_(seed),
      stream_index_(stream_index),
      engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream_index + 0x632BE59BD9B4E019ULL))) {}

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * m;
  has_spare_ = true;
  return u * m;
}

Vec RngStream::direction(int n) {
  Vec g(n);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < n; ++i) g(i) = normal();
    norm2 = g.squaredNorm();
  } while (norm2 < 1e-300);
  return g / std::sqrt(norm2);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return splitmix64(seed ^ splitmix64(tag * 0xD1B54A32D192ED03ULL + 1));
}

// ---------------------------------------------------------------------------

Subspace::Subspace(Mat basis) : basis_(std::move(basis)) {
  const int n = static_cast<int>(basis_.rows());
  const int k = static_cast<int>(basis_.cols());
  if (k < 1 || k > n || n > kMaxDim) {
    throw std::invalid_argument("Subspace: need 1 <= k <= n <= " + std::to_string(kMaxDim));
  }
  const Mat gram = basis_.transpose() * basis_;
  const double err = (gram - Mat::Identity(k, k)).cwiseAbs().maxCoeff();
  if (!(err < 1e-10)) {
    throw std::invalid_argument("Subspace: basis is not orthonormal (error " + std::to_string(err) + ")");
  }
}

Subspace Subspace::coordinate(int n, const std::vector<int>& axes) {
  Mat b = Mat::Zero(n, static_cast<int>(axes.size()));
  for (std::size_t j = 0; j < axes.size(); ++j) {
    if (axes[j] < 0 || axes[j] >= n) throw std::invalid_argument("Subspace::coordinate: axis out of range");
    b(axes[j], static_cast<int>(j)) = 1.0;
  }
  return Subspace(b);
}

Subspace Subspace::span(const Mat& columns) {
  const int n = static_cast<int>(columns.rows());
  const int k = static_cast<int>(columns.cols());
  Eigen::HouseholderQR<Mat> qr(columns);
  const Mat r = qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();
  Mat q = qr.householderQ() * Mat::Identity(n, k);
  for (int j = 0; j < k; ++j) {
    if (std::abs(r(j, j)) < 1e-12) throw std::invalid_argument("Subspace::span: dependent columns");
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return Subspace(q);
}

Subspace Subspace::complement(const Vec& normal) {
  const int n = static_cast<int>(normal.size());
  if (n < 2) throw std::invalid_argument("Subspace::complement: need n >= 2");
  const Vec nu = unit(normal);
  // Householder-style completion: project the coordinate axes least aligned
  // with the normal and orthonormalize.
  Mat cols(n, n - 1);
  int largest = 0;
  nu.cwiseAbs().maxCoeff(&largest);
  int c = 0;
  for (int i = 0; i < n; ++i) {
    if (i == largest) continue;
    Vec e = basis_vector(n, i);
    cols.col(c++) = e - nu * nu.dot(e);
  }
  return span(cols);
}

Vec Subspace::embed(const Vec& u) const {
  if (u.size() != basis_.cols()) throw std::invalid_argument("Subspace::embed: dimension mismatch");
  return basis_ * u;
}

Vec Subspace::coords(const Vec& x) const {
  if (x.size() != basis_.rows()) throw std::invalid_argument("Subspace::coords: dimension mismatch");
  return basis_.transpose() * x;
}

Subspace sample_haar_subspace(int n, int k, RngStream& rng) {
  if (k < 1 || k > n || n > kMaxDim) throw std::invalid_argument("sample_haar_subspace: need 1 <= k <= n");
  for (;;) {
    Mat g(n, k);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < n; ++i) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Mat> qr(g);
    const Mat& qr_packed = qr.matrixQR();
    bool degenerate = false;
    for (int j = 0; j < k; ++j) degenerate |= std::abs(qr_packed(j, j)) < 1e-12;
    if (degenerate) continue;
    Mat q = qr.householderQ() * Mat::Identity(n, k);
    for (int j = 0; j < k; ++j)
      if (qr_packed(j, j) < 0.0) q.col(j) *= -1.0;
    return Subspace(q);
  }
}

std::vector<Vec> fibonacci_sphere(int count) {
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(count));
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * i;
    Vec p(3);
    p << r * std::cos(phi), r * std::sin(phi), z;
    pts.push_back(p);
  }
  return pts;
}

}  // namespace convexlab
