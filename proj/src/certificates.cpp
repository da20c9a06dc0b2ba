#include "convexlab/experiments.hpp"

#include "convexlab/numeric.hpp"
#include "convexlab/parallel.hpp"
#include "convexlab/transforms.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>

namespace convexlab {

using nlohmann::json;

std::string to_string(Verdict v) { return v == Verdict::Noncongruent ? "noncongruent" : "inconclusive"; }

namespace {

constexpr double kVertexThreshold = 1e-6;
constexpr double kHarmonicThreshold = 1e-6;
constexpr int kProfileGrid = 100000;

std::vector<double> distance_multiset(const VRep& v) {
  Vec centroid = Vec::Zero(v.dim);
  for (const auto& x : v.vertices) centroid += x;
  centroid /= static_cast<double>(v.vertices.size());
  std::vector<double> d;
  for (std::size_t a = 0; a < v.vertices.size(); ++a)
    for (std::size_t b = a + 1; b < v.vertices.size(); ++b)
      d.push_back(((v.vertices[a] - centroid) - (v.vertices[b] - centroid)).norm());
  std::sort(d.begin(), d.end());
  return d;
}

NoncongruenceCertificate vertex_certificate(const VRep& k, const VRep& l) {
  NoncongruenceCertificate c;
  c.method = "vertex-distance-multiset";
  c.threshold = kVertexThreshold;
  c.assumptions = {"an isometry maps vertices to vertices and preserves pairwise distances"};
  const std::vector<double> dk = distance_multiset(k);
  const std::vector<double> dl = distance_multiset(l);
  c.details = {{"vertices_K", k.vertices.size()}, {"vertices_L", l.vertices.size()}};
  if (dk.size() != dl.size()) {
    // Different vertex counts already rule out congruence.
    c.statistic = 1.0;
    c.details["note"] = "vertex counts differ";
  } else {
    for (std::size_t j = 0; j < dk.size(); ++j) c.statistic = std::max(c.statistic, std::abs(dk[j] - dl[j]));
  }
  c.verdict = c.statistic > c.threshold ? Verdict::Noncongruent : Verdict::Inconclusive;
  return c;
}

NoncongruenceCertificate profile_certificate(const RevolutionBodySpec& k, const RevolutionBodySpec& l) {
  NoncongruenceCertificate c;
  c.method = "profile-mismatch";
  c.threshold = std::max(k.epsilon, l.epsilon) * std::exp(-1.0) / 2.0;
  c.assumptions = {"any isometry between non-spherical bodies of revolution maps axis to axis"};
  std::vector<double> grid;
  grid.reserve(kProfileGrid + 5);
  for (int j = 0; j <= kProfileGrid; ++j) grid.push_back(-1.0 + 2.0 * j / kProfileGrid);
  for (double t : {-kBumpCenterHigh, -kBumpCenterLow, kBumpCenterLow, kBumpCenterHigh}) grid.push_back(t);
  double direct = 0.0;
  double reflected = 0.0;
  for (double t : grid) {
    const double f = profile(k, t);
    direct = std::max(direct, std::abs(f - profile(l, t)));
    reflected = std::max(reflected, std::abs(f - profile(l, -t)));
  }
  c.statistic = std::min(direct, reflected);
  c.details = {{"sup_f_minus_g", direct}, {"sup_f_minus_g_reflected", reflected}, {"grid_points", grid.size()}};
  c.verdict = c.statistic > c.threshold ? Verdict::Noncongruent : Verdict::Inconclusive;
  return c;
}

Vec lattice_centroid(const ConvexBodyOracle& body) {
  const std::vector<Vec> nodes = fibonacci_sphere(200000);
  std::vector<double> r(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t j) { r[j] = body.radial(nodes[j]); });
  Vec moment = Vec::Zero(3);
  double volume = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    moment += std::pow(r[j], 4) / 4.0 * nodes[j];
    volume += std::pow(r[j], 3) / 3.0;
  }
  return moment / volume;
}

// Per-degree energies sum_m |c_lm|^2 of the radial function in orthonormal
// spherical harmonics.
std::vector<double> harmonic_energies(const ConvexBodyOracle& body, const CertificateOptions& opt) {
  const int lmax = opt.harmonic_degree;
  const int np = opt.harmonic_polar;
  const int na = opt.harmonic_azimuth;
  const numeric::QuadratureRule gl = numeric::gauss_legendre(np);
  // a[i][m] = int rho(x_i, phi) e^{-i m phi} d phi
  std::vector<std::vector<std::complex<double>>> a(np, std::vector<std::complex<double>>(lmax + 1));
  parallel_for(static_cast<std::size_t>(np), [&](std::size_t i) {
    const double x = gl.nodes[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    std::vector<double> ring(na);
    for (int q = 0; q < na; ++q) {
      const double phi = 2.0 * kPi * q / na;
      Vec d(3);
      d << s * std::cos(phi), s * std::sin(phi), x;
      ring[q] = body.radial(d);
    }
    for (int m = 0; m <= lmax; ++m) {
      std::complex<double> acc = 0.0;
      for (int q = 0; q < na; ++q) acc += ring[q] * std::polar(1.0, -m * 2.0 * kPi * q / na);
      a[i][m] = acc * (2.0 * kPi / na);
    }
  });
  std::vector<double> energy(lmax + 1, 0.0);
  for (int m = 0; m <= lmax; ++m) {
    std::vector<std::complex<double>> c(lmax + 1, 0.0);
    for (int i = 0; i < np; ++i) {
      const double x = gl.nodes[i];
      const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
      // Associated Legendre P_l^m(x) by upward recursion in l.
      double pmm = 1.0;
      for (int j = 1; j <= m; ++j) pmm *= -(2.0 * j - 1.0) * s;
      double prev = 0.0;
      double cur = pmm;
      for (int l = m; l <= lmax; ++l) {
        if (l == m + 1) {
          prev = cur;
          cur = x * (2.0 * m + 1.0) * pmm;
        } else if (l > m + 1) {
          const double next = ((2.0 * l - 1.0) * x * cur - (l + m - 1.0) * prev) / (l - m);
          prev = cur;
          cur = next;
        }
        const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * kPi) * std::exp(std::lgamma(l - m + 1.0) - std::lgamma(l + m + 1.0)));
        c[l] += gl.weights[i] * norm * cur * a[i][m];
      }
    }
    for (int l = m; l <= lmax; ++l) energy[l] += (m == 0 ? 1.0 : 2.0) * std::norm(c[l]);
  }
  return energy;
}

NoncongruenceCertificate harmonic_certificate(const BodyPair& pair, const CertificateOptions& opt) {
  NoncongruenceCertificate c;
  c.method = "harmonic-spectrum";
  c.threshold = kHarmonicThreshold;
  c.assumptions = {"bodies centered at their centroids; per-degree energies are rotation invariant"};
  const ConvexBodyOracle k = translate_oracle(pair.K, lattice_centroid(pair.K));
  const ConvexBodyOracle l = translate_oracle(pair.L, lattice_centroid(pair.L));
  const std::vector<double> ek = harmonic_energies(k, opt);
  const std::vector<double> el = harmonic_energies(l, opt);
  std::vector<double> gaps(ek.size());
  for (std::size_t j = 0; j < ek.size(); ++j) {
    gaps[j] = std::abs(ek[j] - el[j]);
    c.statistic = std::max(c.statistic, gaps[j]);
  }
  c.details = {{"degree", opt.harmonic_degree},
               {"grid", {opt.harmonic_polar, opt.harmonic_azimuth}},
               {"energy_gaps", gaps}};
  c.verdict = c.statistic > c.threshold ? Verdict::Noncongruent : Verdict::Inconclusive;
  return c;
}

const RevolutionBodySpec* plain_revolution(const BodySpec& s) {
  return std::get_if<RevolutionBodySpec>(&s.shape);
}

json certificate_json(const NoncongruenceCertificate& c) {
  return {{"method", c.method},
          {"statistic", c.statistic},
          {"threshold", c.threshold},
          {"verdict", to_string(c.verdict)},
          {"assumptions", c.assumptions},
          {"details", c.details}};
}

}  // namespace

std::vector<NoncongruenceCertificate> noncongruence_certificates(const BodyPair& pair,
                                                                 const CertificateOptions& opt) {
  std::vector<NoncongruenceCertificate> out;
  if (pair.K.dim != pair.L.dim) return out;
  if (pair.K.is_polytope() && pair.L.is_polytope()) {
    out.push_back(vertex_certificate(pair.K.polytope->vrep, pair.L.polytope->vrep));
  }
  const RevolutionBodySpec* rk = plain_revolution(pair.spec_k);
  const RevolutionBodySpec* rl = plain_revolution(pair.spec_l);
  if (rk && rl && rk->n == rl->n) out.push_back(profile_certificate(*rk, *rl));
  if (opt.harmonic && pair.K.dim == 3 && !(pair.K.is_polytope() && pair.L.is_polytope())) {
    out.push_back(harmonic_certificate(pair, opt));
  }
  return out;
}

ExperimentReport certify_experiment(const BodyPair& pair, const CertificateOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport r;
  r.experiment = "certify";
  r.pair = pair.name;
  r.bodies = {{"K", to_json(pair.spec_k)}, {"L", to_json(pair.spec_l)}};
  const std::vector<NoncongruenceCertificate> certs = noncongruence_certificates(pair, opt);
  json list = json::array();
  bool any = false;
  for (std::size_t j = 0; j < certs.size(); ++j) {
    const auto& c = certs[j];
    SampleRecord s;
    s.id = static_cast<long>(j);
    s.value_k = c.statistic;
    s.value_l = c.threshold;
    s.abs_diff = std::abs(c.statistic - c.threshold);
    r.samples.push_back(s);
    list.push_back(certificate_json(c));
    any = any || c.verdict == Verdict::Noncongruent;
  }
  r.parameters = {{"n", pair.K.dim}, {"samples", certs.size()}, {"harmonic_degree", opt.harmonic_degree}};
  finalize_report(r, PassRule::Custom, 0.0);
  r.summary.pass = any;
  r.details = {{"certificates", list}, {"pass_rule", "some certificate returns noncongruent"}};
  r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace convexlab
