#pragma once

#include "convexlab/body_spec.hpp"
#include "convexlab/intrinsic_volumes.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace convexlab {

struct BodyPair {
  std::string name;
  BodySpec spec_k;
  BodySpec spec_l;
  ConvexBodyOracle K;
  ConvexBodyOracle L;
};

BodyPair make_body_pair(std::string name, BodySpec k, BodySpec l);

BodyPair smooth_pair(int n = 3, double epsilon = kDefaultEpsilon, double delta = kDefaultDelta);
BodyPair polytope_pair();
/// Polytope K against K rotated by 90 degrees about e1.
BodyPair control_rotated_pair();
/// Unit ball against the unit ball shifted by (0.3, 0, ..., 0).
BodyPair control_shifted_pair(int n = 3);
BodyPair self_pair(const BodySpec& spec);

/// smooth | polytope | control-rotated | control-shifted.
BodyPair fixture(const std::string& name, int n = 3);

struct SampleRecord {
  long id = 0;
  /// Subspace basis (n x k) or direction, flattened row-major.
  std::vector<double> basis;
  double value_k = 0.0;
  double value_l = 0.0;
  double abs_diff = 0.0;
  double rel_diff = 0.0;
  double std_error = 0.0;
};

enum class PassRule {
  /// max rel_diff <= tolerance.
  Relative,
  /// every |value_K - value_L| <= 3 std_error + tolerance.
  AbsoluteSigma,
  /// experiment-specific; see the details field.
  Custom
};

std::string to_string(PassRule r);

struct ReportSummary {
  double max_rel_diff = 0.0;
  double mean_rel_diff = 0.0;
  double max_abs_diff = 0.0;
  double tolerance = 0.0;
  PassRule rule = PassRule::Relative;
  bool pass = false;
};

struct ExperimentReport {
  std::string experiment;
  std::string pair;
  nlohmann::json bodies;
  nlohmann::json parameters;
  std::vector<SampleRecord> samples;
  ReportSummary summary;
  nlohmann::json details = nlohmann::json::object();
  double runtime_seconds = 0.0;
};

/// Fills value-derived fields and the summary, applying the given rule.
void finalize_report(ExperimentReport& r, PassRule rule, double tolerance);

SampleRecord make_record(long id, std::vector<double> basis, double vk, double vl, double std_error);
std::vector<double> flatten(const Mat& m);

struct Lemma1Options {
  int directions = 10000;
  std::uint64_t seed = 7;
  double tolerance = 1e-8;
  /// Points within this distance of a radial value are skipped.
  double skip_band = 1e-9;
};

/// Radial and support pairing discrepancies over Haar directions, plus the
/// point check that K \ L = -(L \ K) on 10 N points near the boundaries.
/// value_K holds d_rho and value_L holds d_h for each direction.
ExperimentReport lemma1_check(const BodyPair& pair, const Lemma1Options& opt);

struct SectionOptions {
  int k = 2;
  int i = 1;
  int subspaces = 200;
  std::uint64_t seed = 7;
  double tolerance = 1e-5;
  int polyline_points = 8192;
  int kubota_subspaces = 400;
};

ExperimentReport sections_experiment(const BodyPair& pair, const SectionOptions& opt);

struct SlabOptions {
  double t = 0.5;
  int i = 3;
  int directions = 50;
  std::uint64_t seed = 7;
  double tolerance = 1e-4;
  SlabQuadrature quadrature;
  int kubota_subspaces = 400;
};

ExperimentReport slab_experiment(const BodyPair& pair, const SlabOptions& opt);

struct ProjectionOptions {
  int k = 1;
  int subspaces = 200;
  std::uint64_t seed = 7;
  double tolerance = 1e-8;
  int area_points = 8192;
  int lattice_points = 4000;
};

ExperimentReport projections_experiment(const BodyPair& pair, const ProjectionOptions& opt);

struct ConvergenceOptions {
  int i = 1;
  std::vector<double> t_sequence = {0.4, 0.2, 0.1, 0.05};
  /// Unset: a Haar direction drawn from the seed.
  std::optional<Vec> xi;
  std::uint64_t seed = 7;
  int polyline_points = 8192;
  SlabQuadrature quadrature;
};

/// V_i(B ∩ S_t(xi)) against V_i(K ∩ xi^perp) for B = K and B = L, over a
/// decreasing t sequence. For a genuine pair both limits coincide. Passes
/// when each difference sequence shrinks monotonically (3 sigma slack) and
/// its last term is at most 2 C t_min + 3 sigma, C the least-squares slope
/// through the origin.
ExperimentReport convergence_experiment(const BodyPair& pair, const ConvergenceOptions& opt);

/// V_i(K ∩ S_t(xi)) for the exact or quadrature path matching the body.
IVEstimate slab_intrinsic_volume(const ConvexBodyOracle& body, const Vec& xi, double t, int i,
                                 const SlabQuadrature& q = {}, int kubota_subspaces = 400,
                                 std::uint64_t seed = 0);

/// V_i(K ∩ H) by the best available path.
IVEstimate section_intrinsic_volume(const ConvexBodyOracle& body, const Subspace& h, int i, int polyline_points = 8192,
                                    int kubota_subspaces = 400, std::uint64_t seed = 0);

enum class Verdict { Noncongruent, Inconclusive };

std::string to_string(Verdict v);

struct NoncongruenceCertificate {
  std::string method;
  double statistic = 0.0;
  double threshold = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> assumptions;
  nlohmann::json details = nlohmann::json::object();
};

struct CertificateOptions {
  bool harmonic = true;
  int harmonic_degree = 16;
  int harmonic_polar = 256;
  int harmonic_azimuth = 512;
};

/// Isometry-invariant signatures that can only ever certify noncongruence.
std::vector<NoncongruenceCertificate> noncongruence_certificates(const BodyPair& pair,
                                                                 const CertificateOptions& opt = {});

ExperimentReport certify_experiment(const BodyPair& pair, const CertificateOptions& opt = {});

}  // namespace convexlab
