#include "convexlab/experiments.hpp"

#include "convexlab/parallel.hpp"
#include "convexlab/transforms.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace convexlab {

using nlohmann::json;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool is_deterministic(IVMethod m) {
  return m == IVMethod::ExactPolygon || m == IVMethod::ExactPoly3 || m == IVMethod::Polyline;
}

json bodies_json(const BodyPair& pair) { return {{"K", to_json(pair.spec_k)}, {"L", to_json(pair.spec_l)}}; }

void require_same_dimension(const BodyPair& pair) {
  if (pair.K.dim != pair.L.dim) throw std::invalid_argument("pair: bodies must have the same dimension");
}

// Min over the two pairings of the max componentwise difference.
double pairing_distance(double a, double b, double c, double d) {
  return std::min(std::max(std::abs(a - c), std::abs(b - d)), std::max(std::abs(a - d), std::abs(b - c)));
}

}  // namespace

std::string to_string(PassRule r) {
  switch (r) {
    case PassRule::Relative:
      return "max_rel_diff <= tolerance";
    case PassRule::AbsoluteSigma:
      return "abs_diff <= 3 stderr + tolerance";
    case PassRule::Custom:
      return "custom";
  }
  return "unknown";
}

std::vector<double> flatten(const Mat& m) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m.size()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
  return out;
}

SampleRecord make_record(long id, std::vector<double> basis, double vk, double vl, double std_error) {
  SampleRecord s;
  s.id = id;
  s.basis = std::move(basis);
  s.value_k = vk;
  s.value_l = vl;
  s.abs_diff = std::abs(vk - vl);
  const double scale = std::max(std::abs(vk), std::abs(vl));
  s.rel_diff = scale > 0.0 ? s.abs_diff / scale : 0.0;
  s.std_error = std_error;
  return s;
}

void finalize_report(ExperimentReport& r, PassRule rule, double tolerance) {
  ReportSummary& s = r.summary;
  s = ReportSummary{};
  s.rule = rule;
  s.tolerance = tolerance;
  double sum = 0.0;
  bool within_sigma = true;
  for (const auto& x : r.samples) {
    s.max_rel_diff = std::max(s.max_rel_diff, x.rel_diff);
    s.max_abs_diff = std::max(s.max_abs_diff, x.abs_diff);
    sum += x.rel_diff;
    within_sigma = within_sigma && x.abs_diff <= 3.0 * x.std_error + tolerance;
  }
  s.mean_rel_diff = r.samples.empty() ? 0.0 : sum / static_cast<double>(r.samples.size());
  if (rule == PassRule::Relative) s.pass = s.max_rel_diff <= tolerance;
  else if (rule == PassRule::AbsoluteSigma) s.pass = within_sigma;
}

// ---------------------------------------------------------------------------
// Fixtures

BodyPair make_body_pair(std::string name, BodySpec k, BodySpec l) {
  BodyPair p;
  p.name = std::move(name);
  p.K = build_oracle(k);
  p.L = build_oracle(l);
  p.spec_k = std::move(k);
  p.spec_l = std::move(l);
  return p;
}

BodyPair smooth_pair(int n, double epsilon, double delta) {
  BodySpec k{make_revolution_spec(n, epsilon, delta, Variant::K), std::nullopt, std::nullopt};
  BodySpec l{make_revolution_spec(n, epsilon, delta, Variant::L), std::nullopt, std::nullopt};
  return make_body_pair("smooth", k, l);
}

namespace {

PolytopeBodySpec default_polytope(Variant v) {
  return PolytopeBodySpec{{1.0, 1.2, 1.5}, {1, 1, 1}, {1, 1, -1}, std::nullopt, v};
}

}  // namespace

BodyPair polytope_pair() {
  BodySpec k{default_polytope(Variant::K), std::nullopt, std::nullopt};
  BodySpec l{default_polytope(Variant::L), std::nullopt, std::nullopt};
  return make_body_pair("polytope", k, l);
}

BodyPair control_rotated_pair() {
  Mat q = Mat::Zero(3, 3);
  q(0, 0) = 1.0;
  q(1, 2) = -1.0;
  q(2, 1) = 1.0;
  BodySpec k{default_polytope(Variant::K), std::nullopt, std::nullopt};
  BodySpec l{default_polytope(Variant::K), q, std::nullopt};
  return make_body_pair("control-rotated", k, l);
}

BodyPair control_shifted_pair(int n) {
  Vec shift = Vec::Zero(n);
  shift(0) = 0.3;
  BodySpec k{BallBodySpec{n}, std::nullopt, std::nullopt};
  BodySpec l{BallBodySpec{n}, std::nullopt, shift};
  return make_body_pair("control-shifted", k, l);
}

BodyPair self_pair(const BodySpec& spec) { return make_body_pair("self", spec, spec); }

BodyPair fixture(const std::string& name, int n) {
  if (name == "smooth") return smooth_pair(n);
  if (name == "polytope") {
    if (n != 3) throw std::invalid_argument("fixture polytope: the default pair lives in n = 3");
    return polytope_pair();
  }
  if (name == "control-rotated") {
    if (n != 3) throw std::invalid_argument("fixture control-rotated: defined for n = 3");
    return control_rotated_pair();
  }
  if (name == "control-shifted") return control_shifted_pair(n);
  throw std::invalid_argument("unknown pair '" + name + "' (smooth, polytope, control-rotated, control-shifted)");
}

// ---------------------------------------------------------------------------
// Pairing of radial and support values

ExperimentReport lemma1_check(const BodyPair& pair, const Lemma1Options& opt) {
  require_same_dimension(pair);
  if (opt.directions < 1) throw std::invalid_argument("lemma1: need at least one direction");
  const auto start = std::chrono::steady_clock::now();
  const int n = pair.K.dim;
  const ConvexBodyOracle& K = pair.K;
  const ConvexBodyOracle& L = pair.L;

  ExperimentReport r;
  r.experiment = "lemma1";
  r.pair = pair.name;
  r.bodies = bodies_json(pair);
  r.parameters = {{"n", n}, {"samples", opt.directions}, {"seed", opt.seed}, {"tolerance", opt.tolerance},
                  {"point_samples", 10 * opt.directions}, {"skip_band", opt.skip_band}};
  r.samples.resize(opt.directions);
  std::vector<double> d_rho(opt.directions);
  std::vector<double> d_h(opt.directions);
  parallel_for(static_cast<std::size_t>(opt.directions), [&](std::size_t j) {
    RngStream rng(opt.seed, j);
    const Vec xi = rng.direction(n);
    const double rk = K.radial(xi), rk_ = K.radial(-xi), rl = L.radial(xi), rl_ = L.radial(-xi);
    const double hk = K.support(xi), hk_ = K.support(-xi), hl = L.support(xi), hl_ = L.support(-xi);
    d_rho[j] = pairing_distance(rk, rk_, rl, rl_);
    d_h[j] = pairing_distance(hk, hk_, hl, hl_);
    SampleRecord s;
    s.id = static_cast<long>(j);
    s.basis = flatten(xi);
    s.value_k = d_rho[j];
    s.value_l = d_h[j];
    s.abs_diff = std::max(d_rho[j], d_h[j]);
    s.rel_diff = std::max(d_rho[j] / std::max({rk, rk_, rl, rl_}), d_h[j] / std::max({hk, hk_, hl, hl_}));
    r.samples[j] = std::move(s);
  });

  // Points x with x in K \ L must have -x in L \ K, and symmetrically.
  const long points = 10L * opt.directions;
  enum : char { kOutside = 0, kChecked = 1, kFailed = 2, kSkipped = 3 };
  std::vector<char> status(points);
  const std::uint64_t point_seed = derive_seed(opt.seed, 0x706f696e74ULL);
  parallel_for(static_cast<std::size_t>(points), [&](std::size_t j) {
    RngStream rng(point_seed, j);
    const Vec theta = rng.direction(n);
    const double radii[4] = {K.radial(theta), L.radial(theta), K.radial(-theta), L.radial(-theta)};
    const double lo = std::min(radii[0], radii[1]);
    const double hi = std::max(radii[0], radii[1]);
    const double margin = 0.1 * (hi - lo) + 1e-3 * hi;
    const double rad = rng.uniform(lo - margin, hi + margin);
    for (double v : radii) {
      if (std::abs(rad - v) < opt.skip_band) {
        status[j] = kSkipped;
        return;
      }
    }
    const Vec x = rad * theta;
    const bool in_k = K.member(x);
    const bool in_l = L.member(x);
    if (in_k == in_l) {
      status[j] = kOutside;
      return;
    }
    const bool ok = in_k ? (L.member(-x) && !K.member(-x)) : (K.member(-x) && !L.member(-x));
    status[j] = ok ? kChecked : kFailed;
  });
  long checked = 0, failed = 0, skipped = 0;
  for (char c : status) {
    checked += c == kChecked || c == kFailed;
    failed += c == kFailed;
    skipped += c == kSkipped;
  }
  finalize_report(r, PassRule::Custom, opt.tolerance);
  const double max_rho = *std::max_element(d_rho.begin(), d_rho.end());
  const double max_h = *std::max_element(d_h.begin(), d_h.end());
  r.details = {{"max_d_rho", max_rho},          {"max_d_h", max_h},
               {"point_samples", points},       {"points_in_symmetric_difference", checked},
               {"point_failures", failed},      {"points_skipped", skipped},
               {"pass_rule", "max(d_rho, d_h) <= tolerance and no point failures"}};
  r.summary.pass = std::max(max_rho, max_h) <= opt.tolerance && failed == 0;
  r.runtime_seconds = seconds_since(start);
  return r;
}

// ---------------------------------------------------------------------------
// Sections, slabs, projections

IVEstimate section_intrinsic_volume(const ConvexBodyOracle& body, const Subspace& h, int i, int polyline_points,
                                    int kubota_subspaces, std::uint64_t seed) {
  const int k = h.dim();
  if (i < 1 || i > k) throw std::invalid_argument("section: need 1 <= i <= k");
  if (body.is_polytope() && k == 2) {
    const PlanarMetrics m = polygon_metrics(section_polygon(body.polytope->hrep, h));
    return {i, i == 1 ? m.perimeter / 2.0 : m.area, 0.0, IVMethod::ExactPolygon, 0};
  }
  const ConvexBodyOracle sec = section_oracle(body, h);
  if (sec.is_polytope() && k == 3) {
    const Poly3Volumes v = poly3_intrinsic_volumes(sec.polytope->hrep, sec.polytope->vrep);
    return {i, i == 1 ? v.v1 : (i == 2 ? v.v2 : v.v3), 0.0, IVMethod::ExactPoly3, 0};
  }
  if (k == 2) {
    const PlanarEstimate e = planar_metrics_from_oracle(sec, polyline_points);
    return i == 1 ? e.v1 : e.v2;
  }
  KubotaOptions ko;
  ko.subspaces = kubota_subspaces;
  ko.seed = seed;
  return kubota_intrinsic_volume(sec, i, ko);
}

ExperimentReport sections_experiment(const BodyPair& pair, const SectionOptions& opt) {
  require_same_dimension(pair);
  const int n = pair.K.dim;
  if (!(1 <= opt.i && opt.i <= opt.k && opt.k <= n - 1))
    throw std::invalid_argument("sections: need 1 <= i <= k <= n - 1 (got i = " + std::to_string(opt.i) +
                                ", k = " + std::to_string(opt.k) + ", n = " + std::to_string(n) + ")");
  if (opt.subspaces < 1) throw std::invalid_argument("sections: need at least one subspace");
  if (!(opt.tolerance > 0.0)) throw std::invalid_argument("sections: tolerance must be positive");
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport r;
  r.experiment = "sections";
  r.pair = pair.name;
  r.bodies = bodies_json(pair);
  r.samples.resize(opt.subspaces);
  std::vector<IVMethod> methods(opt.subspaces);
  parallel_for(static_cast<std::size_t>(opt.subspaces), [&](std::size_t j) {
    RngStream rng(opt.seed, j);
    const Subspace h = sample_haar_subspace(n, opt.k, rng);
    const std::uint64_t sub_seed = derive_seed(opt.seed, j);
    const IVEstimate ek = section_intrinsic_volume(pair.K, h, opt.i, opt.polyline_points, opt.kubota_subspaces, sub_seed);
    const IVEstimate el = section_intrinsic_volume(pair.L, h, opt.i, opt.polyline_points, opt.kubota_subspaces, sub_seed);
    methods[j] = is_deterministic(ek.method) && is_deterministic(el.method) ? ek.method : IVMethod::KubotaMC;
    r.samples[j] = make_record(static_cast<long>(j), flatten(h.basis()), ek.value, el.value,
                               std::hypot(ek.std_error, el.std_error));
  });
  const bool deterministic = std::all_of(methods.begin(), methods.end(), is_deterministic);
  r.parameters = {{"n", n},
                  {"k", opt.k},
                  {"i", opt.i},
                  {"samples", opt.subspaces},
                  {"seed", opt.seed},
                  {"tolerance", opt.tolerance},
                  {"method", to_string(methods.front())},
                  {"polyline_points", opt.polyline_points}};
  finalize_report(r, deterministic ? PassRule::Relative : PassRule::AbsoluteSigma, opt.tolerance);
  r.runtime_seconds = seconds_since(start);
  return r;
}

IVEstimate slab_intrinsic_volume(const ConvexBodyOracle& body, const Vec& xi, double t, int i,
                                 const SlabQuadrature& q, int kubota_subspaces, std::uint64_t seed) {
  const int n = body.dim;
  if (i < 1 || i > n) throw std::invalid_argument("slab: need 1 <= i <= n");
  if (body.is_polytope() && (n == 2 || n == 3)) {
    const HPolytope p = slab_polytope(body.polytope->hrep, {xi, t});
    if (n == 3) return exact_poly3(p, i);
    const VRep v = enumerate_vertices(p);
    std::vector<Vec2> pts;
    for (const auto& x : v.vertices) pts.emplace_back(x(0), x(1));
    const PlanarMetrics m = polygon_metrics(convex_hull_2d(pts));
    return {i, i == 1 ? m.perimeter / 2.0 : m.area, 0.0, IVMethod::ExactPolygon, 0};
  }
  if (n == 3) return smooth_slab_intrinsic_volume(body, xi, t, i, q);
  const ConvexBodyOracle s = slab_oracle(body, {xi, t});
  if (n == 2) {
    const PlanarEstimate e = planar_metrics_from_oracle(s);
    return i == 1 ? e.v1 : e.v2;
  }
  KubotaOptions ko;
  ko.subspaces = kubota_subspaces;
  ko.seed = seed;
  return kubota_intrinsic_volume(s, i, ko);
}

ExperimentReport slab_experiment(const BodyPair& pair, const SlabOptions& opt) {
  require_same_dimension(pair);
  const int n = pair.K.dim;
  if (!(1 <= opt.i && opt.i <= n)) throw std::invalid_argument("slabs: need 1 <= i <= n");
  if (opt.directions < 1) throw std::invalid_argument("slabs: need at least one direction");
  if (!(opt.tolerance > 0.0)) throw std::invalid_argument("slabs: tolerance must be positive");
  require_admissible_slab(pair.K, opt.t);
  require_admissible_slab(pair.L, opt.t);
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport r;
  r.experiment = "slabs";
  r.pair = pair.name;
  r.bodies = bodies_json(pair);
  r.samples.resize(opt.directions);
  std::vector<IVMethod> methods(opt.directions);
  parallel_for(static_cast<std::size_t>(opt.directions), [&](std::size_t j) {
    RngStream rng(opt.seed, j);
    const Vec xi = rng.direction(n);
    const std::uint64_t sub_seed = derive_seed(opt.seed, j);
    const IVEstimate ek = slab_intrinsic_volume(pair.K, xi, opt.t, opt.i, opt.quadrature, opt.kubota_subspaces, sub_seed);
    const IVEstimate el = slab_intrinsic_volume(pair.L, xi, opt.t, opt.i, opt.quadrature, opt.kubota_subspaces, sub_seed);
    methods[j] = ek.method == el.method ? ek.method : IVMethod::Quadrature;
    r.samples[j] = make_record(static_cast<long>(j), flatten(xi), ek.value, el.value,
                               std::hypot(ek.std_error, el.std_error));
  });
  const bool exact = std::all_of(methods.begin(), methods.end(), [](IVMethod m) {
    return m == IVMethod::ExactPoly3 || m == IVMethod::ExactPolygon;
  });
  r.parameters = {{"n", n},         {"t", opt.t},
                  {"i", opt.i},     {"samples", opt.directions},
                  {"seed", opt.seed}, {"tolerance", opt.tolerance},
                  {"method", to_string(methods.front())}};
  finalize_report(r, exact ? PassRule::Relative : PassRule::AbsoluteSigma, opt.tolerance);
  r.runtime_seconds = seconds_since(start);
  return r;
}

ExperimentReport projections_experiment(const BodyPair& pair, const ProjectionOptions& opt) {
  require_same_dimension(pair);
  const int n = pair.K.dim;
  if (!(1 <= opt.k && opt.k <= n - 1)) throw std::invalid_argument("projections: need 1 <= k <= n - 1");
  if (opt.subspaces < 1) throw std::invalid_argument("projections: need at least one subspace");
  if (!(opt.tolerance > 0.0)) throw std::invalid_argument("projections: tolerance must be positive");
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport r;
  r.experiment = "projections";
  r.pair = pair.name;
  r.bodies = bodies_json(pair);
  r.samples.resize(opt.subspaces);
  std::string method;
  bool deterministic = true;
  if (opt.k == 1) {
    method = "width";
  } else if (opt.k == 2) {
    method = pair.K.is_polytope() && pair.L.is_polytope() ? "exact-polygon" : "support-area";
  } else {
    method = "quadrature";
    deterministic = false;
  }
  auto projection_volume = [&](const ConvexBodyOracle& body, const Subspace& v, std::uint64_t sub_seed) -> IVEstimate {
    if (opt.k == 1) {
      const Vec d = v.basis().col(0);
      return {1, body.support(d) + body.support(-d), 0.0, IVMethod::ExactPolygon, 0};
    }
    const SupportOracle h = projection_support_oracle(body, v);
    if (opt.k == 2) {
      if (h.vertices) {
        std::vector<Vec2> pts;
        for (const auto& x : *h.vertices) pts.emplace_back(x(0), x(1));
        return {2, polygon_metrics(convex_hull_2d(pts)).area, 0.0, IVMethod::ExactPolygon, 0};
      }
      return {2, area_from_support_2d(h.support, opt.area_points), 0.0, IVMethod::Quadrature, opt.area_points};
    }
    VolumeQuadrature q;
    q.lattice_points = opt.lattice_points;
    q.mc_samples = opt.lattice_points;
    q.seed = sub_seed;
    return volume_radial([&](const Vec& theta) { return radial_from_support(h.support, opt.k, theta); }, opt.k, q);
  };
  parallel_for(static_cast<std::size_t>(opt.subspaces), [&](std::size_t j) {
    RngStream rng(opt.seed, j);
    const Subspace v = sample_haar_subspace(n, opt.k, rng);
    const std::uint64_t sub_seed = derive_seed(opt.seed, j);
    const IVEstimate ek = projection_volume(pair.K, v, sub_seed);
    const IVEstimate el = projection_volume(pair.L, v, sub_seed);
    r.samples[j] = make_record(static_cast<long>(j), flatten(v.basis()), ek.value, el.value,
                               std::hypot(ek.std_error, el.std_error));
  });
  r.parameters = {{"n", n},           {"k", opt.k},
                  {"samples", opt.subspaces}, {"seed", opt.seed},
                  {"tolerance", opt.tolerance}, {"method", method}};
  if (opt.k == 2 && method == "support-area") {
    // Cross-check the support-area path against the polyline of the
    // projection boundary recovered from its support function.
    constexpr int kCrossPlanes = 3;
    constexpr int kCrossPoints = 1024;
    const int planes = std::min(kCrossPlanes, opt.subspaces);
    std::vector<double> gaps(planes);
    parallel_for(static_cast<std::size_t>(planes), [&](std::size_t j) {
      RngStream rng(opt.seed, j);
      const Subspace v = sample_haar_subspace(n, 2, rng);
      const SupportOracle h = projection_support_oracle(pair.K, v);
      ConvexBodyOracle proj;
      proj.dim = 2;
      proj.radial = [&](const Vec& u) { return radial_from_support(h.support, 2, u); };
      const Polygon poly = boundary_polyline(proj, kCrossPoints);
      gaps[j] = std::abs(polygon_metrics(poly).area - r.samples[j].value_k);
    });
    r.details["cross_method_planes"] = planes;
    r.details["cross_method_points"] = kCrossPoints;
    r.details["cross_method_max_abs_diff"] = *std::max_element(gaps.begin(), gaps.end());
  }
  finalize_report(r, deterministic ? PassRule::Relative : PassRule::AbsoluteSigma, opt.tolerance);
  r.runtime_seconds = seconds_since(start);
  return r;
}

// ---------------------------------------------------------------------------
// Convergence of slabs to the central section

ExperimentReport convergence_experiment(const BodyPair& pair, const ConvergenceOptions& opt) {
  require_same_dimension(pair);
  const int n = pair.K.dim;
  if (!(1 <= opt.i && opt.i <= n - 1)) throw std::invalid_argument("convergence: need 1 <= i <= n - 1");
  const auto& ts = opt.t_sequence;
  if (ts.size() < 2) throw std::invalid_argument("convergence: need at least two values of t");
  for (std::size_t j = 0; j < ts.size(); ++j) {
    if (!(ts[j] > 0.0)) throw std::invalid_argument("convergence: t values must be positive");
    if (j > 0 && !(ts[j] < ts[j - 1])) throw std::invalid_argument("convergence: t sequence must be strictly decreasing");
  }
  require_admissible_slab(pair.K, ts.front());
  require_admissible_slab(pair.L, ts.front());
  const auto start = std::chrono::steady_clock::now();
  Vec xi;
  if (opt.xi) {
    xi = unit(*opt.xi);
  } else {
    RngStream rng(opt.seed, 0);
    xi = rng.direction(n);
  }
  const IVEstimate limit = section_intrinsic_volume(pair.K, Subspace::complement(xi), opt.i, opt.polyline_points);
  const int m = static_cast<int>(ts.size());
  std::vector<IVEstimate> values(2 * m);
  parallel_for(static_cast<std::size_t>(2 * m), [&](std::size_t idx) {
    const ConvexBodyOracle& body = idx < static_cast<std::size_t>(m) ? pair.K : pair.L;
    values[idx] = slab_intrinsic_volume(body, xi, ts[idx % m], opt.i, opt.quadrature);
  });

  ExperimentReport r;
  r.experiment = "convergence";
  r.pair = pair.name;
  r.bodies = bodies_json(pair);
  json t_json = ts;
  r.parameters = {{"n", n},       {"i", opt.i},       {"t_sequence", t_json}, {"samples", 2 * m},
                  {"seed", opt.seed}, {"xi", flatten(xi)}, {"limit", limit.value}, {"limit_method", to_string(limit.method)}};
  bool pass = true;
  json per_body = json::array();
  for (int b = 0; b < 2; ++b) {
    std::vector<double> d(m), sigma(m);
    for (int j = 0; j < m; ++j) {
      const IVEstimate& e = values[b * m + j];
      sigma[j] = std::hypot(e.std_error, limit.std_error);
      r.samples.push_back(make_record(b * m + j, flatten(xi), e.value, limit.value, sigma[j]));
      d[j] = std::abs(e.value - limit.value);
    }
    bool monotone = true;
    for (int j = 1; j < m; ++j) monotone = monotone && d[j] <= d[j - 1] + 3.0 * std::hypot(sigma[j], sigma[j - 1]);
    double num = 0.0, den = 0.0;
    for (int j = 0; j < m; ++j) {
      num += d[j] * ts[j];
      den += ts[j] * ts[j];
    }
    const double slope = num / den;
    const double bound = 2.0 * slope * ts.back() + 3.0 * sigma.back();
    const bool final_ok = d.back() <= bound;
    pass = pass && monotone && final_ok;
    per_body.push_back({{"body", b == 0 ? "K" : "L"},
                        {"differences", d},
                        {"fitted_slope", slope},
                        {"final_bound", bound},
                        {"monotone", monotone},
                        {"final_within_bound", final_ok}});
  }
  finalize_report(r, PassRule::Custom, 0.0);
  r.summary.pass = pass;
  r.details = {{"sequences", per_body},
               {"pass_rule", "differences nonincreasing within 3 sigma and last <= 2 C t_min + 3 sigma"}};
  r.runtime_seconds = seconds_since(start);
  return r;
}

}  // namespace convexlab
