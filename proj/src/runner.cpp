#include "convexlab/runner.hpp"

#include "convexlab/svg.hpp"
#include "convexlab/transforms.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace convexlab {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool is_control(const std::string& pair) { return pair.rfind("control-", 0) == 0; }

BodyPair resolve_pair(const RunConfig& c) {
  if (c.body_k || c.body_l) {
    if (!(c.body_k && c.body_l)) throw std::invalid_argument("--body-k and --body-l must be given together");
    return make_body_pair("custom", parse_body_spec(read_file(*c.body_k)), parse_body_spec(read_file(*c.body_l)));
  }
  return fixture(c.pair, c.n.value_or(3));
}

double default_slab_t(const BodyPair& p) {
  if (const auto* s = std::get_if<PolytopeBodySpec>(&p.spec_k.shape)) {
    return 0.5 * *std::min_element(s->a.begin(), s->a.end());
  }
  return 0.5;
}

void check_tol(const std::optional<double>& tol) {
  if (tol && !(*tol > 0.0)) throw std::invalid_argument("--tol must be positive");
}

std::string expect_for(const std::string& experiment, const BodyPair& p) {
  if (p.name == "control-shifted" && experiment == "projections") return "pass";
  return is_control(p.name) ? "fail" : "pass";
}

LabeledReport labeled(std::string id, const BodyPair& p, ExperimentReport r) {
  LabeledReport lr;
  lr.id = std::move(id);
  lr.expect = expect_for(r.experiment, p);
  lr.report = std::move(r);
  return lr;
}

ExperimentReport do_lemma1(const RunConfig& c, const BodyPair& p) {
  Lemma1Options o;
  o.directions = c.samples.value_or(10000);
  o.seed = c.seed;
  o.tolerance = c.tol.value_or(p.K.is_polytope() && p.L.is_polytope() ? 1e-11 : 1e-8);
  return lemma1_check(p, o);
}

ExperimentReport do_sections(const RunConfig& c, const BodyPair& p, int k, int i) {
  SectionOptions o;
  o.k = c.k.value_or(k);
  o.i = c.i.value_or(i);
  o.subspaces = c.samples.value_or(200);
  o.seed = c.seed;
  const bool exact = p.K.is_polytope() && p.L.is_polytope() && o.k <= 3;
  o.tolerance = c.tol.value_or(exact ? 1e-9 : 1e-5);
  return sections_experiment(p, o);
}

ExperimentReport do_slabs(const RunConfig& c, const BodyPair& p, int i) {
  SlabOptions o;
  o.i = c.i.value_or(i);
  o.t = c.t.value_or(default_slab_t(p));
  const bool exact = p.K.is_polytope() && p.L.is_polytope();
  o.directions = c.samples.value_or(exact ? 100 : 50);
  o.seed = c.seed;
  o.tolerance = c.tol.value_or(exact ? 1e-9 : 1e-4);
  return slab_experiment(p, o);
}

ExperimentReport do_projections(const RunConfig& c, const BodyPair& p, int k) {
  ProjectionOptions o;
  o.k = c.k.value_or(k);
  o.subspaces = c.samples.value_or(200);
  o.seed = c.seed;
  const bool exact = p.K.is_polytope() && p.L.is_polytope();
  o.tolerance = c.tol.value_or(o.k == 1 ? 1e-8 : (exact ? 1e-9 : 1e-4));
  return projections_experiment(p, o);
}

ExperimentReport do_convergence(const RunConfig& c, const BodyPair& p, int i) {
  ConvergenceOptions o;
  o.i = c.i.value_or(i);
  o.seed = c.seed;
  if (c.t) {
    o.t_sequence.clear();
    for (double t = *c.t; o.t_sequence.size() < 4; t /= 2.0) o.t_sequence.push_back(t);
  }
  return convergence_experiment(p, o);
}

std::vector<LabeledReport> run_all(const RunConfig& c) {
  if (c.k || c.i || c.t || c.tol || c.body_k || c.body_l)
    throw std::invalid_argument("verify all uses the default fixtures; only --seed, --samples, --out and --svg apply");
  const BodyPair smooth = smooth_pair();
  const BodyPair poly = polytope_pair();
  const BodyPair rotated = control_rotated_pair();
  const BodyPair shifted = control_shifted_pair();
  const BodyPair self = self_pair(poly.spec_k);
  std::vector<LabeledReport> out;
  for (const BodyPair* p : {&smooth, &poly, &shifted}) out.push_back(labeled("lemma1/" + p->name, *p, do_lemma1(c, *p)));
  for (const BodyPair* p : {&smooth, &poly})
    for (int i : {1, 2})
      out.push_back(labeled("sections/" + p->name + "/k2/i" + std::to_string(i), *p, do_sections(c, *p, 2, i)));
  for (const BodyPair* p : {&rotated, &shifted})
    out.push_back(labeled("sections/" + p->name + "/k2/i1", *p, do_sections(c, *p, 2, 1)));
  for (int i : {1, 2, 3}) out.push_back(labeled("slabs/polytope/i" + std::to_string(i), poly, do_slabs(c, poly, i)));
  out.push_back(labeled("slabs/smooth/i3", smooth, do_slabs(c, smooth, 3)));
  out.push_back(labeled("slabs/control-rotated/i3", rotated, do_slabs(c, rotated, 3)));
  for (const BodyPair* p : {&smooth, &poly})
    for (int k : {1, 2})
      out.push_back(labeled("projections/" + p->name + "/k" + std::to_string(k), *p, do_projections(c, *p, k)));
  out.push_back(labeled("projections/control-rotated/k2", rotated, do_projections(c, rotated, 2)));
  out.push_back(labeled("projections/control-shifted/k2", shifted, do_projections(c, shifted, 2)));
  for (const BodyPair* p : {&smooth, &poly})
    for (int i : {1, 2})
      out.push_back(labeled("convergence/" + p->name + "/i" + std::to_string(i), *p, do_convergence(c, *p, i)));
  out.push_back(labeled("convergence/control-rotated/i2", rotated, do_convergence(c, rotated, 2)));
  for (const BodyPair* p : {&smooth, &poly, &rotated})
    out.push_back(labeled("certify/" + p->name, *p, certify_experiment(*p)));
  {
    LabeledReport lr = labeled("certify/self", self, certify_experiment(self));
    lr.expect = "fail";
    out.push_back(std::move(lr));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Plots

std::vector<std::pair<std::string, std::string>> plots_for(const RunConfig& c, const BodyPair& p,
                                                          const LabeledReport& lr) {
  std::vector<std::pair<std::string, std::string>> files;
  const auto* fk = std::get_if<RevolutionBodySpec>(&p.spec_k.shape);
  const auto* fl = std::get_if<RevolutionBodySpec>(&p.spec_l.shape);
  if (fk && fl) {
    PlotSpec plot{"Generating profiles", "t", "profile", {}, false};
    Series sf{"f (K)", {}, {}, "#1f77b4"};
    Series sg{"g (L)", {}, {}, "#d62728"};
    for (int j = 0; j <= 2000; ++j) {
      const double t = -1.0 + 2.0 * j / 2000.0;
      sf.x.push_back(t);
      sf.y.push_back(profile(*fk, t));
      sg.x.push_back(t);
      sg.y.push_back(profile(*fl, t));
    }
    plot.series = {sf, sg};
    files.emplace_back("profiles.svg", render_svg(plot));
  }
  PlotSpec scatter{lr.id + ": rel_diff per sample", "sample id", "rel_diff", {}, false};
  Series pts{"rel_diff", {}, {}, "#2ca02c", true};
  for (const auto& s : lr.report.samples) {
    pts.x.push_back(static_cast<double>(s.id));
    pts.y.push_back(s.rel_diff);
  }
  scatter.series = {pts};
  files.emplace_back("rel_diff.svg", render_svg(scatter));
  const int n = p.K.dim;
  if (n >= 3) {
    for (int j = 0; j < 3; ++j) {
      RngStream rng(c.seed, static_cast<std::uint64_t>(j));
      const Subspace h = sample_haar_subspace(n, 2, rng);
      PlotSpec overlay{"Sections K ∩ H and L ∩ H, plane " + std::to_string(j), "u1", "u2", {}, true};
      const char* colors[2] = {"#1f77b4", "#d62728"};
      const ConvexBodyOracle* bodies[2] = {&p.K, &p.L};
      for (int b = 0; b < 2; ++b) {
        Series s{b == 0 ? "K ∩ H" : "L ∩ H", {}, {}, colors[b], false, true};
        if (bodies[b]->is_polytope()) {
          for (const auto& v : section_polygon(bodies[b]->polytope->hrep, h).vertices) {
            s.x.push_back(v.x());
            s.y.push_back(v.y());
          }
        } else {
          for (const auto& v : boundary_polyline(section_oracle(*bodies[b], h), 512).vertices) {
            s.x.push_back(v.x());
            s.y.push_back(v.y());
          }
        }
        overlay.series.push_back(s);
      }
      files.emplace_back("section_" + std::to_string(j) + ".svg", render_svg(overlay));
    }
  }
  return files;
}

}  // namespace

std::vector<LabeledReport> run_experiments(const RunConfig& c) {
  check_tol(c.tol);
  if (c.samples && *c.samples < 1) throw std::invalid_argument("--samples must be positive");
  if (c.command == "all") return run_all(c);
  const BodyPair p = resolve_pair(c);
  ExperimentReport r;
  if (c.command == "lemma1") r = do_lemma1(c, p);
  else if (c.command == "sections") r = do_sections(c, p, 2, 1);
  else if (c.command == "slabs") r = do_slabs(c, p, 3);
  else if (c.command == "projections") r = do_projections(c, p, 1);
  else if (c.command == "convergence") r = do_convergence(c, p, 1);
  else if (c.command == "certify") r = certify_experiment(p);
  else throw std::invalid_argument("unknown command '" + c.command + "'");
  return {labeled(c.command + "/" + p.name, p, std::move(r))};
}

int run(const RunConfig& c, std::ostream& log) {
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::filesystem::path& path, const std::string& content) {
    write_text_file(path, content);
    written.push_back(path);
  };
  try {
    if (c.command == "construct") {
      if (c.construct_out.size() != 2) throw std::invalid_argument("construct: --out needs two file names");
      if (c.pair != "smooth" && c.pair != "polytope")
        throw std::invalid_argument("construct: --pair must be smooth or polytope");
      const BodyPair p = fixture(c.pair, c.n.value_or(3));
      emit(c.construct_out[0], to_json(p.spec_k).dump(2) + "\n");
      emit(c.construct_out[1], to_json(p.spec_l).dump(2) + "\n");
      log << "wrote " << c.construct_out[0].string() << " and " << c.construct_out[1].string() << "\n";
      return kExitPass;
    }
    const std::vector<LabeledReport> reports = run_experiments(c);
    bool ok = true;
    for (const auto& lr : reports) {
      const bool good = c.command == "all" ? lr.matches_expectation() : lr.report.summary.pass;
      ok = ok && good;
      log << (lr.report.summary.pass ? "PASS " : "FAIL ") << lr.id << "  max_rel_diff=" << lr.report.summary.max_rel_diff
          << "  expect=" << lr.expect << (c.command == "all" && !good ? "  (unexpected)" : "") << "\n";
    }
    std::filesystem::create_directories(c.out_dir);
    if (c.command == "all") {
      json doc = {{"command", "all"}, {"seed", c.seed}, {"pass", ok}, {"experiments", json::array()}};
      for (const auto& lr : reports) doc["experiments"].push_back(report_to_json(lr));
      emit(c.out_dir / "report.json", doc.dump(2) + "\n");
      emit(c.out_dir / "samples.csv", combined_samples_csv(reports));
    } else {
      emit(c.out_dir / "report.json", report_to_json(reports.front()).dump(2) + "\n");
      emit(c.out_dir / "samples.csv", samples_csv(reports.front().report));
    }
    emit(c.out_dir / "timing.json", timing_json(reports).dump(2) + "\n");
    if (c.svg) {
      const BodyPair p = c.command == "all" ? smooth_pair() : resolve_pair(c);
      for (const auto& [name, content] : plots_for(c, p, reports.front())) emit(c.out_dir / name, content);
    }
    return ok ? kExitPass : kExitFail;
  } catch (const std::exception& e) {
    for (const auto& path : written) {
      std::error_code ec;
      std::filesystem::remove(path, ec);
    }
    log << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace convexlab
