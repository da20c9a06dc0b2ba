#include "doctest.h"

#include "convexlab/body_spec.hpp"
#include "convexlab/report_io.hpp"
#include "convexlab/runner.hpp"
#include "convexlab/svg.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

using namespace convexlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("convexlab_tests_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string error_of(const std::string& text) {
  try {
    parse_body_spec(text);
  } catch (const SpecError& e) {
    return e.what();
  }
  return {};
}

long count_lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

}  // namespace

TEST_CASE("body spec parsing") {
  const auto s = parse_body_spec(R"({"type":"revolution","n":3,"epsilon":1e-3,"delta":0.1,"variant":"K"})");
  REQUIRE(std::holds_alternative<RevolutionBodySpec>(s.shape));
  CHECK(std::get<RevolutionBodySpec>(s.shape).delta == 0.1);
  CHECK(dimension(s) == 3);

  const auto d = parse_body_spec(R"({"type":"revolution","n":4})");
  CHECK(std::get<RevolutionBodySpec>(d.shape).epsilon == kDefaultEpsilon);
  CHECK(std::get<RevolutionBodySpec>(d.shape).variant == Variant::K);

  const std::string delta = error_of(R"({"type":"revolution","n":3,"delta":0.2,"variant":"K"})");
  CHECK(delta.find("delta") != std::string::npos);
  CHECK(delta.find("0 < delta < 1/6") != std::string::npos);

  const std::string distinct = error_of(R"({"type":"polytope","a":[1,1,1.5]})");
  CHECK(distinct.find("'a'") != std::string::npos);
  CHECK(distinct.find("pairwise distinct") != std::string::npos);

  CHECK(error_of(R"({"type":"revolution","n":3,"colour":"red"})").find("colour") != std::string::npos);
  CHECK(error_of(R"({"type":"revolution","n":3)").find("malformed JSON") != std::string::npos);
  CHECK(error_of(R"({"type":"teapot"})").find("type") != std::string::npos);
  CHECK_FALSE(error_of(R"({"type":"revolution","variant":"K"})").empty());
  CHECK_FALSE(error_of(R"({"type":"polytope","a":[1,1.2,1.5],"lambda":9})").empty());

  const auto p = parse_body_spec(R"({"type":"polytope","a":[1,1.2,1.5],"variant":"L"})");
  const auto& ps = std::get<PolytopeBodySpec>(p.shape);
  CHECK(ps.u_signs == std::vector<int>{1, 1, 1});
  CHECK(ps.v_signs == std::vector<int>{1, 1, -1});
  CHECK(build_oracle(p).is_polytope());
}

TEST_CASE("body specs round-trip") {
  for (const char* text : {R"({"type":"revolution","n":3,"epsilon":2e-3,"delta":0.12,"variant":"L"})",
                           R"({"type":"polytope","a":[1,1.2,1.5],"lambda":0.5})", R"({"type":"ball","n":4})",
                           R"({"type":"ball","n":3,"shift":[0.3,0,0]})"}) {
    const auto a = parse_body_spec(text);
    const auto j = to_json(a);
    CHECK(to_json(parse_body_spec(j.dump())) == j);
  }
}

TEST_CASE("construct writes specs that parse back") {
  const fs::path dir = scratch("construct");
  for (const char* pair : {"smooth", "polytope"}) {
    RunConfig c;
    c.command = "construct";
    c.pair = pair;
    c.construct_out = {dir / "k.json", dir / "l.json"};
    std::ostringstream log;
    CHECK(run(c, log) == kExitPass);
    const auto k = parse_body_spec(slurp(dir / "k.json"));
    const auto l = parse_body_spec(slurp(dir / "l.json"));
    CHECK(to_json(k)["variant"] == "K");
    CHECK(to_json(l)["variant"] == "L");
    CHECK(to_json(parse_body_spec(to_json(k).dump())) == to_json(k));
  }
  fs::remove_all(dir);
}

TEST_CASE("numbers are written in shortest round-trip form") {
  for (double x : {0.1, 1e-300, 5.5923271189690045, -2.0, 0.0}) {
    const std::string s = format_double(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == x);
  }
  CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("svg rendering") {
  PlotSpec plot;
  plot.title = "profiles";
  Series f{"f", {0.0, 0.5, 1.0}, {1.0, 0.8, 0.0}};
  plot.series.push_back(f);
  const std::string a = render_svg(plot);
  CHECK(a == render_svg(plot));
  CHECK(a.find("<?xml") == 0);
  CHECK(a.find("viewBox=\"0 0 800 600\"") != std::string::npos);
  CHECK(a.find("</svg>") != std::string::npos);
  CHECK(a.find("<polyline") != std::string::npos);

  PlotSpec empty;
  const std::string e = render_svg(empty);
  CHECK(e.find("viewBox=\"0 0 800 600\"") != std::string::npos);
  CHECK(e.find("<rect x=\"80.00\"") != std::string::npos);
  CHECK(e.find("<polyline") == std::string::npos);

  plot.series[0].y[1] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(render_svg(plot), std::invalid_argument);
  plot.series[0].y = {1.0};
  CHECK_THROWS_AS(render_svg(plot), std::invalid_argument);
}

TEST_CASE("run writes one csv row per sample") {
  const fs::path dir = scratch("rows");
  RunConfig c;
  c.command = "sections";
  c.pair = "polytope";
  c.samples = 17;
  c.out_dir = dir;
  c.svg = true;
  std::ostringstream log;
  CHECK(run(c, log) == kExitPass);
  const std::string csv = slurp(dir / "samples.csv");
  CHECK(count_lines(csv) == 18);
  CHECK(csv.rfind("id,b0,b1,b2,b3,b4,b5,value_K,value_L,abs_diff,rel_diff,stderr\n", 0) == 0);
  const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(report["summary"]["pass"] == true);
  CHECK(report["samples"].size() == 17);
  CHECK(fs::exists(dir / "rel_diff.svg"));
  CHECK(fs::exists(dir / "section_0.svg"));
  CHECK(fs::exists(dir / "timing.json"));
  const std::string first = slurp(dir / "report.json");
  CHECK(run(c, log) == kExitPass);
  CHECK(slurp(dir / "report.json") == first);
  fs::remove_all(dir);
}

TEST_CASE("run exit codes") {
  const fs::path dir = scratch("codes");
  std::ostringstream log;
  RunConfig fail;
  fail.command = "sections";
  fail.pair = "control-rotated";
  fail.samples = 20;
  fail.out_dir = dir / "fail";
  CHECK(run(fail, log) == kExitFail);
  CHECK(fs::exists(dir / "fail" / "report.json"));

  RunConfig bad;
  bad.command = "sections";
  bad.pair = "polytope";
  bad.i = 3;
  bad.out_dir = dir / "bad";
  CHECK(run(bad, log) == kExitError);
  CHECK_FALSE(fs::exists(dir / "bad" / "report.json"));
  CHECK_FALSE(fs::exists(dir / "bad" / "samples.csv"));

  RunConfig slab = bad;
  slab.command = "slabs";
  slab.i = std::nullopt;
  slab.t = 5.0;
  CHECK(run(slab, log) == kExitError);
  CHECK(log.str().find("maximum admissible t") != std::string::npos);

  RunConfig all;
  all.command = "all";
  all.k = 2;
  all.out_dir = dir / "all";
  CHECK(run(all, log) == kExitError);

  RunConfig cert;
  cert.command = "certify";
  cert.pair = "polytope";
  cert.out_dir = dir / "cert";
  CHECK(run(cert, log) == kExitPass);
  fs::remove_all(dir);
}

TEST_CASE("combined csv") {
  ExperimentReport r;
  r.experiment = "sections";
  r.samples = {make_record(0, {1.0, 0.5}, 1.0, 1.0, 0.0)};
  finalize_report(r, PassRule::Relative, 1e-9);
  const std::string csv = combined_samples_csv({{"sections/x", "pass", r}});
  CHECK(csv == "experiment,id,basis,value_K,value_L,abs_diff,rel_diff,stderr\nsections/x,0,1;0.5,1,1,0,0,0\n");
}
