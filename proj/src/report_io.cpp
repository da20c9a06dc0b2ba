#include "convexlab/report_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace convexlab {

using nlohmann::json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

json report_to_json(const LabeledReport& lr) {
  const ExperimentReport& r = lr.report;
  json samples = json::array();
  for (const auto& s : r.samples) {
    samples.push_back({{"id", s.id},
                       {"basis", s.basis},
                       {"value_K", s.value_k},
                       {"value_L", s.value_l},
                       {"abs_diff", s.abs_diff},
                       {"rel_diff", s.rel_diff},
                       {"stderr", s.std_error}});
  }
  const ReportSummary& m = r.summary;
  return {{"id", lr.id},
          {"experiment", r.experiment},
          {"pair", r.pair},
          {"expect", lr.expect},
          {"bodies", r.bodies},
          {"parameters", r.parameters},
          {"summary",
           {{"max_rel_diff", m.max_rel_diff},
            {"mean_rel_diff", m.mean_rel_diff},
            {"max_abs_diff", m.max_abs_diff},
            {"tolerance", m.tolerance},
            {"rule", to_string(m.rule)},
            {"pass", m.pass},
            {"matches_expectation", lr.matches_expectation()}}},
          {"details", r.details},
          {"samples", samples}};
}

namespace {

void append_tail(std::string& line, const SampleRecord& s) {
  for (double v : {s.value_k, s.value_l, s.abs_diff, s.rel_diff, s.std_error}) {
    line += ',';
    line += format_double(v);
  }
  line += '\n';
}

}  // namespace

std::string samples_csv(const ExperimentReport& r) {
  std::size_t m = 0;
  for (const auto& s : r.samples) m = std::max(m, s.basis.size());
  std::string out = "id";
  for (std::size_t b = 0; b < m; ++b) out += ",b" + std::to_string(b);
  out += ",value_K,value_L,abs_diff,rel_diff,stderr\n";
  for (const auto& s : r.samples) {
    std::string line = std::to_string(s.id);
    for (std::size_t b = 0; b < m; ++b) {
      line += ',';
      if (b < s.basis.size()) line += format_double(s.basis[b]);
    }
    append_tail(line, s);
    out += line;
  }
  return out;
}

std::string combined_samples_csv(const std::vector<LabeledReport>& reports) {
  std::string out = "experiment,id,basis,value_K,value_L,abs_diff,rel_diff,stderr\n";
  for (const auto& lr : reports) {
    for (const auto& s : lr.report.samples) {
      std::string line = lr.id + "," + std::to_string(s.id) + ",";
      for (std::size_t b = 0; b < s.basis.size(); ++b) {
        if (b) line += ';';
        line += format_double(s.basis[b]);
      }
      append_tail(line, s);
      out += line;
    }
  }
  return out;
}

json timing_json(const std::vector<LabeledReport>& reports) {
  json t = json::object();
  for (const auto& lr : reports) t[lr.id] = lr.report.runtime_seconds;
  return t;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace convexlab
