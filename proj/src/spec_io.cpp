#include "convexlab/body_spec.hpp"

#include "convexlab/transforms.hpp"

#include <set>
#include <sstream>

namespace convexlab {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw SpecError("body spec field '" + field + "': " + what);
}

void reject_unknown(const json& j, const std::set<std::string>& allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) fail(it.key(), "unknown field");
  }
}

double get_number(const json& j, const std::string& field) {
  const json& v = j.at(field);
  if (!v.is_number()) fail(field, "must be a number");
  return v.get<double>();
}

int get_int(const json& j, const std::string& field) {
  const json& v = j.at(field);
  if (!v.is_number_integer()) fail(field, "must be an integer");
  return v.get<int>();
}

Variant get_variant(const json& j) {
  if (!j.contains("variant")) return Variant::K;
  const json& v = j.at("variant");
  if (v == "K") return Variant::K;
  if (v == "L") return Variant::L;
  fail("variant", "must be \"K\" or \"L\"");
}

std::vector<double> get_number_array(const json& j, const std::string& field) {
  const json& v = j.at(field);
  if (!v.is_array()) fail(field, "must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) fail(field, "must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<int> get_sign_array(const json& j, const std::string& field, std::size_t n) {
  const json& v = j.at(field);
  if (!v.is_array() || v.size() != n) fail(field, "must be an array of " + std::to_string(n) + " signs");
  std::vector<int> out;
  for (const auto& x : v) {
    if (!x.is_number_integer() || (x.get<int>() != 1 && x.get<int>() != -1)) fail(field, "entries must be +1 or -1");
    out.push_back(x.get<int>());
  }
  return out;
}

}  // namespace

int dimension(const BodySpec& spec) {
  if (const auto* r = std::get_if<RevolutionBodySpec>(&spec.shape)) return r->n;
  if (const auto* p = std::get_if<PolytopeBodySpec>(&spec.shape)) return static_cast<int>(p->a.size());
  return std::get<BallBodySpec>(spec.shape).n;
}

BodySpec body_spec_from_json(const json& j) {
  if (!j.is_object()) throw SpecError("body spec: expected a JSON object");
  if (!j.contains("type") || !j.at("type").is_string()) fail("type", "required; one of revolution, polytope, ball");
  const std::string type = j.at("type").get<std::string>();
  BodySpec spec;
  if (type == "revolution") {
    reject_unknown(j, {"type", "n", "epsilon", "delta", "variant", "rotation", "shift"});
    if (!j.contains("n")) fail("n", "required");
    const int n = get_int(j, "n");
    const double eps = j.contains("epsilon") ? get_number(j, "epsilon") : kDefaultEpsilon;
    const double delta = j.contains("delta") ? get_number(j, "delta") : kDefaultDelta;
    if (!(delta > 0.0 && delta < 1.0 / 6.0)) {
      std::ostringstream os;
      os << delta << " violates 0 < delta < 1/6";
      fail("delta", os.str());
    }
    if (!(eps >= 0.0)) fail("epsilon", "must be nonnegative");
    if (n < 2 || n > kMaxDim) fail("n", "must satisfy 2 <= n <= " + std::to_string(kMaxDim));
    try {
      spec.shape = make_revolution_spec(n, eps, delta, get_variant(j));
    } catch (const std::invalid_argument& e) {
      throw SpecError(std::string("body spec: ") + e.what());
    }
  } else if (type == "polytope") {
    reject_unknown(j, {"type", "a", "u_signs", "v_signs", "lambda", "variant", "rotation", "shift"});
    if (!j.contains("a")) fail("a", "required");
    PolytopeBodySpec p;
    p.a = get_number_array(j, "a");
    const std::size_t n = p.a.size();
    if (n < 2 || n > 4) fail("a", "must have 2 to 4 entries");
    for (double x : p.a)
      if (!(x > 0.0)) fail("a", "entries must be positive");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i + 1; k < n; ++k)
        if (p.a[i] == p.a[k]) fail("a", "entries of a must be pairwise distinct");
    p.u_signs = j.contains("u_signs") ? get_sign_array(j, "u_signs", n) : std::vector<int>(n, 1);
    if (j.contains("v_signs")) {
      p.v_signs = get_sign_array(j, "v_signs", n);
    } else {
      p.v_signs = p.u_signs;
      p.v_signs.back() *= -1;
    }
    if (j.contains("lambda") && !j.at("lambda").is_null()) p.lambda = get_number(j, "lambda");
    p.variant = get_variant(j);
    try {
      (void)build_polytope_pair(p.a, p.u_signs, p.v_signs, p.lambda);
    } catch (const std::exception& e) {
      throw SpecError(std::string("body spec: ") + e.what());
    }
    spec.shape = p;
  } else if (type == "ball") {
    reject_unknown(j, {"type", "n", "rotation", "shift"});
    const int n = j.contains("n") ? get_int(j, "n") : 3;
    if (n < 2 || n > kMaxDim) fail("n", "must satisfy 2 <= n <= " + std::to_string(kMaxDim));
    spec.shape = BallBodySpec{n};
  } else {
    fail("type", "must be one of revolution, polytope, ball");
  }
  const int n = dimension(spec);
  if (j.contains("rotation")) {
    const json& r = j.at("rotation");
    if (!r.is_array() || static_cast<int>(r.size()) != n) fail("rotation", "must be an n x n array");
    Mat q(n, n);
    for (int a = 0; a < n; ++a) {
      if (!r[a].is_array() || static_cast<int>(r[a].size()) != n) fail("rotation", "must be an n x n array");
      for (int b = 0; b < n; ++b) {
        if (!r[a][b].is_number()) fail("rotation", "entries must be numbers");
        q(a, b) = r[a][b].get<double>();
      }
    }
    if (!(q.transpose() * q).isIdentity(1e-9)) fail("rotation", "must be orthogonal");
    spec.rotation = q;
  }
  if (j.contains("shift")) {
    const std::vector<double> s = get_number_array(j, "shift");
    if (static_cast<int>(s.size()) != n) fail("shift", "must have n entries");
    Vec v(n);
    for (int a = 0; a < n; ++a) v(a) = s[a];
    spec.shift = v;
  }
  return spec;
}

BodySpec parse_body_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("body spec: malformed JSON: ") + e.what());
  }
  return body_spec_from_json(j);
}

json to_json(const BodySpec& spec) {
  json j;
  if (const auto* r = std::get_if<RevolutionBodySpec>(&spec.shape)) {
    j = {{"type", "revolution"}, {"n", r->n}, {"epsilon", r->epsilon}, {"delta", r->delta},
         {"variant", to_string(r->variant)}};
  } else if (const auto* p = std::get_if<PolytopeBodySpec>(&spec.shape)) {
    const PolytopeConstruction c = build_polytope_pair(p->a, p->u_signs, p->v_signs, p->lambda);
    j = {{"type", "polytope"}, {"a", p->a},       {"u_signs", p->u_signs}, {"v_signs", p->v_signs},
         {"lambda", c.lambda}, {"variant", to_string(p->variant)}};
  } else {
    j = {{"type", "ball"}, {"n", std::get<BallBodySpec>(spec.shape).n}};
  }
  if (spec.rotation) {
    json rows = json::array();
    for (int a = 0; a < spec.rotation->rows(); ++a) {
      json row = json::array();
      for (int b = 0; b < spec.rotation->cols(); ++b) row.push_back((*spec.rotation)(a, b));
      rows.push_back(row);
    }
    j["rotation"] = rows;
  }
  if (spec.shift) {
    json s = json::array();
    for (int a = 0; a < spec.shift->size(); ++a) s.push_back((*spec.shift)(a));
    j["shift"] = s;
  }
  return j;
}

ConvexBodyOracle build_oracle(const BodySpec& spec) {
  ConvexBodyOracle o;
  if (const auto* r = std::get_if<RevolutionBodySpec>(&spec.shape)) {
    o = oracle_of(*r);
  } else if (const auto* p = std::get_if<PolytopeBodySpec>(&spec.shape)) {
    const PolytopeConstruction c = build_polytope_pair(p->a, p->u_signs, p->v_signs, p->lambda);
    o = oracle_of(c.member(p->variant), "polytope " + to_string(p->variant));
  } else {
    const int n = std::get<BallBodySpec>(spec.shape).n;
    o = oracle_of(make_ball_spec(n));
    o.label = "ball(n=" + std::to_string(n) + ")";
  }
  if (spec.rotation) o = rotate_oracle(o, *spec.rotation);
  if (spec.shift) o = translate_oracle(o, -*spec.shift);
  return o;
}

}  // namespace convexlab
