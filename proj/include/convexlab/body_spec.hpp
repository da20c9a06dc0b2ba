#pragma once

#include "convexlab/bodies.hpp"

#include "json.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace convexlab {

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PolytopeBodySpec {
  std::vector<double> a;
  std::vector<int> u_signs;
  std::vector<int> v_signs;
  std::optional<double> lambda;
  Variant variant = Variant::K;
};

struct BallBodySpec {
  int n = 3;
};

/// A body from one of the families, optionally rotated and then shifted:
/// Q B + shift.
struct BodySpec {
  std::variant<RevolutionBodySpec, PolytopeBodySpec, BallBodySpec> shape;
  std::optional<Mat> rotation;
  std::optional<Vec> shift;
};

int dimension(const BodySpec& spec);

/// Parses and validates a JSON body spec. Unknown fields are rejected and
/// absent epsilon, delta and lambda take their defaults. Throws SpecError
/// with a message naming the field and the violated constraint.
BodySpec parse_body_spec(const std::string& text);
BodySpec body_spec_from_json(const nlohmann::json& j);

/// Canonical JSON form; parse_body_spec(to_json(s).dump()) rebuilds s.
nlohmann::json to_json(const BodySpec& spec);

ConvexBodyOracle build_oracle(const BodySpec& spec);

}  // namespace convexlab
