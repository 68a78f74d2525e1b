#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ftap/marginals.hpp"
#include "ftap/space.hpp"

namespace ftap {

/// Malformed scenario input. The message carries a line number (syntax
/// errors) or a field path such as `atoms[2].weight`.
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProductSetup {
  ProductSpace product;
  MarginalPair marginals;
};

/// A parsed scenario file:
///
///   {
///     "atoms": [{"label": "w1", "weight": "3/5"}, ...],
///     "generators": [{"name": "X", "values": ["1", "-1"]}, ...],
///     "cone_kind": "cone" | "linear",
///     "product": {"rows": [...], "cols": [...], "marginal1": [...], "marginal2": [...]}
///   }
///
/// Rationals are strings ("3/7", "-2", "0.25") or JSON integers. With a
/// product block, atom labels name cells as "row:col", unlisted cells are
/// null, and the cone is the marginal space (generators must be omitted).
struct Scenario {
  SpacePtr space;
  ConeSpec cone;
  std::vector<std::string> generatorNames;
  std::optional<ProductSetup> product;
};

Scenario parseScenario(std::string_view text);
Scenario loadScenario(const std::string& path);

/// A measure on the scenario's space: a JSON array of rationals or
/// {"weights": [...]}, in atom order.
Measure parseMeasure(std::string_view text, const SpacePtr& space);
Measure loadMeasure(const std::string& path, const SpacePtr& space);

}  // namespace ftap
