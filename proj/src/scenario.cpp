#include "ftap/scenario.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace ftap {

using Index = Eigen::Index;
using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ScenarioError(path + ": " + message);
}

std::size_t lineOf(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

json parseJson(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    // nlohmann prefixes "[json.exception.parse_error.101] parse error at line L, column C: ...".
    if (auto colon = what.find("parse error"); colon != std::string::npos) what = what.substr(colon);
    throw ScenarioError("line " + std::to_string(lineOf(text, e.byte)) + ": " + what);
  }
}

const json& member(const json& object, const std::string& key, const std::string& path) {
  auto it = object.find(key);
  if (it == object.end()) fail(path, "missing field \"" + key + "\"");
  return *it;
}

std::string stringAt(const json& value, const std::string& path) {
  if (!value.is_string()) fail(path, "expected a string");
  return value.get<std::string>();
}

Rational rationalAt(const json& value, const std::string& path) {
  if (value.is_number_integer()) return Rational(value.dump());
  if (value.is_number_float()) fail(path, "floating-point literal; write rationals as strings such as \"1/3\"");
  if (!value.is_string()) fail(path, "expected a rational string");
  try {
    return parseRational(value.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

VectorQ rationalsAt(const json& value, const std::string& path) {
  if (!value.is_array()) fail(path, "expected an array");
  VectorQ v(static_cast<Index>(value.size()));
  for (std::size_t i = 0; i < value.size(); ++i)
    v(static_cast<Index>(i)) = rationalAt(value[i], path + "[" + std::to_string(i) + "]");
  return v;
}

std::vector<std::string> labelsAt(const json& value, const std::string& path) {
  if (!value.is_array()) fail(path, "expected an array");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(stringAt(value[i], path + "[" + std::to_string(i) + "]"));
    if (!seen.insert(out.back()).second) fail(path + "[" + std::to_string(i) + "]", "duplicate label");
  }
  return out;
}

ProductSetup parseProduct(const json& block, const std::vector<std::string>& labels, const VectorQ& weights) {
  const std::string path = "product";
  if (!block.is_object()) fail(path, "expected an object");
  std::vector<std::string> rows = labelsAt(member(block, "rows", path), path + ".rows");
  std::vector<std::string> cols = labelsAt(member(block, "cols", path), path + ".cols");
  VectorQ m1 = rationalsAt(member(block, "marginal1", path), path + ".marginal1");
  VectorQ m2 = rationalsAt(member(block, "marginal2", path), path + ".marginal2");
  if (m1.size() != static_cast<Index>(rows.size())) fail(path + ".marginal1", "length differs from rows");
  if (m2.size() != static_cast<Index>(cols.size())) fail(path + ".marginal2", "length differs from cols");

  std::map<std::string, std::size_t> rowIndex, colIndex;
  for (std::size_t i = 0; i < rows.size(); ++i) rowIndex[rows[i]] = i;
  for (std::size_t i = 0; i < cols.size(); ++i) colIndex[cols[i]] = i;
  MatrixQ joint = MatrixQ::Zero(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t a = 0; a < labels.size(); ++a) {
    const std::string where = "atoms[" + std::to_string(a) + "].label";
    const auto colon = labels[a].find(':');
    if (colon == std::string::npos) fail(where, "product atoms must be labeled \"row:col\"");
    auto r = rowIndex.find(labels[a].substr(0, colon));
    auto c = colIndex.find(labels[a].substr(colon + 1));
    if (r == rowIndex.end() || c == colIndex.end()) fail(where, "unknown row or column in \"" + labels[a] + "\"");
    joint(static_cast<Index>(r->second), static_cast<Index>(c->second)) = weights(static_cast<Index>(a));
  }
  try {
    ProductSpace ps = ProductSpace::make(std::move(rows), std::move(cols), std::move(joint));
    MarginalPair m = MarginalPair::make(std::move(m1), std::move(m2));
    return {std::move(ps), std::move(m)};
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(path + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

Scenario parseScenario(std::string_view text) {
  const json doc = parseJson(text);
  if (!doc.is_object()) fail("(root)", "expected an object");

  const json& atoms = member(doc, "atoms", "(root)");
  if (!atoms.is_array() || atoms.empty()) fail("atoms", "expected a non-empty array");
  std::vector<std::string> labels;
  VectorQ weights(static_cast<Index>(atoms.size()));
  std::set<std::string> seen;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string path = "atoms[" + std::to_string(i) + "]";
    if (!atoms[i].is_object()) fail(path, "expected an object");
    labels.push_back(stringAt(member(atoms[i], "label", path), path + ".label"));
    if (!seen.insert(labels.back()).second) fail(path + ".label", "duplicate label \"" + labels.back() + "\"");
    const Rational w = rationalAt(member(atoms[i], "weight", path), path + ".weight");
    if (w.sign() <= 0) fail(path + ".weight", "weight must be positive");
    weights(static_cast<Index>(i)) = w;
  }
  if (weights.sum() != 1) fail("atoms", "weights sum to " + toString(weights.sum()) + ", not 1");

  ConeKind kind = ConeKind::ConvexCone;
  if (auto it = doc.find("cone_kind"); it != doc.end()) {
    const std::string k = stringAt(*it, "cone_kind");
    if (k == "cone")
      kind = ConeKind::ConvexCone;
    else if (k == "linear")
      kind = ConeKind::LinearSpace;
    else
      fail("cone_kind", "expected \"cone\" or \"linear\", got \"" + k + "\"");
  } else {
    fail("(root)", "missing field \"cone_kind\"");
  }

  if (auto it = doc.find("product"); it != doc.end()) {
    if (doc.contains("generators")) fail("generators", "not allowed with a product block");
    if (kind != ConeKind::LinearSpace) fail("cone_kind", "a product scenario must be \"linear\"");
    ProductSetup setup = parseProduct(*it, labels, weights);
    ConeSpec cone = buildMarginalCone(setup.product, setup.marginals);
    std::vector<std::string> names;
    for (const auto& r : setup.product.rowLabels()) names.push_back("row[" + r + "]");
    for (const auto& c : setup.product.colLabels()) names.push_back("col[" + c + "]");
    SpacePtr space = setup.product.space();
    return Scenario{std::move(space), std::move(cone), std::move(names), std::move(setup)};
  }

  SpacePtr space = FiniteProbSpace::make(std::move(labels), std::move(weights));
  std::vector<RandomVariable> generators;
  std::vector<std::string> names;
  if (auto it = doc.find("generators"); it != doc.end()) {
    if (!it->is_array()) fail("generators", "expected an array");
    for (std::size_t j = 0; j < it->size(); ++j) {
      const std::string path = "generators[" + std::to_string(j) + "]";
      const json& g = (*it)[j];
      if (!g.is_object()) fail(path, "expected an object");
      names.push_back(g.contains("name") ? stringAt(g["name"], path + ".name") : "X" + std::to_string(j + 1));
      VectorQ values = rationalsAt(member(g, "values", path), path + ".values");
      if (values.size() != static_cast<Index>(space->size()))
        fail(path + ".values", "has " + std::to_string(values.size()) + " entries for " +
                                   std::to_string(space->size()) + " atoms");
      generators.emplace_back(space, std::move(values));
    }
  }
  ConeSpec cone(space, std::move(generators), kind);
  return Scenario{std::move(space), std::move(cone), std::move(names), std::nullopt};
}

Scenario loadScenario(const std::string& path) {
  const std::string text = readFile(path);
  try {
    return parseScenario(text);
  } catch (const ScenarioError& e) {
    throw ScenarioError(path + ": " + e.what());
  }
}

Measure parseMeasure(std::string_view text, const SpacePtr& space) {
  const json doc = parseJson(text);
  const json* weights = &doc;
  std::string path = "(root)";
  if (doc.is_object()) {
    weights = &member(doc, "weights", path);
    path = "weights";
  }
  VectorQ w = rationalsAt(*weights, path);
  if (w.size() != static_cast<Index>(space->size()))
    fail(path, "has " + std::to_string(w.size()) + " entries for " + std::to_string(space->size()) + " atoms");
  try {
    return Measure(space, std::move(w));
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

Measure loadMeasure(const std::string& path, const SpacePtr& space) {
  const std::string text = readFile(path);
  try {
    return parseMeasure(text, space);
  } catch (const ScenarioError& e) {
    throw ScenarioError(path + ": " + e.what());
  }
}

}  // namespace ftap
