#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ftap/rational.hpp"

namespace ftap {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Sense { Maximize, Minimize };

struct Constraint {
  VectorQ coefficients;
  Relation relation = Relation::LessEqual;
  Rational rhs{0};
  std::string name;
};

/// A linear program over exact rationals. Variables are free unless a
/// lower and/or upper bound is set.
class LinearProgram {
 public:
  LinearProgram() = default;
  explicit LinearProgram(std::size_t variableCount, Sense sense = Sense::Maximize);

  std::size_t variableCount() const { return lower_.size(); }
  std::size_t rowCount() const { return rows_.size(); }

  Sense sense() const { return sense_; }
  void setSense(Sense sense) { sense_ = sense; }

  const VectorQ& objective() const { return objective_; }
  void setObjective(VectorQ objective);
  void setObjectiveCoefficient(std::size_t var, Rational value);

  /// Throws std::invalid_argument if the row width differs from variableCount().
  std::size_t addRow(VectorQ coefficients, Relation relation, Rational rhs, std::string name = {});
  const std::vector<Constraint>& rows() const { return rows_; }

  void setLower(std::size_t var, Rational value);
  void setUpper(std::size_t var, Rational value);
  const std::optional<Rational>& lower(std::size_t var) const { return lower_.at(var); }
  const std::optional<Rational>& upper(std::size_t var) const { return upper_.at(var); }

  void setVariableName(std::size_t var, std::string name);
  const std::string& variableName(std::size_t var) const { return names_.at(var); }

  /// Throws std::invalid_argument when some row or the objective has the wrong width.
  void validate() const;

 private:
  Sense sense_ = Sense::Maximize;
  VectorQ objective_;
  std::vector<Constraint> rows_;
  std::vector<std::optional<Rational>> lower_;
  std::vector<std::optional<Rational>> upper_;
  std::vector<std::string> names_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string toString(LpStatus status);

/// Result of solve(), always carrying a certificate of its status.
///
/// Multipliers refer to the rows written in "<=" form: a ">=" row is negated
/// first, so every inequality multiplier is nonnegative and equality
/// multipliers are free. Bound multipliers cover the implicit rows
/// -x_j <= -lower_j and x_j <= upper_j.
///
///  - Optimal: `point` attains `value`; the multipliers combine the rows and
///    bounds into the (maximization-form) objective with right-hand side equal
///    to `value`, which proves no better point exists.
///  - Infeasible: the multipliers combine the rows and bounds into 0 <= -1.
///  - Unbounded: `point` is feasible and `ray` is a recession direction that
///    strictly improves the objective.
struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  VectorQ point;
  Rational value{0};
  VectorQ ray;
  VectorQ rowMultipliers;
  VectorQ lowerMultipliers;
  VectorQ upperMultipliers;
};

/// Two-phase primal simplex over exact rationals with Bland's rule.
/// Deterministic: identical programs give identical outcomes.
LpOutcome solve(const LinearProgram& lp);

/// Independent arithmetic re-check of the certificate carried by `outcome`.
bool verifyCertificate(const LinearProgram& lp, const LpOutcome& outcome);

/// True iff `x` satisfies every row and bound of `lp` exactly.
bool isFeasiblePoint(const LinearProgram& lp, const VectorQ& x);

/// A program together with its solved outcome, so the pair can be re-verified
/// by whoever receives it.
struct Certificate {
  LinearProgram program;
  LpOutcome outcome;

  bool verify() const { return verifyCertificate(program, outcome); }
};

}  // namespace ftap
