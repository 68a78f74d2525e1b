#include "ftap/solver.hpp"

#include <stdexcept>

namespace ftap {

LinearProgram::LinearProgram(std::size_t variableCount, Sense sense)
    : sense_(sense),
      objective_(VectorQ::Zero(static_cast<Eigen::Index>(variableCount))),
      lower_(variableCount),
      upper_(variableCount),
      names_(variableCount) {}

void LinearProgram::setObjective(VectorQ objective) {
  if (static_cast<std::size_t>(objective.size()) != variableCount())
    throw std::invalid_argument("objective width does not match variable count");
  objective_ = std::move(objective);
}

void LinearProgram::setObjectiveCoefficient(std::size_t var, Rational value) {
  if (var >= variableCount()) throw std::out_of_range("objective variable index");
  objective_(static_cast<Eigen::Index>(var)) = std::move(value);
}

std::size_t LinearProgram::addRow(VectorQ coefficients, Relation relation, Rational rhs,
                                  std::string name) {
  if (static_cast<std::size_t>(coefficients.size()) != variableCount())
    throw std::invalid_argument("row \"" + name + "\" has width " +
                                std::to_string(coefficients.size()) + ", expected " +
                                std::to_string(variableCount()));
  rows_.push_back({std::move(coefficients), relation, std::move(rhs), std::move(name)});
  return rows_.size() - 1;
}

void LinearProgram::setLower(std::size_t var, Rational value) { lower_.at(var) = std::move(value); }
void LinearProgram::setUpper(std::size_t var, Rational value) { upper_.at(var) = std::move(value); }
void LinearProgram::setVariableName(std::size_t var, std::string name) {
  names_.at(var) = std::move(name);
}

void LinearProgram::validate() const {
  const auto n = static_cast<Eigen::Index>(variableCount());
  if (objective_.size() != n) throw std::invalid_argument("objective width mismatch");
  for (const auto& row : rows_)
    if (row.coefficients.size() != n)
      throw std::invalid_argument("row \"" + row.name + "\" width mismatch");
}

std::string toString(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

namespace {

using Index = Eigen::Index;
using Tableau = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

bool isZero(const Rational& v) { return v.sign() == 0; }

// x_j = offset + z[plus] - z[minus]; a column index of -1 means "absent".
struct VariableMap {
  Rational offset{0};
  Index plus = -1;
  Index minus = -1;
};

struct InternalRow {
  VectorQ coefficients;  // over z
  Relation relation;
  Rational rhs;
};

// Dense tableau simplex over the standard form  A z (+/- slack) = b, z >= 0.
class Simplex {
 public:
  explicit Simplex(const LinearProgram& lp) : lp_(lp) { build(); }

  LpOutcome run();

 private:
  void build();
  void pivot(Index row, Index col);
  void loadObjective(const VectorQ& costs);
  // Returns the entering column for which the column has no positive entry,
  // or -1 at optimality.
  Index iterate();
  VectorQ currentX() const;
  VectorQ rowDuals() const;
  void fillMultipliers(LpOutcome& out, const VectorQ& maxFormObjective) const;

  const LinearProgram& lp_;
  std::vector<VariableMap> vars_;
  std::vector<InternalRow> rows_;
  Index zCount_ = 0;
  Index columnCount_ = 0;
  Index firstArtificial_ = 0;

  Tableau table_;
  VectorQ rhs_;
  std::vector<Index> basis_;
  std::vector<Index> initialBasic_;
  std::vector<int> rowSign_;  // sigma: +1, or -1 when the row was negated
  VectorQ costs_;
  VectorQ reduced_;
};

void Simplex::build() {
  const std::size_t n = lp_.variableCount();
  vars_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& lo = lp_.lower(j);
    const auto& up = lp_.upper(j);
    auto& v = vars_[j];
    if (lo) {
      v.offset = *lo;
      v.plus = zCount_++;
    } else if (up) {
      v.offset = *up;
      v.minus = zCount_++;
    } else {
      v.plus = zCount_++;
      v.minus = zCount_++;
    }
  }

  for (const auto& row : lp_.rows()) {
    InternalRow r{VectorQ::Zero(zCount_), row.relation, row.rhs};
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& a = row.coefficients(static_cast<Index>(j));
      if (isZero(a)) continue;
      const auto& v = vars_[j];
      if (v.plus >= 0) r.coefficients(v.plus) += a;
      if (v.minus >= 0) r.coefficients(v.minus) -= a;
      r.rhs -= a * v.offset;
    }
    rows_.push_back(std::move(r));
  }
  for (std::size_t j = 0; j < n; ++j) {
    const auto& lo = lp_.lower(j);
    const auto& up = lp_.upper(j);
    if (lo && up) {
      InternalRow r{VectorQ::Zero(zCount_), Relation::LessEqual, *up - *lo};
      r.coefficients(vars_[j].plus) = 1;
      rows_.push_back(std::move(r));
    }
  }

  const auto m = static_cast<Index>(rows_.size());
  Index slackCount = 0;
  for (const auto& r : rows_)
    if (r.relation != Relation::Equal) ++slackCount;

  // Decide per row: sign normalization and whether an artificial is needed.
  rowSign_.assign(static_cast<std::size_t>(m), 1);
  std::vector<int> slackCoef(static_cast<std::size_t>(m), 0);
  std::vector<bool> needsArtificial(static_cast<std::size_t>(m), false);
  Index artificialCount = 0;
  for (Index i = 0; i < m; ++i) {
    const auto& r = rows_[static_cast<std::size_t>(i)];
    int s = r.relation == Relation::LessEqual ? 1 : (r.relation == Relation::GreaterEqual ? -1 : 0);
    int sigma = 1;
    if (r.rhs.sign() < 0 || (r.rhs.sign() == 0 && s < 0)) sigma = -1;
    rowSign_[static_cast<std::size_t>(i)] = sigma;
    slackCoef[static_cast<std::size_t>(i)] = s * sigma;
    if (s * sigma != 1) {
      needsArtificial[static_cast<std::size_t>(i)] = true;
      ++artificialCount;
    }
  }

  firstArtificial_ = zCount_ + slackCount;
  columnCount_ = firstArtificial_ + artificialCount;
  table_ = Tableau::Zero(m, columnCount_);
  rhs_ = VectorQ::Zero(m);
  basis_.assign(static_cast<std::size_t>(m), -1);
  initialBasic_.assign(static_cast<std::size_t>(m), -1);

  Index nextSlack = zCount_;
  Index nextArtificial = firstArtificial_;
  for (Index i = 0; i < m; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const auto& r = rows_[ui];
    const int sigma = rowSign_[ui];
    for (Index k = 0; k < zCount_; ++k)
      if (!isZero(r.coefficients(k))) table_(i, k) = sigma > 0 ? r.coefficients(k) : Rational(-r.coefficients(k));
    rhs_(i) = sigma > 0 ? r.rhs : Rational(-r.rhs);
    if (r.relation != Relation::Equal) {
      table_(i, nextSlack) = slackCoef[ui];
      if (!needsArtificial[ui]) basis_[ui] = nextSlack;
      ++nextSlack;
    }
    if (needsArtificial[ui]) {
      table_(i, nextArtificial) = 1;
      basis_[ui] = nextArtificial++;
    }
    initialBasic_[ui] = basis_[ui];
  }
}

void Simplex::pivot(Index row, Index col) {
  const Rational inv = Rational(1) / table_(row, col);
  std::vector<Index> nonzero;
  nonzero.reserve(static_cast<std::size_t>(columnCount_));
  for (Index j = 0; j < columnCount_; ++j) {
    if (isZero(table_(row, j))) continue;
    table_(row, j) *= inv;
    nonzero.push_back(j);
  }
  rhs_(row) *= inv;

  for (Index i = 0; i < table_.rows(); ++i) {
    if (i == row || isZero(table_(i, col))) continue;
    const Rational factor = table_(i, col);
    for (Index j : nonzero) table_(i, j) -= factor * table_(row, j);
    rhs_(i) -= factor * rhs_(row);
  }
  if (!isZero(reduced_(col))) {
    const Rational factor = reduced_(col);
    for (Index j : nonzero) reduced_(j) -= factor * table_(row, j);
  }
  basis_[static_cast<std::size_t>(row)] = col;
}

void Simplex::loadObjective(const VectorQ& costs) {
  costs_ = costs;
  reduced_ = costs;
  for (Index i = 0; i < table_.rows(); ++i) {
    const Rational& cb = costs_(basis_[static_cast<std::size_t>(i)]);
    if (isZero(cb)) continue;
    for (Index j = 0; j < columnCount_; ++j)
      if (!isZero(table_(i, j))) reduced_(j) -= cb * table_(i, j);
  }
}

Index Simplex::iterate() {
  for (;;) {
    // Bland: lowest-index improving column; artificials never re-enter.
    Index entering = -1;
    for (Index j = 0; j < firstArtificial_; ++j) {
      if (reduced_(j).sign() > 0) {
        entering = j;
        break;
      }
    }
    if (entering < 0) return -1;

    Index leaving = -1;
    Rational best;
    for (Index i = 0; i < table_.rows(); ++i) {
      const Rational& a = table_(i, entering);
      if (a.sign() <= 0) continue;
      Rational ratio = rhs_(i) / a;
      if (leaving < 0 || ratio < best ||
          (ratio == best && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leaving)])) {
        leaving = i;
        best = std::move(ratio);
      }
    }
    if (leaving < 0) return entering;
    pivot(leaving, entering);
  }
}

VectorQ Simplex::currentX() const {
  VectorQ z = VectorQ::Zero(columnCount_);
  for (std::size_t i = 0; i < basis_.size(); ++i) z(basis_[i]) = rhs_(static_cast<Index>(i));
  VectorQ x(static_cast<Index>(vars_.size()));
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    const auto& v = vars_[j];
    Rational value = v.offset;
    if (v.plus >= 0) value += z(v.plus);
    if (v.minus >= 0) value -= z(v.minus);
    x(static_cast<Index>(j)) = std::move(value);
  }
  return x;
}

// y = c_B^T B^{-1}; B^{-1} sits in the columns of the initial basis.
VectorQ Simplex::rowDuals() const {
  const Index m = table_.rows();
  VectorQ y = VectorQ::Zero(m);
  for (Index k = 0; k < m; ++k) {
    const Rational& cb = costs_(basis_[static_cast<std::size_t>(k)]);
    if (isZero(cb)) continue;
    for (Index i = 0; i < m; ++i) {
      const Rational& entry = table_(k, initialBasic_[static_cast<std::size_t>(i)]);
      if (!isZero(entry)) y(i) += cb * entry;
    }
  }
  return y;
}

void Simplex::fillMultipliers(LpOutcome& out, const VectorQ& maxFormObjective) const {
  const VectorQ y = rowDuals();
  const auto userRows = static_cast<Index>(lp_.rowCount());
  const auto n = static_cast<Index>(lp_.variableCount());
  out.rowMultipliers = VectorQ::Zero(userRows);
  VectorQ combined = VectorQ::Zero(n);
  for (Index i = 0; i < userRows; ++i) {
    const auto& row = lp_.rows()[static_cast<std::size_t>(i)];
    Rational pi = rowSign_[static_cast<std::size_t>(i)] > 0 ? y(i) : Rational(-y(i));
    out.rowMultipliers(i) = row.relation == Relation::GreaterEqual ? Rational(-pi) : pi;
    if (!isZero(pi))
      for (Index j = 0; j < n; ++j)
        if (!isZero(row.coefficients(j))) combined(j) += pi * row.coefficients(j);
  }
  out.lowerMultipliers = VectorQ::Zero(n);
  out.upperMultipliers = VectorQ::Zero(n);
  // Boxed variables carry an internal row x_j <= upper after the user rows.
  Index boundRow = userRows;
  for (Index j = 0; j < n; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    if (!lp_.lower(uj) || !lp_.upper(uj)) continue;
    const Rational pi = rowSign_[static_cast<std::size_t>(boundRow)] > 0 ? y(boundRow) : Rational(-y(boundRow));
    out.upperMultipliers(j) = pi;
    combined(j) += pi;
    ++boundRow;
  }
  for (Index j = 0; j < n; ++j) {
    Rational residual = maxFormObjective(j) - combined(j);
    if (residual.sign() > 0)
      out.upperMultipliers(j) += residual;
    else if (residual.sign() < 0)
      out.lowerMultipliers(j) = -residual;
  }
}

LpOutcome Simplex::run() {
  LpOutcome out;
  const auto n = static_cast<Index>(lp_.variableCount());

  if (firstArtificial_ < columnCount_) {
    VectorQ phase1 = VectorQ::Zero(columnCount_);
    for (Index j = firstArtificial_; j < columnCount_; ++j) phase1(j) = -1;
    loadObjective(phase1);
    iterate();  // phase 1 is bounded by 0

    Rational infeasibility = 0;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] >= firstArtificial_) infeasibility += rhs_(static_cast<Index>(i));
    if (infeasibility.sign() > 0) {
      out.status = LpStatus::Infeasible;
      fillMultipliers(out, VectorQ::Zero(n));
      // Normalize so the combination reads 0 <= -1.
      Rational total = 0;
      for (Index i = 0; i < out.rowMultipliers.size(); ++i) {
        const auto& row = lp_.rows()[static_cast<std::size_t>(i)];
        const Rational& mult = out.rowMultipliers(i);
        total += row.relation == Relation::GreaterEqual ? Rational(-mult * row.rhs) : Rational(mult * row.rhs);
      }
      for (Index j = 0; j < n; ++j) {
        if (!isZero(out.lowerMultipliers(j)))
          total -= out.lowerMultipliers(j) * *lp_.lower(static_cast<std::size_t>(j));
        if (!isZero(out.upperMultipliers(j)))
          total += out.upperMultipliers(j) * *lp_.upper(static_cast<std::size_t>(j));
      }
      const Rational scale = Rational(-1) / total;
      out.rowMultipliers *= scale;
      out.lowerMultipliers *= scale;
      out.upperMultipliers *= scale;
      return out;
    }

    // Drive zero-level artificials out of the basis where a real column allows it.
    for (Index i = 0; i < table_.rows(); ++i) {
      if (basis_[static_cast<std::size_t>(i)] < firstArtificial_) continue;
      for (Index j = 0; j < firstArtificial_; ++j) {
        if (!isZero(table_(i, j))) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  VectorQ maxForm = lp_.objective();
  if (lp_.sense() == Sense::Minimize) maxForm = -maxForm;
  VectorQ phase2 = VectorQ::Zero(columnCount_);
  for (Index j = 0; j < n; ++j) {
    const auto& v = vars_[static_cast<std::size_t>(j)];
    if (v.plus >= 0) phase2(v.plus) += maxForm(j);
    if (v.minus >= 0) phase2(v.minus) -= maxForm(j);
  }
  loadObjective(phase2);
  const Index unboundedColumn = iterate();

  out.point = currentX();
  if (unboundedColumn >= 0) {
    out.status = LpStatus::Unbounded;
    VectorQ dz = VectorQ::Zero(columnCount_);
    dz(unboundedColumn) = 1;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      dz(basis_[i]) = -table_(static_cast<Index>(i), unboundedColumn);
    out.ray = VectorQ::Zero(n);
    for (Index j = 0; j < n; ++j) {
      const auto& v = vars_[static_cast<std::size_t>(j)];
      if (v.plus >= 0) out.ray(j) += dz(v.plus);
      if (v.minus >= 0) out.ray(j) -= dz(v.minus);
    }
    return out;
  }

  out.status = LpStatus::Optimal;
  out.value = lp_.objective().dot(out.point);
  fillMultipliers(out, maxForm);
  return out;
}

}  // namespace

LpOutcome solve(const LinearProgram& lp) {
  lp.validate();
  Simplex simplex(lp);
  return simplex.run();
}

bool isFeasiblePoint(const LinearProgram& lp, const VectorQ& x) {
  const auto n = static_cast<Index>(lp.variableCount());
  if (x.size() != n) return false;
  for (const auto& row : lp.rows()) {
    const Rational lhs = row.coefficients.dot(x);
    switch (row.relation) {
      case Relation::LessEqual:
        if (lhs > row.rhs) return false;
        break;
      case Relation::GreaterEqual:
        if (lhs < row.rhs) return false;
        break;
      case Relation::Equal:
        if (lhs != row.rhs) return false;
        break;
    }
  }
  for (Index j = 0; j < n; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    if (lp.lower(uj) && x(j) < *lp.lower(uj)) return false;
    if (lp.upper(uj) && x(j) > *lp.upper(uj)) return false;
  }
  return true;
}

namespace {

// Combination  sum_i m_i s_i a_i - v + w  and its right-hand side, with
// s_i = -1 for ">=" rows. Returns false if some multiplier has the wrong sign
// or is attached to a bound that does not exist.
bool combine(const LinearProgram& lp, const LpOutcome& out, VectorQ& lhs, Rational& rhs) {
  const auto n = static_cast<Index>(lp.variableCount());
  const auto m = static_cast<Index>(lp.rowCount());
  if (out.rowMultipliers.size() != m || out.lowerMultipliers.size() != n ||
      out.upperMultipliers.size() != n)
    return false;
  lhs = VectorQ::Zero(n);
  rhs = 0;
  for (Index i = 0; i < m; ++i) {
    const auto& row = lp.rows()[static_cast<std::size_t>(i)];
    const Rational& mult = out.rowMultipliers(i);
    if (row.relation != Relation::Equal && mult.sign() < 0) return false;
    const Rational signedMult = row.relation == Relation::GreaterEqual ? Rational(-mult) : mult;
    lhs += row.coefficients * signedMult;
    rhs += signedMult * row.rhs;
  }
  for (Index j = 0; j < n; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    const Rational& v = out.lowerMultipliers(j);
    const Rational& w = out.upperMultipliers(j);
    if (v.sign() < 0 || w.sign() < 0) return false;
    if (v.sign() > 0) {
      if (!lp.lower(uj)) return false;
      lhs(j) -= v;
      rhs -= v * *lp.lower(uj);
    }
    if (w.sign() > 0) {
      if (!lp.upper(uj)) return false;
      lhs(j) += w;
      rhs += w * *lp.upper(uj);
    }
  }
  return true;
}

}  // namespace

bool verifyCertificate(const LinearProgram& lp, const LpOutcome& out) {
  try {
    lp.validate();
  } catch (const std::invalid_argument&) {
    return false;
  }
  const auto n = static_cast<Index>(lp.variableCount());
  const bool maximize = lp.sense() == Sense::Maximize;

  switch (out.status) {
    case LpStatus::Optimal: {
      if (!isFeasiblePoint(lp, out.point)) return false;
      if (lp.objective().dot(out.point) != out.value) return false;
      VectorQ lhs;
      Rational rhs;
      if (!combine(lp, out, lhs, rhs)) return false;
      const VectorQ target = maximize ? VectorQ(lp.objective()) : VectorQ(-lp.objective());
      const Rational bound = maximize ? out.value : Rational(-out.value);
      return lhs == target && rhs == bound;
    }
    case LpStatus::Infeasible: {
      VectorQ lhs;
      Rational rhs;
      if (!combine(lp, out, lhs, rhs)) return false;
      return lhs == VectorQ::Zero(n) && rhs.sign() < 0;
    }
    case LpStatus::Unbounded: {
      if (!isFeasiblePoint(lp, out.point) || out.ray.size() != n) return false;
      for (const auto& row : lp.rows()) {
        const Rational d = row.coefficients.dot(out.ray);
        if (row.relation == Relation::LessEqual && d.sign() > 0) return false;
        if (row.relation == Relation::GreaterEqual && d.sign() < 0) return false;
        if (row.relation == Relation::Equal && d.sign() != 0) return false;
      }
      for (Index j = 0; j < n; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        if (lp.lower(uj) && out.ray(j).sign() < 0) return false;
        if (lp.upper(uj) && out.ray(j).sign() > 0) return false;
      }
      const Rational gain = lp.objective().dot(out.ray);
      return maximize ? gain.sign() > 0 : gain.sign() < 0;
    }
  }
  return false;
}

}  // namespace ftap
