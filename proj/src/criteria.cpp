#include "ftap/criteria.hpp"

namespace ftap {

using Index = Eigen::Index;

namespace {

// Programs over the combination coefficients lambda of the generators,
// optionally followed by one auxiliary variable per atom.
struct ConeProgram {
  LinearProgram lp;
  MatrixQ g;  // atoms x generators
  Index generators = 0;
  Index atoms = 0;

  ConeProgram(const ConeSpec& cone, bool perAtomAuxiliary) : g(cone.generatorMatrix()) {
    generators = g.cols();
    atoms = g.rows();
    const Index total = generators + (perAtomAuxiliary ? atoms : 0);
    lp = LinearProgram(static_cast<std::size_t>(total));
    for (Index j = 0; j < generators; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      lp.setVariableName(uj, "lambda[" + std::to_string(j) + "]");
      if (!cone.isLinear()) lp.setLower(uj, 0);
    }
    const auto& labels = cone.space()->labels();
    for (Index i = generators; i < total; ++i)
      lp.setVariableName(static_cast<std::size_t>(i), "aux[" + labels[static_cast<std::size_t>(i - generators)] + "]");
  }

  VectorQ zeroRow() const { return VectorQ::Zero(static_cast<Index>(lp.variableCount())); }

  // Row coefficients of X(w) = sum_j g(w, j) lambda_j.
  VectorQ valueRow(Index atom) const {
    VectorQ row = zeroRow();
    row.head(generators) = g.row(atom).transpose();
    return row;
  }

  // Coefficients of sum_w weights(w) X(w).
  VectorQ weightedValueRow(const VectorQ& weights) const {
    VectorQ row = zeroRow();
    if (generators > 0) row.head(generators) = g.transpose() * weights;
    return row;
  }

  Index aux(Index atom) const { return generators + atom; }

  VectorQ lambda(const VectorQ& x) const { return x.head(generators); }
};

void requireEquivalentToReference(const ConeSpec& cone, const Measure& q) {
  if (!sameSpace(cone.space(), q.space())) throw SpaceMismatch();
  if (relate(q, cone.space()->reference()).kind != MeasureRelationKind::Equivalent)
    throw PreconditionViolated("Q must be equivalent to the reference probability");
}

std::string atomName(const ConeSpec& cone, Index atom) {
  return cone.space()->labels()[static_cast<std::size_t>(atom)];
}

KReport kFromOutcome(const ConeSpec& cone, const Measure& q, ConeProgram& prog) {
  LpOutcome out = solve(prog.lp);
  KReport report{ExtendedRational{}, std::nullopt, std::nullopt, q, Certificate{prog.lp, out}};
  if (out.status == LpStatus::Unbounded) {
    report.value = ExtendedRational::infinity();
    report.ray = cone.combination(prog.lambda(out.ray));
  } else if (out.status == LpStatus::Optimal) {
    report.value = out.value;
    report.attaining = cone.combination(prog.lambda(out.point));
  } else {
    // Every program built here contains lambda = 0.
    throw std::logic_error("cone program reported infeasible");
  }
  report.certificate.outcome = std::move(out);
  return report;
}

}  // namespace

NaReport checkNA(const ConeSpec& cone) {
  ConeProgram prog(cone, false);
  for (Index w = 0; w < prog.atoms; ++w)
    prog.lp.addRow(prog.valueRow(w), Relation::GreaterEqual, 0, "nonnegative[" + atomName(cone, w) + "]");
  const VectorQ total = prog.weightedValueRow(VectorQ::Ones(prog.atoms));
  prog.lp.addRow(total, Relation::LessEqual, 1, "budget");
  prog.lp.setObjective(total);

  LpOutcome out = solve(prog.lp);
  NaReport report;
  report.holds = out.value.sign() == 0;
  if (!report.holds) report.witness = cone.combination(prog.lambda(out.point));
  report.certificate = {std::move(prog.lp), std::move(out)};
  return report;
}

NaReport checkConditionA(const ConeSpec& cone) {
  ConeProgram prog(cone, true);
  VectorQ objective = prog.zeroRow();
  for (Index w = 0; w < prog.atoms; ++w) {
    prog.lp.setLower(static_cast<std::size_t>(prog.aux(w)), 0);
    VectorQ row = prog.valueRow(w);
    row(prog.aux(w)) = -1;
    prog.lp.addRow(std::move(row), Relation::GreaterEqual, 0, "dominates[" + atomName(cone, w) + "]");
    objective(prog.aux(w)) = 1;
  }
  prog.lp.addRow(objective, Relation::LessEqual, 1, "budget");
  prog.lp.setObjective(objective);

  LpOutcome out = solve(prog.lp);
  NaReport report;
  report.holds = out.value.sign() == 0;
  if (!report.holds) report.witness = cone.combination(prog.lambda(out.point));
  report.certificate = {std::move(prog.lp), std::move(out)};
  return report;
}

NaReport checkConditionD(const ConeSpec& cone) {
  ConeProgram prog(cone, false);
  for (Index w = 0; w < prog.atoms; ++w)
    prog.lp.addRow(prog.valueRow(w), Relation::GreaterEqual, -1, "floor[" + atomName(cone, w) + "]");
  prog.lp.setObjective(prog.weightedValueRow(VectorQ::Ones(prog.atoms)));

  LpOutcome out = solve(prog.lp);
  NaReport report;
  report.holds = out.status != LpStatus::Unbounded;
  if (!report.holds) report.witness = cone.combination(prog.lambda(out.ray));
  report.certificate = {std::move(prog.lp), std::move(out)};
  return report;
}

// Epigraph encoding: s_w >= X(w)^- is relaxed to s_w >= -X(w), s_w >= 0. A
// slack s_w above X(w)^- only spends budget in sum Q(w) s_w <= 1 without
// changing the objective, so the optimum is attained with s = X^- and equals
// sup E_Q(X) over {E_Q(X^-) <= 1}. By positive homogeneity that is the least k.
KReport minKBStar(const ConeSpec& cone, const Measure& q) {
  requireEquivalentToReference(cone, q);
  ConeProgram prog(cone, true);
  VectorQ budget = prog.zeroRow();
  for (Index w = 0; w < prog.atoms; ++w) {
    prog.lp.setLower(static_cast<std::size_t>(prog.aux(w)), 0);
    VectorQ row = prog.valueRow(w);
    row(prog.aux(w)) = 1;
    prog.lp.addRow(std::move(row), Relation::GreaterEqual, 0, "negpart[" + atomName(cone, w) + "]");
    budget(prog.aux(w)) = q(static_cast<std::size_t>(w));
  }
  prog.lp.addRow(std::move(budget), Relation::LessEqual, 1, "budget");
  prog.lp.setObjective(prog.weightedValueRow(q.weights()));
  return kFromOutcome(cone, q, prog);
}

KReport minKB(const ConeSpec& cone, const Measure& q) {
  requireEquivalentToReference(cone, q);
  ConeProgram prog(cone, false);
  for (Index w = 0; w < prog.atoms; ++w)
    prog.lp.addRow(prog.valueRow(w), Relation::GreaterEqual, -1, "floor[" + atomName(cone, w) + "]");
  prog.lp.setObjective(prog.weightedValueRow(q.weights()));
  return kFromOutcome(cone, q, prog);
}

// Same epigraph argument as minKBStar with u_w >= |X(w)|; one program per
// sign of E_Q(X).
KReport cMinBStarStar(const ConeSpec& cone, const Measure& q) {
  if (!cone.isLinear()) throw PreconditionViolated("(b**) constant is defined for linear spaces only");
  requireEquivalentToReference(cone, q);

  std::optional<KReport> best;
  for (int sign : {1, -1}) {
    ConeProgram prog(cone, true);
    VectorQ budget = prog.zeroRow();
    for (Index w = 0; w < prog.atoms; ++w) {
      prog.lp.setLower(static_cast<std::size_t>(prog.aux(w)), 0);
      VectorQ above = -prog.valueRow(w);
      above(prog.aux(w)) = 1;
      prog.lp.addRow(above, Relation::GreaterEqual, 0, "abs_upper[" + atomName(cone, w) + "]");
      VectorQ below = prog.valueRow(w);
      below(prog.aux(w)) = 1;
      prog.lp.addRow(below, Relation::GreaterEqual, 0, "abs_lower[" + atomName(cone, w) + "]");
      budget(prog.aux(w)) = q(static_cast<std::size_t>(w));
    }
    prog.lp.addRow(std::move(budget), Relation::LessEqual, 1, "budget");
    prog.lp.setObjective(prog.weightedValueRow(q.weights()) * Rational(sign));
    KReport r = kFromOutcome(cone, q, prog);
    if (!best || best->value < r.value) best = std::move(r);
  }
  return std::move(*best);
}

std::vector<ConditionCPair> buildConditionC(const ConeSpec& cone, const Measure& q, const Rational& k,
                                            std::optional<std::size_t> count) {
  requireEquivalentToReference(cone, q);
  if (k.sign() < 0) throw PreconditionViolated("k must be nonnegative");
  const KReport kb = minKB(cone, q);
  if (!(kb.value <= ExtendedRational(k)))
    throw PreconditionViolated("E_Q(X) <= k ess sup(-X) fails for k = " + toString(k) +
                               " (least constant is " + toString(kb.value) + ")");

  const RandomVariable f = densityOf(q, cone.space()->reference());
  const Rational minF = f.values().minCoeff();
  std::size_t n = count.value_or(std::max<std::size_t>(1, ceil(Rational(1) / minF).convert_to<std::size_t>()));

  std::vector<ConditionCPair> pairs;
  for (std::size_t i = 1; i <= n; ++i) {
    AtomSet event;
    for (std::size_t w = 0; w < f.size(); ++w)
      if (f(w) * i >= 1) event.push_back(w);
    pairs.push_back({std::move(event), Rational(i) * (k + 1)});
  }
  return pairs;
}

bool verifyConditionC(const ConeSpec& cone, const std::vector<ConditionCPair>& pairs) {
  const VectorQ& p0 = cone.space()->weights();
  for (const auto& pair : pairs) {
    ConeProgram prog(cone, false);
    for (Index w = 0; w < prog.atoms; ++w)
      prog.lp.addRow(prog.valueRow(w), Relation::GreaterEqual, -1, "floor[" + atomName(cone, w) + "]");
    VectorQ localized = VectorQ::Zero(prog.atoms);
    for (auto w : pair.event) localized(static_cast<Index>(w)) = p0(static_cast<Index>(w));
    prog.lp.setObjective(prog.weightedValueRow(localized));
    const LpOutcome out = solve(prog.lp);
    if (out.status != LpStatus::Optimal || out.value > pair.kn) return false;
  }
  return true;
}

Rational convertKtoC(const Rational& k) {
  if (k.sign() < 0) throw PreconditionViolated("k must be nonnegative");
  return k / (k + 2);
}

Rational convertCtoK(const Rational& c) {
  if (c.sign() < 0 || c >= 1) throw PreconditionViolated("c must satisfy 0 <= c < 1");
  return 2 * c / (1 - c);
}

}  // namespace ftap
