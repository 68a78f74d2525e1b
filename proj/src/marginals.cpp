#include "ftap/marginals.hpp"

namespace ftap {

using Index = Eigen::Index;

namespace {

void requireDistribution(const VectorQ& v, const char* what) {
  for (Index i = 0; i < v.size(); ++i)
    if (v(i).sign() < 0) throw std::invalid_argument(std::string(what) + " has a negative entry");
  if (v.sum() != 1) throw std::invalid_argument(std::string(what) + " does not sum to 1");
}

}  // namespace

ProductSpace ProductSpace::make(std::vector<std::string> rows, std::vector<std::string> cols, MatrixQ joint) {
  if (joint.rows() != static_cast<Index>(rows.size()) || joint.cols() != static_cast<Index>(cols.size()))
    throw std::invalid_argument("joint table shape does not match the row/column labels");
  ProductSpace ps;
  std::vector<std::string> labels;
  std::vector<Rational> weights;
  for (Index r = 0; r < joint.rows(); ++r) {
    for (Index c = 0; c < joint.cols(); ++c) {
      const Rational& w = joint(r, c);
      if (w.sign() < 0) throw std::invalid_argument("joint table has a negative entry");
      if (w.sign() == 0) continue;
      ps.cells_.emplace_back(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      labels.push_back(rows[static_cast<std::size_t>(r)] + ":" + cols[static_cast<std::size_t>(c)]);
      weights.push_back(w);
    }
  }
  VectorQ wv(static_cast<Index>(weights.size()));
  for (std::size_t i = 0; i < weights.size(); ++i) wv(static_cast<Index>(i)) = weights[i];
  ps.space_ = FiniteProbSpace::make(std::move(labels), std::move(wv));
  ps.rows_ = std::move(rows);
  ps.cols_ = std::move(cols);
  ps.joint_ = std::move(joint);
  return ps;
}

std::optional<std::size_t> ProductSpace::atomOf(std::size_t row, std::size_t col) const {
  for (std::size_t a = 0; a < cells_.size(); ++a)
    if (cells_[a].first == row && cells_[a].second == col) return a;
  return std::nullopt;
}

MatrixQ ProductSpace::table(const Measure& p) const {
  if (!sameSpace(p.space(), space_)) throw SpaceMismatch();
  MatrixQ t = MatrixQ::Zero(static_cast<Index>(rows_.size()), static_cast<Index>(cols_.size()));
  for (std::size_t a = 0; a < cells_.size(); ++a)
    t(static_cast<Index>(cells_[a].first), static_cast<Index>(cells_[a].second)) = p(a);
  return t;
}

MarginalPair MarginalPair::make(VectorQ first, VectorQ second) {
  requireDistribution(first, "first marginal");
  requireDistribution(second, "second marginal");
  return {std::move(first), std::move(second)};
}

ConeSpec buildMarginalCone(const ProductSpace& ps, const MarginalPair& m) {
  if (m.first.size() != static_cast<Index>(ps.rowLabels().size()) ||
      m.second.size() != static_cast<Index>(ps.colLabels().size()))
    throw std::invalid_argument("marginal sizes do not match the product");
  const auto n = static_cast<Index>(ps.cells().size());
  std::vector<RandomVariable> generators;
  for (std::size_t a = 0; a < ps.rowLabels().size(); ++a) {
    VectorQ v = VectorQ::Constant(n, -m.first(static_cast<Index>(a)));
    for (Index w = 0; w < n; ++w)
      if (ps.cells()[static_cast<std::size_t>(w)].first == a) v(w) += 1;
    generators.emplace_back(ps.space(), std::move(v));
  }
  for (std::size_t b = 0; b < ps.colLabels().size(); ++b) {
    VectorQ v = VectorQ::Constant(n, -m.second(static_cast<Index>(b)));
    for (Index w = 0; w < n; ++w)
      if (ps.cells()[static_cast<std::size_t>(w)].second == b) v(w) += 1;
    generators.emplace_back(ps.space(), std::move(v));
  }
  return ConeSpec(ps.space(), std::move(generators), ConeKind::LinearSpace);
}

CouplingResult coupleWithMarginals(const ProductSpace& ps, const MarginalPair& m) {
  if (m.first.size() != static_cast<Index>(ps.rowLabels().size()) ||
      m.second.size() != static_cast<Index>(ps.colLabels().size()))
    throw std::invalid_argument("marginal sizes do not match the product");
  const std::size_t n = ps.cells().size();
  const std::size_t tau = n;
  const auto width = static_cast<Index>(n + 1);
  LinearProgram lp(n + 1);
  const auto& labels = ps.space()->labels();
  for (std::size_t a = 0; a < n; ++a) {
    lp.setVariableName(a, "P[" + labels[a] + "]");
    lp.setLower(a, 0);
  }
  lp.setVariableName(tau, "tau");
  lp.setLower(tau, 0);

  for (std::size_t a = 0; a < n; ++a) {
    VectorQ row = VectorQ::Zero(width);
    row(static_cast<Index>(a)) = 1;
    row(static_cast<Index>(tau)) = -ps.space()->weight(a);
    lp.addRow(std::move(row), Relation::GreaterEqual, 0, "floor[" + labels[a] + "]");
  }
  for (std::size_t r = 0; r < ps.rowLabels().size(); ++r) {
    VectorQ row = VectorQ::Zero(width);
    for (std::size_t a = 0; a < n; ++a)
      if (ps.cells()[a].first == r) row(static_cast<Index>(a)) = 1;
    lp.addRow(std::move(row), Relation::Equal, m.first(static_cast<Index>(r)), "row[" + ps.rowLabels()[r] + "]");
  }
  for (std::size_t c = 0; c < ps.colLabels().size(); ++c) {
    VectorQ row = VectorQ::Zero(width);
    for (std::size_t a = 0; a < n; ++a)
      if (ps.cells()[a].second == c) row(static_cast<Index>(a)) = 1;
    lp.addRow(std::move(row), Relation::Equal, m.second(static_cast<Index>(c)), "col[" + ps.colLabels()[c] + "]");
  }
  lp.setObjectiveCoefficient(tau, 1);
  LpOutcome out = solve(lp);

  CouplingResult result;
  if (out.status == LpStatus::Optimal) {
    result.tau = out.value;
    result.feasible = out.value.sign() > 0;
    if (result.feasible)
      result.coupling = Measure(ps.space(), out.point.head(static_cast<Index>(n)));
  }
  result.certificate = {std::move(lp), std::move(out)};
  return result;
}

KReport evaluateInfCriterion(const ProductSpace& ps, const MarginalPair& m, const Measure& q) {
  return cMinBStarStar(buildMarginalCone(ps, m), q);
}

MarginalPair marginalsOf(const ProductSpace& ps, const Measure& p) {
  const MatrixQ t = ps.table(p);
  return {t.rowwise().sum(), t.colwise().sum().transpose()};
}

}  // namespace ftap
