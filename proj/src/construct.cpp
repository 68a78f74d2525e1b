#include "ftap/construct.hpp"

#include <algorithm>
#include <set>

namespace ftap {

using Index = Eigen::Index;

namespace {

void requireAtLeastOne(const RandomVariable& y) {
  for (Index i = 0; i < y.values().size(); ++i)
    if (y.values()(i) < 1) throw PreconditionViolated("Y must be >= 1 on every atom");
}

// Measure weights P(w) as the first n variables, with sum P = 1 and one
// super-martingale row per generator (an equality for linear spaces).
LinearProgram measureProgram(const ConeSpec& cone, std::size_t extraVariables) {
  const std::size_t n = cone.space()->size();
  LinearProgram lp(n + extraVariables);
  const auto& labels = cone.space()->labels();
  VectorQ total = VectorQ::Zero(static_cast<Index>(lp.variableCount()));
  for (std::size_t w = 0; w < n; ++w) {
    lp.setVariableName(w, "P[" + labels[w] + "]");
    total(static_cast<Index>(w)) = 1;
  }
  lp.addRow(std::move(total), Relation::Equal, 1, "total");
  const Relation rel = cone.isLinear() ? Relation::Equal : Relation::LessEqual;
  for (std::size_t j = 0; j < cone.generatorCount(); ++j) {
    VectorQ row = VectorQ::Zero(static_cast<Index>(lp.variableCount()));
    row.head(static_cast<Index>(n)) = cone.generators()[j].values();
    lp.addRow(std::move(row), rel, 0, "expectation[" + std::to_string(j) + "]");
  }
  return lp;
}

Measure measureFromPoint(const ConeSpec& cone, const VectorQ& point) {
  return Measure(cone.space(), point.head(static_cast<Index>(cone.space()->size())));
}

MeasureSearch runSearch(const ConeSpec& cone, LinearProgram lp) {
  LpOutcome out = solve(lp);
  MeasureSearch search{std::nullopt, Certificate{std::move(lp), std::move(out)}};
  if (search.certificate.outcome.status == LpStatus::Optimal)
    search.measure = measureFromPoint(cone, search.certificate.outcome.point);
  return search;
}

}  // namespace

BandSpec BandSpec::fromK(Measure center, const Rational& k) {
  if (k.sign() < 0) throw PreconditionViolated("k must be nonnegative");
  return BandSpec{std::move(center), k + 1};
}

bool BandSpec::contains(const Measure& p) const {
  if (!sameSpace(p.space(), center.space())) return false;
  for (std::size_t w = 0; w < p.size(); ++w)
    if (p(w) * t < center(w) || p(w) > center(w) * t) return false;
  return true;
}

SingleXDensity singleXDensity(const Measure& q, const RandomVariable& x, const Rational& k) {
  if (!sameSpace(q.space(), x.space())) throw SpaceMismatch();
  if (k.sign() < 0) throw PreconditionViolated("k must be nonnegative");
  if (relate(q, q.space()->reference()).kind != MeasureRelationKind::Equivalent)
    throw PreconditionViolated("Q must be equivalent to the reference probability");
  const auto [xPlus, xMinus] = valueDecomp(x);
  if (expectation(q, x) > k * expectation(q, xMinus))
    throw PreconditionViolated("E_Q(X) <= k E_Q(X^-) fails");

  const Rational t = k + 1;
  AtomSet nonnegative;
  AtomSet negative;
  for (std::size_t w = 0; w < x.size(); ++w) (x(w).sign() >= 0 ? nonnegative : negative).push_back(w);
  const Rational normalizer = q.probability(nonnegative) + t * q.probability(negative);

  VectorQ f(static_cast<Index>(x.size()));
  for (std::size_t w = 0; w < x.size(); ++w)
    f(static_cast<Index>(w)) = (x(w).sign() >= 0 ? Rational(1) : t) / normalizer;
  RandomVariable density(x.space(), std::move(f));
  Measure p = withDensity(q, density);
  return {std::move(density), std::move(p), t, normalizer};
}

MeasureSearch findESMinBand(const ConeSpec& cone, const Measure& q, const Rational& k) {
  if (!sameSpace(cone.space(), q.space())) throw SpaceMismatch();
  if (relate(q, cone.space()->reference()).kind != MeasureRelationKind::Equivalent)
    throw PreconditionViolated("Q must be equivalent to the reference probability");
  const BandSpec band = BandSpec::fromK(q, k);
  LinearProgram lp = measureProgram(cone, 0);
  for (std::size_t w = 0; w < q.size(); ++w) {
    lp.setLower(w, q(w) / band.t);
    lp.setUpper(w, q(w) * band.t);
  }
  return runSearch(cone, std::move(lp));
}

MeasureSearch findESFAwithFloor(const ConeSpec& cone, const Rational& r) {
  if (r.sign() <= 0) throw PreconditionViolated("floor r must be positive");
  LinearProgram lp = measureProgram(cone, 0);
  for (std::size_t w = 0; w < cone.space()->size(); ++w) lp.setLower(w, r * cone.space()->weight(w));
  return runSearch(cone, std::move(lp));
}

MaximalSupport maximalSupport(const ConeSpec& cone) {
  // Unnormalized weights x >= 0 under the homogeneous super-martingale rows,
  // indicators y in [0, 1] with y <= x, maximize sum y. The feasible x form a
  // cone, so every atom in the maximal support can be lifted to x >= 1 and
  // the optimum puts y = 1 exactly on that support.
  const std::size_t n = cone.space()->size();
  const auto& labels = cone.space()->labels();
  LinearProgram lp(2 * n);
  VectorQ objective = VectorQ::Zero(static_cast<Index>(2 * n));
  for (std::size_t w = 0; w < n; ++w) {
    lp.setVariableName(w, "x[" + labels[w] + "]");
    lp.setVariableName(n + w, "y[" + labels[w] + "]");
    lp.setLower(w, 0);
    lp.setLower(n + w, 0);
    lp.setUpper(n + w, 1);
    objective(static_cast<Index>(n + w)) = 1;
    VectorQ row = VectorQ::Zero(static_cast<Index>(2 * n));
    row(static_cast<Index>(n + w)) = 1;
    row(static_cast<Index>(w)) = -1;
    lp.addRow(std::move(row), Relation::LessEqual, 0, "charged[" + labels[w] + "]");
  }
  const Relation rel = cone.isLinear() ? Relation::Equal : Relation::LessEqual;
  for (std::size_t j = 0; j < cone.generatorCount(); ++j) {
    VectorQ row = VectorQ::Zero(static_cast<Index>(2 * n));
    row.head(static_cast<Index>(n)) = cone.generators()[j].values();
    lp.addRow(std::move(row), rel, 0, "expectation[" + std::to_string(j) + "]");
  }
  lp.setObjective(std::move(objective));
  LpOutcome out = solve(lp);

  MaximalSupport result{{}, std::nullopt, Certificate{}};
  VectorQ x = out.point.head(static_cast<Index>(n));
  for (std::size_t w = 0; w < n; ++w)
    if (out.point(static_cast<Index>(n + w)) == 1) result.atoms.push_back(w);
  const Rational mass = x.sum();
  if (mass.sign() > 0) result.measure = Measure(cone.space(), x / mass);
  result.certificate = {std::move(lp), std::move(out)};
  return result;
}

EsmResult findESM(const ConeSpec& cone) {
  const std::size_t n = cone.space()->size();
  LinearProgram lp = measureProgram(cone, 1);
  const std::size_t tau = n;
  lp.setVariableName(tau, "tau");
  lp.setLower(tau, 0);
  for (std::size_t w = 0; w < n; ++w) {
    lp.setLower(w, 0);
    VectorQ row = VectorQ::Zero(static_cast<Index>(n + 1));
    row(static_cast<Index>(w)) = 1;
    row(static_cast<Index>(tau)) = -cone.space()->weight(w);
    lp.addRow(std::move(row), Relation::GreaterEqual, 0, "floor[" + cone.space()->labels()[w] + "]");
  }
  lp.setObjectiveCoefficient(tau, 1);
  LpOutcome out = solve(lp);

  EsmResult result;
  if (out.status == LpStatus::Optimal) {
    result.tau = out.value;
    result.equivalent = out.value.sign() > 0;
    if (result.equivalent) result.measure = measureFromPoint(cone, out.point);
  }
  result.certificate = {std::move(lp), std::move(out)};
  if (!result.equivalent) {
    MaximalSupport support = maximalSupport(cone);
    result.measure = std::move(support.measure);
    result.supportCertificate = std::move(support.certificate);
  }
  return result;
}

ConeSpec rescaleCone(const ConeSpec& cone, const RandomVariable& y) {
  if (!sameSpace(cone.space(), y.space())) throw SpaceMismatch();
  requireAtLeastOne(y);
  std::vector<RandomVariable> scaled;
  scaled.reserve(cone.generatorCount());
  for (const auto& g : cone.generators()) scaled.push_back(g.dividedBy(y));
  return ConeSpec(cone.space(), std::move(scaled), cone.kind());
}

Measure deflateMeasure(const Measure& t, const RandomVariable& y) {
  if (!sameSpace(t.space(), y.space())) throw SpaceMismatch();
  requireAtLeastOne(y);
  VectorQ w = t.weights().cwiseQuotient(y.values());
  const Rational total = w.sum();
  return Measure(t.space(), w / total);
}

Measure inflateMeasure(const Measure& p, const RandomVariable& y) {
  if (!sameSpace(p.space(), y.space())) throw SpaceMismatch();
  requireAtLeastOne(y);
  VectorQ w = p.weights().cwiseProduct(y.values());
  const Rational total = w.sum();
  return Measure(p.space(), w / total);
}

DominatingVariable dominatingVariable(const SpacePtr& space, const std::vector<RandomVariable>& ys) {
  VectorQ y = VectorQ::Ones(static_cast<Index>(space->size()));
  std::vector<Rational> thresholds;
  Rational tail(1);
  for (std::size_t n = 0; n < ys.size(); ++n) {
    const RandomVariable& yn = ys[n];
    if (!sameSpace(space, yn.space())) throw SpaceMismatch();
    if (!yn.isNonnegative()) throw PreconditionViolated("dominated variables must be nonnegative");
    tail /= 2;

    std::set<Rational> candidates{Rational(1)};
    for (const auto& v : yn.values())
      if (v.sign() > 0) candidates.insert(v);
    std::optional<Rational> chosen;
    for (const auto& a : candidates) {
      Rational above = 0;
      for (std::size_t w = 0; w < yn.size(); ++w)
        if (yn(w) > a) above += space->weight(w);
      if (above < tail) {
        chosen = a;
        break;
      }
    }
    // The largest candidate leaves nothing above it, so a threshold always exists.
    y += yn.values() * Rational(tail / *chosen);  // Y_n / (2^n a_n)
    thresholds.push_back(*chosen);
  }
  return {RandomVariable(space, std::move(y)), std::move(thresholds)};
}

std::pair<Rational, Rational> densityBounds(const Measure& p) {
  const RandomVariable f = densityOf(p, p.space()->reference());
  return {f.values().minCoeff(), f.values().maxCoeff()};
}

}  // namespace ftap
