#include "ftap/space.hpp"

#include <algorithm>

namespace ftap {

using Index = Eigen::Index;

AbsoluteContinuityViolated::AbsoluteContinuityViolated(AtomSet atoms)
    : PreconditionViolated("measure is not absolutely continuous with respect to the reference"),
      witness(std::move(atoms)) {}

SpacePtr FiniteProbSpace::make(std::vector<std::string> labels, VectorQ weights) {
  if (weights.size() == 0) throw std::invalid_argument("a space needs at least one atom");
  if (labels.size() != static_cast<std::size_t>(weights.size()))
    throw std::invalid_argument("label count does not match weight count");
  for (Index i = 0; i < weights.size(); ++i)
    if (weights(i).sign() <= 0)
      throw std::invalid_argument("atom \"" + labels[static_cast<std::size_t>(i)] +
                                  "\" has non-positive weight " + toString(weights(i)));
  if (weights.sum() != 1)
    throw std::invalid_argument("weights sum to " + toString(weights.sum()) + ", not 1");
  return SpacePtr(new FiniteProbSpace(std::move(labels), std::move(weights)));
}

SpacePtr FiniteProbSpace::make(VectorQ weights) {
  std::vector<std::string> labels;
  for (Index i = 0; i < weights.size(); ++i) labels.push_back("w" + std::to_string(i + 1));
  return make(std::move(labels), std::move(weights));
}

Measure FiniteProbSpace::reference() const { return Measure(shared_from_this(), weights_); }

bool sameSpace(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && *a == *b);
}

RandomVariable::RandomVariable(SpacePtr space, VectorQ values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) throw std::invalid_argument("random variable without a space");
  if (static_cast<std::size_t>(values_.size()) != space_->size())
    throw std::invalid_argument("random variable has " + std::to_string(values_.size()) +
                                " values for " + std::to_string(space_->size()) + " atoms");
}

RandomVariable RandomVariable::constant(SpacePtr space, const Rational& c) {
  const auto n = static_cast<Index>(space->size());
  return {std::move(space), VectorQ::Constant(n, c)};
}

RandomVariable RandomVariable::indicator(SpacePtr space, const AtomSet& atoms) {
  VectorQ v = VectorQ::Zero(static_cast<Index>(space->size()));
  for (auto a : atoms) v(static_cast<Index>(a)) = 1;
  return {std::move(space), std::move(v)};
}

RandomVariable RandomVariable::operator+(const RandomVariable& other) const {
  if (!sameSpace(space_, other.space_)) throw SpaceMismatch();
  return {space_, values_ + other.values_};
}

RandomVariable RandomVariable::operator-(const RandomVariable& other) const {
  if (!sameSpace(space_, other.space_)) throw SpaceMismatch();
  return {space_, values_ - other.values_};
}

RandomVariable RandomVariable::times(const RandomVariable& other) const {
  if (!sameSpace(space_, other.space_)) throw SpaceMismatch();
  return {space_, values_.cwiseProduct(other.values_)};
}

RandomVariable RandomVariable::dividedBy(const RandomVariable& other) const {
  if (!sameSpace(space_, other.space_)) throw SpaceMismatch();
  for (Index i = 0; i < other.values_.size(); ++i)
    if (other.values_(i).sign() == 0) throw std::domain_error("division by a variable with a zero value");
  return {space_, values_.cwiseQuotient(other.values_)};
}

bool RandomVariable::isZero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v.sign() == 0; });
}

bool RandomVariable::isNonnegative() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v.sign() >= 0; });
}

std::string toString(ConeKind kind) { return kind == ConeKind::LinearSpace ? "linear" : "cone"; }

ConeSpec::ConeSpec(SpacePtr space, std::vector<RandomVariable> generators, ConeKind kind)
    : space_(std::move(space)), generators_(std::move(generators)), kind_(kind) {
  for (const auto& g : generators_)
    if (!sameSpace(space_, g.space())) throw SpaceMismatch();
}

MatrixQ ConeSpec::generatorMatrix() const {
  MatrixQ g(static_cast<Index>(space_->size()), static_cast<Index>(generators_.size()));
  for (std::size_t j = 0; j < generators_.size(); ++j) g.col(static_cast<Index>(j)) = generators_[j].values();
  return g;
}

RandomVariable ConeSpec::combination(const VectorQ& coefficients) const {
  if (static_cast<std::size_t>(coefficients.size()) != generators_.size())
    throw std::invalid_argument("coefficient count does not match generator count");
  VectorQ v = VectorQ::Zero(static_cast<Index>(space_->size()));
  for (std::size_t j = 0; j < generators_.size(); ++j) {
    const Rational& c = coefficients(static_cast<Index>(j));
    if (c.sign() != 0) v += generators_[j].values() * c;
  }
  return {space_, std::move(v)};
}

std::size_t ConeSpec::spanDimension() const {
  MatrixQ m = generatorMatrix();
  std::size_t rank = 0;
  const Index rows = m.rows();
  const Index cols = m.cols();
  for (Index c = 0; c < cols && static_cast<Index>(rank) < rows; ++c) {
    const auto r0 = static_cast<Index>(rank);
    Index pivot = -1;
    for (Index r = r0; r < rows; ++r)
      if (m(r, c).sign() != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    m.row(pivot).swap(m.row(r0));
    for (Index r = r0 + 1; r < rows; ++r) {
      if (m(r, c).sign() == 0) continue;
      const Rational f = m(r, c) / m(r0, c);
      m.row(r) -= m.row(r0) * f;
    }
    ++rank;
  }
  return rank;
}

Measure::Measure(SpacePtr space, VectorQ weights) : space_(std::move(space)), weights_(std::move(weights)) {
  if (!space_) throw std::invalid_argument("measure without a space");
  if (static_cast<std::size_t>(weights_.size()) != space_->size())
    throw std::invalid_argument("measure has " + std::to_string(weights_.size()) + " weights for " +
                                std::to_string(space_->size()) + " atoms");
  for (Index i = 0; i < weights_.size(); ++i)
    if (weights_(i).sign() < 0) throw std::invalid_argument("negative measure weight " + toString(weights_(i)));
  if (weights_.sum() != 1) throw std::invalid_argument("measure weights sum to " + toString(weights_.sum()));
}

Rational Measure::probability(const AtomSet& atoms) const {
  Rational p = 0;
  for (auto a : atoms) p += weights_(static_cast<Index>(a));
  return p;
}

AtomSet Measure::support() const {
  AtomSet s;
  for (Index i = 0; i < weights_.size(); ++i)
    if (weights_(i).sign() > 0) s.push_back(static_cast<std::size_t>(i));
  return s;
}

std::string toString(MeasureRelationKind kind) {
  switch (kind) {
    case MeasureRelationKind::Equivalent: return "equivalent";
    case MeasureRelationKind::AbsolutelyContinuous: return "absolutely-continuous";
    case MeasureRelationKind::SingularPartPresent: return "singular-part-present";
  }
  return "?";
}

Rational expectation(const Measure& p, const RandomVariable& x) {
  if (!sameSpace(p.space(), x.space())) throw SpaceMismatch();
  return weightedSum(p.weights(), x.values());
}

Rational essSup(const RandomVariable& x) { return x.values().maxCoeff(); }

std::pair<RandomVariable, RandomVariable> valueDecomp(const RandomVariable& x) {
  return {RandomVariable(x.space(), positivePart(x.values())),
          RandomVariable(x.space(), negativePart(x.values()))};
}

MeasureRelation relate(const Measure& p, const Measure& t) {
  if (!sameSpace(p.space(), t.space())) throw SpaceMismatch();
  AtomSet singular;
  AtomSet missing;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const bool pPos = p(i).sign() > 0;
    const bool tPos = t(i).sign() > 0;
    if (pPos && !tPos) singular.push_back(i);
    if (!pPos && tPos) missing.push_back(i);
  }
  if (!singular.empty()) return {MeasureRelationKind::SingularPartPresent, singular};
  if (!missing.empty()) return {MeasureRelationKind::AbsolutelyContinuous, missing};
  return {MeasureRelationKind::Equivalent, {}};
}

Measure mixture(const Measure& q, const Measure& p1, const Rational& k) {
  if (!sameSpace(q.space(), p1.space())) throw SpaceMismatch();
  if (k.sign() < 0) throw PreconditionViolated("mixture weight k must be nonnegative");
  return Measure(q.space(), (q.weights() + p1.weights() * k) / Rational(1 + k));
}

Measure mixtureComponent(const Measure& p, const Measure& q, const Rational& k) {
  if (!sameSpace(p.space(), q.space())) throw SpaceMismatch();
  if (k.sign() <= 0) throw PreconditionViolated("mixture component needs k > 0");
  VectorQ w = (p.weights() * Rational(1 + k) - q.weights()) / k;
  for (Index i = 0; i < w.size(); ++i)
    if (w(i).sign() < 0) throw PreconditionViolated("P does not dominate Q/(1+k)");
  return Measure(p.space(), std::move(w));
}

RandomVariable densityOf(const Measure& p, const Measure& wrt) {
  if (!sameSpace(p.space(), wrt.space())) throw SpaceMismatch();
  auto rel = relate(p, wrt);
  if (rel.kind == MeasureRelationKind::SingularPartPresent) throw AbsoluteContinuityViolated(rel.witness);
  VectorQ f = VectorQ::Zero(static_cast<Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i)
    if (wrt(i).sign() > 0) f(static_cast<Index>(i)) = p(i) / wrt(i);
  return {p.space(), std::move(f)};
}

Measure withDensity(const Measure& wrt, const RandomVariable& density) {
  if (!sameSpace(wrt.space(), density.space())) throw SpaceMismatch();
  return Measure(wrt.space(), wrt.weights().cwiseProduct(density.values()));
}

}  // namespace ftap
