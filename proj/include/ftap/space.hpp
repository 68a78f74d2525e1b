#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ftap/rational.hpp"

namespace ftap {

class FiniteProbSpace;
class Measure;
using SpacePtr = std::shared_ptr<const FiniteProbSpace>;

/// Sorted atom indices.
using AtomSet = std::vector<std::size_t>;

struct SpaceMismatch : std::invalid_argument {
  SpaceMismatch() : std::invalid_argument("operands live on different spaces") {}
};

struct PreconditionViolated : std::domain_error {
  using std::domain_error::domain_error;
};

/// Thrown by densityOf when the measure charges atoms the reference does not.
struct AbsoluteContinuityViolated : PreconditionViolated {
  explicit AbsoluteContinuityViolated(AtomSet atoms);
  AtomSet witness;
};

/// Finite set of atoms with strictly positive reference weights summing to 1.
/// The algebra is the power set; null atoms are rejected at construction.
class FiniteProbSpace : public std::enable_shared_from_this<FiniteProbSpace> {
 public:
  /// Throws std::invalid_argument for empty, non-positive, or non-normalized
  /// weights, or a label/weight count mismatch.
  static SpacePtr make(std::vector<std::string> labels, VectorQ weights);
  /// Labels default to w1..wn.
  static SpacePtr make(VectorQ weights);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const VectorQ& weights() const { return weights_; }
  const Rational& weight(std::size_t atom) const { return weights_(static_cast<Eigen::Index>(atom)); }

  /// The reference probability P0 as a Measure.
  Measure reference() const;

  friend bool operator==(const FiniteProbSpace& a, const FiniteProbSpace& b) {
    return a.labels_ == b.labels_ && a.weights_ == b.weights_;
  }

 private:
  FiniteProbSpace(std::vector<std::string> labels, VectorQ weights)
      : labels_(std::move(labels)), weights_(std::move(weights)) {}

  std::vector<std::string> labels_;
  VectorQ weights_;
};

bool sameSpace(const SpacePtr& a, const SpacePtr& b);

class RandomVariable {
 public:
  RandomVariable(SpacePtr space, VectorQ values);

  static RandomVariable constant(SpacePtr space, const Rational& c);
  static RandomVariable indicator(SpacePtr space, const AtomSet& atoms);

  const SpacePtr& space() const { return space_; }
  const VectorQ& values() const { return values_; }
  const Rational& operator()(std::size_t atom) const { return values_(static_cast<Eigen::Index>(atom)); }
  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }

  RandomVariable operator+(const RandomVariable& other) const;
  RandomVariable operator-(const RandomVariable& other) const;
  RandomVariable operator-() const { return {space_, -values_}; }
  RandomVariable operator*(const Rational& c) const { return {space_, values_ * c}; }
  friend RandomVariable operator*(const Rational& c, const RandomVariable& x) { return x * c; }

  /// Atomwise product and quotient.
  RandomVariable times(const RandomVariable& other) const;
  RandomVariable dividedBy(const RandomVariable& other) const;

  bool isZero() const;
  bool isNonnegative() const;

  friend bool operator==(const RandomVariable& a, const RandomVariable& b) {
    return sameSpace(a.space_, b.space_) && a.values_ == b.values_;
  }

 private:
  SpacePtr space_;
  VectorQ values_;
};

enum class ConeKind { ConvexCone, LinearSpace };

std::string toString(ConeKind kind);

/// Finitely generated cone (nonnegative combinations) or linear space
/// (arbitrary combinations) of random variables on one space.
class ConeSpec {
 public:
  ConeSpec(SpacePtr space, std::vector<RandomVariable> generators, ConeKind kind);

  const SpacePtr& space() const { return space_; }
  const std::vector<RandomVariable>& generators() const { return generators_; }
  ConeKind kind() const { return kind_; }
  bool isLinear() const { return kind_ == ConeKind::LinearSpace; }
  std::size_t generatorCount() const { return generators_.size(); }

  /// Atoms x generators.
  MatrixQ generatorMatrix() const;
  /// sum_j coefficients(j) X_j. Coefficients are not sign-checked.
  RandomVariable combination(const VectorQ& coefficients) const;

  /// Dimension of the span of the generators (exact elimination).
  std::size_t spanDimension() const;

 private:
  SpacePtr space_;
  std::vector<RandomVariable> generators_;
  ConeKind kind_;
};

/// Probability on the power set: nonnegative weights summing to 1.
class Measure {
 public:
  /// Throws std::invalid_argument on negative weights or a total other than 1.
  Measure(SpacePtr space, VectorQ weights);

  const SpacePtr& space() const { return space_; }
  const VectorQ& weights() const { return weights_; }
  const Rational& operator()(std::size_t atom) const { return weights_(static_cast<Eigen::Index>(atom)); }
  std::size_t size() const { return static_cast<std::size_t>(weights_.size()); }

  Rational probability(const AtomSet& atoms) const;
  AtomSet support() const;

  friend bool operator==(const Measure& a, const Measure& b) {
    return sameSpace(a.space_, b.space_) && a.weights_ == b.weights_;
  }

 private:
  SpacePtr space_;
  VectorQ weights_;
};

enum class MeasureRelationKind { Equivalent, AbsolutelyContinuous, SingularPartPresent };

std::string toString(MeasureRelationKind kind);

/// How P relates to T. The witness lists atoms where exactly one of the two
/// vanishes: for AbsolutelyContinuous, atoms with P = 0 < T; for
/// SingularPartPresent, atoms with T = 0 < P. Empty iff Equivalent.
struct MeasureRelation {
  MeasureRelationKind kind;
  AtomSet witness;
};

Rational expectation(const Measure& p, const RandomVariable& x);

/// Maximum over atoms (every atom carries positive reference mass).
Rational essSup(const RandomVariable& x);

/// (X+, X-) with X = X+ - X- atomwise.
std::pair<RandomVariable, RandomVariable> valueDecomp(const RandomVariable& x);

MeasureRelation relate(const Measure& p, const Measure& t);

/// (Q + k P1) / (1 + k). Throws PreconditionViolated for k < 0.
Measure mixture(const Measure& q, const Measure& p1, const Rational& k);

/// Inverts mixture(): given P = (Q + k P1)/(1 + k) with k > 0, returns
/// P1 = ((1 + k) P - Q) / k. Throws PreconditionViolated if k <= 0 or the
/// result has a negative weight (P does not dominate Q / (1 + k)).
Measure mixtureComponent(const Measure& p, const Measure& q, const Rational& k);

/// Radon-Nikodym density dP/d(wrt): P(w)/wrt(w) on support(wrt), 0 elsewhere.
/// Throws AbsoluteContinuityViolated when P charges a wrt-null atom.
RandomVariable densityOf(const Measure& p, const Measure& wrt);

/// Measure with weights wrt(w) * density(w). Throws if that is not a probability.
Measure withDensity(const Measure& wrt, const RandomVariable& density);

}  // namespace ftap
