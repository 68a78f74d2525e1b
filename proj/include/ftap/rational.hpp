#pragma once

#include <string>
#include <string_view>

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace ftap {

/// Exact rational scalar (GMP-backed, always in canonical reduced form).
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorQ = Vector<Rational>;
using MatrixQ = Matrix<Rational>;

/// Parses "p/q", an integer, or a terminating decimal such as "-0.125".
/// Throws std::invalid_argument on anything else (including q = 0).
Rational parseRational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string toString(const Rational& value);

double toDouble(const Rational& value);

/// Smallest integer >= value.
Rational ceil(const Rational& value);

/// Rational value extended with +infinity. Used for suprema that may be
/// unbounded; infinity is a distinct state, never a sentinel number.
class ExtendedRational {
 public:
  ExtendedRational() = default;
  ExtendedRational(Rational value) : value_(std::move(value)) {}  // NOLINT

  static ExtendedRational infinity() {
    ExtendedRational r;
    r.infinite_ = true;
    return r;
  }

  bool isFinite() const { return !infinite_; }
  bool isInfinite() const { return infinite_; }

  /// Precondition: isFinite().
  const Rational& value() const;

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend bool operator<(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const ExtendedRational& a, const ExtendedRational& b) {
    return a < b || a == b;
  }

 private:
  Rational value_{0};
  bool infinite_ = false;
};

/// "inf" for infinity, otherwise toString of the value.
std::string toString(const ExtendedRational& value);

// Weighted sums over Eigen expressions; shared by the exact core and by
// reporting code that works in double.

template <typename WeightsDerived, typename ValuesDerived>
typename WeightsDerived::Scalar weightedSum(const Eigen::MatrixBase<WeightsDerived>& weights,
                                            const Eigen::MatrixBase<ValuesDerived>& values) {
  typename WeightsDerived::Scalar acc(0);
  for (Eigen::Index i = 0; i < weights.size(); ++i) acc += weights(i) * values(i);
  return acc;
}

template <typename Derived>
auto positivePart(const Eigen::MatrixBase<Derived>& values) {
  using Scalar = typename Derived::Scalar;
  return values.unaryExpr([](const Scalar& v) { return v > Scalar(0) ? v : Scalar(0); });
}

template <typename Derived>
auto negativePart(const Eigen::MatrixBase<Derived>& values) {
  using Scalar = typename Derived::Scalar;
  return values.unaryExpr([](const Scalar& v) { return v < Scalar(0) ? Scalar(-v) : Scalar(0); });
}

}  // namespace ftap
