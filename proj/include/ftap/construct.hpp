#pragma once

#include <optional>
#include <vector>

#include "ftap/solver.hpp"
#include "ftap/space.hpp"

namespace ftap {

/// K = {P : (1/t) Q <= P <= t Q} with t = k + 1.
struct BandSpec {
  Measure center;
  Rational t;

  static BandSpec fromK(Measure center, const Rational& k);
  bool contains(const Measure& p) const;
};

/// Density used to push a single payoff to E_P(X) <= 0 inside the band:
/// f = (I{X >= 0} + t I{X < 0}) / (Q(X >= 0) + t Q(X < 0)).
struct SingleXDensity {
  RandomVariable density;
  Measure measure;  // P = f Q
  Rational t;
  Rational normalizer;  // Q(X >= 0) + t Q(X < 0)
};

/// Requires Q ~ P0, k >= 0 and E_Q(X) <= k E_Q(X^-); throws PreconditionViolated otherwise.
SingleXDensity singleXDensity(const Measure& q, const RandomVariable& x, const Rational& k);

/// A measure found by a feasibility program, or the Farkas certificate that
/// none exists. The certificate always holds the solved program.
struct MeasureSearch {
  std::optional<Measure> measure;
  Certificate certificate;

  bool found() const { return measure.has_value(); }
};

/// Super-martingale measure inside the band around Q with t = k + 1.
MeasureSearch findESMinBand(const ConeSpec& cone, const Measure& q, const Rational& k);

/// Super-martingale measure with P >= r P0.
MeasureSearch findESFAwithFloor(const ConeSpec& cone, const Rational& r);

struct EsmResult {
  /// True iff an equivalent super-martingale measure exists (optimal floor ratio tau > 0).
  bool equivalent = false;
  /// Optimal tau in max{tau : P >= tau P0}; zero when not equivalent or infeasible.
  Rational tau{0};
  /// The ESM when `equivalent`; otherwise the absolutely continuous solution
  /// of maximal support, if any solution exists at all.
  std::optional<Measure> measure;
  /// The tau program and its outcome: optimal duals proving the bound on tau,
  /// or a Farkas certificate when no super-martingale probability exists.
  Certificate certificate;
  /// Program that determined the maximal support (only when !equivalent).
  std::optional<Certificate> supportCertificate;
};

EsmResult findESM(const ConeSpec& cone);

/// Atoms that some absolutely continuous super-martingale probability charges.
/// Empty when none exists. Solved by one program over unnormalized weights.
struct MaximalSupport {
  AtomSet atoms;
  std::optional<Measure> measure;
  Certificate certificate;
};
MaximalSupport maximalSupport(const ConeSpec& cone);

/// {X / Y : X in L}. Throws PreconditionViolated unless Y >= 1 atomwise.
ConeSpec rescaleCone(const ConeSpec& cone, const RandomVariable& y);

/// P(A) = E_T(I_A / Y) / E_T(1 / Y). Requires Y >= 1.
Measure deflateMeasure(const Measure& t, const RandomVariable& y);

/// T(A) = E_P(I_A Y) / E_P(Y). Requires Y >= 1. Inverse of deflateMeasure.
Measure inflateMeasure(const Measure& p, const RandomVariable& y);

struct DominatingVariable {
  RandomVariable y;
  std::vector<Rational> thresholds;  // a_n, n = 1..
};

/// Y = 1 + sum_n Y_n / (2^n a_n), where a_n is the least value in
/// {Y_n(w) > 0} u {1} with P0(Y_n > a_n) < 2^-n. Then Y_n <= 2^n a_n Y.
/// Throws PreconditionViolated if some Y_n takes a negative value.
DominatingVariable dominatingVariable(const SpacePtr& space, const std::vector<RandomVariable>& ys);

/// min and max of dP/dP0 on the space; r P0 <= P <= s P0 with (r, s) = result.
std::pair<Rational, Rational> densityBounds(const Measure& p);

}  // namespace ftap
