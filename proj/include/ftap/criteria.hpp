#pragma once

#include <optional>
#include <vector>

#include "ftap/solver.hpp"
#include "ftap/space.hpp"

namespace ftap {

/// Outcome of a yes/no condition on a cone. When the condition fails the
/// witness is a nonzero, atomwise nonnegative member of the cone (an
/// arbitrage, or a recession direction of {X in L : X >= -1}).
struct NaReport {
  bool holds = true;
  std::optional<RandomVariable> witness;
  Certificate certificate;
};

/// A minimal constant k (possibly +infinity) for an inequality of the form
/// E_Q(X) <= k * rhs(X) over the whole cone.
struct KReport {
  ExtendedRational value;
  /// Cone member attaining the supremum (finite case).
  std::optional<RandomVariable> attaining;
  /// Cone member along which the ratio is unbounded (infinite case).
  std::optional<RandomVariable> ray;
  Measure q;
  Certificate certificate;
};

/// No-arbitrage: L contains no X >= 0 with X != 0.
NaReport checkNA(const ConeSpec& cone);

/// Norm-closure form of no-arbitrage: no X in L dominates a nonnegative
/// nonzero Z. On a finite space the cone L - L_inf^+ is polyhedral, hence
/// closed, so this agrees with checkNA; it is solved by its own program.
NaReport checkConditionA(const ConeSpec& cone);

/// Tightness of the laws of D = {X in L : X >= -1}. On a finite space this is
/// boundedness of D, detected as unboundedness of max sum_w X(w) over D.
/// This is also the finite-space content of no-arbitrage of the first kind.
NaReport checkConditionD(const ConeSpec& cone);

/// sup over L of E_Q(X) / E_Q(X^-), i.e. the least k with E_Q(X) <= k E_Q(X^-).
/// Requires Q ~ P0.
KReport minKBStar(const ConeSpec& cone, const Measure& q);

/// sup over D of E_Q(X), i.e. the least k with E_Q(X) <= k ess sup(-X).
/// Requires Q ~ P0.
KReport minKB(const ConeSpec& cone, const Measure& q);

/// sup over nonzero X in L of |E_Q(X)| / E_Q|X|. Linear spaces only.
KReport cMinBStarStar(const ConeSpec& cone, const Measure& q);

/// One localized constraint E_P0(X I_A) <= k_n ess sup(-X).
struct ConditionCPair {
  AtomSet event;
  Rational kn;
};

/// A_n = {n f >= 1} and k_n = n (k + 1) for n = 1..count, f = dQ/dP0.
/// `count` defaults to the first n with A_n = Omega (at least 1).
/// Throws PreconditionViolated if Q is not equivalent to P0 or minKB(Q) > k.
std::vector<ConditionCPair> buildConditionC(const ConeSpec& cone, const Measure& q, const Rational& k,
                                            std::optional<std::size_t> count = std::nullopt);

/// True iff every pair satisfies max{E_P0(X I_A) : X in L, X >= -1} <= k_n.
bool verifyConditionC(const ConeSpec& cone, const std::vector<ConditionCPair>& pairs);

/// c = k / (k + 2). Throws PreconditionViolated for k < 0.
Rational convertKtoC(const Rational& k);
/// k = 2c / (1 - c). Throws PreconditionViolated unless 0 <= c < 1.
Rational convertCtoK(const Rational& c);

}  // namespace ftap
