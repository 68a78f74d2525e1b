#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ftap/space.hpp"

namespace ftap {

enum class ClaimStatus { Verified, Refuted, Informational };

std::string toString(ClaimStatus status);

struct Claim {
  std::string label;
  ClaimStatus status = ClaimStatus::Informational;
  /// Exact rationals as p/q; floating values carry a leading '~'.
  std::string value;
  /// "0" for exact checks.
  std::string tolerance;
  /// Library operations that produced the verdict.
  std::string checkedBy;
};

struct CaseReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<Claim> claims;

  const Claim* find(std::string_view label) const;
  bool anyRefuted() const;
};

/// Deterministic text rendering used by the command line tool.
std::string render(const CaseReport& report);

/// Random linear space on `atoms` atoms with `generators` integer generators
/// in [-3, 3] and random positive weights. Checks NA <=> ESM, the band
/// strengthening when NA holds, and invariance of NA under X -> X / (1 + sum |X_i|).
CaseReport caseFiniteDimFTAP(std::uint64_t seed, std::size_t atoms, std::size_t generators);
CaseReport caseFiniteDimFTAP(const ConeSpec& cone);

/// Sign space {-1, +1}^n with independent coordinates, P0(X_m = -1) = q_m
/// (default (m + 1)^-2). Requires 1 <= n <= 12 and every q_m in (0, 1).
CaseReport caseSignSequences(std::size_t n, std::optional<std::vector<Rational>> minusProbabilities = std::nullopt,
                             std::uint64_t seed = 1, std::size_t samples = 100);

/// (Y, Z) i.i.d. Poisson(1) truncated to {0..N} and renormalized. The
/// truncated weights are exact rationals (the factor e^-1 cancels), so every
/// check is exact except the comparison of the ratio with its limit.
/// Requires epsilon > 0 and 1 <= n < N <= 20.
CaseReport caseApproxESFA(const Rational& epsilon, std::size_t N, std::size_t n, std::uint64_t seed = 1,
                          std::size_t samples = 200);

/// Z on the midpoint grid of [0, M) with step 2^-(n+1) and uniform weights;
/// generators X_0..X_n. Requires M >= 1 and 1 <= n <= 8.
CaseReport caseNFLVRGap(std::size_t M, std::size_t n, std::uint64_t seed = 1, std::size_t measures = 3);

/// Random centered X_1..X_d on `atoms` atoms and a random density f; builds
/// g = t dQ/dP0 from the band measure around P_f. `adversarial` puts most of
/// f's mass on one atom.
CaseReport caseRokhlinSchachermayer(std::uint64_t seed, std::size_t d, std::size_t atoms = 6, bool adversarial = false);

/// Explicit instance. Requires a linear space with E_P0(X_j) = 0, f > 0 and E_P0(f) = 1.
CaseReport caseRokhlinSchachermayer(const ConeSpec& cone, const RandomVariable& f);

}  // namespace ftap
