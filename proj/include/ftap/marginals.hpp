#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ftap/criteria.hpp"
#include "ftap/solver.hpp"
#include "ftap/space.hpp"

namespace ftap {

/// Omega_1 x Omega_2 with a joint reference probability. Cells of zero
/// reference mass are dropped: the underlying FiniteProbSpace has one atom
/// per cell of positive mass, in row-major order.
class ProductSpace {
 public:
  /// `joint` is rows x cols, nonnegative, summing to 1.
  static ProductSpace make(std::vector<std::string> rows, std::vector<std::string> cols, MatrixQ joint);

  const std::vector<std::string>& rowLabels() const { return rows_; }
  const std::vector<std::string>& colLabels() const { return cols_; }
  const MatrixQ& joint() const { return joint_; }
  const SpacePtr& space() const { return space_; }

  /// (row, col) of each atom of space().
  const std::vector<std::pair<std::size_t, std::size_t>>& cells() const { return cells_; }

  /// Atom index of a cell, or nullopt when the cell is null.
  std::optional<std::size_t> atomOf(std::size_t row, std::size_t col) const;

  /// rows x cols table of a measure on space(), zeros off the support.
  MatrixQ table(const Measure& p) const;

 private:
  std::vector<std::string> rows_;
  std::vector<std::string> cols_;
  MatrixQ joint_;
  SpacePtr space_;
  std::vector<std::pair<std::size_t, std::size_t>> cells_;
};

/// Prescribed marginals T1 on Omega_1 and T2 on Omega_2 (nonnegative, each summing to 1).
struct MarginalPair {
  VectorQ first;
  VectorQ second;

  static MarginalPair make(VectorQ first, VectorQ second);
};

/// Linear space spanned by {I{row = a} - T1(a)} and {I{col = b} - T2(b)}.
/// Atom indicators are a determining class, so E_P = 0 on this space pins
/// both marginals of P.
ConeSpec buildMarginalCone(const ProductSpace& ps, const MarginalPair& m);

struct CouplingResult {
  bool feasible = false;
  Rational tau{0};
  /// Coupling equivalent to P0 with the prescribed marginals (when feasible).
  std::optional<Measure> coupling;
  /// The tau program: optimal duals bounding tau, or a Farkas certificate
  /// over the marginal rows when not even an absolutely continuous coupling exists.
  Certificate certificate;
};

/// max tau s.t. P >= tau P0 on the support, row sums T1, column sums T2.
CouplingResult coupleWithMarginals(const ProductSpace& ps, const MarginalPair& m);

/// sup |E_Q(X)| / E_Q|X| over the marginal space; a value < 1 certifies that
/// an equivalent coupling exists.
KReport evaluateInfCriterion(const ProductSpace& ps, const MarginalPair& m, const Measure& q);

/// Row and column sums of a measure on the product.
MarginalPair marginalsOf(const ProductSpace& ps, const Measure& p);

}  // namespace ftap
