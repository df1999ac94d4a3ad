#pragma once

#include <string>

#include "opkit/operators.hpp"

namespace opkit {

/// Membership of an operator in the classes built from the defect
/// D = T*^2 T^2 - 2 T*T + I: concave (D <= 0), 2-contraction (D >= 0) and
/// 2-isometry (D = 0), plus bounded below, pure and wandering-subspace.
struct ClassificationReport {
  bool bounded_below = false;
  double bounded_below_margin = 0.0;   ///< smallest singular value / inf w_k

  bool concave = false;
  double max_defect = 0.0;             ///< sup of the spectrum of D

  bool two_contraction = false;
  double min_defect = 0.0;             ///< inf of the spectrum of D

  bool two_isometry = false;
  double defect_norm = 0.0;            ///< max(|max_defect|, |min_defect|)

  bool pure = false;
  std::string pure_method;

  bool wandering = false;
  std::string wandering_method;
};

/// Dense operators use spectral tests at psd_tol; in finite dimension pure
/// means nilpotent, so no dense operator is both bounded below and pure.
/// Shift operators use exact closed forms of the diagonal defect.
ClassificationReport classify_operator(const StructuredOperator& t,
                                       const ToleranceConfig& tol = {});

/// Re<A^2 y, y> + ||Ay||^2 <= 0 for all y, decided as
/// lambda_max((A^2 + A*^2)/2 + A*A) <= psd_tol.
struct CriterionResult {
  bool holds = false;
  double margin = 0.0;
};
CriterionResult generator_concavity_criterion(const ComplexMatrix& a,
                                              const ToleranceConfig& tol = {});

/// Checks ||T^n x||^2 <= ||x||^2 + n (||Tx||^2 - ||x||^2) + slack for
/// n = 1..max_power. Throws NotConcave when T is not concave.
struct PowerGrowthResult {
  bool holds = false;
  double worst_excess = 0.0;  ///< max over n of lhs - rhs (without slack)
};
PowerGrowthResult concave_power_growth_check(const StructuredOperator& t,
                                             const FiniteSupportVector& x,
                                             std::size_t max_power,
                                             double slack,
                                             const ToleranceConfig& tol = {});

/// Orthonormal bases of the ranges T^k H, k = 1, 2, ..., obtained by
/// re-orthonormalizing T Q_k. Singular values below rank_tol * ||T|| are
/// treated as zero. Stops after two consecutive equal dimensions or after
/// max_steps applications.
struct PowerRange {
  CMatrix basis;                 ///< columns span the final range
  std::vector<std::size_t> dims; ///< dims[k-1] = dim T^k H
  bool stabilized = false;
};
PowerRange stabilized_power_range(const ComplexMatrix& t, std::size_t max_steps,
                                  const ToleranceConfig& tol = {});

/// Exact defect d_k = w_k^2 w_{k+1}^2 - 2 w_k^2 + 1 of a shift at index k.
double shift_defect(const WeightedShift& w, std::size_t k);

}  // namespace opkit
