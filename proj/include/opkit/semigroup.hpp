#pragma once

// Uniformly continuous semigroups T_t = exp(tA) on C^n: evolution, growth
// bound, the Cayley pair generator <-> cogenerator, and the four-way
// concavity comparison.

#include <string>
#include <vector>

#include "opkit/classify.hpp"

namespace opkit {

struct SemigroupSpec {
  ComplexMatrix generator;
  std::string label;
};

struct GrowthBound {
  double omega = 0.0;
  std::string method = "spectral";
};

ComplexMatrix evolve(const SemigroupSpec& s, double t);

/// V = (A + I)(A - I)^{-1}. Throws OneInSpectrum if A - I is singular at
/// rank_tol.
ComplexMatrix cogenerator(const SemigroupSpec& s, const ToleranceConfig& tol = {});

/// A = (V + I)(V - I)^{-1}. Throws OneInSpectrum if V - I is singular.
ComplexMatrix inverse_cayley(const ComplexMatrix& v, const ToleranceConfig& tol = {});

/// omega = max Re sigma(A).
GrowthBound growth_bound(const SemigroupSpec& s);

/// |(1/t) log r(exp(tA)) - omega| for t > 0.
double growth_bound_consistency(const SemigroupSpec& s, const GrowthBound& g, double t);

/// Generator A - lambda I, i.e. the semigroup e^{-lambda t} T_t.
SemigroupSpec quasicontractive_rescale(const SemigroupSpec& s, double lambda);

struct EquivalenceGrid {
  std::vector<double> times;  ///< base points for (i) and (ii)
  double step = 0.05;         ///< second-difference step for (ii)
  double slack = 1e-8;        ///< allowed positive second difference

  /// {0.1, 0.2, ..., 2.0}.
  static EquivalenceGrid standard();
};

struct EquivalenceReport {
  bool every_member_concave = false;       // (i)
  double member_margin = 0.0;              // max over grid of lambda_max(D(T_t))
  bool norm_squared_concave = false;       // (ii)
  double second_difference_margin = 0.0;   // largest normalised second difference
  bool generator_criterion = false;        // (iii)
  double generator_margin = 0.0;
  bool cogenerator_exists = true;          // false when 1 is in sigma(A)
  bool cogenerator_concave = false;        // (iv)
  double cogenerator_margin = 0.0;         // +inf without a cogenerator
  bool agree = false;
};

/// Evaluates the four conditions independently on the grid. Condition (ii)
/// samples `samples` random unit vectors (seeded) and, at each base point,
/// the worst-case direction of the second difference.
EquivalenceReport concavity_equivalence_suite(const SemigroupSpec& s, std::size_t samples,
                                              const EquivalenceGrid& grid = EquivalenceGrid::standard(),
                                              const ToleranceConfig& tol = {},
                                              unsigned long long seed = 0x5eed);

}  // namespace opkit
