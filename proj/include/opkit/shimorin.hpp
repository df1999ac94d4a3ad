#pragma once

// Analytic model of a bounded-below, pure operator with the wandering
// subspace property: Cauchy dual T' = T (T*T)^{-1}, L = T'*, the defect
// projection P = I - T L onto E = H - TH, the coefficient map
// x -> (P L^n x)_n and the operator-valued kernel
// k(lambda, z) = P (I - zL)^{-1} (I - conj(lambda) L*)^{-1}. Also the
// multiplier e_t(z) = exp(t (z+1)/(z-1)) and Wold diagnostics.

#include <optional>
#include <string>
#include <vector>

#include "opkit/classify.hpp"
#include "opkit/series.hpp"

namespace opkit {

/// T (T*T)^{-1}. Shift weights become 1/w_k. Throws NotBoundedBelow.
StructuredOperator cauchy_dual(const StructuredOperator& t, const ToleranceConfig& tol = {});

class AnalyticModel {
 public:
  const StructuredOperator& source() const { return t_; }
  /// T'; L is its adjoint.
  const StructuredOperator& dual() const { return dual_; }
  const std::vector<FiniteSupportVector>& defect_basis() const { return e_; }
  std::size_t defect_dim() const { return e_.size(); }

  /// Evaluation disc is |lambda| < radius = 1/||L||.
  double radius() const { return radius_; }
  double l_norm() const { return l_norm_; }
  /// r(T'), kept for comparison with the radius.
  double dual_spectral_radius() const { return dual_radius_; }

  FiniteSupportVector apply_l(const FiniteSupportVector& x) const;
  FiniteSupportVector apply_l_adjoint(const FiniteSupportVector& x) const;
  FiniteSupportVector apply_p(const FiniteSupportVector& x) const;
  /// Coordinates <x, e_i> in the defect basis.
  CVector defect_coordinates(const FiniteSupportVector& x) const;

  /// beta_n = w_0 ... w_{n-1} of a single-shift source.
  double beta(std::size_t n) const;

 private:
  friend AnalyticModel build_model(const StructuredOperator&, const ToleranceConfig&);
  AnalyticModel(StructuredOperator t, StructuredOperator dual) : t_(std::move(t)), dual_(std::move(dual)) {}

  StructuredOperator t_;
  StructuredOperator dual_;
  std::vector<FiniteSupportVector> e_;
  double radius_ = 0.0;
  double l_norm_ = 0.0;
  double dual_radius_ = 0.0;
};

/// Throws NotBoundedBelow, NotPure, NoWanderingSubspace (from the
/// classification, in that order) or UnsupportedRegime for leaves that are
/// not weighted shifts.
AnalyticModel build_model(const StructuredOperator& t, const ToleranceConfig& tol = {});

struct ModelCoefficients {
  std::vector<CVector> coeffs;  ///< coeffs[n] = P L^n x in defect coordinates
  std::size_t order = 0;
  double rho = 0.0;             ///< radius the tail bound refers to
  double tail_bound = 0.0;      ///< 0 once L^{N+1} x vanishes
};

/// Throws AmbientMismatch. rho defaults to half the evaluation radius.
ModelCoefficients coefficients(const AnalyticModel& m, const FiniteSupportVector& x,
                               std::size_t order, std::optional<double> rho = std::nullopt);

struct KernelValue {
  CMatrix value;          ///< dim E x dim E, entry (i,j) = <k e_j, e_i>
  std::size_t order = 0;  ///< per-index truncation of the double series
  double tail_bound = 0.0;
};

/// Throws OutsideDisc unless |lambda|, |z| < radius, and TailNotConvergent
/// when the order needed for tail_tol exceeds 10^4.
KernelValue kernel_eval(const AnalyticModel& m, Complex lambda, Complex z,
                        const ToleranceConfig& tol = {});

struct IntertwiningReport {
  std::size_t order = 0;
  double max_residual = 0.0;
  bool passed = false;
};

/// coefficients(Tx)[0] = 0 and coefficients(Tx)[n] = coefficients(x)[n-1]
/// for n <= N, at threshold 1e-12.
IntertwiningReport verify_intertwining(const AnalyticModel& m, const FiniteSupportVector& x,
                                       std::size_t order);

struct ReproducingReport {
  Complex lhs;   ///< sum lambda^n <coeffs[n], e>
  Complex rhs;   ///< <x, (I - conj(lambda) L*)^{-1} e>
  double residual = 0.0;
  double tail_bound = 0.0;
  std::size_t order = 0;
  bool passed = false;
};

/// e must lie in span(E) (InvalidArgument otherwise). Throws OutsideDisc.
ReproducingReport verify_reproducing(const AnalyticModel& m, const FiniteSupportVector& x,
                                     Complex lambda, const FiniteSupportVector& e,
                                     const ToleranceConfig& tol = {});

/// Taylor coefficients of exp(t (z+1)/(z-1)) = e^{-t} exp(-2t sum_{n>=1} z^n)
/// through degree N. Throws InvalidArgument for t < 0.
PowerSeries semigroup_multiplier(double t, std::size_t order);

struct SemigroupModelReport {
  double t = 0.0;
  std::size_t order = 0;
  double identity_residual = 0.0;     ///< e_0 against the unit series
  double generator_residual = 0.0;    ///< central difference against (z+1)/(z-1) f
  double commutation_residual = 0.0;  ///< e_t (z f) against z (e_t f)
  double law_residual = 0.0;          ///< e_t e_t against e_{2t} through N/2
  bool passed = false;
  std::string sign_convention;
};

/// Runs the multiplier checks on f = U x (per defect component), step 1e-5
/// for the central difference, generator threshold 1e-6.
SemigroupModelReport verify_semigroup_model(const AnalyticModel& m, double t,
                                            const FiniteSupportVector& x, std::size_t order);

struct WoldReport {
  std::size_t dim_h1 = 0;
  std::optional<std::size_t> dim_h2;  ///< nullopt when a shift block makes it infinite
  std::vector<std::size_t> range_dims;
  bool stabilized = false;
  double unitarity_residual = 0.0;    ///< ||B*B - I||, B = V restricted to H1
  double invariance_residual = 0.0;   ///< ||V Q - Q B||
  std::size_t wandering_span_dim = 0; ///< rank of [E, VE, V^2 E, ...] on the finite block
  bool wandering_ok = false;
};

/// H1 as the stabilized range of V^k on the finite block; shift blocks are
/// pure and go to H2 whole. Throws InvalidArgument for steps == 0.
WoldReport wold_decompose(const StructuredOperator& v, std::size_t steps,
                          const ToleranceConfig& tol = {});

struct RigidityReport {
  bool concave = false;
  bool invertible = false;
  double unitarity_residual = 0.0;  ///< ||V*V - I||
  bool passed = false;              ///< not (concave and invertible) or residual <= 1e-8
};

/// On C^n a concave invertible operator is unitary.
RigidityReport finite_rigidity_check(const ComplexMatrix& v, const ToleranceConfig& tol = {});

struct ProjectionCheck {
  double idempotence = 0.0;       ///< max ||P P e_i - P e_i||
  double self_adjointness = 0.0;  ///< max |<P e_i, e_j> - <e_i, P e_j>|
  double annihilates_range = 0.0; ///< max ||P T e_i||
  double range_in_defect = 0.0;   ///< max distance of P e_i from span(E)
  double left_inverse = 0.0;      ///< max ||L T e_i - e_i||
};

/// Probes the first `probes` coordinate vectors.
ProjectionCheck check_defect_projection(const AnalyticModel& m, std::size_t probes);

/// ||x - sum_{k<n} T^k P L^k x - T^n L^n x||.
double telescoping_residual(const AnalyticModel& m, const FiniteSupportVector& x, std::size_t n);

}  // namespace opkit
