#pragma once

// Truncated Hardy-space tools: finite Blaschke products, inner-symbol
// semigroups, analytic Toeplitz truncations, model spaces and their ladder
// decomposition, Caradus certificates and composition operators.

#include <optional>
#include <string>
#include <vector>

#include "opkit/series.hpp"

namespace opkit {

struct BlaschkeSpec {
  std::vector<Complex> zeros;
  Complex unimodular{1.0, 0.0};

  /// Throws ZeroOnBoundary for |a| >= 1 and InvalidArgument when the
  /// constant is not unimodular to 1e-12.
  void validate() const;
  std::size_t degree() const { return zeros.size(); }
};

/// Taylor coefficients of c * prod (|a|/a)(a - z)/(1 - conj(a) z) through
/// degree N; the factor for a = 0 is z.
PowerSeries blaschke_series(const BlaschkeSpec& b, std::size_t order);
Complex blaschke_eval(const BlaschkeSpec& b, Complex z);

/// exp(t (phi + 1)/(phi - 1)) through degree N. Throws
/// SymbolSingularAtOrigin when phi(0) = 1 and InvalidArgument for t < 0.
PowerSeries inner_semigroup_symbol(const PowerSeries& phi, double t, std::size_t order);

struct CircleSample {
  double radius = 0.0;
  double max_modulus = 0.0;
  double mean_modulus = 0.0;
  double tail_estimate = 0.0;
};

struct InnerCheckReport {
  std::vector<CircleSample> circles;  ///< radii 0.9 and 0.99
  double max_modulus = 0.0;
  bool bounded = false;               ///< max_modulus <= 1 + residual_tol
  bool means_increase = false;
  bool passed = false;
};

/// Necessary-condition check for inner functions: samples |f| at `grid`
/// points on |z| = 0.9 and 0.99. The tail past the stored order is
/// estimated from the largest coefficient in the upper half of the series;
/// TailNotConvergent is thrown when it exceeds tail_tol.
InnerCheckReport inner_check(const PowerSeries& f, std::size_t grid,
                             const ToleranceConfig& tol = {});

/// Toeplitz truncation with symbol coefficients c_{-N} .. c_N:
/// entry (i, j) = c_{i-j}, zero when |i - j| > N.
class ToeplitzTrunc {
 public:
  /// analytic = c_0 .. c_N, coanalytic = c_{-1} .. c_{-N} (shorter is
  /// zero-padded).
  ToeplitzTrunc(std::vector<Complex> analytic, std::vector<Complex> coanalytic, std::size_t n);

  static ToeplitzTrunc analytic(const PowerSeries& phi, std::size_t n);

  std::size_t dim() const { return n_; }
  Complex coeff(long k) const;
  /// Symbol conj(phi), i.e. the matrix adjoint.
  ToeplitzTrunc adjoint() const;
  ComplexMatrix matrix() const;

 private:
  std::vector<Complex> pos_;
  std::vector<Complex> neg_;
  std::size_t n_;
};

/// Orthonormal columns spanning the left null space of the n x n analytic
/// Toeplitz truncation of phi, i.e. the vectors orthogonal to every
/// truncated phi z^k. Singular values at most tol times the largest count
/// as zero. Throws TruncationTooSmall when n < 2, when phi is a truncated
/// series stored below degree n - 1, or when its coefficients in the last
/// quarter of [0, n) exceed tol.
CMatrix model_space_basis(const PowerSeries& phi, std::size_t n, double tol);

struct LadderReport {
  std::size_t model_dim = 0;
  std::size_t levels = 0;        ///< m + 1
  std::size_t total_rank = 0;
  std::size_t expected_total = 0;
  double off_block_max = 0.0;    ///< largest |Gram entry| between levels
  double diag_block_residual = 0.0;  ///< max ||G_kk - I|| over levels
  bool passed = false;
};

/// Builds phi^k K_phi for k = 0..m from model_space_basis by series
/// multiplication and checks mutual orthogonality and the dimension count.
/// Requires n >= 2 (m + 2) dim K_phi; throws TruncationTooSmall otherwise.
LadderReport verify_ladder_decomposition(const PowerSeries& phi, std::size_t m, std::size_t n,
                                         double tol);

struct CaradusReport {
  std::size_t n = 0;
  std::size_t rank = 0;
  std::size_t ker_dim = 0;              ///< n - rank
  bool raw_surjective = false;          ///< rank == n
  std::size_t upper_bandwidth = 0;
  std::size_t lower_bandwidth = 0;
  std::size_t interior_cokernel_dim = 0;  ///< rows 0 .. n-1-upper_bandwidth
  std::size_t interior_ker_dim = 0;       ///< columns 0 .. n-1-lower_bandwidth
  bool surjective = false;              ///< interior_cokernel_dim == 0
  bool kernel_truncation_artifact = false;
  bool surjectivity_truncation_artifact = false;
  std::optional<std::size_t> multiplicity;
  bool kernel_matches_multiplicity = false;
  std::string caveat;
};

/// Kernel and surjectivity on an n x n truncation. Rows within the upper
/// numerical bandwidth of the bottom edge lose their source columns to the
/// cut, so surjectivity is judged on the remaining rows; the kernel count is
/// compared with the one on columns away from the right edge and any
/// disagreement is flagged as a truncation artifact. Throws NonFinite.
CaradusReport caradus_certificate(const CMatrix& t, double tol,
                                  std::optional<std::size_t> multiplicity = std::nullopt);
CaradusReport caradus_certificate(const ToeplitzTrunc& t, double tol,
                                  std::optional<std::size_t> multiplicity = std::nullopt);

/// e_{k+d} -> e_k on C^n.
CMatrix block_backward_shift(std::size_t n, std::size_t multiplicity);
/// e_k -> e_{k+1} on C^n.
CMatrix forward_shift(std::size_t n);

struct KernelScanReport {
  std::vector<Complex> lambdas;
  std::vector<std::size_t> ker_dims;
  std::size_t max_ker_dim = 0;
  bool at_most_one = false;
};

/// dim ker(D - lambda I) for the truncated differentiation z^k -> k z^{k-1}
/// on polynomials of degree < n. Illustration only.
KernelScanReport differentiation_kernel_scan(std::size_t n, const std::vector<Complex>& lambdas,
                                             double tol);

/// Column j holds the Taylor coefficients of ((z + r)/(1 + r z))^j through
/// degree n - 1. Throws InvalidAutomorphism unless -1 < r < 1.
ComplexMatrix composition_operator_trunc(double r, std::size_t n);

}  // namespace opkit
