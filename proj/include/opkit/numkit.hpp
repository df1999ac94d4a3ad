#pragma once

// Dense complex linear algebra used by every other module: Hermitian
// spectra, matrix exponential, tolerant rank and range bases. Storage and
// the factorizations themselves are Eigen's.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "opkit/error.hpp"

namespace opkit {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Global numeric thresholds. All four must be strictly positive.
struct ToleranceConfig {
  double rank_tol = 1e-10;      ///< relative singular-value cutoff
  double psd_tol = 1e-10;       ///< eigenvalue slack for semidefiniteness
  double residual_tol = 1e-9;   ///< allowed norm residual for identities
  double tail_tol = 1e-10;      ///< allowed truncated-series tail

  void validate() const;
};

/// Square, finite, n >= 1. Construction rejects anything else.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(CMatrix m);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> d);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  Complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const CMatrix& eigen() const { return m_; }

  ComplexMatrix adjoint() const { return ComplexMatrix(m_.adjoint()); }

  /// Largest singular value.
  double spectral_norm() const;

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.m_ == b.m_;
  }

 private:
  CMatrix m_;
};

/// Throws NonFinite when any entry is NaN or infinite.
void require_finite(const CMatrix& m, const char* what);

/// Eigenvalues of (M + M*)/2, ascending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);
double hermitian_max_eig(const ComplexMatrix& m);
double hermitian_min_eig(const ComplexMatrix& m);

/// Scaling and squaring around a degree-13 Pade core; the scaled matrix
/// has 1-norm at most 0.5.
ComplexMatrix expm(const ComplexMatrix& m);

/// Singular values in descending order. Works on rectangular input.
std::vector<double> singular_values(const CMatrix& m);

/// Solves M x = rhs. Throws Singular if sigma_min < rank_tol * sigma_max.
CVector solve(const ComplexMatrix& m, const CVector& rhs,
              const ToleranceConfig& tol = {});
/// Solves M X = rhs column by column with the same singularity test.
ComplexMatrix solve(const ComplexMatrix& m, const ComplexMatrix& rhs,
                    const ToleranceConfig& tol = {});

/// Number of singular values above rank_tol times the largest one.
std::size_t rank(const CMatrix& m, const ToleranceConfig& tol = {});
inline std::size_t rank(const ComplexMatrix& m, const ToleranceConfig& tol = {}) {
  return rank(m.eigen(), tol);
}

/// Orthonormal basis (as columns) of the numerical column space of m.
CMatrix range_basis(const CMatrix& m, const ToleranceConfig& tol = {});
/// Orthonormal basis (as columns) of the orthogonal complement of the
/// numerical column space of m inside C^rows.
CMatrix cokernel_basis(const CMatrix& m, const ToleranceConfig& tol = {});

std::vector<CVector> orthonormal_range_basis(const ComplexMatrix& m,
                                             const ToleranceConfig& tol = {});

/// All eigenvalues via the complex Schur form.
std::vector<Complex> eigenvalues(const ComplexMatrix& m);

/// Power iteration; falls back to the Schur form when the iteration does
/// not settle (equal-modulus or defective dominant eigenvalues).
double spectral_radius(const ComplexMatrix& m);

}  // namespace opkit
