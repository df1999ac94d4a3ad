#include "opkit/numkit.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace opkit {

void ToleranceConfig::validate() const {
  for (double v : {rank_tol, psd_tol, residual_tol, tail_tol}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument,
                  "tolerances must be finite and strictly positive");
    }
  }
}

void require_finite(const CMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::NonFinite, std::string(what) + " has non-finite entries");
  }
}

ComplexMatrix::ComplexMatrix(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw Error(ErrorCode::InvalidArgument, "matrix is not square");
  }
  if (m_.rows() == 0) {
    throw Error(ErrorCode::InvalidArgument, "matrix dimension must be positive");
  }
  require_finite(m_, "matrix");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return ComplexMatrix(CMatrix::Identity(k, k));
}

ComplexMatrix ComplexMatrix::zero(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return ComplexMatrix(CMatrix::Zero(k, k));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> d) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d.size()),
                            static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
  }
  return ComplexMatrix(std::move(m));
}

double ComplexMatrix::spectral_norm() const {
  return singular_values(m_).front();
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  return ComplexMatrix(a.m_ + b.m_);
}
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  return ComplexMatrix(a.m_ - b.m_);
}
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return ComplexMatrix(a.m_ * b.m_);
}
ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  return ComplexMatrix(s * a.m_);
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  const CMatrix h = 0.5 * (m.eigen() + m.eigen().adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::NonFinite, "Hermitian eigensolver did not converge");
  }
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double hermitian_max_eig(const ComplexMatrix& m) {
  return hermitian_eigenvalues(m).back();
}

double hermitian_min_eig(const ComplexMatrix& m) {
  return hermitian_eigenvalues(m).front();
}

namespace {

double one_norm(const CMatrix& m) {
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace

ComplexMatrix expm(const ComplexMatrix& m) {
  const Eigen::Index n = m.eigen().rows();
  const CMatrix id = CMatrix::Identity(n, n);

  const double norm = one_norm(m.eigen());
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  }
  const CMatrix a = m.eigen() * std::ldexp(1.0, -squarings);

  static constexpr double raw[] = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  // Scaled so that b[0] = 1 and exp(0) comes out as the exact identity.
  double b[14];
  for (int k = 0; k < 14; ++k) {
    b[k] = raw[k] / raw[0];
  }

  const CMatrix a2 = a * a;
  const CMatrix a4 = a2 * a2;
  const CMatrix a6 = a4 * a2;

  const CMatrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
                          b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
  const CMatrix u = a * u_inner;
  const CMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                    b[4] * a4 + b[2] * a2 + b[0] * id;

  CMatrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) {
    r = r * r;
  }
  require_finite(r, "matrix exponential");
  return ComplexMatrix(std::move(r));
}

std::vector<double> singular_values(const CMatrix& m) {
  require_finite(m, "matrix");
  if (m.size() == 0) {
    return {};
  }
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

namespace {

void require_nonsingular(const ComplexMatrix& m, const ToleranceConfig& tol) {
  const auto sv = singular_values(m.eigen());
  if (sv.front() == 0.0 || sv.back() < tol.rank_tol * sv.front()) {
    throw Error(ErrorCode::Singular, "matrix is singular at rank_tol");
  }
}

}  // namespace

CVector solve(const ComplexMatrix& m, const CVector& rhs, const ToleranceConfig& tol) {
  if (rhs.size() != m.eigen().rows()) {
    throw Error(ErrorCode::InvalidArgument, "right-hand side has wrong length");
  }
  require_finite(rhs, "right-hand side");
  require_nonsingular(m, tol);
  return m.eigen().fullPivLu().solve(rhs);
}

ComplexMatrix solve(const ComplexMatrix& m, const ComplexMatrix& rhs,
                    const ToleranceConfig& tol) {
  if (rhs.dim() != m.dim()) {
    throw Error(ErrorCode::InvalidArgument, "right-hand side has wrong size");
  }
  require_nonsingular(m, tol);
  return ComplexMatrix(m.eigen().fullPivLu().solve(rhs.eigen()));
}

std::size_t rank(const CMatrix& m, const ToleranceConfig& tol) {
  const auto sv = singular_values(m);
  if (sv.empty() || sv.front() == 0.0) {
    return 0;
  }
  const double cut = tol.rank_tol * sv.front();
  return static_cast<std::size_t>(
      std::count_if(sv.begin(), sv.end(), [cut](double s) { return s > cut; }));
}

CMatrix range_basis(const CMatrix& m, const ToleranceConfig& tol) {
  require_finite(m, "matrix");
  if (m.size() == 0) {
    return CMatrix(m.rows(), 0);
  }
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  Eigen::Index r = 0;
  if (sv.size() > 0 && sv(0) > 0.0) {
    const double cut = tol.rank_tol * sv(0);
    while (r < sv.size() && sv(r) > cut) {
      ++r;
    }
  }
  return svd.matrixU().leftCols(r);
}

CMatrix cokernel_basis(const CMatrix& m, const ToleranceConfig& tol) {
  require_finite(m, "matrix");
  if (m.cols() == 0) {
    return CMatrix::Identity(m.rows(), m.rows());
  }
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  Eigen::Index r = 0;
  if (sv.size() > 0 && sv(0) > 0.0) {
    const double cut = tol.rank_tol * sv(0);
    while (r < sv.size() && sv(r) > cut) {
      ++r;
    }
  }
  return svd.matrixU().rightCols(m.rows() - r);
}

std::vector<CVector> orthonormal_range_basis(const ComplexMatrix& m,
                                             const ToleranceConfig& tol) {
  const CMatrix q = range_basis(m.eigen(), tol);
  std::vector<CVector> out;
  out.reserve(static_cast<std::size_t>(q.cols()));
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    out.emplace_back(q.col(j));
  }
  return out;
}

std::vector<Complex> eigenvalues(const ComplexMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> es(m.eigen(), false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::NonFinite, "Schur decomposition did not converge");
  }
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double spectral_radius(const ComplexMatrix& m) {
  const CMatrix& a = m.eigen();
  const Eigen::Index n = a.rows();
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) {
    return 0.0;
  }

  // Deterministic start with no special alignment to coordinate axes.
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = Complex(1.0 + 0.1 * static_cast<double>(i), 0.05 * static_cast<double>(i % 3));
  }
  v.normalize();
  for (int it = 0; it < 2000; ++it) {
    CVector w = a * v;
    const double wn = w.norm();
    if (wn == 0.0) {
      break;
    }
    const Complex mu = v.dot(w);
    if ((w - mu * v).norm() <= 1e-13 * scale * static_cast<double>(n) && it > 3) {
      return std::abs(mu);
    }
    v = w / wn;
  }

  double r = 0.0;
  for (const Complex& z : eigenvalues(m)) {
    r = std::max(r, std::abs(z));
  }
  return r;
}

}  // namespace opkit
