#include "opkit/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace opkit {

void BlaschkeSpec::validate() const {
  for (const Complex& a : zeros) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw Error(ErrorCode::NonFinite, "Blaschke zero is not finite");
    }
    if (std::abs(a) >= 1.0) {
      throw Error(ErrorCode::ZeroOnBoundary, "Blaschke zeros must lie in the open unit disc");
    }
  }
  if (std::abs(std::abs(unimodular) - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "Blaschke constant must be unimodular");
  }
}

namespace {

PowerSeries blaschke_factor(Complex a, std::size_t order) {
  std::vector<Complex> c(order + 1);
  if (a == Complex{}) {
    if (order >= 1) {
      c[1] = 1.0;
    }
    return PowerSeries(std::move(c), order < 1);
  }
  const Complex phase = std::abs(a) / a;
  const Complex ab = std::conj(a);
  const double shrink = std::norm(a) - 1.0;
  c[0] = phase * a;
  Complex pw = 1.0;  // conj(a)^{k-1}
  for (std::size_t k = 1; k <= order; ++k) {
    c[k] = phase * pw * shrink;
    pw *= ab;
  }
  return PowerSeries(std::move(c), true);
}

}  // namespace

PowerSeries blaschke_series(const BlaschkeSpec& b, std::size_t order) {
  b.validate();
  PowerSeries out = PowerSeries::constant(b.unimodular, order);
  for (const Complex& a : b.zeros) {
    out = series_mul(out, blaschke_factor(a, order));
  }
  return out;
}

Complex blaschke_eval(const BlaschkeSpec& b, Complex z) {
  b.validate();
  Complex out = b.unimodular;
  for (const Complex& a : b.zeros) {
    if (a == Complex{}) {
      out *= z;
      continue;
    }
    const Complex den = 1.0 - std::conj(a) * z;
    if (den == Complex{}) {
      throw Error(ErrorCode::Singular, "Blaschke factor has a pole at the evaluation point");
    }
    out *= (std::abs(a) / a) * (a - z) / den;
  }
  return out;
}

PowerSeries inner_semigroup_symbol(const PowerSeries& phi, double t, std::size_t order) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw Error(ErrorCode::InvalidArgument, "semigroup parameter must be a finite t >= 0");
  }
  const PowerSeries p = phi.with_order(order);
  if (std::abs(p[0] - 1.0) <= 1e-14) {
    throw Error(ErrorCode::SymbolSingularAtOrigin, "(phi+1)/(phi-1) needs phi(0) != 1");
  }
  const PowerSeries one = PowerSeries::constant(1.0, order);
  const PowerSeries psi =
      series_mul(series_add(p, one), series_inv(series_add(p, series_scale(-1.0, one))));
  return series_exp(series_scale(t, psi));
}

InnerCheckReport inner_check(const PowerSeries& f, std::size_t grid, const ToleranceConfig& tol) {
  if (grid == 0) {
    throw Error(ErrorCode::InvalidArgument, "inner_check needs at least one grid point");
  }
  const std::size_t n = f.order();
  double tail_coeff = 0.0;
  if (f.truncated()) {
    for (std::size_t k = n / 2; k <= n; ++k) {
      tail_coeff = std::max(tail_coeff, std::abs(f[k]));
    }
  }
  InnerCheckReport r;
  for (double rho : {0.9, 0.99}) {
    CircleSample c;
    c.radius = rho;
    c.tail_estimate = tail_coeff * std::pow(rho, static_cast<double>(n + 1)) / (1.0 - rho);
    if (c.tail_estimate > tol.tail_tol) {
      throw Error(ErrorCode::TailNotConvergent,
                  "series order too small for the sampling radius");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < grid; ++j) {
      const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid);
      const double m = std::abs(f.eval(std::polar(rho, th)));
      c.max_modulus = std::max(c.max_modulus, m);
      sum += m;
    }
    c.mean_modulus = sum / static_cast<double>(grid);
    r.max_modulus = std::max(r.max_modulus, c.max_modulus);
    r.circles.push_back(c);
  }
  r.bounded = r.max_modulus <= 1.0 + tol.residual_tol;
  r.means_increase = r.circles[1].mean_modulus >= r.circles[0].mean_modulus;
  r.passed = r.bounded && r.means_increase;
  return r;
}

ToeplitzTrunc::ToeplitzTrunc(std::vector<Complex> analytic, std::vector<Complex> coanalytic,
                             std::size_t n)
    : pos_(std::move(analytic)), neg_(std::move(coanalytic)), n_(n) {
  if (n_ == 0) {
    throw Error(ErrorCode::InvalidArgument, "Toeplitz truncation needs n >= 1");
  }
  for (const auto* v : {&pos_, &neg_}) {
    for (const Complex& c : *v) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw Error(ErrorCode::NonFinite, "Toeplitz symbol coefficient is not finite");
      }
    }
  }
}

ToeplitzTrunc ToeplitzTrunc::analytic(const PowerSeries& phi, std::size_t n) {
  std::vector<Complex> pos(std::min(phi.order() + 1, n));
  for (std::size_t k = 0; k < pos.size(); ++k) {
    pos[k] = phi[k];
  }
  return ToeplitzTrunc(std::move(pos), {}, n);
}

Complex ToeplitzTrunc::coeff(long k) const {
  if (k >= 0) {
    const auto i = static_cast<std::size_t>(k);
    return i < pos_.size() ? pos_[i] : Complex{};
  }
  const auto i = static_cast<std::size_t>(-k - 1);
  return i < neg_.size() ? neg_[i] : Complex{};
}

ToeplitzTrunc ToeplitzTrunc::adjoint() const {
  // Adjoint entry (i,j) = conj(c_{j-i}): new c_k = conj(c_{-k}).
  std::vector<Complex> pos(neg_.size() + 1);
  std::vector<Complex> neg(pos_.empty() ? 0 : pos_.size() - 1);
  pos[0] = std::conj(coeff(0));
  for (std::size_t k = 0; k < neg_.size(); ++k) {
    pos[k + 1] = std::conj(neg_[k]);
  }
  for (std::size_t k = 0; k < neg.size(); ++k) {
    neg[k] = std::conj(pos_[k + 1]);
  }
  return ToeplitzTrunc(std::move(pos), std::move(neg), n_);
}

ComplexMatrix ToeplitzTrunc::matrix() const {
  const auto n = static_cast<Eigen::Index>(n_);
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = coeff(static_cast<long>(i - j));
    }
  }
  return ComplexMatrix(std::move(m));
}

CMatrix model_space_basis(const PowerSeries& phi, std::size_t n, double tol) {
  if (n < 2) {
    throw Error(ErrorCode::TruncationTooSmall, "model space truncation needs n >= 2");
  }
  if (phi.truncated()) {
    if (phi.order() + 1 < n) {
      throw Error(ErrorCode::TruncationTooSmall, "symbol is stored below the truncation degree");
    }
    for (std::size_t k = n - n / 4; k < n; ++k) {
      if (std::abs(phi[k]) > tol) {
        throw Error(ErrorCode::TruncationTooSmall,
                    "symbol coefficients have not decayed below tol at the truncation");
      }
    }
  }
  const ComplexMatrix t = ToeplitzTrunc::analytic(phi, n).matrix();
  ToleranceConfig cut;
  cut.rank_tol = tol;
  return cokernel_basis(t.eigen(), cut);
}

namespace {

PowerSeries column_series(const CMatrix& m, Eigen::Index j) {
  std::vector<Complex> c(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    c[static_cast<std::size_t>(i)] = m(i, j);
  }
  return PowerSeries(std::move(c), true);
}

}  // namespace

LadderReport verify_ladder_decomposition(const PowerSeries& phi, std::size_t m, std::size_t n,
                                         double tol) {
  const CMatrix k = model_space_basis(phi, n, tol);
  const auto d = static_cast<std::size_t>(k.cols());
  if (n < 2 * (m + 2) * d) {
    throw Error(ErrorCode::TruncationTooSmall, "ladder check needs n >= 2 (m + 2) dim K_phi");
  }
  LadderReport r;
  r.model_dim = d;
  r.levels = m + 1;
  r.expected_total = (m + 1) * d;

  const auto nn = static_cast<Eigen::Index>(n);
  const auto dd = static_cast<Eigen::Index>(d);
  CMatrix w(nn, static_cast<Eigen::Index>(r.expected_total));
  const PowerSeries p = phi.with_order(n - 1);
  PowerSeries power = PowerSeries::constant(1.0, n - 1);
  for (std::size_t level = 0; level <= m; ++level) {
    for (Eigen::Index j = 0; j < dd; ++j) {
      const PowerSeries v = series_mul(power, column_series(k, j));
      const Eigen::Index col = static_cast<Eigen::Index>(level) * dd + j;
      for (Eigen::Index i = 0; i < nn; ++i) {
        w(i, col) = v[static_cast<std::size_t>(i)];
      }
    }
    power = series_mul(power, p);
  }

  const CMatrix g = w.adjoint() * w;
  for (std::size_t a = 0; a <= m; ++a) {
    for (std::size_t b = 0; b <= m; ++b) {
      const auto blk = g.block(static_cast<Eigen::Index>(a) * dd, static_cast<Eigen::Index>(b) * dd,
                               dd, dd);
      if (a == b) {
        const CMatrix res = blk - CMatrix::Identity(dd, dd);
        r.diag_block_residual =
            std::max(r.diag_block_residual, dd > 0 ? res.cwiseAbs().maxCoeff() : 0.0);
      } else if (dd > 0) {
        r.off_block_max = std::max(r.off_block_max, blk.cwiseAbs().maxCoeff());
      }
    }
  }
  ToleranceConfig cut;
  cut.rank_tol = tol;
  r.total_rank = r.expected_total == 0 ? 0 : rank(w, cut);
  r.passed = r.off_block_max <= tol && r.diag_block_residual <= tol &&
             r.total_rank == r.expected_total;
  return r;
}

CaradusReport caradus_certificate(const CMatrix& t, double tol,
                                  std::optional<std::size_t> multiplicity) {
  require_finite(t, "Caradus input");
  if (t.rows() != t.cols() || t.rows() == 0) {
    throw Error(ErrorCode::InvalidArgument, "Caradus certificate needs a square matrix");
  }
  CaradusReport r;
  const Eigen::Index n = t.rows();
  r.n = static_cast<std::size_t>(n);
  const double scale = t.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(t(i, j)) > tol * scale) {
        if (j > i) {
          r.upper_bandwidth = std::max(r.upper_bandwidth, static_cast<std::size_t>(j - i));
        } else {
          r.lower_bandwidth = std::max(r.lower_bandwidth, static_cast<std::size_t>(i - j));
        }
      }
    }
  }
  ToleranceConfig cut;
  cut.rank_tol = tol;
  r.rank = scale > 0.0 ? rank(t, cut) : 0;
  r.ker_dim = r.n - r.rank;
  r.raw_surjective = r.rank == r.n;

  const auto rows = n - static_cast<Eigen::Index>(std::min(r.upper_bandwidth, r.n));
  if (rows > 0) {
    const std::size_t rr = scale > 0.0 ? rank(t.topRows(rows), cut) : 0;
    r.interior_cokernel_dim = static_cast<std::size_t>(rows) - rr;
  }
  r.surjective = rows > 0 && r.interior_cokernel_dim == 0;

  const auto cols = n - static_cast<Eigen::Index>(std::min(r.lower_bandwidth, r.n));
  if (cols > 0) {
    const std::size_t cr = scale > 0.0 ? rank(t.leftCols(cols), cut) : 0;
    r.interior_ker_dim = static_cast<std::size_t>(cols) - cr;
  }
  r.kernel_truncation_artifact = r.interior_ker_dim != r.ker_dim;
  r.surjectivity_truncation_artifact = r.raw_surjective != r.surjective;

  r.multiplicity = multiplicity;
  r.kernel_matches_multiplicity = multiplicity && r.ker_dim == *multiplicity;
  r.caveat =
      "finite truncation: counts refer to the n x n cut; an infinite-dimensional kernel is "
      "certified only by the declared multiplicity per block";
  return r;
}

CaradusReport caradus_certificate(const ToeplitzTrunc& t, double tol,
                                  std::optional<std::size_t> multiplicity) {
  return caradus_certificate(t.matrix().eigen(), tol, multiplicity);
}

CMatrix block_backward_shift(std::size_t n, std::size_t multiplicity) {
  if (n == 0 || multiplicity == 0) {
    throw Error(ErrorCode::InvalidArgument, "block shift needs n >= 1 and multiplicity >= 1");
  }
  const auto nn = static_cast<Eigen::Index>(n);
  const auto d = static_cast<Eigen::Index>(multiplicity);
  CMatrix m = CMatrix::Zero(nn, nn);
  for (Eigen::Index i = 0; i + d < nn; ++i) {
    m(i, i + d) = 1.0;
  }
  return m;
}

CMatrix forward_shift(std::size_t n) {
  if (n == 0) {
    throw Error(ErrorCode::InvalidArgument, "shift needs n >= 1");
  }
  const auto nn = static_cast<Eigen::Index>(n);
  CMatrix m = CMatrix::Zero(nn, nn);
  for (Eigen::Index i = 0; i + 1 < nn; ++i) {
    m(i + 1, i) = 1.0;
  }
  return m;
}

KernelScanReport differentiation_kernel_scan(std::size_t n, const std::vector<Complex>& lambdas,
                                             double tol) {
  if (n == 0) {
    throw Error(ErrorCode::InvalidArgument, "scan needs n >= 1");
  }
  const auto nn = static_cast<Eigen::Index>(n);
  CMatrix d = CMatrix::Zero(nn, nn);
  for (Eigen::Index k = 1; k < nn; ++k) {
    d(k - 1, k) = static_cast<double>(k);
  }
  ToleranceConfig cut;
  cut.rank_tol = tol;
  KernelScanReport r;
  r.lambdas = lambdas;
  for (const Complex& l : lambdas) {
    const CMatrix m = d - l * CMatrix::Identity(nn, nn);
    const std::size_t k = n - rank(m, cut);
    r.ker_dims.push_back(k);
    r.max_ker_dim = std::max(r.max_ker_dim, k);
  }
  r.at_most_one = r.max_ker_dim <= 1;
  return r;
}

ComplexMatrix composition_operator_trunc(double r, std::size_t n) {
  if (!std::isfinite(r) || std::abs(r) >= 1.0) {
    throw Error(ErrorCode::InvalidAutomorphism, "automorphism parameter must satisfy |r| < 1");
  }
  if (n == 0) {
    throw Error(ErrorCode::InvalidArgument, "composition truncation needs n >= 1");
  }
  std::vector<Complex> c(n);
  c[0] = r;
  double pw = 1.0;  // (-r)^{k-1}
  for (std::size_t k = 1; k < n; ++k) {
    c[k] = pw * (1.0 - r * r);
    pw *= -r;
  }
  const PowerSeries phi(std::move(c), true);
  const auto nn = static_cast<Eigen::Index>(n);
  CMatrix m(nn, nn);
  PowerSeries power = PowerSeries::constant(1.0, n - 1);
  for (Eigen::Index j = 0; j < nn; ++j) {
    for (Eigen::Index i = 0; i < nn; ++i) {
      m(i, j) = power[static_cast<std::size_t>(i)];
    }
    power = series_mul(power, phi);
  }
  return ComplexMatrix(std::move(m));
}

}  // namespace opkit
