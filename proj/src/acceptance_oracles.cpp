#include "acceptance_oracles.hpp"

#include <cmath>

namespace opkit::oracle {

Complex szego_series(Complex lambda, Complex z, std::size_t terms) {
  const Complex w = z * std::conj(lambda);
  Complex sum{};
  Complex p = 1.0;
  for (std::size_t n = 0; n < terms; ++n) {
    sum += p;
    p *= w;
  }
  return sum;
}

Complex dirichlet_series(Complex lambda, Complex z, std::size_t terms) {
  const Complex w = z * std::conj(lambda);
  Complex sum{};
  Complex p = 1.0;
  for (std::size_t n = 0; n < terms; ++n) {
    sum += p / static_cast<double>(n + 1);
    p *= w;
  }
  return sum;
}

Complex dirichlet_closed(Complex lambda, Complex z) {
  const Complex w = z * std::conj(lambda);
  if (std::abs(w) < 1e-300) {
    return 1.0;
  }
  return -std::log(1.0 - w) / w;
}

double dirichlet_beta(std::size_t n) { return std::sqrt(static_cast<double>(n) + 1.0); }

std::vector<double> laguerre_multiplier(double t, std::size_t order) {
  // (n+1) L_{n+1} = (2n + 1 + a - x) L_n - (n + a) L_{n-1}, a = -1, x = 2t.
  const double x = 2.0 * t;
  std::vector<double> l(order + 1);
  l[0] = 1.0;
  if (order >= 1) {
    l[1] = -x;
  }
  for (std::size_t n = 1; n < order; ++n) {
    const double nn = static_cast<double>(n);
    l[n + 1] = ((2.0 * nn - x) * l[n] - (nn - 1.0) * l[n - 1]) / (nn + 1.0);
  }
  const double s = std::exp(-t);
  for (double& v : l) {
    v *= s;
  }
  return l;
}

CMatrix gaussian(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = nd(rng);
      const double im = nd(rng);
      m(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  }
  return m;
}

CMatrix unitary(Eigen::Index n, Rng& rng) {
  const CMatrix g = gaussian(n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) {
      q.col(j) *= d / std::abs(d);
    }
  }
  return q;
}

CMatrix skew_hermitian(Eigen::Index n, Rng& rng) {
  const CMatrix g = gaussian(n, rng);
  return 0.5 * (g - g.adjoint());
}

CMatrix shifted_negative_definite(Eigen::Index n, Rng& rng) {
  const CMatrix k = skew_hermitian(n, rng);
  const CMatrix b = gaussian(n, rng);
  return k - (b.adjoint() * b + CMatrix::Identity(n, n));
}

CMatrix left_half_plane(Eigen::Index n, Rng& rng) {
  std::uniform_real_distribution<double> ud(0.1, 1.0);
  const CMatrix g = gaussian(n, rng);
  Eigen::ComplexEigenSolver<CMatrix> es(g, false);
  double abscissa = -1e300;
  for (Eigen::Index i = 0; i < n; ++i) {
    abscissa = std::max(abscissa, es.eigenvalues()(i).real());
  }
  return g - (abscissa + ud(rng)) * CMatrix::Identity(n, n);
}

CMatrix nilpotent(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> mod(0.5, 1.5);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * 3.141592653589793);
  CMatrix m = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (j == i + 1) {
        m(i, j) = std::polar(mod(rng), ph(rng));
      } else {
        const double re = nd(rng);
        const double im = nd(rng);
        m(i, j) = Complex(re, im) * 0.5;
      }
    }
  }
  return m;
}

FiniteSupportVector random_vector(std::size_t max_index, Ambient ambient, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  FiniteSupportVector x(ambient);
  for (std::size_t k = 0; k <= max_index; ++k) {
    const double re = nd(rng);
    const double im = nd(rng);
    x.set(k, {re, im});
  }
  x *= 1.0 / x.norm();
  return x;
}

}  // namespace opkit::oracle
