#pragma once

// Reference computations for the unit tests. Each one uses a different
// route from the library code it checks.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "opkit/numkit.hpp"
#include "opkit/operators.hpp"

namespace testing {

using opkit::CMatrix;
using opkit::Complex;
using opkit::CVector;

inline constexpr double kPi = 3.14159265358979323846;

inline CMatrix random_matrix(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = nd(rng);
      m(i, j) = Complex(re, nd(rng));
    }
  return m;
}

inline CMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  // Gram-Schmidt on a Gaussian matrix; the library uses Householder QR.
  CMatrix q = random_matrix(n, rng);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < j; ++k) {
      q.col(j) -= q.col(k).dot(q.col(j)) * q.col(k);
    }
    q.col(j) /= q.col(j).norm();
  }
  return q;
}

/// exp(M) by scaling, a 30 term Taylor sum and squaring.
inline CMatrix taylor_expm(const CMatrix& m) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  while (norm / std::ldexp(1.0, s) > 0.25) ++s;
  const CMatrix a = m / std::ldexp(1.0, s);
  CMatrix term = CMatrix::Identity(m.rows(), m.cols());
  CMatrix sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

/// Taylor coefficients 0..order of f from M samples on the unit circle.
/// Exact up to aliasing of coefficients past M.
template <class F>
std::vector<Complex> dft_coefficients(F f, std::size_t order, std::size_t samples = 4096) {
  std::vector<Complex> vals(samples);
  for (std::size_t j = 0; j < samples; ++j) {
    vals[j] = f(std::polar(1.0, 2.0 * kPi * static_cast<double>(j) / samples));
  }
  std::vector<Complex> c(order + 1);
  for (std::size_t k = 0; k <= order; ++k) {
    Complex acc{};
    for (std::size_t j = 0; j < samples; ++j) {
      acc += vals[j] * std::polar(1.0, -2.0 * kPi * static_cast<double>(j * k % samples) / samples);
    }
    c[k] = acc / static_cast<double>(samples);
  }
  return c;
}

/// e^{-t} L_n^{(-1)}(2t) from the explicit binomial sum
/// L_n^{(-1)}(x) = sum_{k=1}^{n} C(n-1, k-1) (-x)^k / k!, in long double.
/// The sum alternates, so `abs_sum` (sum of |terms| times e^{-t}) bounds
/// how much rounding the value can carry.
struct LaguerreValue {
  double value;
  double abs_sum;
};

inline LaguerreValue laguerre_closed(double t, std::size_t n) {
  const long double scale = std::exp(static_cast<long double>(-t));
  if (n == 0) return {static_cast<double>(scale), static_cast<double>(scale)};
  const long double x = 2.0L * t;
  long double sum = 0.0L, abs_sum = 0.0L;
  long double binom = 1.0L;  // C(n-1, k-1)
  long double pow_fact = 1.0L;
  for (std::size_t k = 1; k <= n; ++k) {
    pow_fact *= -x / static_cast<long double>(k);
    sum += binom * pow_fact;
    abs_sum += std::fabs(binom * pow_fact);
    binom = binom * static_cast<long double>(n - k) / static_cast<long double>(k);
  }
  return {static_cast<double>(scale * sum), static_cast<double>(scale * abs_sum)};
}

inline opkit::FiniteSupportVector random_support(std::size_t max_index, opkit::Ambient amb,
                                                 std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  opkit::FiniteSupportVector x(amb);
  for (std::size_t k = 0; k <= max_index; ++k) {
    const double re = nd(rng);
    x.set(k, {re, nd(rng)});
  }
  return x;
}

inline double dist(const opkit::FiniteSupportVector& a, const opkit::FiniteSupportVector& b) {
  return (a - b).norm();
}

}  // namespace testing
