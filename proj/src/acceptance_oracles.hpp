#pragma once

// Reference values computed without the library's own model code, and the
// seeded random ensembles the acceptance criteria draw from.

#include <random>
#include <vector>

#include "opkit/operators.hpp"

namespace opkit::oracle {

using Rng = std::mt19937_64;

/// sum_{n<terms} (z conj(lambda))^n.
Complex szego_series(Complex lambda, Complex z, std::size_t terms = 1000);
/// sum_{n<terms} (z conj(lambda))^n / (n + 1).
Complex dirichlet_series(Complex lambda, Complex z, std::size_t terms = 1000);
/// -log(1 - w)/w with w = z conj(lambda); 1 at w = 0.
Complex dirichlet_closed(Complex lambda, Complex z);

/// beta_n of the Dirichlet shift, sqrt(n + 1) by telescoping.
double dirichlet_beta(std::size_t n);

/// e^{-t} L_n^{(-1)}(2t) for n = 0..order, the Taylor coefficients of
/// exp(t (z+1)/(z-1)) by the Laguerre generating function.
std::vector<double> laguerre_multiplier(double t, std::size_t order);

CMatrix gaussian(Eigen::Index n, Rng& rng);
CMatrix unitary(Eigen::Index n, Rng& rng);
CMatrix skew_hermitian(Eigen::Index n, Rng& rng);
/// K - (B*B + I) with K skew-Hermitian.
CMatrix shifted_negative_definite(Eigen::Index n, Rng& rng);
/// Gaussian shifted so that max Re sigma lies in [-1, -0.1].
CMatrix left_half_plane(Eigen::Index n, Rng& rng);
/// Strictly upper triangular with superdiagonal moduli in [0.5, 1.5].
CMatrix nilpotent(Eigen::Index n, Rng& rng);

/// Unit vector with random complex entries on indices 0..max_index.
FiniteSupportVector random_vector(std::size_t max_index, Ambient ambient, Rng& rng);

}  // namespace opkit::oracle
