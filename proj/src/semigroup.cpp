#include "opkit/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

namespace opkit {

ComplexMatrix evolve(const SemigroupSpec& s, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw Error(ErrorCode::InvalidArgument, "evolution time must be finite and nonnegative");
  }
  if (t == 0.0) {
    return ComplexMatrix::identity(s.generator.dim());
  }
  return expm(Complex(t) * s.generator);
}

namespace {

// (M + I)(M - I)^{-1}; both factors commute, so solve (M - I) X = M + I.
ComplexMatrix cayley(const ComplexMatrix& m, const ToleranceConfig& tol, const char* what) {
  const ComplexMatrix id = ComplexMatrix::identity(m.dim());
  try {
    return solve(m - id, m + id, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Singular) {
      throw Error(ErrorCode::OneInSpectrum, std::string("1 is in the spectrum of the ") + what);
    }
    throw;
  }
}

}  // namespace

ComplexMatrix cogenerator(const SemigroupSpec& s, const ToleranceConfig& tol) {
  return cayley(s.generator, tol, "generator");
}

ComplexMatrix inverse_cayley(const ComplexMatrix& v, const ToleranceConfig& tol) {
  return cayley(v, tol, "cogenerator");
}

GrowthBound growth_bound(const SemigroupSpec& s) {
  GrowthBound g;
  g.omega = -std::numeric_limits<double>::infinity();
  for (const Complex& z : eigenvalues(s.generator)) {
    g.omega = std::max(g.omega, z.real());
  }
  return g;
}

double growth_bound_consistency(const SemigroupSpec& s, const GrowthBound& g, double t) {
  if (!(t > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "consistency check needs t > 0");
  }
  const double r = spectral_radius(evolve(s, t));
  return std::abs(std::log(r) / t - g.omega);
}

SemigroupSpec quasicontractive_rescale(const SemigroupSpec& s, double lambda) {
  const ComplexMatrix shift = Complex(lambda) * ComplexMatrix::identity(s.generator.dim());
  return {s.generator - shift, s.label};
}

EquivalenceGrid EquivalenceGrid::standard() {
  EquivalenceGrid g;
  for (int k = 1; k <= 20; ++k) {
    g.times.push_back(0.1 * k);
  }
  return g;
}

EquivalenceReport concavity_equivalence_suite(const SemigroupSpec& s, std::size_t samples,
                                              const EquivalenceGrid& grid,
                                              const ToleranceConfig& tol,
                                              unsigned long long seed) {
  if (grid.times.empty() || !(grid.step > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "equivalence grid needs times and a positive step");
  }
  for (double t : grid.times) {
    if (t - grid.step < 0.0) {
      throw Error(ErrorCode::InvalidArgument, "grid base points must be at least one step from 0");
    }
  }
  EquivalenceReport r;
  // With 1 in the spectrum there is no cogenerator; (iv) then fails.
  std::optional<ComplexMatrix> v;
  try {
    v = cogenerator(s, tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::OneInSpectrum) throw;
  }
  const auto n = static_cast<Eigen::Index>(s.generator.dim());

  r.member_margin = -std::numeric_limits<double>::infinity();
  for (double t : grid.times) {
    const ClassificationReport c = classify_operator(StructuredOperator::dense(evolve(s, t)), tol);
    r.member_margin = std::max(r.member_margin, c.max_defect);
  }
  r.every_member_concave = r.member_margin <= tol.psd_tol;

  // (ii): the second difference of t -> ||T_t x||^2 at base point t is the
  // quadratic form of G_t = T_{t+h}*T_{t+h} - 2 T_t*T_t + T_{t-h}*T_{t-h};
  // its top eigenvalue is the worst unit vector. Random unit vectors are
  // evaluated directly from the norms as well.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<CVector> xs;
  for (std::size_t i = 0; i < samples; ++i) {
    CVector x(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      x(k) = Complex(normal(rng), normal(rng));
    }
    xs.push_back(x.normalized());
  }
  r.second_difference_margin = -std::numeric_limits<double>::infinity();
  for (double t : grid.times) {
    const CMatrix before = evolve(s, t - grid.step).eigen();
    const CMatrix mid = evolve(s, t).eigen();
    const CMatrix after = evolve(s, t + grid.step).eigen();
    const ComplexMatrix g(after.adjoint() * after - 2.0 * mid.adjoint() * mid +
                          before.adjoint() * before);
    r.second_difference_margin = std::max(r.second_difference_margin, hermitian_max_eig(g));
    for (const CVector& x : xs) {
      const double d2 = (after * x).squaredNorm() - 2.0 * (mid * x).squaredNorm() +
                        (before * x).squaredNorm();
      r.second_difference_margin = std::max(r.second_difference_margin, d2);
    }
  }
  r.norm_squared_concave = r.second_difference_margin <= grid.slack;

  const CriterionResult crit = generator_concavity_criterion(s.generator, tol);
  r.generator_criterion = crit.holds;
  r.generator_margin = crit.margin;

  r.cogenerator_exists = v.has_value();
  if (v) {
    const ClassificationReport cv = classify_operator(StructuredOperator::dense(*v), tol);
    r.cogenerator_concave = cv.concave;
    r.cogenerator_margin = cv.max_defect;
  } else {
    r.cogenerator_concave = false;
    r.cogenerator_margin = std::numeric_limits<double>::infinity();
  }

  r.agree = r.every_member_concave == r.norm_squared_concave &&
            r.norm_squared_concave == r.generator_criterion &&
            r.generator_criterion == r.cogenerator_concave;
  return r;
}

}  // namespace opkit
