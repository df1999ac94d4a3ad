#include <doctest.h>

#include "opkit/classify.hpp"
#include "opkit/error.hpp"
#include "opkit/shimorin.hpp"
#include "test_support.hpp"

using namespace opkit;

namespace {

StructuredOperator dense(const CMatrix& m) { return StructuredOperator::dense(ComplexMatrix(m)); }

// Defect evaluated directly from the definition on a dense matrix.
CMatrix defect(const CMatrix& t) {
  const CMatrix t2 = t * t;
  return t2.adjoint() * t2 - 2.0 * t.adjoint() * t + CMatrix::Identity(t.rows(), t.cols());
}

}  // namespace

TEST_CASE("classify examples") {
  CMatrix u = CMatrix::Zero(2, 2);
  u(0, 0) = Complex(0, 1);
  u(1, 1) = -1.0;
  const auto cu = classify_operator(dense(u));
  CHECK(cu.concave);
  CHECK(cu.two_isometry);
  CHECK(std::abs(cu.defect_norm) <= 1e-15);

  CMatrix h = CMatrix::Constant(1, 1, 0.5);
  const auto ch = classify_operator(dense(h));
  CHECK_FALSE(ch.concave);
  CHECK(ch.max_defect == doctest::Approx(0.5625));

  const auto cd = classify_operator(StructuredOperator::shift(WeightedShift::dirichlet()));
  CHECK(cd.two_isometry);
  CHECK(cd.concave);
  CHECK(cd.two_contraction);
  CHECK(cd.bounded_below);
  CHECK(cd.pure);
  CHECK(cd.wandering);
  for (std::size_t k = 0; k < 50; ++k) {
    CHECK(std::abs(shift_defect(WeightedShift::dirichlet(), k)) <= 1e-14);
  }
}

TEST_CASE("shift defect closed form") {
  const WeightedShift w({1.5, 0.8, 1.1}, 1.0);
  for (std::size_t k = 0; k < 6; ++k) {
    const double a = w.weight(k), b = w.weight(k + 1);
    CHECK(shift_defect(w, k) == doctest::Approx(a * a * b * b - 2 * a * a + 1));
  }
}

TEST_CASE("generator criterion examples") {
  std::mt19937_64 rng(1);
  const CMatrix g = testing::random_matrix(4, rng);
  const auto skew = generator_concavity_criterion(ComplexMatrix(CMatrix(g - g.adjoint())));
  CHECK(skew.holds);
  CHECK(std::abs(skew.margin) <= 1e-12);

  const auto neg = generator_concavity_criterion(ComplexMatrix(CMatrix::Constant(1, 1, -1.0)));
  CHECK_FALSE(neg.holds);
  CHECK(neg.margin == doctest::Approx(2.0));

  CMatrix n = CMatrix::Zero(2, 2);
  n(0, 1) = 1.0;
  const auto nil = generator_concavity_criterion(ComplexMatrix(n));
  CHECK_FALSE(nil.holds);
  CHECK(nil.margin == doctest::Approx(1.0));
}

TEST_CASE("concave power growth examples") {
  std::mt19937_64 rng(2);
  const auto u = dense(testing::random_unitary(4, rng));
  const auto x = testing::random_support(3, 4, rng);
  CHECK(concave_power_growth_check(u, x, 30, 1e-10).holds);

  const auto dir = StructuredOperator::shift(WeightedShift::dirichlet());
  const auto r = concave_power_growth_check(dir, FiniteSupportVector::basis(0, std::nullopt), 40, 1e-12);
  CHECK(r.holds);
  CHECK(std::abs(r.worst_excess) <= 1e-12);

  const auto iso = StructuredOperator::shift(WeightedShift::isometric());
  CHECK(concave_power_growth_check(iso, testing::random_support(5, std::nullopt, rng), 20, 1e-12).holds);

  CHECK_THROWS_AS(concave_power_growth_check(dense(CMatrix::Constant(1, 1, 0.5)),
                                             FiniteSupportVector::basis(0, 1), 5, 0.0),
                  Error);
}

TEST_CASE("concave flag is consistent with sampling") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> nd;
  int concave_seen = 0;
  for (int trial = 0; trial < 30; ++trial) {
    // Mix random matrices with unitaries so both outcomes occur.
    const CMatrix t = trial % 3 == 0 ? testing::random_unitary(6, rng)
                                     : CMatrix(testing::random_matrix(6, rng) * 0.4);
    const auto c = classify_operator(dense(t));
    // Direct spectral test of the defect as the oracle for the flag.
    Eigen::SelfAdjointEigenSolver<CMatrix> es(defect(t));
    CHECK(c.concave == (es.eigenvalues().maxCoeff() <= 1e-10));
    if (!c.concave) continue;
    ++concave_seen;
    double worst = 1e300;
    for (int s = 0; s < 10000; ++s) {
      CVector x(6);
      for (int i = 0; i < 6; ++i) {
        const double re = nd(rng);
        x(i) = Complex(re, nd(rng));
      }
      x /= x.norm();
      const double v = 2.0 * (t * x).squaredNorm() - (t * t * x).squaredNorm() - 1.0;
      worst = std::min(worst, v);
    }
    CHECK(worst >= -1e-10);
  }
  CHECK(concave_seen > 0);
}

TEST_CASE("two-isometry is the intersection of the other two classes") {
  std::mt19937_64 rng(31);
  std::vector<StructuredOperator> ops = {
      StructuredOperator::shift(WeightedShift::dirichlet()),
      StructuredOperator::shift(WeightedShift::isometric()),
      StructuredOperator::shift(WeightedShift({2.0}, 1.0)),
      StructuredOperator::shift(WeightedShift({0.5, 0.7}, 1.0)),
      dense(testing::random_unitary(3, rng)),
      dense(CMatrix(testing::random_matrix(3, rng))),
  };
  for (const auto& t : ops) {
    const auto c = classify_operator(t);
    CHECK(c.two_isometry == (c.concave && c.two_contraction));
  }
}

TEST_CASE("finite rigidity") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix t = trial % 2 ? testing::random_unitary(5, rng)
                                : CMatrix(testing::random_matrix(5, rng) * 0.5);
    const auto c = classify_operator(dense(t));
    if (c.concave && c.bounded_below) {
      CHECK((t.adjoint() * t - CMatrix::Identity(5, 5)).norm() <= 1e-8);
    }
    CHECK(finite_rigidity_check(ComplexMatrix(t)).passed);
  }
}

TEST_CASE("finite purity is nilpotency") {
  CMatrix j = CMatrix::Zero(3, 3);
  j(1, 0) = 1.0;
  j(2, 1) = 1.0;
  const auto c = classify_operator(dense(j));
  CHECK(c.pure);
  CHECK_FALSE(c.bounded_below);
  const auto p = stabilized_power_range(ComplexMatrix(j), 5);
  CHECK(p.stabilized);
  CHECK(p.dims.back() == 0);
  std::mt19937_64 rng(3);
  CHECK_FALSE(classify_operator(dense(testing::random_unitary(3, rng))).pure);
}
