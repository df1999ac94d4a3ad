#include <doctest.h>

#include "opkit/error.hpp"
#include "opkit/operators.hpp"
#include "opkit/shimorin.hpp"
#include "test_support.hpp"

using namespace opkit;
using testing::dist;

namespace {

const auto e = [](std::size_t k, Ambient a = std::nullopt) {
  return FiniteSupportVector::basis(k, a);
};

StructuredOperator dense_diag(std::initializer_list<Complex> d) {
  std::vector<Complex> v(d);
  return StructuredOperator::dense(ComplexMatrix::diagonal(v));
}

}  // namespace

TEST_CASE("apply examples") {
  const auto iso = StructuredOperator::shift(WeightedShift::isometric());
  const auto dir = StructuredOperator::shift(WeightedShift::dirichlet());
  CHECK(dist(apply(iso, e(0)), e(1)) == 0.0);
  CHECK(dist(apply(dir, e(0)), std::sqrt(2.0) * e(1)) <= 1e-15);
  const auto id = StructuredOperator::dense(ComplexMatrix::identity(3));
  FiniteSupportVector v(3);
  v.set(0, {1, 2});
  v.set(2, {-1, 0.5});
  CHECK(dist(apply(id, v), v) == 0.0);
}

TEST_CASE("adjoint_apply examples") {
  const auto iso = StructuredOperator::shift(WeightedShift::isometric());
  const auto dir = StructuredOperator::shift(WeightedShift::dirichlet());
  CHECK(adjoint_apply(iso, e(0)).norm() == 0.0);
  CHECK(dist(adjoint_apply(iso, e(1)), e(0)) == 0.0);
  CHECK(dist(adjoint_apply(dir, e(1)), std::sqrt(2.0) * e(0)) <= 1e-15);
}

TEST_CASE("gram_apply_inverse examples") {
  std::mt19937_64 rng(4);
  const auto iso = StructuredOperator::shift(WeightedShift::isometric());
  const auto x = testing::random_support(6, std::nullopt, rng);
  CHECK(dist(gram_apply_inverse(iso, x), x) <= 1e-15);
  const auto dir = StructuredOperator::shift(WeightedShift::dirichlet());
  CHECK(dist(gram_apply_inverse(dir, e(0)), 0.5 * e(0)) <= 1e-15);
  CHECK(dist(gram_apply_inverse(dense_diag({2.0}), e(0, 1)), 0.25 * e(0, 1)) <= 1e-15);
}

TEST_CASE("spectral_radius_estimate examples") {
  CHECK(spectral_radius_estimate(StructuredOperator::shift(WeightedShift::isometric())) == 1.0);
  CHECK(spectral_radius_estimate(dense_diag({3.0, -5.0})) == doctest::Approx(5.0));
  const auto dual = cauchy_dual(StructuredOperator::shift(WeightedShift::dirichlet()));
  CHECK(spectral_radius_estimate(dual) == doctest::Approx(1.0));
}

TEST_CASE("adjoint identity on random vectors") {
  std::mt19937_64 rng(9);
  std::vector<StructuredOperator> ops = {
      StructuredOperator::shift(WeightedShift::isometric()),
      StructuredOperator::shift(WeightedShift::dirichlet()),
      StructuredOperator::shift(WeightedShift({2.0, 0.5, 1.5}, 1.2)),
  };
  for (const auto& t : ops) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = testing::random_support(7, std::nullopt, rng);
      const auto y = testing::random_support(9, std::nullopt, rng);
      const Complex lhs = inner(apply(t, x), y);
      const Complex rhs = inner(x, adjoint_apply(t, y));
      CHECK(std::abs(lhs - rhs) <= 1e-13 * (1.0 + std::abs(lhs)));
    }
  }
  const auto d = StructuredOperator::dense(ComplexMatrix(testing::random_matrix(5, rng)));
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = testing::random_support(4, 5, rng);
    const auto y = testing::random_support(4, 5, rng);
    CHECK(std::abs(inner(apply(d, x), y) - inner(x, adjoint_apply(d, y))) <= 1e-12);
  }
}

TEST_CASE("Cauchy dual is a left inverse") {
  std::mt19937_64 rng(6);
  for (const auto& w : {WeightedShift::isometric(), WeightedShift::dirichlet(),
                        WeightedShift({3.0, 0.25}, 2.0)}) {
    const auto t = StructuredOperator::shift(w);
    const auto dual = cauchy_dual(t);
    for (int trial = 0; trial < 10; ++trial) {
      const auto x = testing::random_support(8, std::nullopt, rng);
      CHECK(dist(adjoint_apply(dual, apply(t, x)), x) <= 1e-14 * x.norm());
      // Same thing routed through the Gram inverse.
      CHECK(dist(gram_apply_inverse(t, adjoint_apply(t, apply(t, x))), x) <= 1e-14 * x.norm());
    }
  }
}

TEST_CASE("direct sum acts blockwise") {
  std::mt19937_64 rng(12);
  const auto a = StructuredOperator::dense(ComplexMatrix(testing::random_matrix(2, rng)));
  const auto s1 = StructuredOperator::shift(WeightedShift::isometric());
  const auto s2 = StructuredOperator::shift(WeightedShift::dirichlet());
  const auto sum = StructuredOperator::direct_sum({a, s1, s2});
  CHECK_FALSE(sum.ambient().has_value());
  const auto x = testing::random_support(12, std::nullopt, rng);
  const auto pieces = sum.split(x);
  REQUIRE(pieces.size() == 3);
  const auto y = apply(sum, x);
  const auto expect = sum.merge({apply(a, pieces[0]), apply(s1, pieces[1]), apply(s2, pieces[2])});
  CHECK(dist(y, expect) <= 1e-15);
  CHECK(dist(sum.merge(pieces), x) == 0.0);
  // Finite block first, infinite parts interleaved.
  CHECK(sum.to_global(0, 1) == 1);
  CHECK(sum.to_global(1, 0) == 2);
  CHECK(sum.to_global(2, 0) == 3);
  CHECK(sum.to_global(1, 1) == 4);
}

TEST_CASE("ambient mismatch and dense conversion") {
  const auto d = dense_diag({1.0, 2.0});
  CHECK_THROWS_AS(apply(d, e(0, 3)), Error);
  try {
    apply(d, e(0, 3));
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::AmbientMismatch);
  }
  CHECK_THROWS_AS(to_dense(StructuredOperator::shift(WeightedShift::isometric())), Error);
  CHECK(is_finite(d));
  CHECK(is_shift_regime(StructuredOperator::shift(WeightedShift::dirichlet())));
}

TEST_CASE("weighted shift validation and weights") {
  CHECK_THROWS_AS(WeightedShift({1.0, 0.0}, 1.0), Error);
  CHECK_THROWS_AS(WeightedShift({}, -1.0), Error);
  const auto w = WeightedShift::dirichlet();
  for (std::size_t k = 0; k < 20; ++k) {
    CHECK(w.weight(k) == doctest::Approx(std::sqrt((k + 2.0) / (k + 1.0))).epsilon(1e-15));
    CHECK(w.beta(k) * w.beta(k) == doctest::Approx(k + 1.0).epsilon(1e-13));
  }
  CHECK(w.sup_weight() == doctest::Approx(std::sqrt(2.0)));
  CHECK(w.inf_weight() == doctest::Approx(1.0));
  const auto r = w.reciprocal();
  CHECK(r.weight(3) == doctest::Approx(std::sqrt(4.0 / 5.0)));
}
