#include <doctest.h>

#include "opkit/classify.hpp"
#include "opkit/error.hpp"
#include "opkit/semigroup.hpp"
#include "test_support.hpp"

using namespace opkit;

namespace {

SemigroupSpec spec(const CMatrix& a) { return {ComplexMatrix(a), "test"}; }

CMatrix diag(std::initializer_list<double> d) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double v : d) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

CMatrix skew(Eigen::Index n, std::mt19937_64& rng) {
  const CMatrix g = testing::random_matrix(n, rng);
  return 0.5 * (g - g.adjoint());
}

}  // namespace

TEST_CASE("evolve examples") {
  std::mt19937_64 rng(1);
  const auto s = spec(testing::random_matrix(3, rng));
  CHECK(evolve(s, 0.0) == ComplexMatrix::identity(3));
  CHECK(std::abs(evolve(spec(diag({-1.0})), std::log(2.0))(0, 0) - 0.5) <= 1e-15);
  // Oracle: scaled Taylor.
  const CMatrix ref = testing::taylor_expm(1.3 * s.generator.eigen());
  CHECK((evolve(s, 1.3).eigen() - ref).norm() <= 1e-11 * ref.norm());
}

TEST_CASE("cogenerator examples") {
  CHECK((cogenerator(spec(CMatrix::Zero(2, 2))).eigen() + CMatrix::Identity(2, 2)).norm() <= 1e-15);
  CHECK(std::abs(cogenerator(spec(diag({-1.0})))(0, 0)) <= 1e-15);
  std::mt19937_64 rng(2);
  const CMatrix v = cogenerator(spec(skew(5, rng))).eigen();
  CHECK((v.adjoint() * v - CMatrix::Identity(5, 5)).norm() <= 1e-10);
  CHECK_THROWS_AS(cogenerator(spec(diag({1.0, -2.0}))), Error);
}

TEST_CASE("inverse_cayley examples") {
  CHECK((inverse_cayley(ComplexMatrix::zero(2)).eigen() + CMatrix::Identity(2, 2)).norm() <= 1e-15);
  CHECK(inverse_cayley(ComplexMatrix(CMatrix(-CMatrix::Identity(2, 2)))).eigen().norm() <= 1e-15);
  CHECK_THROWS_AS(inverse_cayley(ComplexMatrix::identity(2)), Error);
}

TEST_CASE("Cayley round trip") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = skew(4, rng) - 0.5 * CMatrix::Identity(4, 4);
    const CMatrix back = inverse_cayley(cogenerator(spec(a))).eigen();
    CHECK((back - a).norm() <= 1e-10);
  }
}

TEST_CASE("growth bound examples") {
  CHECK(growth_bound(spec(diag({-2.0, -3.0}))).omega == doctest::Approx(-2.0));
  std::mt19937_64 rng(4);
  CHECK(std::abs(growth_bound(spec(skew(4, rng))).omega) <= 1e-12);
  CHECK(growth_bound(spec(diag({1.0}))).omega == doctest::Approx(1.0));
  const auto s = spec(testing::random_matrix(4, rng));
  const auto g = growth_bound(s);
  for (double t : {0.5, 1.0, 2.0}) {
    CHECK(growth_bound_consistency(s, g, t) <= 1e-8);
  }
}

TEST_CASE("quasicontractive rescale") {
  std::mt19937_64 rng(5);
  const auto s = spec(testing::random_matrix(3, rng));
  CHECK(quasicontractive_rescale(s, 0.0).generator == s.generator);
  const auto one = quasicontractive_rescale(spec(diag({1.0})), 1.0);
  CHECK(evolve(one, 2.0).spectral_norm() == doctest::Approx(1.0));
  const auto r = quasicontractive_rescale(spec(diag({2.0, -1.0})), 3.0);
  for (double t : {0.1, 0.5, 1.0, 3.0}) {
    CHECK(evolve(r, t).spectral_norm() <= std::exp(-t) * (1 + 1e-12));
  }
}

TEST_CASE("equivalence suite examples") {
  std::mt19937_64 rng(6);
  const auto sk = concavity_equivalence_suite(spec(skew(4, rng)), 8);
  CHECK(sk.every_member_concave);
  CHECK(sk.norm_squared_concave);
  CHECK(sk.generator_criterion);
  CHECK(sk.cogenerator_concave);
  CHECK(sk.agree);

  const auto id = concavity_equivalence_suite(spec(CMatrix::Identity(3, 3)), 8);
  CHECK_FALSE(id.every_member_concave);
  CHECK_FALSE(id.norm_squared_concave);
  CHECK_FALSE(id.generator_criterion);
  // (A^2 + A*^2)/2 + A*A = 2I.
  CHECK(id.generator_margin == doctest::Approx(2.0));
  CHECK_FALSE(id.cogenerator_exists);
  CHECK_FALSE(id.cogenerator_concave);
  CHECK(id.agree);

  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix b = testing::random_matrix(4, rng);
    const CMatrix a = -(b.adjoint() * b + CMatrix::Identity(4, 4));
    const auto r = concavity_equivalence_suite(spec(a), 8);
    CHECK(r.agree);
    CHECK(r.generator_criterion == generator_concavity_criterion(ComplexMatrix(a)).holds);
  }
}

TEST_CASE("similarity exponential") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix a = testing::random_matrix(4, rng) * 0.5;
    const CMatrix r = testing::random_matrix(4, rng) + 3.0 * CMatrix::Identity(4, 4);
    const double mu = 0.25 * trial;
    const CMatrix rinv = r.inverse();
    const auto lhs = evolve(spec(mu * r * a * rinv), 0.8).eigen();
    const CMatrix rhs = r * evolve(spec(a), mu * 0.8).eigen() * rinv;
    CHECK((lhs - rhs).norm() <= 1e-9 * std::max(1.0, rhs.norm()));
  }
}

TEST_CASE("cogenerator commutes with the semigroup") {
  std::mt19937_64 rng(8);
  const auto s = spec(testing::random_matrix(4, rng) - 3.0 * CMatrix::Identity(4, 4));
  const CMatrix v = cogenerator(s).eigen();
  for (double t = 0.1; t <= 2.0; t += 0.3) {
    const CMatrix tt = evolve(s, t).eigen();
    CHECK((v * tt - tt * v).norm() <= 1e-9);
  }
}

TEST_CASE("criterion implies contractive cogenerator and nonpositive growth") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix b = testing::random_matrix(4, rng);
    const CMatrix a = trial % 2 ? CMatrix(skew(4, rng)) : CMatrix(-(b.adjoint() * b) + skew(4, rng));
    const auto s = spec(a);
    if (generator_concavity_criterion(s.generator).holds) {
      CHECK(cogenerator(s).spectral_norm() <= 1.0 + 1e-8);
    }
    const auto r = concavity_equivalence_suite(s, 8);
    if (r.agree && r.generator_criterion) {
      CHECK(growth_bound(s).omega <= 1e-10);
    }
  }
}
