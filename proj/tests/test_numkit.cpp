#include <doctest.h>

#include "opkit/error.hpp"
#include "opkit/numkit.hpp"
#include "test_support.hpp"

using namespace opkit;
using testing::random_matrix;

namespace {

ComplexMatrix diag(std::initializer_list<Complex> d) {
  std::vector<Complex> v(d);
  return ComplexMatrix::diagonal(v);
}

}  // namespace

TEST_CASE("hermitian_max_eig examples") {
  CHECK(hermitian_max_eig(ComplexMatrix::identity(3)) == doctest::Approx(1.0));
  CHECK(hermitian_max_eig(ComplexMatrix::zero(2)) == doctest::Approx(0.0));
  CHECK(hermitian_max_eig(diag({-2.0, 5.0})) == doctest::Approx(5.0));
}

TEST_CASE("hermitian_max_eig agrees with Rayleigh sampling") {
  std::mt19937_64 rng(11);
  const CMatrix b = random_matrix(5, rng);
  const ComplexMatrix h(0.5 * (b + b.adjoint()));
  const double top = hermitian_max_eig(h);
  std::normal_distribution<double> nd;
  double best = -1e300;
  for (int s = 0; s < 10000; ++s) {
    CVector v(5);
    for (int i = 0; i < 5; ++i) {
      const double re = nd(rng);
      v(i) = Complex(re, nd(rng));
    }
    v /= v.norm();
    best = std::max(best, v.dot(h.eigen() * v).real());
  }
  CHECK(best <= top + 1e-12);
  CHECK(top - best <= 0.5);  // sampling approaches the top from below
  // Exact maximizer: the top eigenvector.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.eigen());
  CHECK(std::abs(es.eigenvalues()(4) - top) <= 1e-12);
}

TEST_CASE("expm examples") {
  CHECK(expm(ComplexMatrix::zero(3)) == ComplexMatrix::identity(3));
  CHECK(std::abs(expm(diag({std::log(2.0)}))(0, 0) - 2.0) <= 1e-14);
  CMatrix n = CMatrix::Zero(2, 2);
  n(0, 1) = 1.0;
  const auto e = expm(ComplexMatrix(n));
  CHECK(std::abs(e(0, 0) - 1.0) <= 1e-15);
  CHECK(std::abs(e(0, 1) - 1.0) <= 1e-15);
  CHECK(std::abs(e(1, 0)) <= 1e-15);
  CHECK(std::abs(e(1, 1) - 1.0) <= 1e-15);
}

TEST_CASE("expm matches scaled Taylor oracle") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix m = random_matrix(6, rng) * (0.3 + trial * 0.4);
    const CMatrix ref = testing::taylor_expm(m);
    const double err = (expm(ComplexMatrix(m)).eigen() - ref).norm() / ref.norm();
    CHECK(err <= 1e-11);
  }
}

TEST_CASE("expm similarity and semigroup law") {
  std::mt19937_64 rng(5);
  const ToleranceConfig tol;
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix m = random_matrix(5, rng) * 0.5;
    CMatrix s = random_matrix(5, rng) + 4.0 * CMatrix::Identity(5, 5);
    const auto sv = singular_values(s);
    if (sv.front() / sv.back() > 100.0) continue;
    const CMatrix sinv = s.inverse();
    const CMatrix lhs = expm(ComplexMatrix(s * m * sinv)).eigen();
    const CMatrix rhs = s * expm(ComplexMatrix(m)).eigen() * sinv;
    CHECK((lhs - rhs).norm() / rhs.norm() <= tol.residual_tol);

    const CMatrix sum = expm(ComplexMatrix(0.7 * m)).eigen();
    const CMatrix prod = (expm(ComplexMatrix(0.3 * m)) * expm(ComplexMatrix(0.4 * m))).eigen();
    CHECK((sum - prod).norm() / sum.norm() <= tol.residual_tol);
  }
}

TEST_CASE("solve") {
  const CVector v = CVector::Constant(3, Complex(1.0, 2.0));
  CHECK((solve(ComplexMatrix::identity(3), v) - v).norm() == 0.0);
  CVector rhs(2);
  rhs << 2.0, 4.0;
  const CVector x = solve(diag({2.0, 4.0}), rhs);
  CHECK(std::abs(x(0) - 1.0) <= 1e-15);
  CHECK(std::abs(x(1) - 1.0) <= 1e-15);

  std::mt19937_64 rng(8);
  const CMatrix m = random_matrix(8, rng) + 6.0 * CMatrix::Identity(8, 8);
  const CVector x0 = random_matrix(8, rng).col(0);
  CHECK((solve(ComplexMatrix(m), CVector(m * x0)) - x0).norm() <= 1e-10);

  CHECK_THROWS_AS(solve(ComplexMatrix::zero(2), rhs), Error);
}

TEST_CASE("rank") {
  CHECK(rank(ComplexMatrix::identity(4)) == 4);
  CHECK(rank(ComplexMatrix::zero(3)) == 0);
  std::mt19937_64 rng(1);
  const CMatrix u = random_matrix(5, rng).col(0);
  const CMatrix v = random_matrix(5, rng).col(0);
  const CMatrix outer = u * v.adjoint();
  CHECK(rank(outer) == 1);
  // Invariance under unitary multiplication; relative cutoff survives scaling.
  const CMatrix low = random_matrix(6, rng).leftCols(3) * random_matrix(6, rng).topRows(3);
  const CMatrix q1 = testing::random_unitary(6, rng);
  const CMatrix q2 = testing::random_unitary(6, rng);
  CHECK(rank(low) == 3);
  CHECK(rank(CMatrix(q1 * low * q2)) == 3);
  CHECK(rank(CMatrix(1e-8 * low)) == 3);
}

TEST_CASE("orthonormal_range_basis") {
  const auto id = orthonormal_range_basis(ComplexMatrix::identity(3));
  CHECK(id.size() == 3);
  CHECK(orthonormal_range_basis(ComplexMatrix::zero(3)).empty());
  CMatrix ones = CMatrix::Ones(2, 2);
  const auto b = orthonormal_range_basis(ComplexMatrix(ones));
  REQUIRE(b.size() == 1);
  CHECK(std::abs(b[0].norm() - 1.0) <= 1e-14);
  CHECK(std::abs(std::abs(b[0](0)) - std::sqrt(0.5)) <= 1e-14);
  CHECK(std::abs(b[0](0) - b[0](1)) <= 1e-14);
}

TEST_CASE("ComplexMatrix invariants") {
  std::mt19937_64 rng(2);
  const ComplexMatrix m(random_matrix(4, rng));
  CHECK(m.adjoint().adjoint() == m);
  CMatrix bad = CMatrix::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(ComplexMatrix{bad}, Error);
  CHECK_THROWS_AS(ComplexMatrix{CMatrix(2, 3)}, Error);
}

TEST_CASE("tolerance validation") {
  ToleranceConfig t;
  t.psd_tol = -1.0;
  CHECK_THROWS_AS(t.validate(), Error);
}

TEST_CASE("spectral radius and eigenvalues") {
  CHECK(spectral_radius(diag({3.0, -5.0})) == doctest::Approx(5.0));
  CMatrix rot(2, 2);
  rot << 0.0, -1.0, 1.0, 0.0;
  const auto ev = eigenvalues(ComplexMatrix(rot));
  REQUIRE(ev.size() == 2);
  for (auto l : ev) CHECK(std::abs(std::abs(l.imag()) - 1.0) <= 1e-14);
}
