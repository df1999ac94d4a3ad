#include <doctest.h>

#include "opkit/error.hpp"
#include "opkit/hardy.hpp"
#include "opkit/series.hpp"
#include "opkit/shimorin.hpp"
#include "test_support.hpp"

using namespace opkit;

namespace {

PowerSeries poly(std::vector<Complex> c) { return PowerSeries(std::move(c)); }

double max_diff(const PowerSeries& f, const std::vector<Complex>& g, std::size_t upto) {
  double m = 0.0;
  for (std::size_t k = 0; k <= upto; ++k) m = std::max(m, std::abs(f[k] - g[k]));
  return m;
}

}  // namespace

TEST_CASE("series arithmetic examples") {
  const auto z = PowerSeries::constant(0.0, 10);
  const auto ez = series_exp(z);
  CHECK(ez[0] == Complex(1.0));
  for (std::size_t k = 1; k <= 10; ++k) CHECK(ez[k] == Complex(0.0));

  std::vector<Complex> one_minus_z(11, 0.0);
  one_minus_z[0] = 1.0;
  one_minus_z[1] = -1.0;
  const PowerSeries f(one_minus_z);
  const auto inv = series_inv(f);
  for (std::size_t k = 0; k <= 10; ++k) CHECK(std::abs(inv[k] - 1.0) <= 1e-15);

  const PowerSeries ones(std::vector<Complex>(11, 1.0), true);
  const auto prod = series_mul(f, ones);
  CHECK(std::abs(prod[0] - 1.0) <= 1e-15);
  for (std::size_t k = 1; k <= 10; ++k) CHECK(std::abs(prod[k]) <= 1e-15);

  CHECK_THROWS_AS(series_inv(PowerSeries::monomial(1, 4)), Error);
}

TEST_CASE("series_exp matches sampled exponential") {
  const PowerSeries f(std::vector<Complex>{0.3, Complex(0.2, -0.1), 0.05, 0.0, 0.0, 0.0, 0.0,
                                           0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
  const auto g = series_exp(f);
  const auto ref = testing::dft_coefficients([&](Complex z) { return std::exp(f.eval(z)); }, 15, 256);
  CHECK(max_diff(g, ref, 15) <= 1e-14);
}

TEST_CASE("blaschke examples") {
  BlaschkeSpec zero{{0.0}};
  const auto bz = blaschke_series(zero, 6);
  CHECK(bz[0] == Complex(0.0));
  CHECK(bz[1] == Complex(1.0));
  for (std::size_t k = 2; k <= 6; ++k) CHECK(bz[k] == Complex(0.0));

  BlaschkeSpec half{{0.5}};
  const auto b = blaschke_series(half, 40);
  CHECK(std::abs(b[0] - 0.5) <= 1e-15);
  CHECK(std::abs(b[1] + 0.75) <= 1e-15);
  CHECK(std::abs(b[2] + 0.375) <= 1e-15);

  CHECK_THROWS_AS(BlaschkeSpec{{1.0}}.validate(), Error);
  CHECK_THROWS_AS((BlaschkeSpec{{0.2}, 2.0}.validate()), Error);
}

TEST_CASE("blaschke series matches sampled rational function") {
  BlaschkeSpec b{{Complex(0.3, 0.2), Complex(-0.4, 0.1), 0.0}, std::polar(1.0, 0.7)};
  const auto s = blaschke_series(b, 60);
  const auto ref = testing::dft_coefficients([&](Complex z) { return blaschke_eval(b, z); }, 60);
  CHECK(max_diff(s, ref, 60) <= 1e-13);
  for (double th = 0.0; th < 6.28; th += 0.37) {
    CHECK(std::abs(std::abs(blaschke_eval(b, std::polar(1.0, th))) - 1.0) <= 1e-13);
  }
}

TEST_CASE("inner semigroup symbol") {
  const auto phi = blaschke_series({{0.5}}, 64);
  const auto e0 = inner_semigroup_symbol(phi, 0.0, 64);
  CHECK(std::abs(e0[0] - 1.0) <= 1e-15);
  for (std::size_t k = 1; k <= 64; ++k) CHECK(std::abs(e0[k]) <= 1e-15);

  // phi = z agrees with the model multiplier (independent code path).
  const auto z = PowerSeries::monomial(1, 128);
  for (double t : {0.25, 1.0, 2.5}) {
    const auto a = inner_semigroup_symbol(z, t, 128);
    const auto b = semigroup_multiplier(t, 128);
    double worst = 0.0;
    for (std::size_t k = 0; k <= 128; ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    CHECK(worst <= 1e-12);
  }
  CHECK_THROWS_AS(inner_semigroup_symbol(PowerSeries::constant(1.0, 8), 1.0, 8), Error);
  CHECK_THROWS_AS(inner_semigroup_symbol(z, -1.0, 8), Error);
}

TEST_CASE("inner check examples") {
  const auto z = PowerSeries::monomial(1, 64);
  const auto rz = inner_check(z, 64);
  REQUIRE(rz.circles.size() == 2);
  CHECK(rz.circles[0].max_modulus == doctest::Approx(rz.circles[0].radius));
  CHECK(rz.circles[1].max_modulus == doctest::Approx(rz.circles[1].radius));
  CHECK(rz.passed);

  const auto b = blaschke_series({{0.5}}, 4096);
  const auto rb = inner_check(b, 256);
  CHECK(rb.circles[1].max_modulus >= 0.97);
  CHECK(rb.passed);

  const auto e = semigroup_multiplier(1.0, 4096);
  const auto re = inner_check(e, 256);
  CHECK(re.max_modulus <= 1.0 + 1e-9);
  CHECK(re.bounded);

  // Not bounded by 1.
  CHECK_FALSE(inner_check(series_scale(2.0, z), 64).passed);
}

TEST_CASE("model space examples") {
  for (std::size_t d : {1u, 2u, 3u}) {
    const auto k = model_space_basis(PowerSeries::monomial(d, 31), 32, 1e-10);
    REQUIRE(k.cols() == static_cast<Eigen::Index>(d));
    // Span of 1..z^{d-1}: no mass past index d-1.
    CHECK(k.bottomRows(32 - d).norm() <= 1e-14);
  }
  const auto phi = blaschke_series({{0.5}}, 63);
  const auto k = model_space_basis(phi, 64, 1e-10);
  REQUIRE(k.cols() == 1);
  // Proportional to the coefficients of 1/(1 - 0.5 z).
  CVector ref(64);
  for (int i = 0; i < 64; ++i) ref(i) = std::pow(0.5, i);
  ref /= ref.norm();
  CHECK(std::abs(std::abs(ref.dot(k.col(0))) - 1.0) <= 1e-12);
  // Orthogonal to phi z^k for k <= n/2.
  for (std::size_t s = 0; s <= 32; ++s) {
    CVector v = CVector::Zero(64);
    for (std::size_t i = 0; i + s < 64; ++i) v(i + s) = phi[i];
    CHECK(std::abs(v.dot(k.col(0))) <= 1e-10);
  }

  const auto two = blaschke_series({{0.3, -0.4}}, 63);
  CHECK(model_space_basis(two, 64, 1e-10).cols() == 2);
  CHECK_THROWS_AS(model_space_basis(phi, 1, 1e-10), Error);
}

TEST_CASE("ladder decomposition") {
  const auto z = verify_ladder_decomposition(PowerSeries::monomial(1, 63), 3, 64, 1e-10);
  CHECK(z.passed);
  CHECK(z.off_block_max == 0.0);
  const auto b1 = verify_ladder_decomposition(blaschke_series({{0.5}}, 63), 4, 64, 1e-10);
  CHECK(b1.passed);
  CHECK(b1.off_block_max <= 1e-10);
  const auto b2 = verify_ladder_decomposition(blaschke_series({{0.3, -0.4}}, 63), 3, 64, 1e-10);
  CHECK(b2.passed);
  CHECK(b2.total_rank == 8);
  CHECK(b2.expected_total == 8);
  CHECK_THROWS_AS(verify_ladder_decomposition(blaschke_series({{0.3, -0.4}}, 15), 4, 16, 1e-10),
                  Error);
}

TEST_CASE("Toeplitz product identity for polynomial symbols") {
  const PowerSeries f = poly({1.0, Complex(0.5, 0.2), -0.3});
  const PowerSeries g = poly({0.2, 0.0, Complex(0.0, 1.0), 0.4});
  const std::size_t n = 12;
  const std::size_t deg = 3;
  const auto fg = series_mul(f.with_order(20), g.with_order(20));
  const CMatrix lhs = ToeplitzTrunc::analytic(fg, n).matrix().eigen();
  const CMatrix rhs =
      ToeplitzTrunc::analytic(f, n).matrix().eigen() * ToeplitzTrunc::analytic(g, n).matrix().eigen();
  // Analytic Toeplitz matrices are lower triangular, so the product is exact.
  CHECK((lhs - rhs).topLeftCorner(n - deg, n - deg).norm() <= 1e-15);
  CHECK((lhs - rhs).norm() <= 1e-15);
  const ToeplitzTrunc t({1.0, 2.0}, {3.0}, 4);
  CHECK(t.matrix()(0, 1) == Complex(3.0));
  CHECK(t.matrix()(1, 0) == Complex(2.0));
  CHECK((t.adjoint().matrix().eigen() - t.matrix().eigen().adjoint()).norm() == 0.0);
}

TEST_CASE("caradus examples") {
  const auto back = caradus_certificate(block_backward_shift(10, 1), 1e-10);
  CHECK(back.ker_dim == 1);
  CHECK(back.surjective);
  CHECK_FALSE(back.caveat.empty());

  const auto fwd = caradus_certificate(forward_shift(10), 1e-10);
  CHECK(fwd.ker_dim == 1);
  CHECK(fwd.rank == 9);
  CHECK_FALSE(fwd.surjective);
  CHECK(fwd.kernel_truncation_artifact);

  const auto blk = caradus_certificate(block_backward_shift(20, 4), 1e-10, 4);
  CHECK(blk.ker_dim == 4);
  CHECK(blk.surjective);
  CHECK(blk.kernel_matches_multiplicity);
}

TEST_CASE("caradus adjoint swaps roles") {
  for (std::size_t d : {1u, 2u, 3u}) {
    const CMatrix b = block_backward_shift(8 * d, d);
    const auto rb = caradus_certificate(b, 1e-10);
    const auto ra = caradus_certificate(CMatrix(b.adjoint()), 1e-10);
    CHECK(rb.surjective);
    CHECK_FALSE(ra.surjective);
    CHECK(ra.interior_ker_dim == 0);
    CHECK(rb.interior_ker_dim == d);
    CHECK(ra.interior_cokernel_dim == d);
  }
  CHECK_THROWS_AS(caradus_certificate(CMatrix::Constant(2, 2, std::nan("")), 1e-10), Error);
}

TEST_CASE("differentiation kernel scan") {
  const auto r = differentiation_kernel_scan(16, {0.0, 0.5, Complex(0.0, 1.0), -2.0}, 1e-10);
  CHECK(r.at_most_one);
  CHECK(r.ker_dims[0] == 1);
  CHECK(r.max_ker_dim == 1);
}

TEST_CASE("composition operator") {
  const auto id = composition_operator_trunc(0.0, 6);
  CHECK(id == ComplexMatrix::identity(6));
  const auto c = composition_operator_trunc(0.5, 8);
  CHECK(std::abs(c(0, 0) - 1.0) <= 1e-15);
  for (std::size_t i = 1; i < 8; ++i) CHECK(std::abs(c(i, 0)) <= 1e-15);
  CHECK(std::abs(c(0, 1) - 0.5) <= 1e-15);
  // Column 1 is phi itself: 0.5 + 0.75 z - 0.375 z^2 + ...
  CHECK(std::abs(c(1, 1) - 0.75) <= 1e-15);
  CHECK(std::abs(c(2, 1) + 0.375) <= 1e-15);
  CHECK_THROWS_AS(composition_operator_trunc(1.0, 4), Error);
}
