#pragma once

// Truncated Taylor series over C. A series of order N holds the
// coefficients of z^0 .. z^N; arithmetic never invents coefficients beyond
// the declared order and flags results whose dropped terms were nonzero.

#include <cstddef>
#include <vector>

#include "opkit/numkit.hpp"

namespace opkit {

class PowerSeries {
 public:
  explicit PowerSeries(std::vector<Complex> coeffs, bool truncated = false);

  static PowerSeries constant(Complex c, std::size_t order);
  static PowerSeries monomial(std::size_t degree, std::size_t order);

  std::size_t order() const { return coeffs_.size() - 1; }
  /// Coefficient of z^n; zero past the declared order.
  Complex operator[](std::size_t n) const { return n < coeffs_.size() ? coeffs_[n] : Complex{}; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  bool truncated() const { return truncated_; }

  Complex eval(Complex z) const;
  /// Cut or zero-pad to a new order.
  PowerSeries with_order(std::size_t order) const;

 private:
  std::vector<Complex> coeffs_;
  bool truncated_ = false;
};

PowerSeries series_add(const PowerSeries& f, const PowerSeries& g);
PowerSeries series_scale(Complex s, const PowerSeries& f);
/// Cauchy product through min(order f, order g).
PowerSeries series_mul(const PowerSeries& f, const PowerSeries& g);
/// 1/f through order f. Throws ZeroConstantTerm when f(0) = 0.
PowerSeries series_inv(const PowerSeries& f);
/// exp(f) through order f from the recurrence n g_n = sum_k k f_k g_{n-k}.
PowerSeries series_exp(const PowerSeries& f);

}  // namespace opkit
