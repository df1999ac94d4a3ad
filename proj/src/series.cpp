#include "opkit/series.hpp"

#include <algorithm>
#include <cmath>

namespace opkit {

PowerSeries::PowerSeries(std::vector<Complex> coeffs, bool truncated)
    : coeffs_(std::move(coeffs)), truncated_(truncated) {
  if (coeffs_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "power series needs at least one coefficient");
  }
  for (const Complex& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(ErrorCode::NonFinite, "power series coefficient is not finite");
    }
  }
}

PowerSeries PowerSeries::constant(Complex c, std::size_t order) {
  std::vector<Complex> v(order + 1);
  v[0] = c;
  return PowerSeries(std::move(v));
}

PowerSeries PowerSeries::monomial(std::size_t degree, std::size_t order) {
  std::vector<Complex> v(order + 1);
  const bool fits = degree <= order;
  if (fits) {
    v[degree] = 1.0;
  }
  return PowerSeries(std::move(v), !fits);
}

Complex PowerSeries::eval(Complex z) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * z + *it;
  }
  return acc;
}

PowerSeries PowerSeries::with_order(std::size_t order) const {
  std::vector<Complex> v(order + 1);
  bool dropped = truncated_;
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    if (n <= order) {
      v[n] = coeffs_[n];
    } else if (coeffs_[n] != Complex{}) {
      dropped = true;
    }
  }
  return PowerSeries(std::move(v), dropped);
}

PowerSeries series_add(const PowerSeries& f, const PowerSeries& g) {
  const std::size_t n = std::min(f.order(), g.order());
  std::vector<Complex> v(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    v[k] = f[k] + g[k];
  }
  return PowerSeries(std::move(v), f.truncated() || g.truncated());
}

PowerSeries series_scale(Complex s, const PowerSeries& f) {
  std::vector<Complex> v = f.coeffs();
  for (Complex& c : v) {
    c *= s;
  }
  return PowerSeries(std::move(v), f.truncated());
}

namespace {

// Degree of the last nonzero coefficient, or 0.
std::size_t effective_degree(const PowerSeries& f) {
  for (std::size_t n = f.order(); n > 0; --n) {
    if (f[n] != Complex{}) {
      return n;
    }
  }
  return 0;
}

}  // namespace

PowerSeries series_mul(const PowerSeries& f, const PowerSeries& g) {
  const std::size_t n = std::min(f.order(), g.order());
  std::vector<Complex> v(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    Complex acc{};
    for (std::size_t j = 0; j <= k; ++j) {
      acc += f[j] * g[k - j];
    }
    v[k] = acc;
  }
  const bool dropped = f.truncated() || g.truncated() ||
                       effective_degree(f) + effective_degree(g) > n;
  return PowerSeries(std::move(v), dropped);
}

PowerSeries series_inv(const PowerSeries& f) {
  if (f[0] == Complex{}) {
    throw Error(ErrorCode::ZeroConstantTerm, "cannot invert a series with zero constant term");
  }
  const std::size_t n = f.order();
  std::vector<Complex> g(n + 1);
  const Complex inv0 = 1.0 / f[0];
  g[0] = inv0;
  for (std::size_t k = 1; k <= n; ++k) {
    Complex acc{};
    for (std::size_t j = 1; j <= k; ++j) {
      acc += f[j] * g[k - j];
    }
    g[k] = -inv0 * acc;
  }
  return PowerSeries(std::move(g), f.truncated() || effective_degree(f) > 0);
}

PowerSeries series_exp(const PowerSeries& f) {
  const std::size_t n = f.order();
  std::vector<Complex> g(n + 1);
  g[0] = std::exp(f[0]);
  for (std::size_t k = 1; k <= n; ++k) {
    Complex acc{};
    for (std::size_t j = 1; j <= k; ++j) {
      acc += static_cast<double>(j) * f[j] * g[k - j];
    }
    g[k] = acc / static_cast<double>(k);
  }
  return PowerSeries(std::move(g), f.truncated() || effective_degree(f) > 0);
}

}  // namespace opkit
