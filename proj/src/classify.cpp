#include "opkit/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opkit {

namespace {

// Squared weight without the square root, so the ratio tail stays rational.
double weight_squared(const WeightedShift& w, std::size_t k) {
  if (k < w.head_weights().size() || !w.tail_ratio()) {
    const double wk = w.weight(k);
    return wk * wk;
  }
  const double c2 = w.tail_weight() * w.tail_weight();
  const double kk = static_cast<double>(k);
  return c2 * (kk + w.tail_ratio()->num_offset) / (kk + w.tail_ratio()->den_offset);
}

// In the ratio tail the defect is N(k)/D(k) with
//   D(k) = (k+q)(k+q+1),
//   N(k) = c^4 (k+p)(k+p+1) - 2c^2 (k+p)(k+q+1) + (k+q)(k+q+1).
struct TailRational {
  double n2, n1, n0;  // N(k) = n2 k^2 + n1 k + n0
  double d1, d0;      // D(k) = k^2 + d1 k + d0

  double value(double k) const {
    return ((n2 * k + n1) * k + n0) / ((k + d1) * k + d0);
  }
};

TailRational tail_rational(const WeightedShift& w) {
  const double c2 = w.tail_weight() * w.tail_weight();
  const double c4 = c2 * c2;
  const double p = w.tail_ratio()->num_offset;
  const double q = w.tail_ratio()->den_offset;
  return {c4 - 2.0 * c2 + 1.0,
          c4 * (2.0 * p + 1.0) - 2.0 * c2 * (p + q + 1.0) + (2.0 * q + 1.0),
          c4 * p * (p + 1.0) - 2.0 * c2 * p * (q + 1.0) + q * (q + 1.0),
          2.0 * q + 1.0,
          q * (q + 1.0)};
}

struct DefectRange {
  double lo;
  double hi;
};

// Extremes of d_k over all k >= 0. Head indices are enumerated; the tail is
// either constant, (c^2-1)^2, or a rational function whose extremes over the
// integers sit at the first tail index, next to a critical point, or at the
// limit.
DefectRange shift_defect_range(const WeightedShift& w) {
  const std::size_t m = w.head_weights().size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  auto take = [&](double d) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  };
  for (std::size_t k = 0; k <= m + 1; ++k) {
    take(shift_defect(w, k));
  }
  if (w.tail_ratio()) {
    const TailRational r = tail_rational(w);
    const double limit = r.n2;  // leading coefficient ratio, D is monic
    take(limit);
    // Critical points: roots of N'D - ND' = a k^2 + b k + c.
    const double a = r.n2 * r.d1 - r.n1;
    const double b = 2.0 * (r.n2 * r.d0 - r.n0);
    const double c = r.n1 * r.d0 - r.n0 * r.d1;
    std::vector<double> roots;
    if (a != 0.0) {
      const double disc = b * b - 4.0 * a * c;
      if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        roots.push_back((-b - s) / (2.0 * a));
        roots.push_back((-b + s) / (2.0 * a));
      }
    } else if (b != 0.0) {
      roots.push_back(-c / b);
    }
    for (double x : roots) {
      if (!std::isfinite(x) || x < static_cast<double>(m) || x > 1e15) {
        continue;
      }
      const auto kf = static_cast<std::size_t>(std::floor(x));
      take(shift_defect(w, kf));
      take(shift_defect(w, kf + 1));
    }
  }
  return {lo, hi};
}

ClassificationReport classify_dense(const ComplexMatrix& t, const ToleranceConfig& tol) {
  ClassificationReport r;
  const CMatrix& a = t.eigen();
  const auto n = static_cast<Eigen::Index>(t.dim());

  const auto sv = singular_values(a);
  r.bounded_below_margin = sv.back();
  r.bounded_below = sv.front() > 0.0 && sv.back() > tol.rank_tol * sv.front();

  const CMatrix a2 = a * a;
  const ComplexMatrix defect(a2.adjoint() * a2 - 2.0 * a.adjoint() * a +
                             CMatrix::Identity(n, n));
  const auto ev = hermitian_eigenvalues(defect);
  r.min_defect = ev.front();
  r.max_defect = ev.back();

  const PowerRange pr = stabilized_power_range(t, t.dim() + 1, tol);
  r.pure = pr.basis.cols() == 0;
  r.pure_method = "nilpotency";

  const CMatrix e = cokernel_basis(a, tol);
  CMatrix krylov(n, e.cols() * n);
  CMatrix block = e;
  for (Eigen::Index k = 0; k < n; ++k) {
    krylov.middleCols(k * e.cols(), e.cols()) = block;
    block = a * block;
  }
  r.wandering = e.cols() > 0 &&
                rank(krylov, tol) == static_cast<std::size_t>(n);
  r.wandering_method = "krylov_span";
  return r;
}

ClassificationReport classify_shift(const WeightedShift& w) {
  ClassificationReport r;
  r.bounded_below = true;
  r.bounded_below_margin = w.inf_weight();
  const DefectRange d = shift_defect_range(w);
  r.min_defect = d.lo;
  r.max_defect = d.hi;
  r.pure = true;
  r.pure_method = "shift_closed_form";
  r.wandering = true;
  r.wandering_method = "shift_closed_form";
  return r;
}

void finish(ClassificationReport& r, const ToleranceConfig& tol) {
  r.concave = r.max_defect <= tol.psd_tol;
  r.two_contraction = r.min_defect >= -tol.psd_tol;
  r.two_isometry = r.concave && r.two_contraction;
  r.defect_norm = std::max(std::abs(r.max_defect), std::abs(r.min_defect));
}

}  // namespace

double shift_defect(const WeightedShift& w, std::size_t k) {
  if (w.tail_ratio() && k >= w.head_weights().size()) {
    return tail_rational(w).value(static_cast<double>(k));
  }
  const double a = weight_squared(w, k);
  return a * weight_squared(w, k + 1) - 2.0 * a + 1.0;
}

PowerRange stabilized_power_range(const ComplexMatrix& t, std::size_t max_steps,
                                  const ToleranceConfig& tol) {
  PowerRange out;
  const CMatrix& a = t.eigen();
  const double scale = singular_values(a).front();
  out.basis = CMatrix::Identity(a.rows(), a.cols());
  std::size_t prev = t.dim();
  for (std::size_t step = 0; step < max_steps; ++step) {
    std::size_t dim = 0;
    CMatrix next(a.rows(), 0);
    if (scale > 0.0 && out.basis.cols() > 0) {
      const CMatrix image = a * out.basis;
      Eigen::JacobiSVD<CMatrix> svd(image, Eigen::ComputeThinU);
      const auto& s = svd.singularValues();
      while (static_cast<Eigen::Index>(dim) < s.size() &&
             s(static_cast<Eigen::Index>(dim)) > tol.rank_tol * scale) {
        ++dim;
      }
      next = svd.matrixU().leftCols(static_cast<Eigen::Index>(dim));
    }
    out.basis = std::move(next);
    out.dims.push_back(dim);
    if (dim == prev) {
      out.stabilized = true;
      break;
    }
    prev = dim;
  }
  return out;
}

ClassificationReport classify_operator(const StructuredOperator& t, const ToleranceConfig& tol) {
  ClassificationReport r;
  switch (t.kind()) {
    case StructuredOperator::Kind::Dense:
      r = classify_dense(t.matrix(), tol);
      break;
    case StructuredOperator::Kind::Shift:
      r = classify_shift(t.weights());
      break;
    case StructuredOperator::Kind::DirectSum: {
      r.bounded_below = true;
      r.bounded_below_margin = std::numeric_limits<double>::infinity();
      r.max_defect = -std::numeric_limits<double>::infinity();
      r.min_defect = std::numeric_limits<double>::infinity();
      r.pure = true;
      r.wandering = true;
      r.pure_method = "direct_sum";
      r.wandering_method = "direct_sum";
      for (const auto& p : t.parts()) {
        const ClassificationReport c = classify_operator(p, tol);
        r.bounded_below = r.bounded_below && c.bounded_below;
        r.bounded_below_margin = std::min(r.bounded_below_margin, c.bounded_below_margin);
        r.max_defect = std::max(r.max_defect, c.max_defect);
        r.min_defect = std::min(r.min_defect, c.min_defect);
        r.pure = r.pure && c.pure;
        r.wandering = r.wandering && c.wandering;
      }
      break;
    }
  }
  finish(r, tol);
  return r;
}

CriterionResult generator_concavity_criterion(const ComplexMatrix& a, const ToleranceConfig& tol) {
  const CMatrix& m = a.eigen();
  const CMatrix a2 = m * m;
  const ComplexMatrix form(0.5 * (a2 + a2.adjoint()) + m.adjoint() * m);
  CriterionResult r;
  r.margin = hermitian_max_eig(form);
  r.holds = r.margin <= tol.psd_tol;
  return r;
}

PowerGrowthResult concave_power_growth_check(const StructuredOperator& t,
                                             const FiniteSupportVector& x,
                                             std::size_t max_power, double slack,
                                             const ToleranceConfig& tol) {
  if (!classify_operator(t, tol).concave) {
    throw Error(ErrorCode::NotConcave, "power growth bound requires a concave operator");
  }
  const double x2 = x.norm() * x.norm();
  FiniteSupportVector y = apply(t, x);
  const double tx2 = y.norm() * y.norm();
  PowerGrowthResult r;
  r.worst_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n <= max_power; ++n) {
    if (n > 1) {
      y = apply(t, y);
    }
    const double lhs = y.norm() * y.norm();
    const double rhs = x2 + static_cast<double>(n) * (tx2 - x2);
    r.worst_excess = std::max(r.worst_excess, lhs - rhs);
  }
  r.holds = max_power == 0 || r.worst_excess <= slack;
  if (max_power == 0) {
    r.worst_excess = 0.0;
  }
  return r;
}

}  // namespace opkit
