#include "opkit/shimorin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opkit {

namespace {

constexpr std::size_t kMaxOrder = 10000;

// Smallest N with scale * q^{N+1} <= target, or TailNotConvergent past the cap.
std::size_t geometric_order(double q, double scale, double target) {
  if (q <= 0.0 || scale <= 0.0) {
    return 0;
  }
  const double n = std::ceil(std::log(target / scale) / std::log(q)) - 1.0;
  if (!std::isfinite(n) || n > static_cast<double>(kMaxOrder)) {
    throw Error(ErrorCode::TailNotConvergent, "truncation order would exceed 10^4");
  }
  return n < 0.0 ? 0 : static_cast<std::size_t>(n);
}

FiniteSupportVector embed(const StructuredOperator& t, std::size_t part,
                          const FiniteSupportVector& local) {
  std::vector<FiniteSupportVector> pieces;
  for (const auto& p : t.parts()) {
    pieces.emplace_back(p.ambient());
  }
  pieces[part] = local;
  return t.merge(pieces);
}

// Orthonormal basis of ker T* for a shift-regime operator.
std::vector<FiniteSupportVector> shift_defect_basis(const StructuredOperator& t) {
  if (t.kind() == StructuredOperator::Kind::Shift) {
    return {FiniteSupportVector::basis(0, t.ambient())};
  }
  std::vector<FiniteSupportVector> out;
  for (std::size_t i = 0; i < t.parts().size(); ++i) {
    for (const auto& e : shift_defect_basis(t.parts()[i])) {
      out.push_back(embed(t, i, e));
    }
  }
  return out;
}

double min_shift_weight(const StructuredOperator& t) {
  if (t.kind() == StructuredOperator::Kind::Shift) {
    return t.weights().inf_weight();
  }
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& p : t.parts()) {
    lo = std::min(lo, min_shift_weight(p));
  }
  return lo;
}

}  // namespace

StructuredOperator cauchy_dual(const StructuredOperator& t, const ToleranceConfig& tol) {
  switch (t.kind()) {
    case StructuredOperator::Kind::Shift:
      return StructuredOperator::shift(t.weights().reciprocal());
    case StructuredOperator::Kind::Dense: {
      const ComplexMatrix& m = t.matrix();
      const auto sv = singular_values(m.eigen());
      if (sv.front() == 0.0 || sv.back() < tol.rank_tol * sv.front()) {
        throw Error(ErrorCode::NotBoundedBelow, "Cauchy dual needs T bounded below");
      }
      const ComplexMatrix gram = m.adjoint() * m;
      return StructuredOperator::dense(m * solve(gram, ComplexMatrix::identity(m.dim()), tol));
    }
    case StructuredOperator::Kind::DirectSum: {
      std::vector<StructuredOperator> parts;
      for (const auto& p : t.parts()) {
        parts.push_back(cauchy_dual(p, tol));
      }
      return StructuredOperator::direct_sum(std::move(parts));
    }
  }
  return t;
}

FiniteSupportVector AnalyticModel::apply_l(const FiniteSupportVector& x) const {
  return adjoint_apply(dual_, x);
}

FiniteSupportVector AnalyticModel::apply_l_adjoint(const FiniteSupportVector& x) const {
  return apply(dual_, x);
}

FiniteSupportVector AnalyticModel::apply_p(const FiniteSupportVector& x) const {
  return x - apply(t_, apply_l(x));
}

CVector AnalyticModel::defect_coordinates(const FiniteSupportVector& x) const {
  CVector c(static_cast<Eigen::Index>(e_.size()));
  for (std::size_t i = 0; i < e_.size(); ++i) {
    c(static_cast<Eigen::Index>(i)) = inner(x, e_[i]);
  }
  return c;
}

double AnalyticModel::beta(std::size_t n) const {
  if (t_.kind() != StructuredOperator::Kind::Shift) {
    throw Error(ErrorCode::UnsupportedRegime, "beta is defined for a single weighted shift");
  }
  return t_.weights().beta(n);
}

AnalyticModel build_model(const StructuredOperator& t, const ToleranceConfig& tol) {
  tol.validate();
  const ClassificationReport c = classify_operator(t, tol);
  if (!c.bounded_below) {
    throw Error(ErrorCode::NotBoundedBelow, "model needs T bounded below");
  }
  if (!c.pure) {
    throw Error(ErrorCode::NotPure, "model needs T pure");
  }
  if (!c.wandering) {
    throw Error(ErrorCode::NoWanderingSubspace, "model needs the wandering subspace property");
  }
  if (!is_shift_regime(t)) {
    throw Error(ErrorCode::UnsupportedRegime, "model is built for weighted shifts and their sums");
  }
  AnalyticModel m(t, cauchy_dual(t, tol));
  m.e_ = shift_defect_basis(t);
  m.l_norm_ = 1.0 / min_shift_weight(t);
  m.radius_ = 1.0 / m.l_norm_;
  m.dual_radius_ = spectral_radius_estimate(m.dual_);
  return m;
}

ModelCoefficients coefficients(const AnalyticModel& m, const FiniteSupportVector& x,
                               std::size_t order, std::optional<double> rho) {
  if (x.ambient() != m.source().ambient()) {
    throw Error(ErrorCode::AmbientMismatch, "vector ambient does not match the model");
  }
  ModelCoefficients out;
  out.order = order;
  out.rho = rho.value_or(0.5 * m.radius());
  FiniteSupportVector y = x;
  for (std::size_t n = 0; n <= order; ++n) {
    out.coeffs.push_back(m.defect_coordinates(m.apply_p(y)));
    y = m.apply_l(y);
  }
  if (!y.empty()) {
    const double q = m.l_norm() * out.rho;
    out.tail_bound = q < 1.0 ? x.norm() * std::pow(q, static_cast<double>(order + 1)) / (1.0 - q)
                             : std::numeric_limits<double>::infinity();
  }
  return out;
}

KernelValue kernel_eval(const AnalyticModel& m, Complex lambda, Complex z,
                        const ToleranceConfig& tol) {
  if (std::abs(lambda) >= m.radius() || std::abs(z) >= m.radius()) {
    throw Error(ErrorCode::OutsideDisc, "kernel arguments must lie inside the evaluation disc");
  }
  const double q = m.l_norm() * std::max(std::abs(lambda), std::abs(z));
  const std::size_t order = geometric_order(q, 2.0 / ((1.0 - q) * (1.0 - q)), tol.tail_tol);

  const auto d = static_cast<Eigen::Index>(m.defect_dim());
  KernelValue out;
  out.order = order;
  out.tail_bound = q > 0.0 ? 2.0 * std::pow(q, static_cast<double>(order + 1)) /
                                 ((1.0 - q) * (1.0 - q))
                           : 0.0;
  out.value = CMatrix::Zero(d, d);
  const Complex lc = std::conj(lambda);
  for (Eigen::Index j = 0; j < d; ++j) {
    // v = (I - conj(lambda) L*)^{-1} e_j, truncated.
    FiniteSupportVector v(m.source().ambient());
    FiniteSupportVector u = m.defect_basis()[static_cast<std::size_t>(j)];
    Complex pw = 1.0;
    for (std::size_t n = 0; n <= order; ++n) {
      v += pw * u;
      u = m.apply_l_adjoint(u);
      pw *= lc;
    }
    // sum_m z^m P L^m v.
    Complex zp = 1.0;
    for (std::size_t k = 0; k <= order && !v.empty(); ++k) {
      out.value.col(j) += zp * m.defect_coordinates(m.apply_p(v));
      v = m.apply_l(v);
      zp *= z;
    }
  }
  return out;
}

IntertwiningReport verify_intertwining(const AnalyticModel& m, const FiniteSupportVector& x,
                                       std::size_t order) {
  const ModelCoefficients cx = coefficients(m, x, order);
  const ModelCoefficients ctx = coefficients(m, apply(m.source(), x), order);
  IntertwiningReport r;
  r.order = order;
  r.max_residual = ctx.coeffs[0].cwiseAbs().maxCoeff();
  for (std::size_t n = 1; n <= order; ++n) {
    r.max_residual =
        std::max(r.max_residual, (ctx.coeffs[n] - cx.coeffs[n - 1]).cwiseAbs().maxCoeff());
  }
  r.passed = r.max_residual <= 1e-12;
  return r;
}

ReproducingReport verify_reproducing(const AnalyticModel& m, const FiniteSupportVector& x,
                                     Complex lambda, const FiniteSupportVector& e,
                                     const ToleranceConfig& tol) {
  if (std::abs(lambda) >= m.radius()) {
    throw Error(ErrorCode::OutsideDisc, "lambda must lie inside the evaluation disc");
  }
  if (e.ambient() != m.source().ambient()) {
    throw Error(ErrorCode::AmbientMismatch, "defect vector ambient does not match the model");
  }
  const CVector ec = m.defect_coordinates(e);
  FiniteSupportVector back(e.ambient());
  for (std::size_t i = 0; i < m.defect_dim(); ++i) {
    back += ec(static_cast<Eigen::Index>(i)) * m.defect_basis()[i];
  }
  if ((e - back).norm() > 1e-12 * std::max(1.0, e.norm())) {
    throw Error(ErrorCode::InvalidArgument, "e must lie in the defect space");
  }

  const double q = m.l_norm() * std::abs(lambda);
  const double scale = std::max(x.norm(), 1e-300) * std::max(e.norm(), 1e-300) / (1.0 - q);
  std::size_t order = geometric_order(q, scale, tol.tail_tol);
  order = std::max(order, x.max_index().value_or(0));

  ReproducingReport r;
  r.order = order;
  const ModelCoefficients c = coefficients(m, x, order, std::abs(lambda));
  Complex pw = 1.0;
  for (std::size_t n = 0; n <= order; ++n) {
    // Eigen's dot conjugates its first argument.
    r.lhs += pw * std::conj(c.coeffs[n].dot(ec));
    pw *= lambda;
  }

  FiniteSupportVector w(e.ambient());
  FiniteSupportVector u = e;
  Complex lp = 1.0;
  const Complex lc = std::conj(lambda);
  for (std::size_t n = 0; n <= order; ++n) {
    w += lp * u;
    u = m.apply_l_adjoint(u);
    lp *= lc;
  }
  r.rhs = inner(x, w);
  r.residual = std::abs(r.lhs - r.rhs);
  r.tail_bound = q > 0.0 ? 2.0 * scale * std::pow(q, static_cast<double>(order + 1)) : 0.0;
  r.passed = r.residual <= r.tail_bound + tol.residual_tol;
  return r;
}

namespace {

// exp(t (z+1)/(z-1)) for any real t. With g = e^{-t} exp(-2t z/(1-z)):
//   n g_n = -2t S_n,  S_n = sum_{k=1}^{n} k g_{n-k} = n A_{n-1} - B_{n-1},
// where A_m = sum_{j<=m} g_j and B_m = sum_{j<=m} j g_j.
std::vector<double> multiplier_coeffs(double t, std::size_t order) {
  std::vector<double> g(order + 1);
  g[0] = std::exp(-t);
  double a = g[0];
  double b = 0.0;
  for (std::size_t n = 1; n <= order; ++n) {
    const double nn = static_cast<double>(n);
    g[n] = -2.0 * t * (nn * a - b) / nn;
    a += g[n];
    b += nn * g[n];
  }
  return g;
}

PowerSeries real_series(const std::vector<double>& c) {
  std::vector<Complex> v(c.begin(), c.end());
  return PowerSeries(std::move(v), true);
}

double max_abs_diff(const PowerSeries& f, const PowerSeries& g, std::size_t upto) {
  double r = 0.0;
  for (std::size_t k = 0; k <= upto; ++k) {
    r = std::max(r, std::abs(f[k] - g[k]));
  }
  return r;
}

}  // namespace

PowerSeries semigroup_multiplier(double t, std::size_t order) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw Error(ErrorCode::InvalidArgument, "semigroup parameter must be a finite t >= 0");
  }
  if (t == 0.0) {
    return PowerSeries::constant(1.0, order);
  }
  return real_series(multiplier_coeffs(t, order));
}

SemigroupModelReport verify_semigroup_model(const AnalyticModel& m, double t,
                                            const FiniteSupportVector& x, std::size_t order) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw Error(ErrorCode::InvalidArgument, "semigroup parameter must be a finite t >= 0");
  }
  SemigroupModelReport r;
  r.t = t;
  r.order = order;
  r.sign_convention = "multiplier exp(t(z+1)/(z-1)), contractive on the disc";

  const ModelCoefficients c = coefficients(m, x, order);
  const PowerSeries e0 = semigroup_multiplier(0.0, order);
  const PowerSeries et = semigroup_multiplier(t, order);
  const PowerSeries e2t = semigroup_multiplier(2.0 * t, order);

  // Generator (z+1)/(z-1) = -1 - 2 sum_{n>=1} z^n.
  std::vector<Complex> gen(order + 1, Complex{-2.0, 0.0});
  gen[0] = -1.0;
  const PowerSeries a(std::move(gen), true);

  constexpr double h = 1e-5;
  const PowerSeries ep1 = real_series(multiplier_coeffs(h, order));
  const PowerSeries ep2 = real_series(multiplier_coeffs(2.0 * h, order));
  const PowerSeries em1 = real_series(multiplier_coeffs(-h, order));
  const PowerSeries em2 = real_series(multiplier_coeffs(-2.0 * h, order));

  r.identity_residual = max_abs_diff(e0, PowerSeries::constant(1.0, order), order);
  r.law_residual = max_abs_diff(series_mul(et, et), e2t, order / 2);

  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(m.defect_dim()); ++i) {
    std::vector<Complex> fc(order + 1);
    for (std::size_t n = 0; n <= order; ++n) {
      fc[n] = c.coeffs[n](i);
    }
    const PowerSeries f(std::move(fc), true);

    // Five-point central stencil in t at step h.
    const PowerSeries df = series_scale(
        1.0 / (12.0 * h),
        series_add(series_add(series_scale(-1.0, series_mul(ep2, f)),
                              series_scale(8.0, series_mul(ep1, f))),
                   series_add(series_scale(-8.0, series_mul(em1, f)), series_mul(em2, f))));
    r.generator_residual = std::max(r.generator_residual, max_abs_diff(df, series_mul(a, f), order));

    // z f through degree N.
    std::vector<Complex> zc(order + 1);
    for (std::size_t n = 1; n <= order; ++n) {
      zc[n] = f[n - 1];
    }
    const PowerSeries zf(std::move(zc), true);
    const PowerSeries lhs = series_mul(et, zf);
    const PowerSeries ef = series_mul(et, f);
    for (std::size_t n = 0; n <= order; ++n) {
      const Complex shifted = n == 0 ? Complex{} : ef[n - 1];
      r.commutation_residual = std::max(r.commutation_residual, std::abs(lhs[n] - shifted));
    }
  }
  r.passed = r.identity_residual == 0.0 && r.generator_residual <= 1e-6 &&
             r.commutation_residual <= 1e-12 && r.law_residual <= 1e-10;
  return r;
}

namespace {

void gather_blocks(const StructuredOperator& v, std::vector<CMatrix>& blocks, bool& has_shift) {
  switch (v.kind()) {
    case StructuredOperator::Kind::Dense:
      blocks.push_back(v.matrix().eigen());
      break;
    case StructuredOperator::Kind::Shift:
      has_shift = true;
      break;
    case StructuredOperator::Kind::DirectSum:
      for (const auto& p : v.parts()) {
        gather_blocks(p, blocks, has_shift);
      }
      break;
  }
}

}  // namespace

WoldReport wold_decompose(const StructuredOperator& v, std::size_t steps,
                          const ToleranceConfig& tol) {
  if (steps == 0) {
    throw Error(ErrorCode::InvalidArgument, "Wold decomposition needs steps >= 1");
  }
  std::vector<CMatrix> blocks;
  bool has_shift = false;
  gather_blocks(v, blocks, has_shift);

  WoldReport r;
  Eigen::Index n = 0;
  for (const auto& b : blocks) {
    n += b.rows();
  }
  if (n == 0) {
    r.stabilized = true;
    r.wandering_ok = true;
    return r;
  }
  CMatrix f = CMatrix::Zero(n, n);
  Eigen::Index off = 0;
  for (const auto& b : blocks) {
    f.block(off, off, b.rows(), b.rows()) = b;
    off += b.rows();
  }
  const ComplexMatrix fm(f);
  const PowerRange pr = stabilized_power_range(fm, steps, tol);
  r.range_dims = pr.dims;
  r.stabilized = pr.stabilized;
  const CMatrix& q = pr.basis;
  r.dim_h1 = static_cast<std::size_t>(q.cols());
  const auto nn = static_cast<std::size_t>(n);
  if (!has_shift) {
    r.dim_h2 = nn - r.dim_h1;
  }
  if (q.cols() > 0) {
    const CMatrix b = q.adjoint() * f * q;
    const CMatrix id = CMatrix::Identity(q.cols(), q.cols());
    r.unitarity_residual = singular_values(b.adjoint() * b - id).front();
    r.invariance_residual = singular_values(f * q - q * b).front();
  }

  const CMatrix e = cokernel_basis(f, tol);
  if (e.cols() > 0) {
    CMatrix krylov(n, e.cols() * n);
    CMatrix blk = e;
    for (Eigen::Index k = 0; k < n; ++k) {
      krylov.middleCols(k * e.cols(), e.cols()) = blk;
      blk = f * blk;
    }
    r.wandering_span_dim = rank(krylov, tol);
  }
  r.wandering_ok = r.wandering_span_dim == nn - r.dim_h1;
  return r;
}

RigidityReport finite_rigidity_check(const ComplexMatrix& v, const ToleranceConfig& tol) {
  const ClassificationReport c = classify_operator(StructuredOperator::dense(v), tol);
  RigidityReport r;
  r.concave = c.concave;
  r.invertible = c.bounded_below;
  const CMatrix& a = v.eigen();
  r.unitarity_residual =
      singular_values(a.adjoint() * a - CMatrix::Identity(a.rows(), a.cols())).front();
  r.passed = !(r.concave && r.invertible) || r.unitarity_residual <= 1e-8;
  return r;
}

ProjectionCheck check_defect_projection(const AnalyticModel& m, std::size_t probes) {
  const Ambient amb = m.source().ambient();
  const std::size_t k = amb ? std::min(probes, *amb) : probes;
  std::vector<FiniteSupportVector> e;
  std::vector<FiniteSupportVector> pe;
  for (std::size_t i = 0; i < k; ++i) {
    e.push_back(FiniteSupportVector::basis(i, amb));
    pe.push_back(m.apply_p(e.back()));
  }
  ProjectionCheck r;
  for (std::size_t i = 0; i < k; ++i) {
    r.idempotence = std::max(r.idempotence, (m.apply_p(pe[i]) - pe[i]).norm());
    r.annihilates_range =
        std::max(r.annihilates_range, m.apply_p(apply(m.source(), e[i])).norm());
    r.left_inverse =
        std::max(r.left_inverse, (m.apply_l(apply(m.source(), e[i])) - e[i]).norm());
    FiniteSupportVector proj(amb);
    const CVector c = m.defect_coordinates(pe[i]);
    for (std::size_t j = 0; j < m.defect_dim(); ++j) {
      proj += c(static_cast<Eigen::Index>(j)) * m.defect_basis()[j];
    }
    r.range_in_defect = std::max(r.range_in_defect, (pe[i] - proj).norm());
    for (std::size_t j = 0; j < k; ++j) {
      r.self_adjointness =
          std::max(r.self_adjointness, std::abs(inner(pe[i], e[j]) - inner(e[i], pe[j])));
    }
  }
  return r;
}

double telescoping_residual(const AnalyticModel& m, const FiniteSupportVector& x, std::size_t n) {
  FiniteSupportVector sum(x.ambient());
  FiniteSupportVector lk = x;  // L^k x
  for (std::size_t k = 0; k < n; ++k) {
    FiniteSupportVector term = m.apply_p(lk);
    for (std::size_t j = 0; j < k; ++j) {
      term = apply(m.source(), term);
    }
    sum += term;
    lk = m.apply_l(lk);
  }
  FiniteSupportVector rest = lk;
  for (std::size_t j = 0; j < n; ++j) {
    rest = apply(m.source(), rest);
  }
  return (x - sum - rest).norm();
}

}  // namespace opkit
