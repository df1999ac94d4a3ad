#include "opkit/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opkit {

// ---------------------------------------------------------------------------
// FiniteSupportVector

FiniteSupportVector FiniteSupportVector::basis(std::size_t k, Ambient ambient) {
  FiniteSupportVector v(ambient);
  v.set(k, 1.0);
  return v;
}

FiniteSupportVector FiniteSupportVector::from_dense(const CVector& v, Ambient ambient) {
  FiniteSupportVector out(ambient);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.set(static_cast<std::size_t>(i), v(i));
  }
  return out;
}

void FiniteSupportVector::check_index(std::size_t k) const {
  if (ambient_ && k >= *ambient_) {
    throw Error(ErrorCode::AmbientMismatch, "index " + std::to_string(k) +
                                                " outside ambient dimension " +
                                                std::to_string(*ambient_));
  }
}

Complex FiniteSupportVector::get(std::size_t k) const {
  auto it = entries_.find(k);
  return it == entries_.end() ? Complex{} : it->second;
}

void FiniteSupportVector::set(std::size_t k, Complex value) {
  check_index(k);
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw Error(ErrorCode::NonFinite, "vector entry is not finite");
  }
  if (value == Complex{}) {
    entries_.erase(k);
  } else {
    entries_[k] = value;
  }
}

void FiniteSupportVector::add(std::size_t k, Complex value) { set(k, get(k) + value); }

std::optional<std::size_t> FiniteSupportVector::max_index() const {
  if (entries_.empty()) {
    return std::nullopt;
  }
  return entries_.rbegin()->first;
}

double FiniteSupportVector::norm() const {
  double s = 0.0;
  for (const auto& [k, v] : entries_) {
    s += std::norm(v);
  }
  return std::sqrt(s);
}

CVector FiniteSupportVector::to_dense(std::size_t n) const {
  CVector out = CVector::Zero(static_cast<Eigen::Index>(n));
  for (const auto& [k, v] : entries_) {
    if (k >= n) {
      throw Error(ErrorCode::AmbientMismatch, "support exceeds dense length");
    }
    out(static_cast<Eigen::Index>(k)) = v;
  }
  return out;
}

FiniteSupportVector& FiniteSupportVector::operator+=(const FiniteSupportVector& other) {
  if (ambient_ != other.ambient_) {
    throw Error(ErrorCode::AmbientMismatch, "adding vectors from different ambients");
  }
  for (const auto& [k, v] : other.entries_) {
    add(k, v);
  }
  return *this;
}

FiniteSupportVector& FiniteSupportVector::operator-=(const FiniteSupportVector& other) {
  if (ambient_ != other.ambient_) {
    throw Error(ErrorCode::AmbientMismatch, "subtracting vectors from different ambients");
  }
  for (const auto& [k, v] : other.entries_) {
    add(k, -v);
  }
  return *this;
}

FiniteSupportVector& FiniteSupportVector::operator*=(Complex s) {
  if (s == Complex{}) {
    entries_.clear();
    return *this;
  }
  for (auto& [k, v] : entries_) {
    v *= s;
  }
  std::erase_if(entries_, [](const auto& kv) { return kv.second == Complex{}; });
  return *this;
}

Complex inner(const FiniteSupportVector& x, const FiniteSupportVector& y) {
  if (x.ambient() != y.ambient()) {
    throw Error(ErrorCode::AmbientMismatch, "inner product across different ambients");
  }
  Complex s{};
  const auto& small = x.entries().size() <= y.entries().size() ? x.entries() : y.entries();
  const bool x_small = &small == &x.entries();
  for (const auto& [k, v] : small) {
    const Complex other = x_small ? y.get(k) : x.get(k);
    s += x_small ? v * std::conj(other) : other * std::conj(v);
  }
  return s;
}

// ---------------------------------------------------------------------------
// WeightedShift

WeightedShift::WeightedShift(std::vector<double> head_weights, double tail_weight,
                             std::optional<TailRatio> tail_ratio)
    : head_(std::move(head_weights)), tail_(tail_weight), ratio_(tail_ratio) {
  for (double w : head_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::InvalidArgument, "shift weights must be positive and finite");
    }
  }
  if (!(tail_ > 0.0) || !std::isfinite(tail_)) {
    throw Error(ErrorCode::InvalidArgument, "tail weight must be positive and finite");
  }
  if (ratio_) {
    if (!(ratio_->num_offset > 0.0) || !(ratio_->den_offset > 0.0) ||
        !std::isfinite(ratio_->num_offset) || !std::isfinite(ratio_->den_offset)) {
      throw Error(ErrorCode::InvalidArgument, "tail ratio offsets must be positive");
    }
  }
}

double WeightedShift::weight(std::size_t k) const {
  if (k < head_.size()) {
    return head_[k];
  }
  if (!ratio_) {
    return tail_;
  }
  const double kk = static_cast<double>(k);
  return tail_ * std::sqrt((kk + ratio_->num_offset) / (kk + ratio_->den_offset));
}

// The ratio tail is monotone in k, so its extremes over k >= m are the value
// at k = m and the limit.
double WeightedShift::inf_weight() const {
  double lo = tail_;
  for (double w : head_) {
    lo = std::min(lo, w);
  }
  if (ratio_) {
    lo = std::min(lo, weight(head_.size()));
  }
  return lo;
}

double WeightedShift::sup_weight() const {
  double hi = tail_;
  for (double w : head_) {
    hi = std::max(hi, w);
  }
  if (ratio_) {
    hi = std::max(hi, weight(head_.size()));
  }
  return hi;
}

WeightedShift WeightedShift::reciprocal() const {
  std::vector<double> head;
  head.reserve(head_.size());
  for (double w : head_) {
    head.push_back(1.0 / w);
  }
  std::optional<TailRatio> ratio;
  if (ratio_) {
    ratio = TailRatio{ratio_->den_offset, ratio_->num_offset};
  }
  return WeightedShift(std::move(head), 1.0 / tail_, ratio);
}

double WeightedShift::beta(std::size_t n) const {
  double b = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    b *= weight(k);
  }
  return b;
}

// ---------------------------------------------------------------------------
// StructuredOperator

StructuredOperator::StructuredOperator(Storage s) : data_(std::move(s)) { layout(); }

StructuredOperator StructuredOperator::dense(ComplexMatrix m) {
  return StructuredOperator(Storage(std::move(m)));
}

StructuredOperator StructuredOperator::shift(WeightedShift w) {
  return StructuredOperator(Storage(std::move(w)));
}

StructuredOperator StructuredOperator::direct_sum(std::vector<StructuredOperator> parts) {
  if (parts.empty()) {
    throw Error(ErrorCode::InvalidArgument, "direct sum needs at least one part");
  }
  return StructuredOperator(Storage(std::move(parts)));
}

void StructuredOperator::layout() {
  if (const auto* m = std::get_if<ComplexMatrix>(&data_)) {
    ambient_ = m->dim();
    return;
  }
  if (std::holds_alternative<WeightedShift>(data_)) {
    ambient_ = std::nullopt;
    return;
  }
  const auto& ps = std::get<std::vector<StructuredOperator>>(data_);
  offsets_.assign(ps.size(), 0);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps[i].ambient()) {
      offsets_[i] = finite_total_;
      finite_total_ += *ps[i].ambient();
      finite_parts_.push_back(i);
    } else {
      offsets_[i] = infinite_parts_.size();
      infinite_parts_.push_back(i);
    }
  }
  ambient_ = infinite_parts_.empty() ? Ambient(finite_total_) : std::nullopt;
}

StructuredOperator::Kind StructuredOperator::kind() const {
  switch (data_.index()) {
    case 0: return Kind::Dense;
    case 1: return Kind::Shift;
    default: return Kind::DirectSum;
  }
}

const ComplexMatrix& StructuredOperator::matrix() const {
  if (const auto* m = std::get_if<ComplexMatrix>(&data_)) {
    return *m;
  }
  throw Error(ErrorCode::UnsupportedRegime, "operator is not dense");
}

const WeightedShift& StructuredOperator::weights() const {
  if (const auto* w = std::get_if<WeightedShift>(&data_)) {
    return *w;
  }
  throw Error(ErrorCode::UnsupportedRegime, "operator is not a weighted shift");
}

const std::vector<StructuredOperator>& StructuredOperator::parts() const {
  if (const auto* p = std::get_if<std::vector<StructuredOperator>>(&data_)) {
    return *p;
  }
  throw Error(ErrorCode::UnsupportedRegime, "operator is not a direct sum");
}

std::size_t StructuredOperator::to_global(std::size_t part, std::size_t local) const {
  const auto& ps = parts();
  if (part >= ps.size()) {
    throw Error(ErrorCode::InvalidArgument, "direct-sum part index out of range");
  }
  if (ps[part].ambient()) {
    return offsets_[part] + local;
  }
  return finite_total_ + local * infinite_parts_.size() + offsets_[part];
}

std::vector<FiniteSupportVector> StructuredOperator::split(const FiniteSupportVector& x) const {
  const auto& ps = parts();
  if (x.ambient() != ambient_) {
    throw Error(ErrorCode::AmbientMismatch, "vector ambient does not match direct sum");
  }
  std::vector<FiniteSupportVector> out;
  out.reserve(ps.size());
  for (const auto& p : ps) {
    out.emplace_back(p.ambient());
  }
  const std::size_t q = infinite_parts_.size();
  for (const auto& [g, v] : x.entries()) {
    if (g < finite_total_) {
      auto it = std::upper_bound(finite_parts_.begin(), finite_parts_.end(), g,
                                 [this](std::size_t gg, std::size_t part) {
                                   return gg < offsets_[part];
                                 });
      const std::size_t part = *std::prev(it);
      out[part].set(g - offsets_[part], v);
    } else {
      const std::size_t r = g - finite_total_;
      out[infinite_parts_[r % q]].set(r / q, v);
    }
  }
  return out;
}

FiniteSupportVector StructuredOperator::merge(const std::vector<FiniteSupportVector>& pieces) const {
  const auto& ps = parts();
  if (pieces.size() != ps.size()) {
    throw Error(ErrorCode::InvalidArgument, "piece count does not match direct sum");
  }
  FiniteSupportVector out(ambient_);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (const auto& [k, v] : pieces[i].entries()) {
      out.set(to_global(i, k), v);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Actions

namespace {

void check_ambient(const StructuredOperator& t, const FiniteSupportVector& x) {
  if (t.ambient() != x.ambient()) {
    throw Error(ErrorCode::AmbientMismatch, "vector ambient does not match operator");
  }
}

template <class F>
FiniteSupportVector blockwise(const StructuredOperator& t, const FiniteSupportVector& x, F&& f) {
  auto pieces = t.split(x);
  const auto& ps = t.parts();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    pieces[i] = f(ps[i], pieces[i]);
  }
  return t.merge(pieces);
}

FiniteSupportVector dense_times(const CMatrix& m, const FiniteSupportVector& x) {
  const auto n = static_cast<std::size_t>(m.rows());
  return FiniteSupportVector::from_dense(m * x.to_dense(n), x.ambient());
}

}  // namespace

FiniteSupportVector apply(const StructuredOperator& t, const FiniteSupportVector& x) {
  check_ambient(t, x);
  switch (t.kind()) {
    case StructuredOperator::Kind::Dense:
      return dense_times(t.matrix().eigen(), x);
    case StructuredOperator::Kind::Shift: {
      const auto& w = t.weights();
      FiniteSupportVector y(x.ambient());
      for (const auto& [k, v] : x.entries()) {
        y.set(k + 1, w.weight(k) * v);
      }
      return y;
    }
    case StructuredOperator::Kind::DirectSum:
      return blockwise(t, x, [](const StructuredOperator& p, const FiniteSupportVector& v) {
        return apply(p, v);
      });
  }
  return x;
}

FiniteSupportVector adjoint_apply(const StructuredOperator& t, const FiniteSupportVector& x) {
  check_ambient(t, x);
  switch (t.kind()) {
    case StructuredOperator::Kind::Dense:
      return dense_times(t.matrix().eigen().adjoint(), x);
    case StructuredOperator::Kind::Shift: {
      const auto& w = t.weights();
      FiniteSupportVector y(x.ambient());
      for (const auto& [k, v] : x.entries()) {
        if (k > 0) {
          y.set(k - 1, w.weight(k - 1) * v);
        }
      }
      return y;
    }
    case StructuredOperator::Kind::DirectSum:
      return blockwise(t, x, [](const StructuredOperator& p, const FiniteSupportVector& v) {
        return adjoint_apply(p, v);
      });
  }
  return x;
}

FiniteSupportVector gram_apply_inverse(const StructuredOperator& t,
                                       const FiniteSupportVector& x,
                                       const ToleranceConfig& tol) {
  check_ambient(t, x);
  switch (t.kind()) {
    case StructuredOperator::Kind::Dense: {
      const auto& m = t.matrix();
      const auto sv = singular_values(m.eigen());
      if (sv.front() == 0.0 || sv.back() < tol.rank_tol * sv.front()) {
        throw Error(ErrorCode::NotBoundedBelow, "dense block is not bounded below");
      }
      const ComplexMatrix gram(m.eigen().adjoint() * m.eigen());
      return FiniteSupportVector::from_dense(solve(gram, x.to_dense(m.dim()), tol),
                                             x.ambient());
    }
    case StructuredOperator::Kind::Shift: {
      const auto& w = t.weights();
      FiniteSupportVector y(x.ambient());
      for (const auto& [k, v] : x.entries()) {
        const double wk = w.weight(k);
        y.set(k, v / (wk * wk));
      }
      return y;
    }
    case StructuredOperator::Kind::DirectSum:
      return blockwise(t, x, [&tol](const StructuredOperator& p, const FiniteSupportVector& v) {
        return gram_apply_inverse(p, v, tol);
      });
  }
  return x;
}

double spectral_radius_estimate(const StructuredOperator& t) {
  switch (t.kind()) {
    case StructuredOperator::Kind::Dense:
      return spectral_radius(t.matrix());
    case StructuredOperator::Kind::Shift:
      return t.weights().limit_weight();
    case StructuredOperator::Kind::DirectSum: {
      double r = 0.0;
      for (const auto& p : t.parts()) {
        r = std::max(r, spectral_radius_estimate(p));
      }
      return r;
    }
  }
  return 0.0;
}

ComplexMatrix to_dense(const StructuredOperator& t) {
  if (!t.ambient()) {
    throw Error(ErrorCode::UnsupportedRegime, "operator acts on an infinite ambient");
  }
  if (t.kind() == StructuredOperator::Kind::Dense) {
    return t.matrix();
  }
  const auto n = static_cast<Eigen::Index>(*t.ambient());
  CMatrix m = CMatrix::Zero(n, n);
  const auto& ps = t.parts();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const ComplexMatrix block = to_dense(ps[i]);
    const auto off = static_cast<Eigen::Index>(t.to_global(i, 0));
    const auto b = static_cast<Eigen::Index>(block.dim());
    m.block(off, off, b, b) = block.eigen();
  }
  return ComplexMatrix(std::move(m));
}

bool is_finite(const StructuredOperator& t) { return t.ambient().has_value(); }

bool is_shift_regime(const StructuredOperator& t) {
  switch (t.kind()) {
    case StructuredOperator::Kind::Dense: return false;
    case StructuredOperator::Kind::Shift: return true;
    case StructuredOperator::Kind::DirectSum:
      return std::all_of(t.parts().begin(), t.parts().end(),
                         [](const StructuredOperator& p) { return is_shift_regime(p); });
  }
  return false;
}

}  // namespace opkit
