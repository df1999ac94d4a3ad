#pragma once

// Operators that act exactly on finitely supported vectors: dense matrices
// on a finite ambient space, weighted shifts on l^2(N), and direct sums of
// both.

#include <cstddef>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "opkit/numkit.hpp"

namespace opkit {

/// Dimension of the space a vector or operator lives in; nullopt is l^2(N).
using Ambient = std::optional<std::size_t>;

class FiniteSupportVector {
 public:
  FiniteSupportVector() = default;
  explicit FiniteSupportVector(Ambient ambient) : ambient_(ambient) {}

  static FiniteSupportVector basis(std::size_t k, Ambient ambient);
  static FiniteSupportVector from_dense(const CVector& v, Ambient ambient);

  Ambient ambient() const { return ambient_; }

  Complex get(std::size_t k) const;
  /// Exact zeros are not stored.
  void set(std::size_t k, Complex value);
  void add(std::size_t k, Complex value);

  const std::map<std::size_t, Complex>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  /// Largest stored index, or nullopt for the zero vector.
  std::optional<std::size_t> max_index() const;

  double norm() const;
  CVector to_dense(std::size_t n) const;

  FiniteSupportVector& operator+=(const FiniteSupportVector& other);
  FiniteSupportVector& operator-=(const FiniteSupportVector& other);
  FiniteSupportVector& operator*=(Complex s);

  friend FiniteSupportVector operator+(FiniteSupportVector a, const FiniteSupportVector& b) {
    return a += b;
  }
  friend FiniteSupportVector operator-(FiniteSupportVector a, const FiniteSupportVector& b) {
    return a -= b;
  }
  friend FiniteSupportVector operator*(Complex s, FiniteSupportVector a) { return a *= s; }

 private:
  void check_index(std::size_t k) const;

  Ambient ambient_;
  std::map<std::size_t, Complex> entries_;
};

/// <x, y>, linear in x and conjugate-linear in y.
Complex inner(const FiniteSupportVector& x, const FiniteSupportVector& y);

/// Tail law w_k = tail_weight * sqrt((k + num_offset) / (k + den_offset)).
/// The Dirichlet shift is {2, 1} with tail_weight 1.
struct TailRatio {
  double num_offset = 1.0;
  double den_offset = 1.0;
};

/// Weighted forward shift e_k -> w_k e_{k+1} on l^2(N). Weights are
/// head_weights for k < m and follow the tail law beyond (constant when no
/// ratio is given). All weights are positive and bounded away from 0 and
/// infinity by construction.
class WeightedShift {
 public:
  WeightedShift(std::vector<double> head_weights, double tail_weight,
                std::optional<TailRatio> tail_ratio = std::nullopt);

  static WeightedShift isometric() { return WeightedShift({}, 1.0); }
  /// w_k = sqrt((k+2)/(k+1)).
  static WeightedShift dirichlet() { return WeightedShift({}, 1.0, TailRatio{2.0, 1.0}); }

  double weight(std::size_t k) const;
  const std::vector<double>& head_weights() const { return head_; }
  double tail_weight() const { return tail_; }
  const std::optional<TailRatio>& tail_ratio() const { return ratio_; }

  double inf_weight() const;
  double sup_weight() const;
  /// lim w_k, which is the spectral radius of the shift.
  double limit_weight() const { return tail_; }

  /// Shift with weights 1/w_k.
  WeightedShift reciprocal() const;

  /// beta_n = w_0 ... w_{n-1}, so that ||T^n e_0|| = beta_n.
  double beta(std::size_t n) const;

 private:
  std::vector<double> head_;
  double tail_;
  std::optional<TailRatio> ratio_;
};

class StructuredOperator {
 public:
  enum class Kind { Dense, Shift, DirectSum };

  static StructuredOperator dense(ComplexMatrix m);
  static StructuredOperator shift(WeightedShift w);
  static StructuredOperator direct_sum(std::vector<StructuredOperator> parts);

  Kind kind() const;
  const ComplexMatrix& matrix() const;
  const WeightedShift& weights() const;
  const std::vector<StructuredOperator>& parts() const;

  Ambient ambient() const { return ambient_; }

  // Direct-sum coordinates: finite parts occupy the leading block in listed
  // order; infinite parts are interleaved after it, so with q infinite parts
  // local index k of the i-th one sits at F + k*q + i.
  std::size_t to_global(std::size_t part, std::size_t local) const;
  std::vector<FiniteSupportVector> split(const FiniteSupportVector& x) const;
  FiniteSupportVector merge(const std::vector<FiniteSupportVector>& pieces) const;

 private:
  using Storage = std::variant<ComplexMatrix, WeightedShift, std::vector<StructuredOperator>>;
  explicit StructuredOperator(Storage s);
  void layout();

  Storage data_;
  Ambient ambient_;
  std::vector<std::size_t> offsets_;        // per part: finite offset or infinite rank
  std::vector<std::size_t> finite_parts_;   // part indices in finite block order
  std::vector<std::size_t> infinite_parts_; // part indices in interleave order
  std::size_t finite_total_ = 0;
};

FiniteSupportVector apply(const StructuredOperator& t, const FiniteSupportVector& x);
FiniteSupportVector adjoint_apply(const StructuredOperator& t, const FiniteSupportVector& x);

/// y with T*T y = x. Exact for shifts (y_k = x_k / w_k^2); dense blocks are
/// solved after checking they are bounded below at rank_tol.
FiniteSupportVector gram_apply_inverse(const StructuredOperator& t,
                                       const FiniteSupportVector& x,
                                       const ToleranceConfig& tol = {});

/// Shift: the tail weight (exact for eventually regular weights). Dense:
/// power iteration with Schur fallback. Direct sum: maximum over parts.
double spectral_radius_estimate(const StructuredOperator& t);

/// Block-diagonal matrix of an operator on a finite ambient space.
ComplexMatrix to_dense(const StructuredOperator& t);

bool is_finite(const StructuredOperator& t);
/// True when every leaf is a weighted shift.
bool is_shift_regime(const StructuredOperator& t);

}  // namespace opkit
