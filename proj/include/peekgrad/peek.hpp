// SPDX-License-Identifier: Apache-2.0
#pragma once

// Perturbation-carrying scalar for dimensional peeking.
//
// A PeekScalar holds the value of a program variable at the primal perturbed
// input plus, for every input dimension it depends on, the row of values the
// variable would take if only that dimension were moved to each point of its
// offset grid. Comparisons return the primal outcome and clear, in the
// owning PeekContext, the grid slots whose outcome differs. After a run the
// surviving slots of dimension i are exactly the alternatives that followed
// the primal control-flow path.

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace peekgrad {

enum class Relation { less, less_equal, greater, greater_equal, equal, not_equal };

inline bool holds(Relation rel, double a, double b) {
  switch (rel) {
    case Relation::less: return a < b;
    case Relation::less_equal: return a <= b;
    case Relation::greater: return a > b;
    case Relation::greater_equal: return a >= b;
    case Relation::equal: return a == b;
    case Relation::not_equal: return a != b;
  }
  return false;
}

/// Sequence of primal branch outcomes (0/1) and selected indexes observed
/// during a run. Only filled while a ScopedDecisionLog is active on the
/// calling thread.
struct DecisionLog {
  std::vector<std::int64_t> entries;
};

namespace detail {
inline thread_local DecisionLog* active_decision_log = nullptr;
}

inline void record_decision(std::int64_t value) {
  if (detail::active_decision_log) detail::active_decision_log->entries.push_back(value);
}

class ScopedDecisionLog {
 public:
  explicit ScopedDecisionLog(DecisionLog& log) : previous_(detail::active_decision_log) {
    detail::active_decision_log = &log;
  }
  ~ScopedDecisionLog() { detail::active_decision_log = previous_; }
  ScopedDecisionLog(const ScopedDecisionLog&) = delete;
  ScopedDecisionLog& operator=(const ScopedDecisionLog&) = delete;

 private:
  DecisionLog* previous_;
};

/// Per-run bookkeeping: offset grids, equivalence masks and fallback flags.
///
/// Dimension i's grid is the 2c+1 consecutive integers x_i - c .. x_i + c.
/// The dimension is peeked iff |R_i| <= c, in which case the primal value
/// x_i + R_i sits at grid slot R_i + c. Masks start all-true and only ever
/// lose bits.
class PeekContext {
 public:
  PeekContext(std::span<const std::int64_t> x, std::span<const std::int64_t> r, std::int64_t radius);

  std::size_t dimension() const { return x_.size(); }
  std::int64_t radius() const { return radius_; }
  std::size_t width() const { return width_; }

  bool peeked(std::size_t i) const { return peeked_.at(i) != 0; }
  std::size_t peeked_count() const;

  /// Grid slot of the primal value. Throws std::logic_error for fallback dimensions.
  std::size_t primal_index(std::size_t i) const;
  std::int64_t primal_value(std::size_t i) const { return x_.at(i) + r_.at(i); }
  std::int64_t grid_value(std::size_t i, std::size_t slot) const {
    return x_.at(i) - radius_ + static_cast<std::int64_t>(slot);
  }
  std::vector<std::int64_t> grid(std::size_t i) const;

  std::span<const std::uint8_t> mask(std::size_t i) const {
    return {masks_.data() + check_dim(i) * width_, width_};
  }

 private:
  friend class PeekScalar;

  std::size_t check_dim(std::size_t i) const {
    if (i >= x_.size()) throw std::out_of_range("dimension out of range");
    return i;
  }
  std::uint8_t* mask_data(std::uint32_t i) { return masks_.data() + static_cast<std::size_t>(i) * width_; }

  std::vector<std::int64_t> x_;
  std::vector<std::int64_t> r_;
  std::int64_t radius_;
  std::size_t width_;
  std::vector<std::uint8_t> peeked_;
  std::vector<std::uint8_t> masks_;
};

inline PeekContext make_context(std::span<const std::int64_t> x, std::span<const std::int64_t> r,
                                std::int64_t radius) {
  return PeekContext(x, r, radius);
}

class PeekScalar {
 public:
  using DimList = boost::container::small_vector<std::uint32_t, 4>;
  using RowStore = boost::container::small_vector<double, 16>;

  PeekScalar() = default;
  PeekScalar(double value) : primal_(value) {}  // NOLINT: implicit by design of the number contract

  /// Input variable for dimension i. Fallback dimensions yield a plain
  /// scalar x_i + R_i without dependencies.
  static PeekScalar lift(PeekContext& ctx, std::size_t i);

  double primal() const { return primal_; }
  PeekContext* context() const { return ctx_; }
  std::size_t dependency_count() const { return dims_.size(); }
  /// Dependency dimensions in ascending order.
  std::span<const std::uint32_t> dimensions() const { return {dims_.data(), dims_.size()}; }
  std::span<const double> row(std::size_t k) const {
    const auto w = ctx_->width();
    return {rows_.data() + k * w, w};
  }
  /// Row for dimension i, or an empty span when the value does not depend on it.
  std::span<const double> find_row(std::size_t i) const;

  bool compare(Relation rel, double rhs) const;
  bool compare(Relation rel, const PeekScalar& rhs) const;
  /// round(primal); clears slots whose rounded row value differs.
  std::int64_t select_index() const;

  template <class F>
  PeekScalar map(F f) const {
    PeekScalar out;
    out.primal_ = f(primal_);
    if (dims_.empty()) return out;
    out.ctx_ = ctx_;
    out.dims_ = dims_;
    out.rows_.resize(rows_.size());
    for (std::size_t k = 0; k < rows_.size(); ++k) out.rows_[k] = f(rows_[k]);
    return out;
  }

  template <class Op>
  static PeekScalar combine(const PeekScalar& a, const PeekScalar& b, Op op);
  template <class Op>
  static PeekScalar combine(const PeekScalar& a, double b, Op op) {
    return a.map([&](double v) { return op(v, b); });
  }
  template <class Op>
  static PeekScalar combine(double a, const PeekScalar& b, Op op) {
    return b.map([&](double v) { return op(a, v); });
  }

  template <class Op>
  PeekScalar& apply(const PeekScalar& b, Op op);
  template <class Op>
  PeekScalar& apply(double b, Op op) {
    primal_ = op(primal_, b);
    for (auto& v : rows_) v = op(v, b);
    return *this;
  }

  PeekScalar& operator+=(const PeekScalar& b) { return apply(b, std::plus<>{}); }
  PeekScalar& operator-=(const PeekScalar& b) { return apply(b, std::minus<>{}); }
  PeekScalar& operator*=(const PeekScalar& b) { return apply(b, std::multiplies<>{}); }
  PeekScalar& operator/=(const PeekScalar& b) { return apply(b, std::divides<>{}); }
  PeekScalar& operator+=(double b) { return apply(b, std::plus<>{}); }
  PeekScalar& operator-=(double b) { return apply(b, std::minus<>{}); }
  PeekScalar& operator*=(double b) { return apply(b, std::multiplies<>{}); }
  PeekScalar& operator/=(double b) { return apply(b, std::divides<>{}); }

 private:
  static PeekContext* shared_context(const PeekScalar& a, const PeekScalar& b);
  void refine(Relation rel, double rhs, bool truth) const;

  double primal_ = 0.0;
  PeekContext* ctx_ = nullptr;
  DimList dims_;
  RowStore rows_;
};

template <class Op>
PeekScalar PeekScalar::combine(const PeekScalar& a, const PeekScalar& b, Op op) {
  if (b.dims_.empty()) return combine(a, b.primal_, op);
  if (a.dims_.empty()) return combine(a.primal_, b, op);

  PeekScalar out;
  out.primal_ = op(a.primal_, b.primal_);
  out.ctx_ = shared_context(a, b);
  const std::size_t w = out.ctx_->width();

  if (a.dims_ == b.dims_) {
    out.dims_ = a.dims_;
    out.rows_.resize(a.rows_.size());
    for (std::size_t k = 0; k < a.rows_.size(); ++k) out.rows_[k] = op(a.rows_[k], b.rows_[k]);
    return out;
  }

  // Both lists are sorted, so the union is a linear merge.
  const std::size_t na = a.dims_.size();
  const std::size_t nb = b.dims_.size();
  out.dims_.reserve(na + nb);
  out.rows_.reserve((na + nb) * w);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < na || j < nb) {
    const double* ra = i < na ? a.rows_.data() + i * w : nullptr;
    const double* rb = j < nb ? b.rows_.data() + j * w : nullptr;
    if (j == nb || (i < na && a.dims_[i] < b.dims_[j])) {
      out.dims_.push_back(a.dims_[i++]);
      for (std::size_t s = 0; s < w; ++s) out.rows_.push_back(op(ra[s], b.primal_));
    } else if (i == na || b.dims_[j] < a.dims_[i]) {
      out.dims_.push_back(b.dims_[j++]);
      for (std::size_t s = 0; s < w; ++s) out.rows_.push_back(op(a.primal_, rb[s]));
    } else {
      out.dims_.push_back(a.dims_[i++]);
      ++j;
      for (std::size_t s = 0; s < w; ++s) out.rows_.push_back(op(ra[s], rb[s]));
    }
  }
  return out;
}

template <class Op>
PeekScalar& PeekScalar::apply(const PeekScalar& b, Op op) {
  if (b.dims_.empty()) return apply(b.primal_, op);
  if (!dims_.empty() && dims_ == b.dims_) {
    shared_context(*this, b);
    primal_ = op(primal_, b.primal_);
    for (std::size_t k = 0; k < rows_.size(); ++k) rows_[k] = op(rows_[k], b.rows_[k]);
    return *this;
  }
  *this = combine(*this, b, op);
  return *this;
}

namespace ops {
struct pow_op {
  double operator()(double a, double b) const { return std::pow(a, b); }
};
struct min_op {
  double operator()(double a, double b) const { return std::fmin(a, b); }
};
struct max_op {
  double operator()(double a, double b) const { return std::fmax(a, b); }
};
}  // namespace ops

// Arithmetic. Mixed operands with plain doubles skip the dependency merge.
#define PEEKGRAD_BINARY(sym, functor)                                                     \
  inline PeekScalar operator sym(const PeekScalar& a, const PeekScalar& b) {              \
    return PeekScalar::combine(a, b, functor{});                                          \
  }                                                                                       \
  inline PeekScalar operator sym(const PeekScalar& a, double b) {                         \
    return PeekScalar::combine(a, b, functor{});                                          \
  }                                                                                       \
  inline PeekScalar operator sym(double a, const PeekScalar& b) {                         \
    return PeekScalar::combine(a, b, functor{});                                          \
  }

PEEKGRAD_BINARY(+, std::plus<>)
PEEKGRAD_BINARY(-, std::minus<>)
PEEKGRAD_BINARY(*, std::multiplies<>)
PEEKGRAD_BINARY(/, std::divides<>)
#undef PEEKGRAD_BINARY

#define PEEKGRAD_BINARY_FN(name, functor)                                                 \
  inline PeekScalar name(const PeekScalar& a, const PeekScalar& b) {                      \
    return PeekScalar::combine(a, b, functor{});                                          \
  }                                                                                       \
  inline PeekScalar name(const PeekScalar& a, double b) {                                 \
    return PeekScalar::combine(a, b, functor{});                                          \
  }                                                                                       \
  inline PeekScalar name(double a, const PeekScalar& b) {                                 \
    return PeekScalar::combine(a, b, functor{});                                          \
  }

PEEKGRAD_BINARY_FN(pow, ops::pow_op)
PEEKGRAD_BINARY_FN(min, ops::min_op)
PEEKGRAD_BINARY_FN(max, ops::max_op)
#undef PEEKGRAD_BINARY_FN

inline PeekScalar operator-(const PeekScalar& a) {
  return a.map([](double v) { return -v; });
}
inline PeekScalar operator+(const PeekScalar& a) { return a; }
inline PeekScalar abs(const PeekScalar& a) {
  return a.map([](double v) { return std::fabs(v); });
}
inline PeekScalar exp(const PeekScalar& a) {
  return a.map([](double v) { return std::exp(v); });
}
inline PeekScalar log(const PeekScalar& a) {
  return a.map([](double v) { return std::log(v); });
}
inline PeekScalar sqrt(const PeekScalar& a) {
  return a.map([](double v) { return std::sqrt(v); });
}
inline PeekScalar floor(const PeekScalar& a) {
  return a.map([](double v) { return std::floor(v); });
}
inline PeekScalar round(const PeekScalar& a) {
  return a.map([](double v) { return std::round(v); });
}

// Comparisons update the equivalence masks of every dependency involved.
#define PEEKGRAD_COMPARE(sym, rel, mirrored)                                             \
  inline bool operator sym(const PeekScalar& a, const PeekScalar& b) {                   \
    return a.compare(Relation::rel, b);                                                  \
  }                                                                                      \
  inline bool operator sym(const PeekScalar& a, double b) {                              \
    return a.compare(Relation::rel, b);                                                  \
  }                                                                                      \
  inline bool operator sym(double a, const PeekScalar& b) {                              \
    return b.compare(Relation::mirrored, a);                                             \
  }

PEEKGRAD_COMPARE(<, less, greater)
PEEKGRAD_COMPARE(<=, less_equal, greater_equal)
PEEKGRAD_COMPARE(>, greater, less)
PEEKGRAD_COMPARE(>=, greater_equal, less_equal)
PEEKGRAD_COMPARE(==, equal, equal)
PEEKGRAD_COMPARE(!=, not_equal, not_equal)
#undef PEEKGRAD_COMPARE

/// round(primal). Clears mask slots whose rounded value selects a different
/// index. Throws std::domain_error for a non-finite primal.
inline std::int64_t to_index(const PeekScalar& a) { return a.select_index(); }

inline std::int64_t to_index(double a) {
  if (!std::isfinite(a)) throw std::domain_error("to_index: non-finite value");
  const auto idx = std::llround(a);
  record_decision(idx);
  return idx;
}

inline double primal_value(double a) { return a; }
inline double primal_value(const PeekScalar& a) { return a.primal(); }

inline PeekScalar lift_input(PeekContext& ctx, std::size_t i) { return PeekScalar::lift(ctx, i); }

/// Output row and equivalence mask of a finished run along dimension i.
struct Extraction {
  std::vector<double> row;
  std::vector<std::uint8_t> mask;
};

/// Throws std::logic_error when dimension i fell back to plain perturbation.
Extraction extract(const PeekContext& ctx, const PeekScalar& out, std::size_t i);

}  // namespace peekgrad
