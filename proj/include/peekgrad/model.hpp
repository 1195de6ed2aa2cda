// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "peekgrad/peek.hpp"
#include "peekgrad/rng.hpp"

namespace peekgrad {

/// A simulation f: Z^d -> R that runs unchanged on plain doubles or on
/// PeekScalars.
///
/// Implementations must draw random numbers in an order that does not depend
/// on parameter values, and route every parameter-dependent branch or index
/// through a comparison or to_index().
class ObjectiveModel {
 public:
  virtual ~ObjectiveModel() = default;

  virtual std::string name() const = 0;
  virtual std::size_t dimension() const = 0;
  virtual std::vector<std::int64_t> lower_bounds() const = 0;
  virtual std::vector<std::int64_t> upper_bounds() const = 0;
  virtual bool stochastic() const = 0;
  /// Point used for variance and verification experiments. Defaults to the
  /// midpoint of the bounds.
  virtual std::vector<std::int64_t> reference_point() const;

  virtual double evaluate(std::span<const double> x, Stream& rng) const = 0;
  virtual PeekScalar evaluate(std::span<const PeekScalar> x, Stream& rng) const = 0;

  double evaluate_at(std::span<const std::int64_t> x, Stream& rng) const {
    std::vector<double> v(x.begin(), x.end());
    return evaluate(std::span<const double>(v), rng);
  }
};

/// Adapts a model type exposing `template <class T> T run(std::span<const T>, Stream&) const`
/// plus the descriptive members to the ObjectiveModel interface.
template <class Impl>
class GenericModel final : public ObjectiveModel {
 public:
  explicit GenericModel(Impl impl) : impl_(std::move(impl)) {}

  const Impl& impl() const { return impl_; }

  std::string name() const override { return impl_.name(); }
  std::size_t dimension() const override { return impl_.dimension(); }
  std::vector<std::int64_t> lower_bounds() const override { return impl_.lower_bounds(); }
  std::vector<std::int64_t> upper_bounds() const override { return impl_.upper_bounds(); }
  bool stochastic() const override { return impl_.stochastic(); }
  std::vector<std::int64_t> reference_point() const override {
    if constexpr (requires { impl_.reference_point(); }) {
      return impl_.reference_point();
    } else {
      return ObjectiveModel::reference_point();
    }
  }

  double evaluate(std::span<const double> x, Stream& rng) const override {
    return impl_.template run<double>(x, rng);
  }
  PeekScalar evaluate(std::span<const PeekScalar> x, Stream& rng) const override {
    return impl_.template run<PeekScalar>(x, rng);
  }

 private:
  Impl impl_;
};

template <class Impl>
std::unique_ptr<ObjectiveModel> make_model(Impl impl) {
  return std::make_unique<GenericModel<Impl>>(std::move(impl));
}

/// Negates another model's output; turns maximization problems into minimization.
class NegatedModel final : public ObjectiveModel {
 public:
  explicit NegatedModel(std::shared_ptr<const ObjectiveModel> inner) : inner_(std::move(inner)) {}

  std::string name() const override { return inner_->name(); }
  std::size_t dimension() const override { return inner_->dimension(); }
  std::vector<std::int64_t> lower_bounds() const override { return inner_->lower_bounds(); }
  std::vector<std::int64_t> upper_bounds() const override { return inner_->upper_bounds(); }
  bool stochastic() const override { return inner_->stochastic(); }
  std::vector<std::int64_t> reference_point() const override { return inner_->reference_point(); }

  double evaluate(std::span<const double> x, Stream& rng) const override {
    return -inner_->evaluate(x, rng);
  }
  PeekScalar evaluate(std::span<const PeekScalar> x, Stream& rng) const override {
    return -inner_->evaluate(x, rng);
  }

 private:
  std::shared_ptr<const ObjectiveModel> inner_;
};

}  // namespace peekgrad
