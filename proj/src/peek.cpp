// SPDX-License-Identifier: Apache-2.0
#include "peekgrad/peek.hpp"

#include <algorithm>

namespace peekgrad {

PeekContext::PeekContext(std::span<const std::int64_t> x, std::span<const std::int64_t> r,
                         std::int64_t radius)
    : x_(x.begin(), x.end()), r_(r.begin(), r.end()), radius_(radius), width_(0) {
  if (x.size() != r.size()) throw std::invalid_argument("make_context: |x| != |R|");
  if (x.empty()) throw std::invalid_argument("make_context: empty input");
  if (radius < 0) throw std::invalid_argument("make_context: negative coverage radius");
  width_ = static_cast<std::size_t>(2 * radius + 1);
  peeked_.resize(x_.size());
  for (std::size_t i = 0; i < x_.size(); ++i) peeked_[i] = std::llabs(r_[i]) <= radius ? 1 : 0;
  masks_.assign(x_.size() * width_, 1);
}

std::size_t PeekContext::peeked_count() const {
  return static_cast<std::size_t>(std::count(peeked_.begin(), peeked_.end(), std::uint8_t{1}));
}

std::size_t PeekContext::primal_index(std::size_t i) const {
  if (!peeked(i)) throw std::logic_error("primal_index: dimension fell back to plain perturbation");
  return static_cast<std::size_t>(r_[i] + radius_);
}

std::vector<std::int64_t> PeekContext::grid(std::size_t i) const {
  std::vector<std::int64_t> g(width_);
  for (std::size_t s = 0; s < width_; ++s) g[s] = grid_value(i, s);
  return g;
}

PeekScalar PeekScalar::lift(PeekContext& ctx, std::size_t i) {
  PeekScalar out(static_cast<double>(ctx.primal_value(i)));
  if (!ctx.peeked(i)) return out;
  out.ctx_ = &ctx;
  out.dims_.push_back(static_cast<std::uint32_t>(i));
  out.rows_.resize(ctx.width());
  for (std::size_t s = 0; s < ctx.width(); ++s) out.rows_[s] = static_cast<double>(ctx.grid_value(i, s));
  return out;
}

std::span<const double> PeekScalar::find_row(std::size_t i) const {
  const auto it = std::lower_bound(dims_.begin(), dims_.end(), static_cast<std::uint32_t>(i));
  if (it == dims_.end() || *it != i) return {};
  return row(static_cast<std::size_t>(it - dims_.begin()));
}

PeekContext* PeekScalar::shared_context(const PeekScalar& a, const PeekScalar& b) {
  if (a.ctx_ && b.ctx_ && a.ctx_ != b.ctx_) {
    throw std::logic_error("PeekScalar operands belong to different contexts");
  }
  return a.ctx_ ? a.ctx_ : b.ctx_;
}

namespace {

// Slot survives iff its outcome matches the primal one. NaN entries never
// match a non-NaN primal.
template <class Cmp>
void refine_row(const double* row, std::uint8_t* mask, std::size_t w, double primal, double rhs,
                bool truth, Cmp cmp) {
  const bool primal_nan = std::isnan(primal);
  for (std::size_t s = 0; s < w; ++s) {
    const double v = row[s];
    bool keep;
    if (std::isnan(v) || primal_nan) {
      keep = std::isnan(v) && primal_nan;
    } else {
      keep = cmp(v, rhs) == truth;
    }
    mask[s] &= static_cast<std::uint8_t>(keep);
  }
}

}  // namespace

void PeekScalar::refine(Relation rel, double rhs, bool truth) const {
  if (dims_.empty()) return;
  const std::size_t w = ctx_->width();
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    const double* r = rows_.data() + k * w;
    std::uint8_t* m = ctx_->mask_data(dims_[k]);
    switch (rel) {
      case Relation::less: refine_row(r, m, w, primal_, rhs, truth, std::less<>{}); break;
      case Relation::less_equal: refine_row(r, m, w, primal_, rhs, truth, std::less_equal<>{}); break;
      case Relation::greater: refine_row(r, m, w, primal_, rhs, truth, std::greater<>{}); break;
      case Relation::greater_equal: refine_row(r, m, w, primal_, rhs, truth, std::greater_equal<>{}); break;
      case Relation::equal: refine_row(r, m, w, primal_, rhs, truth, std::equal_to<>{}); break;
      case Relation::not_equal: refine_row(r, m, w, primal_, rhs, truth, std::not_equal_to<>{}); break;
    }
  }
}

bool PeekScalar::compare(Relation rel, double rhs) const {
  const bool truth = holds(rel, primal_, rhs);
  refine(rel, rhs, truth);
  record_decision(truth ? 1 : 0);
  return truth;
}

bool PeekScalar::compare(Relation rel, const PeekScalar& rhs) const {
  if (rhs.dims_.empty()) return compare(rel, rhs.primal_);
  // Reduce to (a - b) rel 0, but keep the primal outcome on the original operands.
  const PeekScalar diff = *this - rhs;
  const bool truth = holds(rel, primal_, rhs.primal_);
  diff.refine(rel, 0.0, truth);
  record_decision(truth ? 1 : 0);
  return truth;
}

std::int64_t PeekScalar::select_index() const {
  if (!std::isfinite(primal_)) throw std::domain_error("to_index: non-finite primal value");
  const auto idx = std::llround(primal_);
  if (!dims_.empty()) {
    const std::size_t w = ctx_->width();
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      const double* r = rows_.data() + k * w;
      std::uint8_t* m = ctx_->mask_data(dims_[k]);
      for (std::size_t s = 0; s < w; ++s) {
        if (!std::isfinite(r[s]) || std::llround(r[s]) != idx) m[s] = 0;
      }
    }
  }
  record_decision(idx);
  return idx;
}

Extraction extract(const PeekContext& ctx, const PeekScalar& out, std::size_t i) {
  if (!ctx.peeked(i)) throw std::logic_error("extract: dimension fell back to plain perturbation");
  if (out.context() && out.context() != &ctx) throw std::logic_error("extract: foreign context");
  Extraction e;
  const auto row = out.find_row(i);
  if (row.empty()) {
    e.row.assign(ctx.width(), out.primal());
  } else {
    e.row.assign(row.begin(), row.end());
  }
  const auto m = ctx.mask(i);
  e.mask.assign(m.begin(), m.end());
  return e;
}

}  // namespace peekgrad
