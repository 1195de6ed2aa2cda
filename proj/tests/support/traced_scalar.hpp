// SPDX-License-Identifier: Apache-2.0
#pragma once

// Plain scalar that reports every branch outcome and selected index to the
// active DecisionLog. Running a model with it yields the exact decision path
// of a scalar execution, which the peeked run's masks are checked against.

#include <cmath>
#include <cstdint>

#include "peekgrad/peek.hpp"

namespace peekgrad::testing {

struct TracedScalar {
  double v = 0.0;

  TracedScalar() = default;
  TracedScalar(double x) : v(x) {}  // NOLINT: mirrors the number contract

  TracedScalar& operator+=(TracedScalar b) { v += b.v; return *this; }
  TracedScalar& operator-=(TracedScalar b) { v -= b.v; return *this; }
  TracedScalar& operator*=(TracedScalar b) { v *= b.v; return *this; }
  TracedScalar& operator/=(TracedScalar b) { v /= b.v; return *this; }
};

inline TracedScalar operator+(TracedScalar a, TracedScalar b) { return a.v + b.v; }
inline TracedScalar operator-(TracedScalar a, TracedScalar b) { return a.v - b.v; }
inline TracedScalar operator*(TracedScalar a, TracedScalar b) { return a.v * b.v; }
inline TracedScalar operator/(TracedScalar a, TracedScalar b) { return a.v / b.v; }
inline TracedScalar operator-(TracedScalar a) { return -a.v; }

inline bool traced(bool outcome) {
  record_decision(outcome ? 1 : 0);
  return outcome;
}

inline bool operator<(TracedScalar a, TracedScalar b) { return traced(a.v < b.v); }
inline bool operator<=(TracedScalar a, TracedScalar b) { return traced(a.v <= b.v); }
inline bool operator>(TracedScalar a, TracedScalar b) { return traced(a.v > b.v); }
inline bool operator>=(TracedScalar a, TracedScalar b) { return traced(a.v >= b.v); }
inline bool operator==(TracedScalar a, TracedScalar b) { return traced(a.v == b.v); }
inline bool operator!=(TracedScalar a, TracedScalar b) { return traced(a.v != b.v); }

inline std::int64_t to_index(TracedScalar a) { return peekgrad::to_index(a.v); }
inline double primal_value(TracedScalar a) { return a.v; }

}  // namespace peekgrad::testing
