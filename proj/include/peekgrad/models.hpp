// SPDX-License-Identifier: Apache-2.0
#pragma once

// Benchmark objectives written once against the peekable-number contract:
// T is either double or PeekScalar. Every decision-dependent branch goes
// through an overloaded comparison so that peeked runs track equivalence.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "peekgrad/keyvalue.hpp"
#include "peekgrad/model.hpp"
#include "peekgrad/peek.hpp"
#include "peekgrad/rng.hpp"

namespace peekgrad::models {

/// Gumbel(0, scale) by inversion; consumes one uniform.
inline double gumbel(Stream& rng, double scale) { return -scale * std::log(-std::log(rng.uniform())); }

/// Exponential(rate) by inversion; consumes one uniform.
inline double exponential(Stream& rng, double rate) { return -std::log(rng.uniform()) / rate; }

// ---------------------------------------------------------------------------

/// Sum of unit steps, sum_i H(x_i - a_i) with H(0) = 1.
struct Heaviside {
  std::vector<double> offsets{0.0};
  std::int64_t bound = 1000;

  std::string name() const { return "heaviside"; }
  std::size_t dimension() const { return offsets.size(); }
  std::vector<std::int64_t> lower_bounds() const { return std::vector<std::int64_t>(dimension(), -bound); }
  std::vector<std::int64_t> upper_bounds() const { return std::vector<std::int64_t>(dimension(), bound); }
  std::vector<std::int64_t> reference_point() const { return std::vector<std::int64_t>(dimension(), 0); }
  bool stochastic() const { return false; }

  template <class T>
  T run(std::span<const T> x, Stream&) const {
    double steps = 0.0;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      if (x[i] >= offsets[i]) steps += 1.0;
    }
    return T(steps);
  }
};

/// Branchless w . x.
struct Linear {
  std::vector<double> weights{3.0};
  std::int64_t bound = 1000;

  std::string name() const { return "linear"; }
  std::size_t dimension() const { return weights.size(); }
  std::vector<std::int64_t> lower_bounds() const { return std::vector<std::int64_t>(dimension(), -bound); }
  std::vector<std::int64_t> upper_bounds() const { return std::vector<std::int64_t>(dimension(), bound); }
  std::vector<std::int64_t> reference_point() const { return std::vector<std::int64_t>(dimension(), 0); }
  bool stochastic() const { return false; }

  template <class T>
  T run(std::span<const T> x, Stream&) const {
    T acc(0.0);
    for (std::size_t i = 0; i < weights.size(); ++i) acc += weights[i] * x[i];
    return acc;
  }
};

/// Deterministic 2-d polynomial with data-dependent branches, used to check
/// estimator identities on a model whose classes are not half-lines.
struct BranchyPolynomial {
  std::string name() const { return "branchy"; }
  std::size_t dimension() const { return 2; }
  std::vector<std::int64_t> lower_bounds() const { return {-50, -50}; }
  std::vector<std::int64_t> upper_bounds() const { return {50, 50}; }
  std::vector<std::int64_t> reference_point() const { return {1, 2}; }
  bool stochastic() const { return false; }

  template <class T>
  T run(std::span<const T> x, Stream&) const {
    const T prod = x[0] * x[1];
    T y;
    if (prod > 2.0) {
      y = x[0] * x[0] - 3.0 * x[1];
    } else {
      y = 2.0 * x[0] + x[1] * x[1];
    }
    if (x[1] - x[0] >= 3.0) y += 4.0;
    if (x[0] < -2.0) y = y * 0.5;
    return y;
  }
};

// ---------------------------------------------------------------------------

struct DynamNewsParams {
  std::size_t n_products = 20;
  std::size_t n_customers = 100;
  std::vector<double> unit_cost;      // per product; empty -> 5
  std::vector<double> price;          // per product; empty -> 9
  std::vector<double> base_utility;   // per product; empty -> spread over [6, 15]
  double gumbel_scale = 1.0;
  /// Customers may walk away; the outside option has this utility plus a Gumbel draw.
  bool no_purchase_option = true;
  double no_purchase_utility = 0.0;
  /// Append one integer price variable per product to the decision vector.
  bool price_variables = false;
  /// Charge unit cost on sold units instead of on the initial stock.
  bool cost_on_sold = false;
  std::int64_t max_stock = 15;
  std::int64_t max_price = 30;

  /// Fills per-product defaults and checks invariants. Throws std::invalid_argument.
  void finalize();

  static DynamNewsParams desk();
  static DynamNewsParams large_scale();
  static DynamNewsParams from_config(const KeyValues& kv, DynamNewsParams base);
};

/// Newsvendor with dynamic substitution. Decision variables are the initial
/// stock levels (and optionally the prices). Objective is revenue minus cost,
/// to be maximized.
class DynamNews {
 public:
  explicit DynamNews(DynamNewsParams p);

  const DynamNewsParams& params() const { return p_; }

  std::string name() const { return "dynamnews"; }
  std::size_t dimension() const { return p_.n_products * (p_.price_variables ? 2 : 1); }
  std::vector<std::int64_t> lower_bounds() const { return std::vector<std::int64_t>(dimension(), 0); }
  std::vector<std::int64_t> upper_bounds() const;
  std::vector<std::int64_t> reference_point() const;
  bool stochastic() const { return true; }

  /// Units sold per product in the last run on this thread (for invariants).
  struct Tally {
    std::vector<std::int64_t> sold;
    std::vector<double> initial_stock;
  };

  template <class T>
  T run(std::span<const T> x, Stream& rng, Tally* tally = nullptr) const;

 private:
  DynamNewsParams p_;
};

template <class T>
T DynamNews::run(std::span<const T> x, Stream& rng, Tally* tally) const {
  const std::size_t n = p_.n_products;
  std::vector<T> stock(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
  for (auto& s : stock) {
    if (s < 0.0) s = T(0.0);
  }
  const std::vector<T> initial = stock;

  std::vector<std::int64_t> sold(n, 0);
  std::vector<double> utility(n);
  T revenue(0.0);
  for (std::size_t c = 0; c < p_.n_customers; ++c) {
    // All draws happen up front so the stream position never depends on stock.
    for (std::size_t j = 0; j < n; ++j) utility[j] = p_.base_utility[j] + gumbel(rng, p_.gumbel_scale);
    double best_utility = p_.no_purchase_option ? p_.no_purchase_utility + gumbel(rng, p_.gumbel_scale)
                                                : -HUGE_VAL;
    std::size_t best = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (stock[j] > 0.0 && utility[j] > best_utility) {
        best_utility = utility[j];
        best = j;
      }
    }
    if (best == n) continue;
    stock[best] -= 1.0;
    ++sold[best];
    if (p_.price_variables) {
      revenue += x[n + best];
    } else {
      revenue += p_.price[best];
    }
  }

  T objective = revenue;
  for (std::size_t j = 0; j < n; ++j) {
    if (p_.cost_on_sold) {
      objective -= p_.unit_cost[j] * static_cast<double>(sold[j]);
    } else {
      objective -= p_.unit_cost[j] * initial[j];
    }
  }
  if (tally) {
    tally->sold = sold;
    tally->initial_stock.clear();
    for (const auto& s : initial) tally->initial_stock.push_back(primal_value(s));
  }
  return objective;
}

// ---------------------------------------------------------------------------

struct HotelProduct {
  int start_night = 0;  // weekday 0..6 the stay begins
  int length = 1;       // number of nights
  int fare_class = 0;   // 0 = discount, 1 = full fare
  double price = 0.0;
  double arrival_rate = 0.0;  // expected requests per booking week
};

struct HotelParams {
  int n_nights = 7;
  std::int64_t capacity = 10;
  std::vector<HotelProduct> products;
  /// Simulate one extra week first and count revenue only for the second one.
  bool warmup = true;
  double week_length = 7.0;

  void validate() const;

  /// First `n_products` entries of the (start night, length 1..4, fare class)
  /// product grid; 56 products cover every combination.
  static HotelParams standard(std::size_t n_products, std::int64_t capacity, double discount_rate = 3.0,
                              double full_rate = 1.5, double discount_price = 100.0,
                              double full_price = 175.0);
  static HotelParams desk();
  static HotelParams large_scale();
  static HotelParams from_config(const KeyValues& kv, HotelParams base);
};

/// Revenue management with booking limits per product. Each accepted stay
/// consumes one room on every night it covers; stays that begin late in a
/// week spill into the next one, which is why a warmup week matters.
class Hotel {
 public:
  explicit Hotel(HotelParams p);

  const HotelParams& params() const { return p_; }

  std::string name() const { return "hotel"; }
  std::size_t dimension() const { return p_.products.size(); }
  std::vector<std::int64_t> lower_bounds() const { return std::vector<std::int64_t>(dimension(), 0); }
  std::vector<std::int64_t> upper_bounds() const {
    return std::vector<std::int64_t>(dimension(), p_.capacity);
  }
  std::vector<std::int64_t> reference_point() const;
  bool stochastic() const { return true; }

  struct Tally {
    std::vector<std::int64_t> occupancy;                 // per calendar night
    std::vector<std::vector<std::int64_t>> accepted;     // [week][product]
  };

  template <class T>
  T run(std::span<const T> x, Stream& rng, Tally* tally = nullptr) const;

 private:
  struct Arrival {
    double time;
    std::size_t product;
    std::size_t week;
  };

  std::vector<Arrival> arrivals(Stream& rng) const;

  HotelParams p_;
};

template <class T>
T Hotel::run(std::span<const T> x, Stream& rng, Tally* tally) const {
  const std::size_t weeks = p_.warmup ? 2 : 1;
  const auto requests = arrivals(rng);

  std::vector<std::int64_t> occupancy(weeks * 7 + 7, 0);
  std::vector<std::vector<std::int64_t>> accepted(weeks, std::vector<std::int64_t>(p_.products.size(), 0));
  double revenue = 0.0;
  for (const auto& a : requests) {
    const auto& prod = p_.products[a.product];
    auto& count = accepted[a.week][a.product];
    if (!(static_cast<double>(count) < x[a.product])) continue;
    const std::size_t first = a.week * 7 + static_cast<std::size_t>(prod.start_night);
    bool room = true;
    for (std::size_t night = first; night < first + static_cast<std::size_t>(prod.length); ++night) {
      if (occupancy[night] >= p_.capacity) {
        room = false;
        break;
      }
    }
    if (!room) continue;
    ++count;
    for (std::size_t night = first; night < first + static_cast<std::size_t>(prod.length); ++night) {
      ++occupancy[night];
    }
    if (a.week + 1 == weeks) revenue += prod.price;
  }
  if (tally) {
    tally->occupancy = occupancy;
    tally->accepted = accepted;
  }
  return T(revenue);
}

// ---------------------------------------------------------------------------

/// Builds a model by id ("heaviside", "linear", "branchy", "dynamnews",
/// "hotel"). Keys of `kv` prefixed with the model id override defaults, e.g.
/// `dynamnews.products = 20`. Throws std::invalid_argument for unknown ids.
std::unique_ptr<ObjectiveModel> build_model(const std::string& id, const KeyValues& kv = {});

/// True for models whose objective is maximized (revenue) and is negated
/// before minimization.
bool is_maximization(const std::string& id);

}  // namespace peekgrad::models
