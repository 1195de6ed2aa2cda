// SPDX-License-Identifier: Apache-2.0
#include "peekgrad/models.hpp"

#include <stdexcept>

namespace peekgrad {

std::vector<std::int64_t> ObjectiveModel::reference_point() const {
  const auto lo = lower_bounds();
  const auto hi = upper_bounds();
  std::vector<std::int64_t> mid(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) mid[i] = lo[i] + (hi[i] - lo[i]) / 2;
  return mid;
}

namespace models {

namespace {

std::vector<double> fill_or_check(std::vector<double> v, std::size_t n, double fallback, const char* what) {
  if (v.empty()) return std::vector<double>(n, fallback);
  if (v.size() == 1 && n > 1) return std::vector<double>(n, v.front());
  if (v.size() != n) {
    throw std::invalid_argument(std::string("dynamnews: ") + what + " needs one entry per product");
  }
  return v;
}

}  // namespace

void DynamNewsParams::finalize() {
  if (n_products < 1) throw std::invalid_argument("dynamnews: need at least one product");
  unit_cost = fill_or_check(std::move(unit_cost), n_products, 5.0, "unit_cost");
  price = fill_or_check(std::move(price), n_products, 9.0, "price");
  if (base_utility.empty()) {
    base_utility.resize(n_products);
    for (std::size_t j = 0; j < n_products; ++j) {
      base_utility[j] = n_products == 1 ? 6.0 : 6.0 + 9.0 * static_cast<double>(j) / static_cast<double>(n_products - 1);
    }
  }
  base_utility = fill_or_check(std::move(base_utility), n_products, 6.0, "base_utility");
  for (std::size_t j = 0; j < n_products; ++j) {
    if (unit_cost[j] < 0.0 || price[j] < 0.0) throw std::invalid_argument("dynamnews: negative price or cost");
  }
  if (!(gumbel_scale > 0.0)) throw std::invalid_argument("dynamnews: gumbel_scale must be > 0");
  if (max_stock < 0 || max_price < 0) throw std::invalid_argument("dynamnews: negative bound");
}

DynamNewsParams DynamNewsParams::desk() {
  DynamNewsParams p;
  p.finalize();
  return p;
}

DynamNewsParams DynamNewsParams::large_scale() {
  DynamNewsParams p;
  p.n_products = 1000;
  p.n_customers = 3000;
  p.max_stock = 15;
  p.finalize();
  return p;
}

DynamNewsParams DynamNewsParams::from_config(const KeyValues& kv, DynamNewsParams base) {
  base.n_products = static_cast<std::size_t>(kv.get_int("dynamnews.products", static_cast<std::int64_t>(base.n_products)));
  base.n_customers = static_cast<std::size_t>(kv.get_int("dynamnews.customers", static_cast<std::int64_t>(base.n_customers)));
  if (kv.contains("dynamnews.products")) {
    // Per-product vectors sized for the old count are meaningless now.
    base.unit_cost.clear();
    base.price.clear();
    base.base_utility.clear();
  }
  base.unit_cost = kv.get_doubles("dynamnews.unit_cost", base.unit_cost);
  base.price = kv.get_doubles("dynamnews.price", base.price);
  base.base_utility = kv.get_doubles("dynamnews.utility", base.base_utility);
  base.gumbel_scale = kv.get_double("dynamnews.gumbel_scale", base.gumbel_scale);
  base.no_purchase_option = kv.get_bool("dynamnews.no_purchase", base.no_purchase_option);
  base.no_purchase_utility = kv.get_double("dynamnews.no_purchase_utility", base.no_purchase_utility);
  base.price_variables = kv.get_bool("dynamnews.price_variables", base.price_variables);
  base.cost_on_sold = kv.get_bool("dynamnews.cost_on_sold", base.cost_on_sold);
  base.max_stock = kv.get_int("dynamnews.max_stock", base.max_stock);
  base.max_price = kv.get_int("dynamnews.max_price", base.max_price);
  base.finalize();
  return base;
}

DynamNews::DynamNews(DynamNewsParams p) : p_(std::move(p)) { p_.finalize(); }

std::vector<std::int64_t> DynamNews::upper_bounds() const {
  std::vector<std::int64_t> hi(p_.n_products, p_.max_stock);
  if (p_.price_variables) hi.resize(2 * p_.n_products, p_.max_price);
  return hi;
}

std::vector<std::int64_t> DynamNews::reference_point() const {
  const auto per_product = static_cast<std::int64_t>(
      std::max<std::size_t>(1, p_.n_customers / p_.n_products));
  std::vector<std::int64_t> x(p_.n_products, std::min(per_product, p_.max_stock));
  if (p_.price_variables) {
    for (std::size_t j = 0; j < p_.n_products; ++j) x.push_back(std::llround(p_.price[j]));
  }
  return x;
}

// ---------------------------------------------------------------------------

void HotelParams::validate() const {
  if (n_nights != 7) throw std::invalid_argument("hotel: only weekly calendars are supported");
  if (capacity < 0) throw std::invalid_argument("hotel: negative capacity");
  if (products.empty()) throw std::invalid_argument("hotel: no products");
  if (!(week_length > 0.0)) throw std::invalid_argument("hotel: week_length must be > 0");
  for (const auto& p : products) {
    if (p.start_night < 0 || p.start_night >= n_nights) throw std::invalid_argument("hotel: start night outside week");
    if (p.length < 1 || p.length > n_nights) throw std::invalid_argument("hotel: invalid stay length");
    if (p.arrival_rate < 0.0 || p.price < 0.0) throw std::invalid_argument("hotel: negative rate or price");
  }
}

HotelParams HotelParams::standard(std::size_t n_products, std::int64_t capacity, double discount_rate,
                                  double full_rate, double discount_price, double full_price) {
  if (n_products < 1 || n_products > 56) throw std::invalid_argument("hotel: product count must be in [1, 56]");
  HotelParams hp;
  hp.capacity = capacity;
  for (std::size_t k = 0; k < n_products; ++k) {
    HotelProduct prod;
    prod.fare_class = static_cast<int>(k % 2);
    prod.length = static_cast<int>((k / 2) % 4) + 1;
    prod.start_night = static_cast<int>(k / 8);
    const double nightly = prod.fare_class == 0 ? discount_price : full_price;
    prod.price = nightly * prod.length;
    prod.arrival_rate = prod.fare_class == 0 ? discount_rate : full_rate;
    hp.products.push_back(prod);
  }
  hp.validate();
  return hp;
}

HotelParams HotelParams::desk() { return standard(10, 10); }

HotelParams HotelParams::large_scale() { return standard(56, 20); }

HotelParams HotelParams::from_config(const KeyValues& kv, HotelParams base) {
  if (kv.contains("hotel.products") || kv.contains("hotel.capacity") || kv.contains("hotel.discount_rate") ||
      kv.contains("hotel.full_rate")) {
    const auto n = kv.get_int("hotel.products", static_cast<std::int64_t>(base.products.size()));
    const auto cap = kv.get_int("hotel.capacity", base.capacity);
    const bool warm = base.warmup;
    base = standard(static_cast<std::size_t>(n), cap, kv.get_double("hotel.discount_rate", 3.0),
                    kv.get_double("hotel.full_rate", 1.5), kv.get_double("hotel.discount_price", 100.0),
                    kv.get_double("hotel.full_price", 175.0));
    base.warmup = warm;
  }
  base.warmup = kv.get_bool("hotel.warmup", base.warmup);
  base.validate();
  return base;
}

Hotel::Hotel(HotelParams p) : p_(std::move(p)) { p_.validate(); }

std::vector<std::int64_t> Hotel::reference_point() const {
  return std::vector<std::int64_t>(dimension(), std::max<std::int64_t>(1, p_.capacity / 4));
}

std::vector<Hotel::Arrival> Hotel::arrivals(Stream& rng) const {
  const std::size_t weeks = p_.warmup ? 2 : 1;
  std::vector<Arrival> out;
  for (std::size_t w = 0; w < weeks; ++w) {
    for (std::size_t j = 0; j < p_.products.size(); ++j) {
      const double rate = p_.products[j].arrival_rate;
      if (rate <= 0.0) continue;
      double t = exponential(rng, rate / p_.week_length);
      while (t < p_.week_length) {
        out.push_back({static_cast<double>(w) * p_.week_length + t, j, w});
        t += exponential(rng, rate / p_.week_length);
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Arrival& a, const Arrival& b) { return a.time < b.time; });
  return out;
}

// ---------------------------------------------------------------------------

std::unique_ptr<ObjectiveModel> build_model(const std::string& id, const KeyValues& kv) {
  if (id == "heaviside") {
    Heaviside h;
    h.offsets = kv.get_doubles("heaviside.offsets", h.offsets);
    if (kv.contains("heaviside.dimension")) {
      h.offsets.assign(static_cast<std::size_t>(kv.get_int("heaviside.dimension", 1)), h.offsets.front());
    }
    return make_model(h);
  }
  if (id == "linear") {
    Linear l;
    l.weights = kv.get_doubles("linear.weights", l.weights);
    return make_model(l);
  }
  if (id == "branchy") return make_model(BranchyPolynomial{});
  if (id == "dynamnews") return make_model(DynamNews(DynamNewsParams::from_config(kv, DynamNewsParams::desk())));
  if (id == "hotel") return make_model(Hotel(HotelParams::from_config(kv, HotelParams::desk())));
  throw std::invalid_argument("unknown model '" + id + "'");
}

bool is_maximization(const std::string& id) { return id == "dynamnews" || id == "hotel"; }

}  // namespace models
}  // namespace peekgrad
