// SPDX-License-Identifier: Apache-2.0
#include "peekgrad/rng.hpp"

namespace peekgrad {

double Stream::uniform() {
  // 53 random bits mapped to the open interval (0, 1).
  const auto bits = (*this)() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double Stream::normal() { return normal_(*this); }

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

}  // namespace peekgrad
