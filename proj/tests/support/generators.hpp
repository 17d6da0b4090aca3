#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nicrob/factored.hpp"

namespace nicrob::testing {

inline const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<std::uint64_t> primes = [] {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 2; out.size() < 60; ++n) {
      bool prime = true;
      for (auto p : out) {
        if (p * p > n) break;
        if (n % p == 0) {
          prime = false;
          break;
        }
      }
      if (prime) out.push_back(n);
    }
    return out;
  }();
  return primes;
}

// Random factored number over the first `pool` primes; each prime is
// present with probability `density` and carries an exponent in [1, max_e].
class FactoredGen {
 public:
  explicit FactoredGen(std::uint64_t seed) : rng_(seed) {}

  FactoredNumber next(std::size_t pool = 30, double density = 0.3, std::uint32_t max_e = 4) {
    std::bernoulli_distribution keep(density);
    std::uniform_int_distribution<std::uint32_t> exp(1, max_e);
    std::vector<PrimePower> f;
    for (std::size_t i = 0; i < pool && i < small_primes().size(); ++i) {
      if (keep(rng_)) f.push_back({small_primes()[i], exp(rng_)});
    }
    return FactoredNumber(std::move(f));
  }

  // Value at most `bound`, built prime by prime.
  FactoredNumber bounded(std::uint64_t bound) {
    std::uniform_int_distribution<std::size_t> pick(0, 24);
    std::uint64_t value = 1;
    std::vector<PrimePower> f;
    for (int tries = 0; tries < 12; ++tries) {
      const auto p = small_primes()[pick(rng_)];
      if (value > bound / p) break;
      value *= p;
      f.push_back({p, 1});
    }
    return FactoredNumber(std::move(f));
  }

  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace nicrob::testing
