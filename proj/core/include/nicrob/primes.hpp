#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nicrob/interval.hpp"

namespace nicrob {

enum class PrimeClass { P, Q };

std::string_view to_string(PrimeClass c) noexcept;

// Which quadratic form the exception lists are filtered by.
enum class Representation { None, TwoSquares, A2Plus3B2 };

std::string_view to_string(Representation r) noexcept;

struct SearchBounds {
  std::uint64_t max_k = 10000;
  std::uint64_t pk_minus_bound = 50000;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Partition of the primes into a class P (given by residues mod `modulus`
// plus explicit overrides) and its complement Q.
struct PrimeClassConfig {
  std::string name = "custom";
  std::uint64_t modulus = 4;
  std::vector<std::uint64_t> p_residues{1};
  std::vector<std::uint64_t> include_primes{2};
  std::vector<std::uint64_t> exclude_primes;
  SearchBounds search;
  Representation representation = Representation::None;

  // P = {p = 1 mod 4} u {2}; its S contains every sum of two squares.
  static PrimeClassConfig mod4();
  // P = {p = 1 mod 3} u {3}; Q-primes to even powers give a^2 + 3b^2.
  static PrimeClassConfig a2plus3b2();
  static std::optional<PrimeClassConfig> builtin(std::string_view name);

  // Throws ConfigError on a malformed partition.
  void validate() const;

  // Unchecked classification; p must be prime.
  PrimeClass class_of(std::uint64_t p) const noexcept;

  // True when this is the partition for which the k < 10000 bound is proven.
  bool has_proven_bounds() const;
};

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime_u64(std::uint64_t n) noexcept;

// Checked classification; throws std::invalid_argument for composite p.
PrimeClass classify(std::uint64_t p, const PrimeClassConfig& config);

// All primes <= limit, produced by a segmented sieve with a fixed window.
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit);

// Immutable table of primes up to a limit, split by class, with prefix
// enclosures of the class Chebyshev functions.
class PrimeTable {
 public:
  static constexpr mpfr_prec_t kThetaPrecision = 96;
  static constexpr std::uint64_t kDefaultMemoryBudget = std::uint64_t{1} << 30;

  static std::shared_ptr<const PrimeTable> build(std::uint64_t limit, const PrimeClassConfig& config,
                                                 std::uint64_t memory_budget = kDefaultMemoryBudget);

  std::uint64_t limit() const noexcept { return limit_; }
  const PrimeClassConfig& config() const noexcept { return config_; }
  std::span<const std::uint64_t> primes() const noexcept { return primes_; }
  std::span<const std::uint64_t> class_primes(PrimeClass c) const noexcept {
    return c == PrimeClass::P ? p_primes_ : q_primes_;
  }

  // 1-based; nullopt when the table is too short.
  std::optional<std::uint64_t> nth_class_prime(PrimeClass c, std::size_t i) const noexcept;

  // Counts of primes <= x. Throw std::out_of_range when x > limit.
  std::size_t pi(std::uint64_t x) const;
  std::size_t pi_class(std::uint64_t x, PrimeClass c) const;
  // Enclosure of the sum of log p over class primes <= x.
  Interval theta_class(std::uint64_t x, PrimeClass c) const;
  Interval theta(std::uint64_t x) const;

  // Smallest class prime > x / largest class prime < x, within the table.
  std::optional<std::uint64_t> next_class_prime(std::uint64_t x, PrimeClass c) const noexcept;
  std::optional<std::uint64_t> prev_class_prime(std::uint64_t x, PrimeClass c) const noexcept;

 private:
  PrimeTable() = default;
  void require_in_range(std::uint64_t x) const;

  std::uint64_t limit_ = 0;
  PrimeClassConfig config_;
  std::vector<std::uint64_t> primes_;
  std::vector<std::uint64_t> p_primes_;
  std::vector<std::uint64_t> q_primes_;
  // theta_prefix_[c][i] encloses the sum of log over the first i class primes.
  std::vector<Interval> p_theta_prefix_;
  std::vector<Interval> q_theta_prefix_;
};

// Shared handle over a growing PrimeTable. Queries that reach past the
// current limit build a new table of twice the size and swap it in; tables
// already handed out stay valid and unchanged.
class PrimeCatalog {
 public:
  explicit PrimeCatalog(const PrimeClassConfig& config, std::uint64_t initial_limit = 1 << 16);

  std::shared_ptr<const PrimeTable> table() const;
  // Table covering at least `limit`.
  std::shared_ptr<const PrimeTable> table_covering(std::uint64_t limit);
  // Table holding at least `count` primes of class c.
  std::shared_ptr<const PrimeTable> table_with_class_count(PrimeClass c, std::size_t count);

  const PrimeClassConfig& config() const noexcept { return config_; }

  std::uint64_t nth_class_prime(PrimeClass c, std::size_t i);
  std::uint64_t next_class_prime(std::uint64_t x, PrimeClass c);
  // nullopt when no smaller class prime exists.
  std::optional<std::uint64_t> prev_class_prime(std::uint64_t x, PrimeClass c);
  std::size_t pi_class(std::uint64_t x, PrimeClass c);

 private:
  std::shared_ptr<const PrimeTable> grow_to(std::uint64_t limit);

  PrimeClassConfig config_;
  mutable std::mutex mutex_;
  std::shared_ptr<const PrimeTable> table_;
};

struct DensitySample {
  std::uint64_t x = 0;
  std::size_t pi_p = 0;
  std::size_t pi_all = 0;
  double ratio = 0.0;  // pi_p / pi_all, 0 when no primes <= x
};

std::vector<DensitySample> density_profile(std::span<const std::uint64_t> sample_points,
                                           const PrimeClassConfig& config);

}  // namespace nicrob
