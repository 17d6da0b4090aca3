#include "nicrob/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nicrob {

std::string_view to_string(PrimeClass c) noexcept { return c == PrimeClass::P ? "P" : "Q"; }

std::string_view to_string(Representation r) noexcept {
  switch (r) {
    case Representation::None: return "none";
    case Representation::TwoSquares: return "two_squares";
    case Representation::A2Plus3B2: return "a2_plus_3b2";
  }
  return "none";
}

PrimeClassConfig PrimeClassConfig::mod4() {
  PrimeClassConfig c;
  c.name = "mod4";
  c.modulus = 4;
  c.p_residues = {1};
  c.include_primes = {2};
  c.exclude_primes = {};
  c.representation = Representation::TwoSquares;
  return c;
}

PrimeClassConfig PrimeClassConfig::a2plus3b2() {
  PrimeClassConfig c;
  c.name = "a2plus3b2";
  c.modulus = 3;
  c.p_residues = {1};
  c.include_primes = {3};
  c.exclude_primes = {};
  c.representation = Representation::A2Plus3B2;
  return c;
}

std::optional<PrimeClassConfig> PrimeClassConfig::builtin(std::string_view name) {
  if (name == "mod4") return mod4();
  if (name == "a2plus3b2") return a2plus3b2();
  return std::nullopt;
}

void PrimeClassConfig::validate() const {
  constexpr std::uint64_t kMaxModulus = 1'000'000;
  if (modulus < 2 || modulus > kMaxModulus) {
    throw ConfigError("modulus must lie in [2, " + std::to_string(kMaxModulus) + "]");
  }
  std::size_t coprime = 0;
  for (std::uint64_t a = 0; a < modulus; ++a) coprime += std::gcd(a, modulus) == 1;

  std::vector<std::uint64_t> residues(p_residues);
  std::sort(residues.begin(), residues.end());
  if (std::adjacent_find(residues.begin(), residues.end()) != residues.end()) {
    throw ConfigError("p_residues contains duplicates");
  }
  if (residues.empty()) throw ConfigError("p_residues must be non-empty");
  for (auto r : residues) {
    if (r >= modulus) throw ConfigError("residue " + std::to_string(r) + " is not reduced mod modulus");
    if (std::gcd(r, modulus) != 1) {
      throw ConfigError("residue " + std::to_string(r) + " is not coprime to the modulus");
    }
  }
  if (residues.size() >= coprime) {
    throw ConfigError("p_residues must be a proper subset of the residues coprime to the modulus");
  }
  for (const auto* list : {&include_primes, &exclude_primes}) {
    for (auto p : *list) {
      if (!is_prime_u64(p)) throw ConfigError("override " + std::to_string(p) + " is not prime");
    }
  }
  for (auto p : include_primes) {
    if (std::find(exclude_primes.begin(), exclude_primes.end(), p) != exclude_primes.end()) {
      throw ConfigError("prime " + std::to_string(p) + " is both included and excluded");
    }
  }
  if (search.max_k == 0) throw ConfigError("search.max_k must be positive");
  if (search.pk_minus_bound < 2) throw ConfigError("search.pk_minus_bound must be at least 2");
}

PrimeClass PrimeClassConfig::class_of(std::uint64_t p) const noexcept {
  for (auto q : include_primes) {
    if (q == p) return PrimeClass::P;
  }
  for (auto q : exclude_primes) {
    if (q == p) return PrimeClass::Q;
  }
  const std::uint64_t r = p % modulus;
  for (auto a : p_residues) {
    if (a == r) return PrimeClass::P;
  }
  return PrimeClass::Q;
}

bool PrimeClassConfig::has_proven_bounds() const {
  return modulus == 4 && p_residues == std::vector<std::uint64_t>{1} &&
         include_primes == std::vector<std::uint64_t>{2} && exclude_primes.empty();
}

namespace {

__extension__ using uint128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<uint128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) noexcept {
  if (n < 2) return false;
  constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto p : kBases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto a : kBases) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeClass classify(std::uint64_t p, const PrimeClassConfig& config) {
  if (!is_prime_u64(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  return config.class_of(p);
}

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;

  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
  std::vector<char> small(root + 1, 1);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
  }

  constexpr std::uint64_t kWindow = 1 << 15;
  std::vector<char> window(kWindow);
  std::vector<std::uint64_t> next(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) next[i] = base[i] * base[i];

  for (std::uint64_t low = 2; low <= limit; low += kWindow) {
    const std::uint64_t high = std::min(low + kWindow - 1, limit);
    std::fill(window.begin(), window.end(), 1);
    for (std::size_t i = 0; i < base.size(); ++i) {
      const std::uint64_t p = base[i];
      if (p * p > high) break;
      std::uint64_t j = next[i];
      for (; j <= high; j += p) window[j - low] = 0;
      next[i] = j;
    }
    for (std::uint64_t n = low; n <= high; ++n) {
      if (window[n - low]) primes.push_back(n);
    }
  }
  return primes;
}

std::shared_ptr<const PrimeTable> PrimeTable::build(std::uint64_t limit,
                                                    const PrimeClassConfig& config,
                                                    std::uint64_t memory_budget) {
  if (limit < 2) throw std::invalid_argument("prime table limit must be at least 2");
  // Per prime: the value, its class copy and one interval prefix entry.
  constexpr double kBytesPerPrime = 8 + 8 + 2 * (sizeof(__mpfr_struct) + 16);
  const double estimated = 1.3 * static_cast<double>(limit) / std::log(static_cast<double>(limit) + 1) *
                           kBytesPerPrime;
  if (estimated > static_cast<double>(memory_budget)) {
    throw ResourceError("prime table up to " + std::to_string(limit) + " needs about " +
                        std::to_string(static_cast<std::uint64_t>(estimated) >> 20) +
                        " MiB; raise the memory budget or lower the limit");
  }

  std::shared_ptr<PrimeTable> table(new PrimeTable());
  table->limit_ = limit;
  table->config_ = config;
  table->primes_ = sieve_primes(limit);
  for (auto p : table->primes_) {
    (config.class_of(p) == PrimeClass::P ? table->p_primes_ : table->q_primes_).push_back(p);
  }
  for (auto [seq, prefix] : {std::pair{&table->p_primes_, &table->p_theta_prefix_},
                              std::pair{&table->q_primes_, &table->q_theta_prefix_}}) {
    prefix->reserve(seq->size() + 1);
    prefix->emplace_back(kThetaPrecision);
    for (auto p : *seq) {
      prefix->push_back(prefix->back() + Interval::from_u64(p, kThetaPrecision).log());
    }
  }
  return table;
}

std::optional<std::uint64_t> PrimeTable::nth_class_prime(PrimeClass c, std::size_t i) const noexcept {
  const auto seq = class_primes(c);
  if (i == 0 || i > seq.size()) return std::nullopt;
  return seq[i - 1];
}

void PrimeTable::require_in_range(std::uint64_t x) const {
  if (x > limit_) {
    throw std::out_of_range("query " + std::to_string(x) + " exceeds prime table limit " +
                            std::to_string(limit_));
  }
}

std::size_t PrimeTable::pi(std::uint64_t x) const {
  require_in_range(x);
  return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

std::size_t PrimeTable::pi_class(std::uint64_t x, PrimeClass c) const {
  require_in_range(x);
  const auto seq = class_primes(c);
  return static_cast<std::size_t>(std::upper_bound(seq.begin(), seq.end(), x) - seq.begin());
}

Interval PrimeTable::theta_class(std::uint64_t x, PrimeClass c) const {
  const std::size_t count = pi_class(x, c);
  return (c == PrimeClass::P ? p_theta_prefix_ : q_theta_prefix_)[count];
}

Interval PrimeTable::theta(std::uint64_t x) const {
  return theta_class(x, PrimeClass::P) + theta_class(x, PrimeClass::Q);
}

std::optional<std::uint64_t> PrimeTable::next_class_prime(std::uint64_t x, PrimeClass c) const noexcept {
  const auto seq = class_primes(c);
  auto it = std::upper_bound(seq.begin(), seq.end(), x);
  if (it == seq.end()) return std::nullopt;
  return *it;
}

std::optional<std::uint64_t> PrimeTable::prev_class_prime(std::uint64_t x, PrimeClass c) const noexcept {
  const auto seq = class_primes(c);
  auto it = std::lower_bound(seq.begin(), seq.end(), x);
  if (it == seq.begin()) return std::nullopt;
  return *std::prev(it);
}

PrimeCatalog::PrimeCatalog(const PrimeClassConfig& config, std::uint64_t initial_limit)
    : config_(config), table_(PrimeTable::build(std::max<std::uint64_t>(initial_limit, 16), config)) {}

std::shared_ptr<const PrimeTable> PrimeCatalog::table() const {
  std::lock_guard lock(mutex_);
  return table_;
}

std::shared_ptr<const PrimeTable> PrimeCatalog::grow_to(std::uint64_t limit) {
  std::lock_guard lock(mutex_);
  if (table_->limit() >= limit) return table_;
  std::uint64_t next = table_->limit();
  while (next < limit) next *= 2;
  table_ = PrimeTable::build(next, config_);
  return table_;
}

std::shared_ptr<const PrimeTable> PrimeCatalog::table_covering(std::uint64_t limit) {
  auto t = table();
  if (t->limit() >= limit) return t;
  return grow_to(limit);
}

std::shared_ptr<const PrimeTable> PrimeCatalog::table_with_class_count(PrimeClass c, std::size_t count) {
  auto t = table();
  while (t->class_primes(c).size() < count) t = grow_to(2 * t->limit());
  return t;
}

std::uint64_t PrimeCatalog::nth_class_prime(PrimeClass c, std::size_t i) {
  if (i == 0) throw std::invalid_argument("class prime indices are 1-based");
  return *table_with_class_count(c, i)->nth_class_prime(c, i);
}

std::uint64_t PrimeCatalog::next_class_prime(std::uint64_t x, PrimeClass c) {
  auto t = table_covering(x + 1);
  for (;;) {
    if (auto p = t->next_class_prime(x, c)) return *p;
    t = grow_to(2 * t->limit());
  }
}

std::optional<std::uint64_t> PrimeCatalog::prev_class_prime(std::uint64_t x, PrimeClass c) {
  return table_covering(x)->prev_class_prime(x, c);
}

std::size_t PrimeCatalog::pi_class(std::uint64_t x, PrimeClass c) {
  return table_covering(x)->pi_class(x, c);
}

std::vector<DensitySample> density_profile(std::span<const std::uint64_t> sample_points,
                                           const PrimeClassConfig& config) {
  std::vector<DensitySample> out;
  if (sample_points.empty()) return out;
  const std::uint64_t top = std::max<std::uint64_t>(
      2, *std::max_element(sample_points.begin(), sample_points.end()));
  const auto table = PrimeTable::build(top, config);
  for (auto x : sample_points) {
    DensitySample s;
    s.x = x;
    s.pi_p = table->pi_class(x, PrimeClass::P);
    s.pi_all = table->pi(x);
    s.ratio = s.pi_all ? static_cast<double>(s.pi_p) / static_cast<double>(s.pi_all) : 0.0;
    out.push_back(s);
  }
  return out;
}

}  // namespace nicrob
