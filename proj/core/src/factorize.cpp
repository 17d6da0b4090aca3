#include <memory>
#include <mutex>

#include "nicrob/arith.hpp"

namespace nicrob {

namespace {

// Bases 2..41 make Miller-Rabin exact below this bound.
const mpz_class kDeterministicBound("3317044064679887385961981");

bool strong_probable_prime(const mpz_class& n, unsigned long base) {
  const mpz_class n_minus_1 = n - 1;
  mpz_class d = n_minus_1;
  const auto s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  mpz_class x;
  const mpz_class a = base;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (mp_bitcnt_t r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n_minus_1) return true;
  }
  return false;
}

std::shared_ptr<const std::vector<std::uint64_t>> trial_primes(std::uint64_t limit) {
  static std::mutex mutex;
  static std::uint64_t cached_limit = 0;
  static std::shared_ptr<const std::vector<std::uint64_t>> primes;
  std::lock_guard lock(mutex);
  if (cached_limit < limit) {
    primes = std::make_shared<const std::vector<std::uint64_t>>(sieve_primes(limit));
    cached_limit = limit;
  }
  return primes;
}

}  // namespace

FactoredNumber factorize(const mpz_class& value, const FactorBudget& budget) {
  if (value < 1) throw std::invalid_argument("factorize requires a positive value");
  std::vector<PrimePower> factors;
  mpz_class rest = value;
  const auto primes = trial_primes(budget.trial_limit);
  for (auto p : *primes) {
    if (p > budget.trial_limit) break;
    if (mpz_class(p) * p > rest) break;
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
    std::uint32_t e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    factors.push_back({p, e});
  }
  if (rest == 1) return FactoredNumber(std::move(factors));

  const mpz_class trial_square = mpz_class(budget.trial_limit + 1) * (budget.trial_limit + 1);
  if (rest >= trial_square) {
    constexpr unsigned long kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    bool probable = true;
    for (auto b : kBases) {
      if (!strong_probable_prime(rest, b)) {
        probable = false;
        break;
      }
    }
    if (!probable) {
      throw UnfactoredError("cofactor " + rest.get_str() + " is composite with no prime factor up to " +
                            std::to_string(budget.trial_limit) + "; supply the factorization");
    }
    if (rest >= kDeterministicBound) {
      throw UnfactoredError("cofactor " + rest.get_str() +
                            " is a probable prime too large to certify; supply the factorization");
    }
  }
  if (!rest.fits_ulong_p()) {
    throw UnfactoredError("prime cofactor " + rest.get_str() + " exceeds 64 bits");
  }
  factors.push_back({rest.get_ui(), 1});
  return FactoredNumber(std::move(factors));
}

}  // namespace nicrob
