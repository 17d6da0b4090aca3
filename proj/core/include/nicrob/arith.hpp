#pragma once

#include <cstdint>
#include <stdexcept>

#include <gmpxx.h>

#include "nicrob/factored.hpp"
#include "nicrob/numerics.hpp"
#include "nicrob/primes.hpp"

namespace nicrob {

// Reduced exact fraction; gmp keeps numerator and denominator coprime.
using ExactRatio = mpq_class;

// n / phi(n) = prod p/(p-1) over p | n.
ExactRatio f_ratio(const FactoredNumber& n);
// sigma(n) / n = prod (p^(e+1) - 1) / (p^e (p - 1)).
ExactRatio sigma_ratio(const FactoredNumber& n);

FactoredNumber kernel(const FactoredNumber& n);
unsigned omega(const FactoredNumber& n) noexcept;
unsigned bigomega(const FactoredNumber& n) noexcept;
unsigned omega_class(const FactoredNumber& n, PrimeClass c, const PrimeClassConfig& config) noexcept;

// P-primes of n to the first power times Q-primes of n squared.
FactoredNumber s_of(const FactoredNumber& n, const PrimeClassConfig& config);
// Every Q-prime dividing n does so at least squared.
bool in_S(const FactoredNumber& n, const PrimeClassConfig& config) noexcept;
// n equals its own core s(n).
bool in_Y(const FactoredNumber& n, const PrimeClassConfig& config) noexcept;

// Below: n satisfies the inequality. AboveOrEqual: it does not.
Verdict nicolas_verdict(const FactoredNumber& n,
                        const PrecisionSchedule& schedule = PrecisionSchedule::standard());
Verdict robin_verdict(const FactoredNumber& n,
                      const PrecisionSchedule& schedule = PrecisionSchedule::standard());

// Fermat: every prime = 3 (mod 4) occurs to an even power.
bool is_sum_two_squares(const FactoredNumber& n) noexcept;
// Every prime = 2 (mod 3) occurs to an even power.
bool is_a2_plus_3b2(const FactoredNumber& n) noexcept;
// Dispatch on the config's representation; false for Representation::None.
bool is_representable(const FactoredNumber& n, Representation r) noexcept;

class UnfactoredError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FactorBudget {
  // Trial division runs over primes up to this bound.
  std::uint64_t trial_limit = 1'000'000;
};

// Trial division by sieved primes, then a deterministic primality check of
// the cofactor. Throws UnfactoredError rather than return a partial result.
FactoredNumber factorize(const mpz_class& value, const FactorBudget& budget = {});

}  // namespace nicrob
