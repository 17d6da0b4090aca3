#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "nicrob/arith.hpp"
#include "nicrob/factored.hpp"
#include "nicrob/numerics.hpp"
#include "nicrob/primes.hpp"

namespace nicrob {

// A comparison that stayed undecided through the whole precision schedule.
class UndecidedError : public std::runtime_error {
 public:
  explicit UndecidedError(FactoredNumber n);
  const FactoredNumber& number() const noexcept { return n_; }

 private:
  FactoredNumber n_;
};

// r counts P-primes, s counts Q-primes.
struct ClassCounts {
  unsigned r = 0;
  unsigned s = 0;

  unsigned weight() const noexcept { return r + 2 * s; }
  friend auto operator<=>(const ClassCounts&, const ClassCounts&) = default;
};

// Pairs (r, s) whose primorial core fails the Nicolas inequality, searched
// over r + 2s <= max_k.
struct PairSet {
  std::vector<ClassCounts> pairs;
  std::uint64_t max_k = 0;

  bool contains(ClassCounts c) const noexcept;
  unsigned max_weight() const noexcept;
};

struct EnumerationOptions {
  PrecisionSchedule schedule;
  unsigned threads = 0;            // 0: NICROB_THREADS or hardware concurrency
  std::uint64_t max_k = 0;         // 0: take the config's search.max_k
  std::uint64_t slack_cap = 1'000'000;
  bool reverify = true;            // re-check each record at doubled precision
};

// Nicolas membership with certified verdicts; throws UndecidedError.
bool fails_nicolas(const FactoredNumber& n, const PrecisionSchedule& schedule);

// Product of the first r P-primes and the squares of the first s Q-primes.
FactoredNumber primorial_core(ClassCounts counts, PrimeCatalog& catalog);

// All pairs with r + 2s <= max_k whose primorial core fails the inequality.
// Each pair is screened in double precision from interval-derived prefix
// sums and settled by a certified comparison when the screen is too close.
PairSet admissible_pairs(PrimeCatalog& catalog, std::uint64_t max_k,
                         const PrecisionSchedule& schedule = PrecisionSchedule::standard());

// How far the tail of the P-primes (gamma) and of the Q-primes (delta) of a
// primorial core can shift along its class sequence and still fail the
// inequality. Indexed from 0 for the 1st prime.
struct SlackBounds {
  std::vector<unsigned> p_shift;
  std::vector<unsigned> q_shift;
};

SlackBounds prime_slack_bounds(ClassCounts counts, PrimeCatalog& catalog,
                               const PrecisionSchedule& schedule = PrecisionSchedule::standard(),
                               std::uint64_t cap = 1'000'000);

// Cores m = p_1..p_r q_1^2..q_s^2 inside the slack windows with m failing the
// inequality, ascending by value.
std::vector<FactoredNumber> admissible_cores(ClassCounts counts, const SlackBounds& slack,
                                             PrimeCatalog& catalog,
                                             const PrecisionSchedule& schedule = PrecisionSchedule::standard());
std::vector<FactoredNumber> admissible_cores(ClassCounts counts, PrimeCatalog& catalog,
                                             const PrecisionSchedule& schedule = PrecisionSchedule::standard());

// Per prime of a core m: alpha (P-primes) is the largest a with m p^(a-1)
// failing the inequality; beta (Q-primes) the largest b with m q^(b-1)
// failing it. Exponents of n over m then range over [1, alpha] and
// [2, beta + 1].
struct ExponentCaps {
  std::vector<PrimePower> alpha;  // P-primes of m, exponent field holds alpha
  std::vector<PrimePower> beta;   // Q-primes of m, exponent field holds beta

  // Largest exponent of p allowed in a multiple; 0 if p is not in m.
  std::uint32_t max_exponent(std::uint64_t p) const noexcept;
  // m * prod p^(alpha-1) * prod q^(beta-1); every exception over m divides it.
  FactoredNumber divisor_bound(const FactoredNumber& m) const;
};

ExponentCaps exponent_caps(const FactoredNumber& m, const PrimeClassConfig& config,
                           const PrecisionSchedule& schedule = PrecisionSchedule::standard(),
                           std::uint64_t cap = 1'000'000);

struct ExceptionRecord {
  FactoredNumber n;
  mpz_class value;
  unsigned omega_p = 0;
  unsigned omega_q = 0;
  FactoredNumber core;
  bool robin_violator = false;
  bool sum_two_squares = false;
  bool representable = false;  // per the config's representation

  std::string decimal() const { return value.get_str(10); }
};

ExceptionRecord make_record(const FactoredNumber& n, const PrimeClassConfig& config,
                            const PrecisionSchedule& schedule = PrecisionSchedule::standard());

// Every n with s(n) = m that fails the inequality, ascending.
std::vector<ExceptionRecord> expand_multiples(const FactoredNumber& m, const ExponentCaps& caps,
                                              const PrimeClassConfig& config,
                                              const PrecisionSchedule& schedule = PrecisionSchedule::standard());

struct Provenance {
  std::uint64_t max_k = 0;
  std::uint64_t pk_minus_bound = 0;
  PrecisionSchedule schedule;
  PairSet pairs;
  std::size_t core_count = 0;
  // True only for the partition whose search bounds are proven; otherwise
  // the set is complete relative to the declared bounds.
  bool proven_complete = false;
};

struct ExceptionSet {
  std::vector<ExceptionRecord> records;  // ascending, unique
  PrimeClassConfig config;
  Provenance provenance;
};

ExceptionSet enumerate_exceptions(const PrimeClassConfig& config, const EnumerationOptions& options = {});

// Ceilings on r + 2s: pi_P(B) + 2 pi_Q(g_P(g_P(B))) and
// 1 + pi_P(2 g_Q(B)) + 2 pi_Q(B), where B is the config's pk_minus_bound and
// g_C(x) is the least class-C prime above x.
struct WeightCeilings {
  std::uint64_t p_side = 0;
  std::uint64_t q_side = 0;
};

WeightCeilings kbound_constants(PrimeCatalog& catalog);

}  // namespace nicrob
