#pragma once

#include <cstdint>
#include <vector>

#include "nicrob/enumerator.hpp"
#include "nicrob/interval.hpp"
#include "nicrob/numerics.hpp"
#include "nicrob/primes.hpp"

namespace nicrob {

struct BruteForceOptions {
  PrecisionSchedule schedule;
  unsigned threads = 0;
  // The smallest-prime-factor table takes 4 bytes per integer.
  std::uint64_t memory_budget = std::uint64_t{1} << 30;
};

// Every n in [1, bound] with n in S failing the Nicolas inequality, found by
// scanning a smallest-prime-factor sieve. Verdicts go through the value-level
// numerics entry points, never through the enumerator's candidate logic.
std::vector<std::uint64_t> brute_force_exceptions(std::uint64_t bound, const PrimeClassConfig& config,
                                                  const BruteForceOptions& options = {});

struct RangeReport {
  std::uint64_t bound = 0;
  std::vector<std::uint64_t> brute;       // brute-force exceptions <= bound
  std::vector<std::uint64_t> enumerated;  // enumerator records <= bound
  std::vector<std::uint64_t> only_brute;
  std::vector<std::uint64_t> only_enumerated;
  bool agreement = true;
  double brute_seconds = 0.0;
  double enumerate_seconds = 0.0;
};

RangeReport cross_validate(std::uint64_t bound, const PrimeClassConfig& config,
                           const EnumerationOptions& enum_options = {},
                           const BruteForceOptions& brute_options = {});
// Against an enumeration computed earlier.
RangeReport cross_validate(std::uint64_t bound, const ExceptionSet& enumerated,
                           const BruteForceOptions& brute_options = {});

struct ThetaSample {
  std::uint64_t x = 0;
  Interval theta_p{64};
  Interval theta_q{64};
  bool p_pass = false;
  bool q_pass = false;

  bool pass() const noexcept { return p_pass && q_pass; }
};

// Certifies 0.49x < theta_P(x) < 0.51x and the same for theta_Q at
// x = from, from + step, ..., <= to. Requires from >= 45000.
std::vector<ThetaSample> verify_theta_bounds(std::uint64_t from, std::uint64_t to, std::uint64_t step,
                                             const PrimeClassConfig& config);

struct MertensSample {
  std::uint64_t x = 0;
  Interval product{64};  // enclosure of the exact prod p/(p-1), p <= x
  Interval bound{64};    // e^gamma (log x + 1/log x)
  bool pass = false;
};

// prod_{p <= x} p/(p-1) < e^gamma (log x + 1/log x) at x = 2, 3 and every
// multiple of step up to x_max (and x_max itself). The product is kept as an
// exact fraction.
std::vector<MertensSample> verify_mertens_bound(std::uint64_t x_max, std::uint64_t step);

struct WitnessReport {
  std::uint64_t n = 0;
  std::uint64_t exponent = 0;  // d_n
  Interval ratio_sigma{64};    // sigma(a)/(a log log a)
  Interval ratio_phi{64};      // a/(phi(a) log log a)
  Interval log_a{64};          // d_n * theta(n)
  // d_n theta(n) / n, the drift of log a_n against n.
  double exponent_drift = 0.0;

  // Upper bound on |ratio_phi - e^gamma|.
  double distance_to_egamma() const;
};

// a_n = (prod_{p <= n} p)^(d_n), d_n = floor(n^(1/sqrt(log n))), evaluated in
// log form without materializing a_n. Requires 3 <= n <= 10^6.
WitnessReport limsup_witness(std::uint64_t n);

// floor(n^(1/sqrt(log n))), certified.
std::uint64_t witness_exponent(std::uint64_t n);

}  // namespace nicrob
