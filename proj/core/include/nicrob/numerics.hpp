#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "nicrob/factored.hpp"
#include "nicrob/interval.hpp"

namespace nicrob {

inline constexpr mpfr_prec_t kMinPrecision = 32;

// Mantissa sizes tried in order until a comparison is certified.
struct PrecisionSchedule {
  std::vector<mpfr_prec_t> steps{64, 128, 256, 512, 1024, 4096};

  static PrecisionSchedule standard() { return {}; }
  // Same schedule with every step doubled; used for independent re-checks.
  PrecisionSchedule doubled() const;
  void validate() const;
};

// Outcome of comparing a quantity against e^gamma * log log n.
struct Verdict {
  enum class Kind { Below, AboveOrEqual, Undecided };

  Kind kind = Kind::Undecided;
  // Precision at which the verdict was certified, or the last one tried.
  mpfr_prec_t precision = 0;

  bool below() const noexcept { return kind == Kind::Below; }
  bool above_or_equal() const noexcept { return kind == Kind::AboveOrEqual; }
  bool undecided() const noexcept { return kind == Kind::Undecided; }
};

std::string_view to_string(Verdict::Kind kind) noexcept;

// Enclosure of e^gamma with width below 2^(4 - precision_bits).
Interval egamma(mpfr_prec_t precision_bits);
// Enclosure of the Euler-Mascheroni constant itself.
Interval euler_gamma(mpfr_prec_t precision_bits);

// Enclosure of log p for a positive integer, cached per thread.
const Interval& log_of(std::uint64_t value, mpfr_prec_t precision_bits);

// log n accumulated as sum e_i log p_i without materializing n.
Interval log_value(const FactoredNumber& n, mpfr_prec_t precision_bits);
// log log n for n >= 2; throws std::domain_error for n <= 1.
Interval loglog(const FactoredNumber& n, mpfr_prec_t precision_bits);
// Value-level entry point: log log of a machine integer >= 2.
Interval loglog(std::uint64_t n, mpfr_prec_t precision_bits);

// Certifies lhs against e^gamma * log log n. n = 1 is AboveOrEqual by
// convention. Exact equality is never certified; it ends Undecided.
Verdict compare_threshold(const mpq_class& lhs, const FactoredNumber& n,
                          const PrecisionSchedule& schedule = PrecisionSchedule::standard());
Verdict compare_threshold(const mpq_class& lhs, std::uint64_t n,
                          const PrecisionSchedule& schedule = PrecisionSchedule::standard());

// Same comparison when log n is supplied as an enclosure (callers that
// maintain log sums incrementally). log_n_at(prec) must enclose log n.
template <typename LogProvider>
Verdict compare_threshold_log(const mpq_class& lhs, LogProvider&& log_n_at,
                              const PrecisionSchedule& schedule);

// Floating-point screen for log(lhs) against gamma + log log log n.
// Returns Below/AboveOrEqual only when the margin exceeds a fixed guard that
// dominates double rounding for log n < 2^40; otherwise Undecided, and the
// caller must fall back to an exact comparison.
Verdict::Kind screen_log_threshold(double log_lhs, double log_n) noexcept;

inline constexpr double kScreenGuard = 1e-9;

// ---------------------------------------------------------------------------

namespace detail {
Verdict::Kind decide(const Interval& lhs, const Interval& threshold) noexcept;
}

template <typename LogProvider>
Verdict compare_threshold_log(const mpq_class& lhs, LogProvider&& log_n_at,
                              const PrecisionSchedule& schedule) {
  Verdict v;
  for (mpfr_prec_t prec : schedule.steps) {
    v.precision = prec;
    const Interval log_n = log_n_at(prec);
    if (!log_n.strictly_positive()) {
      v.kind = Verdict::Kind::Undecided;
      continue;
    }
    const Interval threshold = egamma(prec) * log_n.log();
    v.kind = detail::decide(Interval::from_rational(lhs, prec), threshold);
    if (v.kind != Verdict::Kind::Undecided) return v;
  }
  return v;
}

}  // namespace nicrob
