#include "nicrob/numerics.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace nicrob {

namespace {

constexpr mpfr_prec_t kGuardBits = 16;

void require_precision(mpfr_prec_t prec) {
  if (prec < kMinPrecision) {
    throw std::invalid_argument("precision must be at least " + std::to_string(kMinPrecision) +
                                " bits, got " + std::to_string(prec));
  }
}

Interval scaled(const Interval& x, std::uint32_t k) {
  Interval r(x.precision());
  mpfr_mul_ui(r.lo(), x.lo(), k, MPFR_RNDD);
  mpfr_mul_ui(r.hi(), x.hi(), k, MPFR_RNDU);
  return r;
}

}  // namespace

PrecisionSchedule PrecisionSchedule::doubled() const {
  PrecisionSchedule out;
  out.steps.clear();
  for (auto s : steps) out.steps.push_back(2 * s);
  return out;
}

void PrecisionSchedule::validate() const {
  if (steps.empty()) throw std::invalid_argument("precision schedule is empty");
  mpfr_prec_t prev = 0;
  for (auto s : steps) {
    require_precision(s);
    if (s <= prev) throw std::invalid_argument("precision schedule must be strictly increasing");
    prev = s;
  }
}

std::string_view to_string(Verdict::Kind kind) noexcept {
  switch (kind) {
    case Verdict::Kind::Below: return "below";
    case Verdict::Kind::AboveOrEqual: return "above-or-equal";
    case Verdict::Kind::Undecided: return "undecided";
  }
  return "undecided";
}

Interval euler_gamma(mpfr_prec_t precision_bits) {
  require_precision(precision_bits);
  thread_local std::map<mpfr_prec_t, Interval> cache;
  if (auto it = cache.find(precision_bits); it != cache.end()) return it->second;
  Interval g(precision_bits);
  mpfr_const_euler(g.lo(), MPFR_RNDD);
  mpfr_const_euler(g.hi(), MPFR_RNDU);
  cache.emplace(precision_bits, g);
  return g;
}

Interval egamma(mpfr_prec_t precision_bits) {
  require_precision(precision_bits);
  thread_local std::map<mpfr_prec_t, Interval> cache;
  if (auto it = cache.find(precision_bits); it != cache.end()) return it->second;
  const Interval value = euler_gamma(precision_bits + kGuardBits).exp().rounded_to(precision_bits);
  cache.emplace(precision_bits, value);
  return value;
}

const Interval& log_of(std::uint64_t value, mpfr_prec_t precision_bits) {
  if (value == 0) throw std::domain_error("log of zero");
  thread_local std::unordered_map<mpfr_prec_t, std::unordered_map<std::uint64_t, Interval>> cache;
  auto& per_prec = cache[precision_bits];
  if (auto it = per_prec.find(value); it != per_prec.end()) return it->second;
  return per_prec.emplace(value, Interval::from_u64(value, precision_bits).log()).first->second;
}

Interval log_value(const FactoredNumber& n, mpfr_prec_t precision_bits) {
  Interval sum(precision_bits);
  for (const auto& f : n.factors()) sum += scaled(log_of(f.prime, precision_bits), f.exponent);
  return sum;
}

Interval loglog(const FactoredNumber& n, mpfr_prec_t precision_bits) {
  require_precision(precision_bits);
  if (n.is_one()) throw std::domain_error("log log n is undefined for n = 1");
  return log_value(n, precision_bits).log();
}

Interval loglog(std::uint64_t n, mpfr_prec_t precision_bits) {
  require_precision(precision_bits);
  if (n <= 1) throw std::domain_error("log log n requires n >= 2");
  return Interval::from_u64(n, precision_bits).log().log();
}

namespace detail {

Verdict::Kind decide(const Interval& lhs, const Interval& threshold) noexcept {
  if (lhs.certainly_greater(threshold)) return Verdict::Kind::AboveOrEqual;
  if (lhs.certainly_less(threshold)) return Verdict::Kind::Below;
  return Verdict::Kind::Undecided;
}

}  // namespace detail

Verdict compare_threshold(const mpq_class& lhs, const FactoredNumber& n,
                          const PrecisionSchedule& schedule) {
  if (sgn(lhs) < 0) throw std::invalid_argument("compare_threshold: lhs must be non-negative");
  if (n.is_one()) return {Verdict::Kind::AboveOrEqual, schedule.steps.front()};
  return compare_threshold_log(
      lhs, [&](mpfr_prec_t prec) { return log_value(n, prec); }, schedule);
}

Verdict compare_threshold(const mpq_class& lhs, std::uint64_t n,
                          const PrecisionSchedule& schedule) {
  if (sgn(lhs) < 0) throw std::invalid_argument("compare_threshold: lhs must be non-negative");
  if (n == 0) throw std::invalid_argument("compare_threshold: n must be positive");
  if (n == 1) return {Verdict::Kind::AboveOrEqual, schedule.steps.front()};
  return compare_threshold_log(
      lhs, [&](mpfr_prec_t prec) { return Interval::from_u64(n, prec).log(); }, schedule);
}

Verdict::Kind screen_log_threshold(double log_lhs, double log_n) noexcept {
  // 0.5772156649015329 rounded to double; its error is far below the guard.
  constexpr double kGamma = 0.57721566490153286;
  if (!(log_n > 0.0) || !std::isfinite(log_lhs)) return Verdict::Kind::Undecided;
  if (log_n < 1.0 - kScreenGuard) return Verdict::Kind::AboveOrEqual;  // log log n < 0
  const double ll = std::log(log_n);
  if (ll < 0.05) return Verdict::Kind::Undecided;
  const double margin = log_lhs - (kGamma + std::log(ll));
  if (margin > kScreenGuard) return Verdict::Kind::AboveOrEqual;
  if (margin < -kScreenGuard) return Verdict::Kind::Below;
  return Verdict::Kind::Undecided;
}

}  // namespace nicrob
