#include "nicrob/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iterator>

#include "nicrob/parallel.hpp"

namespace nicrob {

namespace {

// Linear sieve: spf[n] is the least prime factor of n, for 2 <= n <= bound.
std::vector<std::uint32_t> smallest_prime_factors(std::uint64_t bound) {
  std::vector<std::uint32_t> spf(bound + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (spf[i] == 0) {
      spf[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (auto p : primes) {
      if (p > spf[i] || i * p > bound) break;
      spf[i * p] = p;
    }
  }
  return spf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

RangeReport diff_report(std::uint64_t bound, std::vector<std::uint64_t> brute,
                        std::vector<std::uint64_t> enumerated) {
  RangeReport report;
  report.bound = bound;
  report.brute = std::move(brute);
  report.enumerated = std::move(enumerated);
  std::set_difference(report.brute.begin(), report.brute.end(), report.enumerated.begin(),
                      report.enumerated.end(), std::back_inserter(report.only_brute));
  std::set_difference(report.enumerated.begin(), report.enumerated.end(), report.brute.begin(),
                      report.brute.end(), std::back_inserter(report.only_enumerated));
  report.agreement = report.only_brute.empty() && report.only_enumerated.empty();
  return report;
}

}  // namespace

std::vector<std::uint64_t> brute_force_exceptions(std::uint64_t bound, const PrimeClassConfig& config,
                                                  const BruteForceOptions& options) {
  if (bound == 0) return {};
  if (bound >= (std::uint64_t{1} << 32)) throw ResourceError("brute-force bound must stay below 2^32");
  if (4 * (bound + 1) > options.memory_budget) {
    throw ResourceError("smallest-prime-factor table for " + std::to_string(bound) +
                        " exceeds the memory budget; split the range and run segmented scans");
  }
  config.validate();
  const auto spf = smallest_prime_factors(bound);

  constexpr std::uint64_t kChunk = 1 << 16;
  const std::size_t chunks = static_cast<std::size_t>((bound + kChunk - 1) / kChunk);
  std::vector<std::vector<std::uint64_t>> found(chunks);

  parallel_for(chunks, resolve_thread_count(options.threads), [&](std::size_t c) {
    const std::uint64_t lo = 1 + c * kChunk;
    const std::uint64_t hi = std::min(bound, lo + kChunk - 1);
    for (std::uint64_t n = lo; n <= hi; ++n) {
      if (n == 1) {
        found[c].push_back(1);
        continue;
      }
      std::uint64_t rest = n;
      bool in_s = true;
      double log_f = 0.0;
      PrimePower factors[16];
      int count = 0;
      while (rest > 1) {
        const std::uint32_t p = spf[rest];
        unsigned e = 0;
        while (rest % p == 0) {
          rest /= p;
          ++e;
        }
        if (e == 1 && config.class_of(p) == PrimeClass::Q) {
          in_s = false;
          break;
        }
        log_f -= std::log1p(-1.0 / p);
        factors[count++] = {p, e};
      }
      if (!in_s) continue;
      auto kind = screen_log_threshold(log_f, std::log(static_cast<double>(n)));
      if (kind == Verdict::Kind::Undecided) {
        mpz_class num = 1;
        mpz_class den = 1;
        for (int i = 0; i < count; ++i) {
          num *= factors[i].prime;
          den *= factors[i].prime - 1;
        }
        const Verdict v = compare_threshold(mpq_class(num, den), n, options.schedule);
        if (v.undecided()) throw UndecidedError(FactoredNumber(std::vector<PrimePower>(factors, factors + count)));
        kind = v.kind;
      }
      if (kind == Verdict::Kind::AboveOrEqual) found[c].push_back(n);
    }
  });

  std::vector<std::uint64_t> out;
  for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
  return out;
}

RangeReport cross_validate(std::uint64_t bound, const ExceptionSet& enumerated,
                           const BruteForceOptions& brute_options) {
  std::vector<std::uint64_t> listed;
  for (const auto& rec : enumerated.records) {
    if (rec.value > bound) break;
    listed.push_back(rec.value.get_ui());
  }
  const auto start = std::chrono::steady_clock::now();
  auto brute = brute_force_exceptions(bound, enumerated.config, brute_options);
  const double brute_seconds = seconds_since(start);
  RangeReport report = diff_report(bound, std::move(brute), std::move(listed));
  report.brute_seconds = brute_seconds;
  return report;
}

RangeReport cross_validate(std::uint64_t bound, const PrimeClassConfig& config,
                           const EnumerationOptions& enum_options, const BruteForceOptions& brute_options) {
  if (bound == 0) return RangeReport{};
  const auto start = std::chrono::steady_clock::now();
  const ExceptionSet set = enumerate_exceptions(config, enum_options);
  const double enumerate_seconds = seconds_since(start);
  RangeReport report = cross_validate(bound, set, brute_options);
  report.enumerate_seconds = enumerate_seconds;
  return report;
}

std::vector<ThetaSample> verify_theta_bounds(std::uint64_t from, std::uint64_t to, std::uint64_t step,
                                             const PrimeClassConfig& config) {
  if (from < 45000) throw std::invalid_argument("theta bounds are only claimed from x = 45000 on");
  if (step == 0) throw std::invalid_argument("step must be positive");
  if (to < from) return {};
  constexpr mpfr_prec_t kPrec = PrimeTable::kThetaPrecision;
  const auto table = PrimeTable::build(to, config);
  std::vector<ThetaSample> out;
  for (std::uint64_t x = from; x <= to; x += step) {
    ThetaSample s;
    s.x = x;
    s.theta_p = table->theta_class(x, PrimeClass::P);
    s.theta_q = table->theta_class(x, PrimeClass::Q);
    const Interval lower = Interval::from_rational(mpq_class(49 * x, 100), kPrec);
    const Interval upper = Interval::from_rational(mpq_class(51 * x, 100), kPrec);
    s.p_pass = lower.certainly_less(s.theta_p) && s.theta_p.certainly_less(upper);
    s.q_pass = lower.certainly_less(s.theta_q) && s.theta_q.certainly_less(upper);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<MertensSample> verify_mertens_bound(std::uint64_t x_max, std::uint64_t step) {
  if (step == 0) throw std::invalid_argument("step must be positive");
  if (x_max < 2) return {};
  constexpr mpfr_prec_t kPrec = 128;

  std::vector<std::uint64_t> samples{2, 3};
  for (std::uint64_t x = step; x <= x_max; x += step) samples.push_back(x);
  samples.push_back(x_max);
  std::erase_if(samples, [&](std::uint64_t x) { return x < 2 || x > x_max; });
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

  const auto primes = sieve_primes(x_max);
  const Interval eg = egamma(kPrec);
  mpz_class num = 1;
  mpz_class den = 1;
  std::size_t next = 0;
  std::vector<MertensSample> out;
  for (auto x : samples) {
    // Multiply the primes of this gap into small products first.
    mpz_class seg_num = 1;
    mpz_class seg_den = 1;
    for (; next < primes.size() && primes[next] <= x; ++next) {
      seg_num *= primes[next];
      seg_den *= primes[next] - 1;
    }
    num *= seg_num;
    den *= seg_den;

    MertensSample s;
    s.x = x;
    s.product = Interval::from_fraction(num, den, kPrec);
    const Interval log_x = log_of(x, kPrec);
    s.bound = eg * (log_x + Interval::point(1, kPrec) / log_x);
    s.pass = s.product.certainly_less(s.bound);
    out.push_back(std::move(s));
  }
  return out;
}

std::uint64_t witness_exponent(std::uint64_t n) {
  if (n < 3) throw std::invalid_argument("witness exponent needs n >= 3");
  for (mpfr_prec_t prec : PrecisionSchedule::standard().steps) {
    const Interval log_n = log_of(n, prec);
    // n^(1/sqrt(log n)) = e^sqrt(log n)
    const Interval power = log_n.sqrt().exp();
    const double lo = std::floor(power.lo_double());
    const double hi = std::floor(power.hi_double());
    if (lo == hi) return static_cast<std::uint64_t>(lo);
  }
  throw std::runtime_error("witness exponent floor undecided for n = " + std::to_string(n));
}

double WitnessReport::distance_to_egamma() const {
  const Interval diff = ratio_phi - egamma(ratio_phi.precision());
  return std::max(std::abs(diff.lo_double()), std::abs(diff.hi_double()));
}

WitnessReport limsup_witness(std::uint64_t n) {
  if (n < 3 || n > 1'000'000) throw std::invalid_argument("limsup witness supports 3 <= n <= 10^6");
  constexpr mpfr_prec_t kPrec = 128;
  WitnessReport w;
  w.n = n;
  w.exponent = witness_exponent(n);

  const Interval one = Interval::point(1, kPrec);
  Interval theta(kPrec);
  Interval log_f(kPrec);
  Interval log_c(kPrec);
  for (auto p : sieve_primes(n)) {
    const Interval& lp = log_of(p, kPrec);
    theta += lp;
    log_f += lp - log_of(p - 1, kPrec);
    const Interval tail = one / Interval::from_u64(p, kPrec).pow(w.exponent + 1);
    log_c += (one - tail).log();
  }
  w.log_a = Interval::from_u64(w.exponent, kPrec) * theta;
  const Interval loglog_a = w.log_a.log();
  w.ratio_phi = log_f.exp() / loglog_a;
  w.ratio_sigma = (log_f + log_c).exp() / loglog_a;
  w.exponent_drift = w.log_a.mid_double() / static_cast<double>(n);
  return w;
}

}  // namespace nicrob
