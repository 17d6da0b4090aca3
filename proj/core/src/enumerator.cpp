#include "nicrob/enumerator.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

#include "nicrob/parallel.hpp"

namespace nicrob {

UndecidedError::UndecidedError(FactoredNumber n)
    : std::runtime_error("verdict undecided at maximum precision for n = " + n.display(256)),
      n_(std::move(n)) {}

bool PairSet::contains(ClassCounts c) const noexcept {
  return std::binary_search(pairs.begin(), pairs.end(), c);
}

unsigned PairSet::max_weight() const noexcept {
  unsigned w = 0;
  for (const auto& p : pairs) w = std::max(w, p.weight());
  return w;
}

bool fails_nicolas(const FactoredNumber& n, const PrecisionSchedule& schedule) {
  const Verdict v = nicolas_verdict(n, schedule);
  if (v.undecided()) throw UndecidedError(n);
  return v.above_or_equal();
}

namespace {

// Builds p_idx / q_idx (1-based class indices) into a core with P-primes to
// the first power and Q-primes squared.
FactoredNumber core_from_indices(const std::vector<std::size_t>& p_idx,
                                 const std::vector<std::size_t>& q_idx, PrimeCatalog& catalog) {
  std::vector<PrimePower> f;
  f.reserve(p_idx.size() + q_idx.size());
  for (auto i : p_idx) f.push_back({catalog.nth_class_prime(PrimeClass::P, i), 1});
  for (auto j : q_idx) f.push_back({catalog.nth_class_prime(PrimeClass::Q, j), 2});
  return FactoredNumber(std::move(f));
}

std::vector<std::size_t> iota_indices(std::size_t count) {
  std::vector<std::size_t> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = i + 1;
  return v;
}

// Double prefix sums (midpoints of 128-bit enclosures) of log p and
// log(p/(p-1)) over the first entries of a class sequence.
struct LogPrefix {
  std::vector<double> log_n;
  std::vector<double> log_f;
};

LogPrefix log_prefix(std::span<const std::uint64_t> seq, std::size_t count, std::uint32_t exponent) {
  constexpr mpfr_prec_t kPrec = 128;
  LogPrefix out;
  out.log_n.reserve(count + 1);
  out.log_f.reserve(count + 1);
  Interval sum_n(kPrec);
  Interval sum_f(kPrec);
  out.log_n.push_back(0.0);
  out.log_f.push_back(0.0);
  const Interval e = Interval::point(exponent, kPrec);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t p = seq[i];
    sum_n += e * log_of(p, kPrec);
    sum_f += log_of(p, kPrec) - log_of(p - 1, kPrec);
    out.log_n.push_back(sum_n.mid_double());
    out.log_f.push_back(sum_f.mid_double());
  }
  return out;
}

// n fails the inequality iff log n <= exp(F / e^gamma), for n sharing one
// support (so one F). Caches the right-hand enclosure per precision.
class LogCutoff {
 public:
  LogCutoff(mpq_class f, const PrecisionSchedule& schedule) : f_(std::move(f)), schedule_(schedule) {}

  bool fails(const FactoredNumber& n) {
    if (n.is_one()) return true;
    for (std::size_t i = 0; i < schedule_.steps.size(); ++i) {
      const mpfr_prec_t prec = schedule_.steps[i];
      const Interval log_n = log_value(n, prec);
      const Interval& bound = bound_at(i);
      if (log_n.certainly_less(bound)) return true;
      if (log_n.certainly_greater(bound)) return false;
    }
    throw UndecidedError(n);
  }

  const Interval& bound_at(std::size_t i) {
    while (bounds_.size() <= i) {
      const mpfr_prec_t prec = schedule_.steps[bounds_.size()];
      bounds_.push_back((Interval::from_rational(f_, prec) / egamma(prec)).exp());
    }
    return bounds_[i];
  }

 private:
  mpq_class f_;
  const PrecisionSchedule& schedule_;
  std::vector<Interval> bounds_;
};

}  // namespace

FactoredNumber primorial_core(ClassCounts counts, PrimeCatalog& catalog) {
  return core_from_indices(iota_indices(counts.r), iota_indices(counts.s), catalog);
}

PairSet admissible_pairs(PrimeCatalog& catalog, std::uint64_t max_k, const PrecisionSchedule& schedule) {
  if (max_k == 0) throw std::invalid_argument("max_k must be positive");
  const std::size_t max_r = max_k;
  const std::size_t max_s = max_k / 2;
  catalog.table_with_class_count(PrimeClass::P, max_r);
  const auto table = catalog.table_with_class_count(PrimeClass::Q, std::max<std::size_t>(max_s, 1));

  const LogPrefix p_pre = log_prefix(table->class_primes(PrimeClass::P), max_r, 1);
  const LogPrefix q_pre = log_prefix(table->class_primes(PrimeClass::Q), max_s, 2);

  PairSet out;
  out.max_k = max_k;
  for (std::size_t r = 0; r <= max_r; ++r) {
    for (std::size_t s = 0; r + 2 * s <= max_k; ++s) {
      bool fails = false;
      if (r == 0 && s == 0) {
        fails = true;
      } else {
        const auto screened =
            screen_log_threshold(p_pre.log_f[r] + q_pre.log_f[s], p_pre.log_n[r] + q_pre.log_n[s]);
        if (screened == Verdict::Kind::Undecided) {
          fails = fails_nicolas(primorial_core({static_cast<unsigned>(r), static_cast<unsigned>(s)}, catalog),
                                schedule);
        } else {
          fails = screened == Verdict::Kind::AboveOrEqual;
        }
      }
      if (fails) out.pairs.push_back({static_cast<unsigned>(r), static_cast<unsigned>(s)});
    }
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

SlackBounds prime_slack_bounds(ClassCounts counts, PrimeCatalog& catalog, const PrecisionSchedule& schedule,
                               std::uint64_t cap) {
  const auto p_base = iota_indices(counts.r);
  const auto q_base = iota_indices(counts.s);
  if (!fails_nicolas(core_from_indices(p_base, q_base, catalog), schedule)) {
    throw std::invalid_argument("prime_slack_bounds: pair (" + std::to_string(counts.r) + ", " +
                                std::to_string(counts.s) + ") is not admissible");
  }

  // Largest g such that shifting entries i.. of `base` by g keeps the core failing.
  auto shift_limit = [&](bool p_side, std::size_t i) {
    unsigned g = 0;
    for (;;) {
      if (g >= cap) {
        throw std::runtime_error("slack search reached its safety cap at pair (" + std::to_string(counts.r) +
                                 ", " + std::to_string(counts.s) + ")");
      }
      auto p_idx = p_base;
      auto q_idx = q_base;
      auto& shifted = p_side ? p_idx : q_idx;
      for (std::size_t l = i; l < shifted.size(); ++l) shifted[l] += g + 1;
      if (!fails_nicolas(core_from_indices(p_idx, q_idx, catalog), schedule)) return g;
      ++g;
    }
  };

  SlackBounds out;
  for (std::size_t i = 0; i < counts.r; ++i) out.p_shift.push_back(shift_limit(true, i));
  for (std::size_t j = 0; j < counts.s; ++j) out.q_shift.push_back(shift_limit(false, j));
  return out;
}

namespace {

// Depth-first search over index tuples inside the slack windows. A partial
// tuple is extended only while its smallest completion still fails the
// inequality: any other completion uses larger primes, which lowers F and
// raises n, so it cannot fail when the smallest one does not.
class CoreSearch {
 public:
  CoreSearch(ClassCounts counts, const SlackBounds& slack, PrimeCatalog& catalog,
             const PrecisionSchedule& schedule)
      : counts_(counts), slack_(slack), catalog_(catalog), schedule_(schedule),
        p_idx_(counts.r), q_idx_(counts.s) {}

  std::vector<FactoredNumber> run() {
    search(true, 0);
    std::sort(out_.begin(), out_.end(),
              [](const FactoredNumber& a, const FactoredNumber& b) { return compare_values(a, b) < 0; });
    return std::move(out_);
  }

 private:
  // Fills entries from `from` onward with the smallest feasible indices.
  static bool complete(std::vector<std::size_t>& idx, std::size_t from, const std::vector<unsigned>& shift) {
    for (std::size_t l = from; l < idx.size(); ++l) {
      const std::size_t lo = std::max<std::size_t>(l + 1, l ? idx[l - 1] + 1 : 1);
      if (lo > l + 1 + shift[l]) return false;
      idx[l] = lo;
    }
    return true;
  }

  void search(bool p_side, std::size_t t) {
    auto& idx = p_side ? p_idx_ : q_idx_;
    const auto& shift = p_side ? slack_.p_shift : slack_.q_shift;
    if (t == idx.size()) {
      if (p_side) {
        search(false, 0);
      } else {
        out_.push_back(core_from_indices(p_idx_, q_idx_, catalog_));
      }
      return;
    }
    const std::size_t lo = std::max<std::size_t>(t + 1, t ? idx[t - 1] + 1 : 1);
    const std::size_t hi = t + 1 + shift[t];
    for (std::size_t i = lo; i <= hi; ++i) {
      idx[t] = i;
      auto p_try = p_idx_;
      auto q_try = q_idx_;
      auto& own = p_side ? p_try : q_try;
      if (!complete(own, t + 1, shift)) break;
      if (p_side && !complete(q_try, 0, slack_.q_shift)) break;
      if (!fails_nicolas(core_from_indices(p_try, q_try, catalog_), schedule_)) break;
      search(p_side, t + 1);
    }
  }

  ClassCounts counts_;
  const SlackBounds& slack_;
  PrimeCatalog& catalog_;
  const PrecisionSchedule& schedule_;
  std::vector<std::size_t> p_idx_;
  std::vector<std::size_t> q_idx_;
  std::vector<FactoredNumber> out_;
};

}  // namespace

std::vector<FactoredNumber> admissible_cores(ClassCounts counts, const SlackBounds& slack, PrimeCatalog& catalog,
                                             const PrecisionSchedule& schedule) {
  if (slack.p_shift.size() != counts.r || slack.q_shift.size() != counts.s) {
    throw std::invalid_argument("admissible_cores: slack bounds do not match the pair");
  }
  return CoreSearch(counts, slack, catalog, schedule).run();
}

std::vector<FactoredNumber> admissible_cores(ClassCounts counts, PrimeCatalog& catalog,
                                             const PrecisionSchedule& schedule) {
  return admissible_cores(counts, prime_slack_bounds(counts, catalog, schedule), catalog, schedule);
}

std::uint32_t ExponentCaps::max_exponent(std::uint64_t p) const noexcept {
  for (const auto& a : alpha) {
    if (a.prime == p) return a.exponent;
  }
  for (const auto& b : beta) {
    if (b.prime == p) return b.exponent + 1;
  }
  return 0;
}

FactoredNumber ExponentCaps::divisor_bound(const FactoredNumber& m) const {
  std::vector<PrimePower> extra;
  for (const auto& a : alpha) extra.push_back({a.prime, a.exponent - 1});
  for (const auto& b : beta) extra.push_back({b.prime, b.exponent - 1});
  return m * FactoredNumber(std::move(extra));
}

ExponentCaps exponent_caps(const FactoredNumber& m, const PrimeClassConfig& config,
                           const PrecisionSchedule& schedule, std::uint64_t cap) {
  if (!in_Y(m, config)) throw std::invalid_argument("exponent_caps: " + m.to_string() + " is not a core");
  ExponentCaps caps;
  if (m.is_one()) return caps;

  // Closed form: m p^(a-1) fails iff (a-1) log p <= exp(F/e^gamma) - log m.
  constexpr mpfr_prec_t kPrec = 256;
  const mpq_class f = f_ratio(m);
  const Interval slack_log =
      (Interval::from_rational(f, kPrec) / egamma(kPrec)).exp() - log_value(m, kPrec);

  for (const auto& pf : m.factors()) {
    std::uint32_t c = 1;
    while (fails_nicolas(m * FactoredNumber::prime(pf.prime, c), schedule)) {
      if (++c >= cap) throw std::runtime_error("exponent cap search reached its safety cap");
    }
    const Interval ratio = slack_log / log_of(pf.prime, kPrec);
    const double lo = std::floor(ratio.lo_double());
    const double hi = std::floor(ratio.hi_double());
    if (lo == hi && lo >= 0 && static_cast<std::uint32_t>(lo) + 1 != c) {
      throw std::logic_error("exponent cap for " + std::to_string(pf.prime) + " in " + m.to_string() +
                             " disagrees with the closed-form threshold");
    }
    (config.class_of(pf.prime) == PrimeClass::P ? caps.alpha : caps.beta).push_back({pf.prime, c});
  }
  return caps;
}

ExceptionRecord make_record(const FactoredNumber& n, const PrimeClassConfig& config,
                            const PrecisionSchedule& schedule) {
  ExceptionRecord rec;
  rec.n = n;
  rec.value = n.value();
  rec.omega_p = omega_class(n, PrimeClass::P, config);
  rec.omega_q = omega_class(n, PrimeClass::Q, config);
  rec.core = s_of(n, config);
  const Verdict robin = robin_verdict(n, schedule);
  if (robin.undecided()) throw UndecidedError(n);
  rec.robin_violator = robin.above_or_equal();
  rec.sum_two_squares = is_sum_two_squares(n);
  rec.representable = is_representable(n, config.representation);
  return rec;
}

std::vector<ExceptionRecord> expand_multiples(const FactoredNumber& m, const ExponentCaps& caps,
                                              const PrimeClassConfig& config, const PrecisionSchedule& schedule) {
  std::vector<PrimePower> exps(m.factors().begin(), m.factors().end());
  std::vector<std::uint32_t> max_e;
  for (const auto& f : exps) {
    const auto e = caps.max_exponent(f.prime);
    if (e == 0) throw std::invalid_argument("expand_multiples: caps do not cover " + std::to_string(f.prime));
    max_e.push_back(e);
  }
  const FactoredNumber bound = caps.divisor_bound(m);
  LogCutoff cutoff(f_ratio(m), schedule);

  std::vector<ExceptionRecord> out;
  auto emit = [&](const FactoredNumber& n) {
    if (!n.divides(bound)) {
      throw std::logic_error("exception " + n.to_string() + " escapes the divisor bound " + bound.to_string());
    }
    out.push_back(make_record(n, config, schedule));
  };

  if (!cutoff.fails(m)) return out;
  emit(m);
  // Each exponent vector is reached once by only raising coordinates at or
  // after the last raised one.
  auto descend = [&](auto&& self, std::size_t start) -> void {
    for (std::size_t j = start; j < exps.size(); ++j) {
      if (exps[j].exponent >= max_e[j]) continue;
      ++exps[j].exponent;
      FactoredNumber n(exps);
      if (cutoff.fails(n)) {
        emit(n);
        self(self, j);
      }
      --exps[j].exponent;
    }
  };
  descend(descend, 0);

  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  return out;
}

ExceptionSet enumerate_exceptions(const PrimeClassConfig& config, const EnumerationOptions& options) {
  config.validate();
  options.schedule.validate();
  const PrecisionSchedule& schedule = options.schedule;
  const unsigned threads = resolve_thread_count(options.threads);

  PrimeCatalog catalog(config);
  ExceptionSet result;
  result.config = config;
  result.provenance.max_k = options.max_k ? options.max_k : config.search.max_k;
  result.provenance.pk_minus_bound = config.search.pk_minus_bound;
  result.provenance.schedule = schedule;
  result.provenance.proven_complete = config.has_proven_bounds() && result.provenance.max_k >= 10000;
  result.provenance.pairs = admissible_pairs(catalog, result.provenance.max_k, schedule);
  const auto& pairs = result.provenance.pairs.pairs;

  std::vector<std::vector<FactoredNumber>> cores_per_pair(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    cores_per_pair[i] =
        admissible_cores(pairs[i], prime_slack_bounds(pairs[i], catalog, schedule, options.slack_cap), catalog,
                         schedule);
  });
  std::vector<FactoredNumber> cores;
  for (auto& c : cores_per_pair) cores.insert(cores.end(), c.begin(), c.end());
  result.provenance.core_count = cores.size();

  std::vector<std::vector<ExceptionRecord>> per_core(cores.size());
  parallel_for(cores.size(), threads, [&](std::size_t i) {
    per_core[i] = expand_multiples(cores[i], exponent_caps(cores[i], config, schedule, options.slack_cap), config,
                                   schedule);
  });

  for (auto& recs : per_core) {
    for (auto& r : recs) result.records.push_back(std::move(r));
  }
  std::sort(result.records.begin(), result.records.end(),
            [](const auto& a, const auto& b) { return a.value < b.value; });
  result.records.erase(std::unique(result.records.begin(), result.records.end(),
                                   [](const auto& a, const auto& b) { return a.value == b.value; }),
                       result.records.end());

  if (options.reverify) {
    const PrecisionSchedule fine = schedule.doubled();
    parallel_for(result.records.size(), threads, [&](std::size_t i) {
      const auto& rec = result.records[i];
      if (!in_S(rec.n, config) || !fails_nicolas(rec.n, fine)) {
        throw std::logic_error("record " + rec.decimal() + " failed re-verification");
      }
    });
  }
  return result;
}

WeightCeilings kbound_constants(PrimeCatalog& catalog) {
  const std::uint64_t b = catalog.config().search.pk_minus_bound;
  const std::uint64_t g_p = catalog.next_class_prime(catalog.next_class_prime(b, PrimeClass::P), PrimeClass::P);
  const std::uint64_t g_q = catalog.next_class_prime(b, PrimeClass::Q);
  WeightCeilings w;
  w.p_side = catalog.pi_class(b, PrimeClass::P) + 2 * catalog.pi_class(g_p, PrimeClass::Q);
  w.q_side = 1 + catalog.pi_class(2 * g_q, PrimeClass::P) + 2 * catalog.pi_class(b, PrimeClass::Q);
  return w;
}

}  // namespace nicrob
