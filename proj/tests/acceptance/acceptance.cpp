// Acceptance gate: one PASS/FAIL line per criterion, exit status = number of
// failed criteria.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "nicrob/cli.hpp"
#include "nicrob/oracle.hpp"

using namespace nicrob;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Result {
  bool pass = false;
  std::string detail;
};

// Enumerations shared between criteria, timed on first use.
struct Shared {
  std::optional<ExceptionSet> mod4;
  double mod4_seconds = 0.0;
  std::optional<ExceptionSet> a2;
  double a2_seconds = 0.0;

  const ExceptionSet& get_mod4() {
    if (!mod4) {
      const auto t0 = Clock::now();
      mod4 = enumerate_exceptions(PrimeClassConfig::mod4());
      mod4_seconds = seconds_since(t0);
    }
    return *mod4;
  }
  const ExceptionSet& get_a2() {
    if (!a2) {
      const auto t0 = Clock::now();
      a2 = enumerate_exceptions(PrimeClassConfig::a2plus3b2());
      a2_seconds = seconds_since(t0);
    }
    return *a2;
  }
};

Shared shared;

template <typename T>
std::string join(const std::vector<T>& v) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  return s.str();
}

Result mod4_count() {
  const auto& set = shared.get_mod4();
  const bool ok = set.records.size() == 347 && shared.mod4_seconds < 120.0;
  return {ok, std::to_string(set.records.size()) + " records in " + std::to_string(shared.mod4_seconds) + " s"};
}

Result two_squares_subset() {
  std::vector<const ExceptionRecord*> kept;
  for (const auto& r : shared.get_mod4().records) {
    if (r.sum_two_squares) kept.push_back(&r);
  }
  if (kept.empty()) return {false, "no records"};
  const ExceptionRecord& top = *kept.back();
  const bool multiplies_back = top.n.value() == top.value && top.n.decimal() == top.decimal();
  const bool ok = kept.size() == 246 && top.decimal() == "52509581344222812810" && multiplies_back;
  return {ok, std::to_string(kept.size()) + " records, max " + top.decimal() + " = " + top.n.to_string()};
}

Result robin_violators() {
  std::vector<std::uint64_t> got;
  for (const auto& r : shared.get_mod4().records) {
    if (r.robin_violator && r.sum_two_squares) got.push_back(r.value.get_ui());
  }
  const std::vector<std::uint64_t> expected{1, 2, 4, 5, 8, 9, 10, 16, 18, 20, 36, 72, 180, 360, 720};
  return {got == expected, "{" + join(got) + "}"};
}

Result pair_set() {
  PrimeCatalog catalog(PrimeClassConfig::mod4());
  const PairSet set = admissible_pairs(catalog, 10000);
  const std::vector<ClassCounts> expected{
      {0, 0}, {0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}, {2, 3}, {3, 1},
      {3, 2}, {3, 3}, {3, 4}, {4, 1}, {4, 2}, {4, 3}, {4, 4}, {4, 5}, {5, 2}, {5, 3},
      {5, 4}, {5, 5}, {6, 3}, {6, 4}, {6, 5}, {7, 3}, {7, 4}, {7, 5}, {8, 5}};
  return {set.pairs == expected, std::to_string(set.pairs.size()) + " pairs"};
}

Result slice_two_two() {
  std::vector<std::uint64_t> got;
  for (const auto& r : shared.get_mod4().records) {
    if (r.omega_p == 2 && r.omega_q == 2) got.push_back(r.value.get_ui());
  }
  const std::vector<std::uint64_t> expected{4410,  8820,  10890, 13230, 17640, 21780, 22050,
                                            26460, 30870, 35280, 39690, 44100, 52920, 61740,
                                            66150, 70560, 79380, 88200, 92610, 105840, 110250};
  return {got == expected, std::to_string(got.size()) + " numbers: " + join(got)};
}

Result weight_constants() {
  PrimeCatalog catalog(PrimeClassConfig::mod4());
  const WeightCeilings w = kbound_constants(catalog);
  const auto& set = shared.get_mod4();
  const unsigned max_weight = set.provenance.pairs.max_weight();
  unsigned max_omega = 0;
  for (const auto& r : set.records) max_omega = std::max(max_omega, omega(r.n));
  const bool ok = w.p_side == 7718 && w.q_side == 9951 && max_weight <= 18 && max_omega <= 13;
  return {ok, "(" + std::to_string(w.p_side) + ", " + std::to_string(w.q_side) + "), max r+2s " +
                  std::to_string(max_weight) + ", max omega " + std::to_string(max_omega)};
}

Result a2_variant() {
  const auto& set = shared.get_a2();
  std::size_t count = 0;
  std::string largest;
  for (const auto& r : set.records) {
    if (!r.representable) continue;
    ++count;
    largest = r.decimal();
  }
  const bool ok = count == 261 && largest == "397999936131188090700" && shared.a2_seconds < 300.0;
  return {ok, std::to_string(count) + " representable, max " + largest + ", " + std::to_string(shared.a2_seconds) +
                  " s"};
}

Result oracle_equivalence() {
  std::ostringstream detail;
  bool ok = true;
  for (const ExceptionSet* set : {&shared.get_mod4(), &shared.get_a2()}) {
    for (std::uint64_t bound : {1'000'000ull, 10'000'000ull}) {
      const RangeReport r = cross_validate(bound, *set);
      const bool in_time = bound < 10'000'000ull || r.brute_seconds < 600.0;
      ok = ok && r.agreement && in_time;
      detail << set->config.name << "@" << bound << ":" << (r.agreement ? "agree" : "DIFFER") << "("
             << r.brute.size() << "," << r.brute_seconds << "s) ";
    }
  }
  return {ok, detail.str()};
}

Result property_suites() {
  using nicrob::testing::FactoredGen;
  constexpr int kCases = 1000;
  std::size_t failures = 0;
  std::size_t cases = 0;
  FactoredGen gen(20240611);
  const std::vector<PrimeClassConfig> configs{PrimeClassConfig::mod4(), PrimeClassConfig::a2plus3b2()};

  for (int i = 0; i < kCases; ++i, ++cases) {  // multiplicativity
    const FactoredNumber n = gen.next(40, 0.35, 5);
    std::vector<PrimePower> a;
    std::vector<PrimePower> b;
    for (const auto& f : n.factors()) (gen.uniform(0, 1) ? a : b).push_back(f);
    const FactoredNumber x(std::move(a));
    const FactoredNumber y(std::move(b));
    failures += f_ratio(x * y) != f_ratio(x) * f_ratio(y);
  }
  for (int i = 0; i < kCases; ++i, ++cases) {  // kernel invariance
    const FactoredNumber n = gen.next(40, 0.3, 8);
    failures += f_ratio(n) != f_ratio(kernel(n)) || omega(n) != omega(kernel(n));
  }
  for (int i = 0; i < kCases; ++i) {  // sigma/n below n/phi(n)
    const FactoredNumber n = gen.next(25, 0.3, 6);
    if (n.is_one()) {
      --i;
      continue;
    }
    ++cases;
    failures += !(sigma_ratio(n) < f_ratio(n));
  }
  for (const auto& config : configs) {  // core properties
    for (int i = 0; i < kCases; ++i, ++cases) {
      const FactoredNumber n = gen.next(30, 0.3, 5);
      const FactoredNumber s = s_of(n, config);
      failures += !in_S(s, config);
      failures += kernel(s) != kernel(n);
      failures += in_S(n, config) && !s.divides(n);
    }
  }
  constexpr std::uint64_t kBound = 100000;  // two squares, exhaustive
  std::vector<bool> two(kBound + 1, false);
  for (std::uint64_t a = 0; a * a <= kBound; ++a) {
    for (std::uint64_t b = 0; a * a + b * b <= kBound; ++b) two[a * a + b * b] = true;
  }
  for (std::uint64_t n = 1; n <= kBound; ++n, ++cases) failures += is_sum_two_squares(factorize(n)) != two[n];

  return {failures == 0, std::to_string(cases) + " cases, " + std::to_string(failures) + " failures"};
}

Result bound_checks() {
  const auto theta = verify_theta_bounds(45000, 1'000'000, 5000, PrimeClassConfig::mod4());
  const auto theta_a2 = verify_theta_bounds(45000, 1'000'000, 5000, PrimeClassConfig::a2plus3b2());
  const auto mertens = verify_mertens_bound(1'000'000, 1000);
  const auto theta_ok = std::all_of(theta.begin(), theta.end(), [](const auto& s) { return s.pass(); }) &&
                        std::all_of(theta_a2.begin(), theta_a2.end(), [](const auto& s) { return s.pass(); });
  const auto mertens_ok = std::all_of(mertens.begin(), mertens.end(), [](const auto& s) { return s.pass; });
  return {theta_ok && mertens_ok && theta.size() == 192,
          std::to_string(theta.size()) + " theta samples per config " + (theta_ok ? "pass" : "FAIL") + ", " +
              std::to_string(mertens.size()) + " product samples " + (mertens_ok ? "pass" : "FAIL")};
}

Result witness() {
  std::vector<double> d;
  for (std::uint64_t n : {1000ull, 10000ull, 100000ull}) d.push_back(limsup_witness(n).distance_to_egamma());
  const bool decreasing = d[0] > d[1] && d[1] > d[2];
  const bool close = d[2] < 0.25;
  char buf[200];
  std::snprintf(buf, sizeof buf, "distances %.4f, %.4f, %.4f; decreasing %s; below 0.25 at 1e5 %s", d[0], d[1],
                d[2], decreasing ? "yes" : "no", close ? "yes" : "no");
  return {decreasing && close, buf};
}

Result determinism() {
  EnumerationOptions single;
  single.threads = 1;
  EnumerationOptions multi;
  multi.threads = 4;
  const std::string a = cli::digest(enumerate_exceptions(PrimeClassConfig::mod4(), single).records);
  const std::string b = cli::digest(enumerate_exceptions(PrimeClassConfig::mod4(), multi).records);
  return {a == b, a + " vs " + b};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"mod-4 enumeration yields exactly 347 records", mod4_count},
      {"246 sums of two squares, largest 52509581344222812810", two_squares_subset},
      {"Robin violators among sums of two squares", robin_violators},
      {"class-count pairs with max_k = 10000", pair_set},
      {"omega_P = omega_Q = 2 slice", slice_two_two},
      {"weight ceilings (7718, 9951), r+2s <= 18, omega <= 13", weight_constants},
      {"a^2+3b^2 variant: 261 representable", a2_variant},
      {"brute force agrees at 1e6 and 1e7, both configs", oracle_equivalence},
      {"randomized property suites", property_suites},
      {"theta and product bounds on sampled ranges", bound_checks},
      {"primorial-power witness approaches e^gamma", witness},
      {"two enumeration runs give identical digests", determinism},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    failed += !r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first << " -- " << r.detail
              << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failed;
}
