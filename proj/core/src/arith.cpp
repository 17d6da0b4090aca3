#include "nicrob/arith.hpp"

#include <algorithm>

namespace nicrob {

ExactRatio f_ratio(const FactoredNumber& n) {
  mpz_class num = 1;
  mpz_class den = 1;
  for (const auto& f : n.factors()) {
    num *= f.prime;
    den *= f.prime - 1;
  }
  ExactRatio r(num, den);
  r.canonicalize();
  return r;
}

ExactRatio sigma_ratio(const FactoredNumber& n) {
  mpz_class num = 1;
  mpz_class den = 1;
  mpz_class pe;
  for (const auto& f : n.factors()) {
    mpz_ui_pow_ui(pe.get_mpz_t(), f.prime, f.exponent);
    num *= pe * f.prime - 1;
    den *= pe * (f.prime - 1);
  }
  ExactRatio r(num, den);
  r.canonicalize();
  return r;
}

FactoredNumber kernel(const FactoredNumber& n) {
  std::vector<PrimePower> out;
  out.reserve(n.size());
  for (const auto& f : n.factors()) out.push_back({f.prime, 1});
  return FactoredNumber(std::move(out));
}

unsigned omega(const FactoredNumber& n) noexcept { return static_cast<unsigned>(n.size()); }

unsigned bigomega(const FactoredNumber& n) noexcept {
  unsigned total = 0;
  for (const auto& f : n.factors()) total += f.exponent;
  return total;
}

unsigned omega_class(const FactoredNumber& n, PrimeClass c, const PrimeClassConfig& config) noexcept {
  return static_cast<unsigned>(std::count_if(n.factors().begin(), n.factors().end(),
                                             [&](const PrimePower& f) { return config.class_of(f.prime) == c; }));
}

FactoredNumber s_of(const FactoredNumber& n, const PrimeClassConfig& config) {
  std::vector<PrimePower> out;
  out.reserve(n.size());
  for (const auto& f : n.factors()) {
    out.push_back({f.prime, config.class_of(f.prime) == PrimeClass::P ? 1u : 2u});
  }
  return FactoredNumber(std::move(out));
}

bool in_S(const FactoredNumber& n, const PrimeClassConfig& config) noexcept {
  return std::all_of(n.factors().begin(), n.factors().end(), [&](const PrimePower& f) {
    return f.exponent >= 2 || config.class_of(f.prime) == PrimeClass::P;
  });
}

bool in_Y(const FactoredNumber& n, const PrimeClassConfig& config) noexcept {
  return std::all_of(n.factors().begin(), n.factors().end(), [&](const PrimePower& f) {
    return f.exponent == (config.class_of(f.prime) == PrimeClass::P ? 1u : 2u);
  });
}

Verdict nicolas_verdict(const FactoredNumber& n, const PrecisionSchedule& schedule) {
  return compare_threshold(f_ratio(n), n, schedule);
}

Verdict robin_verdict(const FactoredNumber& n, const PrecisionSchedule& schedule) {
  return compare_threshold(sigma_ratio(n), n, schedule);
}

namespace {

bool even_on_residue(const FactoredNumber& n, std::uint64_t modulus, std::uint64_t residue) noexcept {
  return std::all_of(n.factors().begin(), n.factors().end(), [&](const PrimePower& f) {
    return f.prime % modulus != residue || f.exponent % 2 == 0;
  });
}

}  // namespace

bool is_sum_two_squares(const FactoredNumber& n) noexcept { return even_on_residue(n, 4, 3); }

bool is_a2_plus_3b2(const FactoredNumber& n) noexcept { return even_on_residue(n, 3, 2); }

bool is_representable(const FactoredNumber& n, Representation r) noexcept {
  switch (r) {
    case Representation::TwoSquares: return is_sum_two_squares(n);
    case Representation::A2Plus3B2: return is_a2_plus_3b2(n);
    case Representation::None: return false;
  }
  return false;
}

}  // namespace nicrob
