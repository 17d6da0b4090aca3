#include "nicrob/factored.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace nicrob {

FactoredNumber::FactoredNumber(std::vector<PrimePower> factors) {
  std::erase_if(factors, [](const PrimePower& f) { return f.exponent == 0; });
  std::sort(factors.begin(), factors.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  for (const auto& f : factors) {
    if (!factors_.empty() && factors_.back().prime == f.prime) {
      factors_.back().exponent += f.exponent;
    } else {
      factors_.push_back(f);
    }
  }
  for (const auto& f : factors_) {
    log2_estimate_ += f.exponent * std::log2(static_cast<double>(f.prime));
  }
}

std::uint32_t FactoredNumber::exponent_of(std::uint64_t p) const noexcept {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), p,
                             [](const PrimePower& f, std::uint64_t q) { return f.prime < q; });
  return (it != factors_.end() && it->prime == p) ? it->exponent : 0;
}

mpz_class FactoredNumber::value() const {
  mpz_class result = 1;
  mpz_class power;
  for (const auto& f : factors_) {
    mpz_ui_pow_ui(power.get_mpz_t(), f.prime, f.exponent);
    result *= power;
  }
  return result;
}

std::optional<std::uint64_t> FactoredNumber::to_u64() const {
  if (log2_estimate_ > 66.0) return std::nullopt;
  mpz_class v = value();
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 64) return std::nullopt;
  return static_cast<std::uint64_t>(mpz_get_ui(v.get_mpz_t()));
}

std::string FactoredNumber::decimal() const { return value().get_str(10); }

std::string FactoredNumber::display(double max_bits) const {
  if (log2_estimate_ <= max_bits) return decimal();
  const double log10v = log2_estimate_ * std::log10(2.0);
  const double exponent = std::floor(log10v);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6fe+%.0f", std::pow(10.0, log10v - exponent), exponent);
  return to_string() + " (~" + buf + ")";
}

std::string FactoredNumber::to_string() const {
  if (factors_.empty()) return "1";
  std::ostringstream out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out << '*';
    out << factors_[i].prime;
    if (factors_[i].exponent != 1) out << '^' << factors_[i].exponent;
  }
  return out.str();
}

bool FactoredNumber::divides(const FactoredNumber& other) const noexcept {
  return std::all_of(factors_.begin(), factors_.end(), [&](const PrimePower& f) {
    return other.exponent_of(f.prime) >= f.exponent;
  });
}

FactoredNumber FactoredNumber::operator*(const FactoredNumber& other) const {
  std::vector<PrimePower> merged(factors_);
  merged.insert(merged.end(), other.factors_.begin(), other.factors_.end());
  return FactoredNumber(std::move(merged));
}

FactoredNumber& FactoredNumber::operator*=(const FactoredNumber& other) {
  *this = *this * other;
  return *this;
}

std::strong_ordering compare_values(const FactoredNumber& a, const FactoredNumber& b) {
  if (a == b) return std::strong_ordering::equal;
  const int c = cmp(a.value(), b.value());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

}  // namespace nicrob
