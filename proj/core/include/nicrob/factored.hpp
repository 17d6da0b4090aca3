#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace nicrob {

struct PrimePower {
  std::uint64_t prime = 0;
  std::uint32_t exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// A natural number carried as its prime factorization. The empty list is 1.
//
// Primality of the bases is the caller's contract; the constructor only
// normalizes order, merges repeated bases and drops zero exponents.
class FactoredNumber {
 public:
  FactoredNumber() = default;
  explicit FactoredNumber(std::vector<PrimePower> factors);

  static FactoredNumber prime(std::uint64_t p, std::uint32_t exponent = 1) {
    return FactoredNumber({{p, exponent}});
  }

  std::span<const PrimePower> factors() const noexcept { return factors_; }
  std::size_t size() const noexcept { return factors_.size(); }
  bool is_one() const noexcept { return factors_.empty(); }

  // Exponent of p, 0 if p does not divide.
  std::uint32_t exponent_of(std::uint64_t p) const noexcept;

  // log2 of the value, approximate; used for materialization decisions.
  double bit_length_estimate() const noexcept { return log2_estimate_; }

  mpz_class value() const;
  std::optional<std::uint64_t> to_u64() const;

  // Exact decimal, regardless of size.
  std::string decimal() const;
  // Decimal when below max_bits, otherwise factorization plus a rounded value.
  std::string display(double max_bits = 512.0) const;
  // "2^3*3^2" form; "1" for the empty product.
  std::string to_string() const;

  bool divides(const FactoredNumber& other) const noexcept;

  FactoredNumber operator*(const FactoredNumber& other) const;
  FactoredNumber& operator*=(const FactoredNumber& other);

  friend bool operator==(const FactoredNumber& a, const FactoredNumber& b) {
    return a.factors_ == b.factors_;
  }

 private:
  std::vector<PrimePower> factors_;
  double log2_estimate_ = 0.0;
};

// Compares represented values.
std::strong_ordering compare_values(const FactoredNumber& a, const FactoredNumber& b);

}  // namespace nicrob
