#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace nicrob {

// Closed interval [lo, hi] with MPFR endpoints. Every operation rounds the
// lower endpoint toward -inf and the upper toward +inf, so the result always
// encloses the exact value of the operation applied to the enclosed reals.
class Interval {
 public:
  explicit Interval(mpfr_prec_t precision_bits);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  static Interval point(long value, mpfr_prec_t precision_bits);
  static Interval from_u64(std::uint64_t value, mpfr_prec_t precision_bits);
  static Interval from_mpz(const mpz_class& value, mpfr_prec_t precision_bits);
  static Interval from_rational(const mpq_class& value, mpfr_prec_t precision_bits);
  // Enclosure of num/den for arbitrary-size integers, den > 0.
  static Interval from_fraction(const mpz_class& num, const mpz_class& den,
                                mpfr_prec_t precision_bits);
  // Hull of two doubles, taken as exact.
  static Interval from_doubles(double lo, double hi, mpfr_prec_t precision_bits);

  mpfr_srcptr lo() const noexcept { return lo_; }
  mpfr_srcptr hi() const noexcept { return hi_; }
  mpfr_ptr lo() noexcept { return lo_; }
  mpfr_ptr hi() noexcept { return hi_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(lo_); }

  double lo_double() const noexcept { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_double() const noexcept { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid_double() const noexcept;
  // Upper bound on hi - lo.
  double width() const noexcept;

  bool contains(double x) const noexcept;
  bool contains(const Interval& inner) const noexcept;
  bool strictly_positive() const noexcept { return mpfr_sgn(lo_) > 0; }
  bool strictly_negative() const noexcept { return mpfr_sgn(hi_) < 0; }
  // Certified strict orderings; both false means the enclosures overlap.
  bool certainly_less(const Interval& other) const noexcept {
    return mpfr_less_p(hi_, other.lo_) != 0;
  }
  bool certainly_greater(const Interval& other) const noexcept {
    return mpfr_greater_p(lo_, other.hi_) != 0;
  }

  Interval& operator+=(const Interval& rhs);
  Interval& operator-=(const Interval& rhs);
  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(const Interval& a, const Interval& b);
  // Requires b to exclude zero.
  friend Interval operator/(const Interval& a, const Interval& b);

  // Require a strictly positive argument; throw std::domain_error otherwise.
  Interval log() const;
  Interval exp() const;
  // Integer power for a non-negative base.
  Interval pow(unsigned long exponent) const;
  // Real power x^y for x strictly positive.
  Interval pow(const Interval& exponent) const;
  Interval sqrt() const;

  // Widen to a coarser precision, preserving the enclosure.
  Interval rounded_to(mpfr_prec_t precision_bits) const;

  std::string to_string(int digits = 17) const;

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

std::ostream& operator<<(std::ostream& os, const Interval& iv);

}  // namespace nicrob
