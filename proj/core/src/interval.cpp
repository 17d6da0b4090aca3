#include "nicrob/interval.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace nicrob {

Interval::Interval(mpfr_prec_t precision_bits) {
  mpfr_init2(lo_, precision_bits);
  mpfr_init2(hi_, precision_bits);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) {
  mpfr_init2(lo_, other.precision());
  mpfr_init2(hi_, other.precision());
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept {
  mpfr_init2(lo_, MPFR_PREC_MIN);
  mpfr_init2(hi_, MPFR_PREC_MIN);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, other.precision());
    mpfr_set_prec(hi_, other.precision());
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::point(long value, mpfr_prec_t precision_bits) {
  Interval r(precision_bits);
  mpfr_set_si(r.lo_, value, MPFR_RNDD);
  mpfr_set_si(r.hi_, value, MPFR_RNDU);
  return r;
}

Interval Interval::from_u64(std::uint64_t value, mpfr_prec_t precision_bits) {
  Interval r(precision_bits);
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  mpfr_set_ui(r.lo_, value, MPFR_RNDD);
  mpfr_set_ui(r.hi_, value, MPFR_RNDU);
  return r;
}

Interval Interval::from_mpz(const mpz_class& value, mpfr_prec_t precision_bits) {
  Interval r(precision_bits);
  mpfr_set_z(r.lo_, value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, value.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_rational(const mpq_class& value, mpfr_prec_t precision_bits) {
  Interval r(precision_bits);
  mpfr_set_q(r.lo_, value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, value.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_fraction(const mpz_class& num, const mpz_class& den,
                                 mpfr_prec_t precision_bits) {
  if (sgn(den) <= 0) throw std::domain_error("from_fraction: denominator must be positive");
  // Rounded endpoints first, then a division whose direction keeps the hull.
  Interval n = from_mpz(num, precision_bits + 8);
  Interval d = from_mpz(den, precision_bits + 8);
  return (n / d).rounded_to(precision_bits);
}

Interval Interval::from_doubles(double lo, double hi, mpfr_prec_t precision_bits) {
  Interval r(precision_bits);
  mpfr_set_d(r.lo_, std::min(lo, hi), MPFR_RNDD);
  mpfr_set_d(r.hi_, std::max(lo, hi), MPFR_RNDU);
  return r;
}

double Interval::mid_double() const noexcept {
  return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN));
}

double Interval::width() const noexcept {
  mpfr_t w;
  mpfr_init2(w, 64);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  const double out = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return out;
}

bool Interval::contains(double x) const noexcept {
  return mpfr_cmp_d(lo_, x) <= 0 && mpfr_cmp_d(hi_, x) >= 0;
}

bool Interval::contains(const Interval& inner) const noexcept {
  return mpfr_lessequal_p(lo_, inner.lo_) && mpfr_greaterequal_p(hi_, inner.hi_);
}

Interval& Interval::operator+=(const Interval& rhs) {
  mpfr_add(lo_, lo_, rhs.lo_, MPFR_RNDD);
  mpfr_add(hi_, hi_, rhs.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator-=(const Interval& rhs) {
  // rhs may alias *this.
  const Interval sub(rhs);
  mpfr_sub(lo_, lo_, sub.hi_, MPFR_RNDD);
  mpfr_sub(hi_, hi_, sub.lo_, MPFR_RNDU);
  return *this;
}

Interval operator*(const Interval& a, const Interval& b) {
  const mpfr_prec_t prec = std::max(a.precision(), b.precision());
  Interval r(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  mpfr_srcptr as[2] = {a.lo_, a.hi_};
  mpfr_srcptr bs[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : as) {
    for (auto y : bs) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0) {
    throw std::domain_error("interval division by an enclosure of zero");
  }
  const mpfr_prec_t prec = std::max(a.precision(), b.precision());
  Interval r(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  mpfr_srcptr as[2] = {a.lo_, a.hi_};
  mpfr_srcptr bs[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : as) {
    for (auto y : bs) {
      mpfr_div(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_div(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

Interval Interval::log() const {
  if (!strictly_positive()) throw std::domain_error("interval log of a non-positive enclosure");
  Interval r(precision());
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::exp() const {
  Interval r(precision());
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::pow(unsigned long exponent) const {
  if (mpfr_sgn(lo_) < 0) throw std::domain_error("interval pow of a negative enclosure");
  Interval r(precision());
  mpfr_pow_ui(r.lo_, lo_, exponent, MPFR_RNDD);
  mpfr_pow_ui(r.hi_, hi_, exponent, MPFR_RNDU);
  return r;
}

Interval Interval::pow(const Interval& exponent) const {
  return (exponent * log()).exp();
}

Interval Interval::sqrt() const {
  if (mpfr_sgn(lo_) < 0) throw std::domain_error("interval sqrt of a negative enclosure");
  Interval r(precision());
  mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::rounded_to(mpfr_prec_t precision_bits) const {
  Interval r(precision_bits);
  mpfr_set(r.lo_, lo_, MPFR_RNDD);
  mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

std::string Interval::to_string(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) * 2 + 64);
  std::string out = "[";
  mpfr_snprintf(buf.data(), buf.size(), "%.*RDg", digits, lo_);
  out += buf.data();
  out += ", ";
  mpfr_snprintf(buf.data(), buf.size(), "%.*RUg", digits, hi_);
  out += buf.data();
  out += "]";
  return out;
}

std::ostream& operator<<(std::ostream& os, const Interval& iv) { return os << iv.to_string(); }

}  // namespace nicrob
