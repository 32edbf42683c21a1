#pragma once

#include <gmp.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "plspan/errors.hpp"

namespace plspan {

// Arbitrary-precision rational with value semantics.  Always stored in
// lowest terms with a positive denominator, so equality is structural and
// string output is canonical.
class Rational {
 public:
  Rational() { mpq_init(q_); }
  Rational(long long n) {  // NOLINT: implicit by design, mirrors int literals
    mpq_init(q_);
    mpq_set_si(q_, static_cast<long>(n), 1);
  }
  Rational(long n) : Rational(static_cast<long long>(n)) {}
  Rational(int n) : Rational(static_cast<long long>(n)) {}
  Rational(long long num, long long den);

  Rational(const Rational& o) {
    mpq_init(q_);
    mpq_set(q_, o.q_);
  }
  Rational(Rational&& o) noexcept {
    mpq_init(q_);
    mpq_swap(q_, o.q_);
  }
  Rational& operator=(const Rational& o) {
    if (this != &o) mpq_set(q_, o.q_);
    return *this;
  }
  Rational& operator=(Rational&& o) noexcept {
    mpq_swap(q_, o.q_);
    return *this;
  }
  ~Rational() { mpq_clear(q_); }

  // Accepts an integer ("12", "-3"), a fraction ("7/2", "-1/3"), or an
  // exact decimal ("0.25" -> 1/4).  Returns nullopt on malformed text or a
  // zero denominator.
  static std::optional<Rational> parse(std::string_view text);
  // Like parse() but throws ParseError, with `what` naming the source.
  static Rational parse_or_throw(std::string_view text,
                                 const std::string& what = "rational");

  int sign() const { return mpq_sgn(q_); }
  bool is_zero() const { return mpq_sgn(q_) == 0; }
  bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }
  double to_double() const { return mpq_get_d(q_); }

  // Integer floor/ceil; throws Error if the result exceeds long long range.
  long long floor_ll() const;
  long long ceil_ll() const;

  // Canonical form: "p" when integral, otherwise "p/q" with q > 1.
  std::string str() const;
  // Fixed-point decimal with `digits` fractional digits, rounding ties away
  // from zero; digits == 0 yields a plain integer string.
  std::string decimal(int digits) const;

  Rational& operator+=(const Rational& o) {
    mpq_add(q_, q_, o.q_);
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    mpq_sub(q_, q_, o.q_);
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    mpq_mul(q_, q_, o.q_);
    return *this;
  }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const {
    Rational r;
    mpq_neg(r.q_, q_);
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.q_, b.q_) != 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    int c = mpq_cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend Rational abs(const Rational& a) {
    Rational r;
    mpq_abs(r.q_, a.q_);
    return r;
  }
  friend void swap(Rational& a, Rational& b) noexcept {
    mpq_swap(a.q_, b.q_);
  }

 private:
  mpq_t q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational frac(long long num, long long den) {
  return Rational(num, den);
}

}  // namespace plspan
