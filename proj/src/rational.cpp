#include "plspan/rational.hpp"

#include <cctype>
#include <limits>
#include <ostream>
#include <vector>

namespace plspan {
namespace {

std::string mpz_to_string(const mpz_t z) {
  std::vector<char> buf(mpz_sizeinbase(z, 10) + 2);
  mpz_get_str(buf.data(), 10, z);
  return std::string(buf.data());
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long long num, long long den) {
  if (den == 0) throw Error("rational with zero denominator");
  mpq_init(q_);
  mpq_set_si(q_, static_cast<long>(num), 1);
  Rational d;
  mpq_set_si(d.q_, static_cast<long>(den), 1);
  mpq_div(q_, q_, d.q_);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error("rational division by zero");
  mpq_div(q_, q_, o.q_);
  return *this;
}

std::optional<Rational> Rational::parse(std::string_view text) {
  // Trim surrounding whitespace.
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
    if (text.empty()) return std::nullopt;
  }

  std::string num, den;
  auto slash = text.find('/');
  auto dot = text.find('.');
  if (slash != std::string_view::npos) {
    if (dot != std::string_view::npos) return std::nullopt;
    std::string_view p = text.substr(0, slash);
    std::string_view q = text.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) return std::nullopt;
    num.assign(p);
    den.assign(q);
  } else if (dot != std::string_view::npos) {
    std::string_view ip = text.substr(0, dot);
    std::string_view fp = text.substr(dot + 1);
    if (ip.empty() && fp.empty()) return std::nullopt;
    if (!ip.empty() && !all_digits(ip)) return std::nullopt;
    if (!fp.empty() && !all_digits(fp)) return std::nullopt;
    num.assign(ip);
    num.append(fp);
    if (num.empty()) return std::nullopt;
    den = "1";
    den.append(fp.size(), '0');
  } else {
    if (!all_digits(text)) return std::nullopt;
    num.assign(text);
    den = "1";
  }

  Rational r;
  mpz_t n, d;
  mpz_init(n);
  mpz_init(d);
  bool ok = mpz_set_str(n, num.c_str(), 10) == 0 &&
            mpz_set_str(d, den.c_str(), 10) == 0 && mpz_sgn(d) != 0;
  if (ok) {
    if (negative) mpz_neg(n, n);
    mpz_set(mpq_numref(r.q_), n);
    mpz_set(mpq_denref(r.q_), d);
    mpq_canonicalize(r.q_);
  }
  mpz_clear(n);
  mpz_clear(d);
  if (!ok) return std::nullopt;
  return r;
}

Rational Rational::parse_or_throw(std::string_view text,
                                  const std::string& what) {
  auto r = parse(text);
  if (!r) throw ParseError("invalid " + what + ": '" + std::string(text) + "'");
  return *r;
}

long long Rational::floor_ll() const {
  mpz_t z;
  mpz_init(z);
  mpz_fdiv_q(z, mpq_numref(q_), mpq_denref(q_));
  bool fits = mpz_fits_slong_p(z) != 0;
  long v = fits ? mpz_get_si(z) : 0;
  mpz_clear(z);
  if (!fits) throw Error("floor out of range");
  return v;
}

long long Rational::ceil_ll() const {
  mpz_t z;
  mpz_init(z);
  mpz_cdiv_q(z, mpq_numref(q_), mpq_denref(q_));
  bool fits = mpz_fits_slong_p(z) != 0;
  long v = fits ? mpz_get_si(z) : 0;
  mpz_clear(z);
  if (!fits) throw Error("ceil out of range");
  return v;
}

std::string Rational::str() const {
  std::string s = mpz_to_string(mpq_numref(q_));
  if (!is_integer()) {
    s += '/';
    s += mpz_to_string(mpq_denref(q_));
  }
  return s;
}

std::string Rational::decimal(int digits) const {
  if (digits < 0) throw Error("negative precision");
  mpz_t scaled, ten, rem;
  mpz_init(scaled);
  mpz_init(ten);
  mpz_init(rem);
  mpz_ui_pow_ui(ten, 10, static_cast<unsigned long>(digits));
  // scaled = round(|num| * 10^digits / den), ties away from zero.
  mpz_abs(scaled, mpq_numref(q_));
  mpz_mul(scaled, scaled, ten);
  mpz_fdiv_qr(scaled, rem, scaled, mpq_denref(q_));
  mpz_mul_ui(rem, rem, 2);
  if (mpz_cmp(rem, mpq_denref(q_)) >= 0) mpz_add_ui(scaled, scaled, 1);

  mpz_t ip, fp;
  mpz_init(ip);
  mpz_init(fp);
  mpz_fdiv_qr(ip, fp, scaled, ten);
  std::string out;
  if (sign() < 0 && mpz_sgn(scaled) != 0) out += '-';
  out += mpz_to_string(ip);
  if (digits > 0) {
    std::string f = mpz_to_string(fp);
    out += '.';
    out.append(static_cast<size_t>(digits) - f.size(), '0');
    out += f;
  }
  mpz_clear(ip);
  mpz_clear(fp);
  mpz_clear(scaled);
  mpz_clear(ten);
  mpz_clear(rem);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace plspan
