#include "crp/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

#include "crp/errors.hpp"

namespace crp {

namespace {

mpz_class mpz_from_int64(long long n) {
  mpz_class z;
  bool negative = n < 0;
  unsigned long long mag = negative ? 0ULL - static_cast<unsigned long long>(n) : static_cast<unsigned long long>(n);
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(mag), 0, 0, &mag);
  if (negative) z = -z;
  return z;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class parse_digits(std::string_view s) {
  mpz_class z;
  if (mpz_set_str(z.get_mpz_t(), std::string(s).c_str(), 10) != 0)
    fail(errc::parse_error, "bad integer literal '" + std::string(s) + "'");
  return z;
}

}  // namespace

mpq_class Rational::make_int(long long n) { return mpq_class(mpz_from_int64(n)); }

Rational::Rational(long long num, long long den) {
  if (den == 0) fail(errc::invalid_params, "zero denominator");
  q_ = mpq_class(mpz_from_int64(num));
  q_ /= mpq_class(mpz_from_int64(den));
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) fail(errc::invalid_params, "division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) fail(errc::parse_error, "empty rational literal");

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  mpq_class value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      fail(errc::parse_error, "bad rational literal '" + std::string(text) + "'");
    mpz_class d = parse_digits(den);
    if (d == 0) fail(errc::parse_error, "zero denominator in '" + std::string(text) + "'");
    value = mpq_class(parse_digits(num), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || !all_digits(frac))
      fail(errc::parse_error, "bad decimal literal '" + std::string(text) + "'");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    value = mpq_class(parse_digits(whole) * scale + parse_digits(frac), scale);
  } else {
    if (!all_digits(s)) fail(errc::parse_error, "bad rational literal '" + std::string(text) + "'");
    value = mpq_class(parse_digits(s));
  }
  value.canonicalize();
  if (negative) value = -value;
  return Rational(value);
}

Rational Rational::pow2(long exponent) {
  mpz_class big = 1;
  mpz_mul_2exp(big.get_mpz_t(), big.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent < 0 ? -exponent : exponent));
  return exponent >= 0 ? Rational(mpq_class(big)) : Rational(mpq_class(1, big));
}

Rational Rational::floor_to_denominator(long double x, long long denominator) {
  if (denominator <= 0) fail(errc::invalid_params, "nonpositive denominator");
  long double scaled = std::floor(x * static_cast<long double>(denominator));
  if (!(scaled >= -9.0e18L && scaled <= 9.0e18L))
    fail(errc::invalid_params, "value out of range for rounding");
  auto num = static_cast<long long>(scaled);
  return Rational(num, denominator);
}

long long Rational::as_int64() const {
  if (!is_integer()) fail(errc::invalid_params, "not an integer: " + str());
  mpz_class n = numerator();
  if (!n.fits_slong_p()) fail(errc::invalid_params, "integer too large: " + str());
  return n.get_si();
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace crp
