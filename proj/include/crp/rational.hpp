#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace crp {

/// Exact nonnegative-or-negative rational scalar, always kept in canonical
/// reduced form (positive denominator, gcd(num, den) == 1). All monetary and
/// probability quantities in the library are Rationals; floating point only
/// appears in reporting mirrors.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long long n) : q_(make_int(n)) {}
  Rational(int n) : q_(static_cast<long>(n)) {}
  Rational(long long num, long long den);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses "7", "-3/4" or an exact decimal such as "0.25".
  static Rational parse(std::string_view text);

  /// 2^exponent; exponent may be negative.
  static Rational pow2(long exponent);

  /// Largest multiple of 1/denominator that is <= x.
  static Rational floor_to_denominator(long double x, long long denominator);

  const mpq_class& raw() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_negative() const { return sgn(q_) < 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  /// Requires an integer value that fits in long long.
  long long as_int64() const;

  double to_double() const { return q_.get_d(); }
  std::string str() const;

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) >= 0; }

  static const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
  static const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

 private:
  static mpq_class make_int(long long n);
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace crp
