#pragma once

// Exact arithmetic over Q and over real quadratic fields Q(sqrt(d)).
//
// Everything downstream (interval sieve, forbidden-interval geometry, badness
// verification) reduces its comparisons to integer sign tests done here.  No
// floating point is used anywhere: a quadratic number carries its defining
// integers, and orderings against rationals or other field elements are
// decided by squaring away the radical.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace badpair {

using BigInt = mpz_class;
using Rational = mpq_class;

// ---- integer helpers -------------------------------------------------------

// Floor division a/b for b != 0 (rounds toward -infinity).
BigInt floor_div(const BigInt& a, const BigInt& b);

// floor(sqrt(x)) for x >= 0.
BigInt floor_sqrt(const BigInt& x);

// floor(x^(1/n)) for x >= 0, n >= 1.
BigInt floor_nth_root(const BigInt& x, unsigned long n);

// base^e with e >= 0.
BigInt pow_int(const BigInt& base, unsigned long e);

// sign(z - sqrt(u)) for u >= 0 not a perfect square unless z^2 == u is
// acceptable to the caller; returns -1, 0, +1.
int cmp_int_sqrt(const BigInt& z, const BigInt& u);

// ---- rational helpers ------------------------------------------------------

// num/den as a canonical rational; den != 0.
Rational make_rational(const BigInt& num, const BigInt& den);

// Accepts "p/q", integers, decimals ("0.25"), and scientific notation
// ("1e-4", "2.5E3"); throws std::invalid_argument on anything else.
Rational parse_rational(const std::string& text);

BigInt floor_rational(const Rational& x);
BigInt ceil_rational(const Rational& x);
Rational abs_rational(const Rational& x);

// Distance from x to the nearest integer, in [0, 1/2].
Rational nearest_int_dist(const Rational& x);

// sign(value - R^(eu/ev)) for value > 0, R >= 2, ev >= 1.  Exact: compares
// num^ev * R^max(0,-eu) against den^ev * R^max(0,eu).
int cmp_pow(const Rational& value, const BigInt& R, long eu, unsigned long ev);

// Decimal rendering of x truncated toward -infinity (lower) or +infinity
// (upper) at `digits` places after the point.  Deterministic; used anywhere a
// human-readable approximation accompanies an exact value.
std::string decimal_lower(const Rational& x, unsigned digits);
std::string decimal_upper(const Rational& x, unsigned digits);

// ---- quadratic numbers -----------------------------------------------------

// Value (a + b*sqrt(d)) / c with c > 0, gcd(a, b, c) = 1, and d > 1 not a
// perfect square.  b == 0 is allowed, so plain rationals embed; d is kept even
// then so mixed arithmetic stays within one field.
class QuadraticNumber {
 public:
  QuadraticNumber() : a_(0), b_(0), c_(1), d_(2) {}  // rational zero
  QuadraticNumber(BigInt a, BigInt b, BigInt c, BigInt d);

  static QuadraticNumber from_rational(const Rational& r, const BigInt& d);

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  const BigInt& c() const { return c_; }
  const BigInt& d() const { return d_; }

  bool is_rational() const { return b_ == 0; }
  Rational as_rational() const;  // requires is_rational()

  int sign() const;
  int compare(const QuadraticNumber& other) const;  // requires same d
  int compare(const Rational& r) const;

  QuadraticNumber operator-() const;
  QuadraticNumber operator+(const QuadraticNumber& o) const;
  QuadraticNumber operator-(const QuadraticNumber& o) const;
  QuadraticNumber operator*(const QuadraticNumber& o) const;
  QuadraticNumber operator/(const QuadraticNumber& o) const;  // o != 0

  QuadraticNumber operator+(const Rational& r) const;
  QuadraticNumber operator-(const Rational& r) const;
  QuadraticNumber operator*(const Rational& r) const;
  QuadraticNumber operator/(const Rational& r) const;  // r != 0

  QuadraticNumber abs() const;
  QuadraticNumber pow(unsigned long e) const;

  BigInt floor() const;
  QuadraticNumber frac() const;  // x - floor(x), in [0, 1)

  // Nested rational interval [lo, hi] containing the value with
  // hi - lo <= tol (tol > 0); lo == hi iff the value is rational.
  std::pair<Rational, Rational> enclosure(const Rational& tol) const;

  std::string str() const;

  bool operator==(const QuadraticNumber& o) const {
    return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
  }

 private:
  BigInt a_, b_, c_, d_;
  void normalize();
};

// Distance from x to the nearest integer as an exact field element.
QuadraticNumber nearest_int_dist(const QuadraticNumber& x);

// ---- continued fractions ---------------------------------------------------

struct Convergent {
  BigInt p, q;  // p/q in lowest terms, q >= 1
};

// Finite or eventually periodic continued fraction [a0; a1, a2, ...].
// Periodic ones denote quadratic irrationals; terms_[period_start..] repeat
// forever.  a0 may be any integer, a_i >= 1 for i >= 1.
class ContinuedFraction {
 public:
  ContinuedFraction(std::vector<BigInt> terms,
                    std::optional<std::size_t> period_start);

  bool periodic() const { return period_start_.has_value(); }
  std::size_t preperiod_length() const;     // == terms_.size() when finite
  const std::vector<BigInt>& terms() const { return terms_; }
  std::optional<std::size_t> period_start() const { return period_start_; }

  // i-th partial quotient, wrapping into the period; i < terms_.size() when
  // the fraction is finite.
  BigInt term(std::size_t i) const;

  // First `count` convergents p_i/q_i (capped at the available terms when
  // finite).  q_0 = 1 and the q_i increase strictly from i >= 1.
  std::vector<Convergent> convergents(std::size_t count) const;

  // Exact value of a periodic expansion; throws std::domain_error when
  // finite (the value would be rational, not a field element).
  QuadraticNumber to_quadratic() const;

  // Expansion of an irrational quadratic number; always terminates with a
  // detected period.  max_terms guards against blowup on huge coefficients.
  static ContinuedFraction expand(const QuadraticNumber& x,
                                  std::size_t max_terms = 100000);

  // max a_i over i >= 1, including the period; requires at least one such
  // term.  Bounded partial quotients give inf q^2 ||q theta|| >=
  // 1/(max+2) over *all* q >= 1, which upgrades a finite q_max scan to a
  // statement about every denominator.
  BigInt max_partial_quotient() const;

 private:
  std::vector<BigInt> terms_;
  std::optional<std::size_t> period_start_;
};

// ---- homogeneous badness of theta ------------------------------------------

struct HomogeneousMinimum {
  BigInt q;                // minimizing denominator, 1 <= q <= q_max
  QuadraticNumber value;   // q^2 * || q * theta ||, exact
  Rational lo, hi;         // enclosure of value, hi - lo <= 10^-9
};

// min over 1 <= q <= q_max of q^2 * || q * theta ||, computed exactly.
// Ties broken toward the smaller q.  theta must be irrational.
HomogeneousMinimum homogeneous_minimum(const QuadraticNumber& theta,
                                       unsigned long q_max);

}  // namespace badpair
