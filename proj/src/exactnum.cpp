#include "badpair/exactnum.hpp"

#include <array>
#include <map>
#include <stdexcept>

namespace badpair {

// ---- integer helpers -------------------------------------------------------

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b == 0) throw std::domain_error("floor_div: zero divisor");
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt floor_sqrt(const BigInt& x) {
  if (x < 0) throw std::domain_error("floor_sqrt: negative argument");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

BigInt floor_nth_root(const BigInt& x, unsigned long n) {
  if (x < 0 || n == 0) throw std::domain_error("floor_nth_root: bad argument");
  BigInt r;
  mpz_root(r.get_mpz_t(), x.get_mpz_t(), n);
  return r;
}

BigInt pow_int(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

int cmp_int_sqrt(const BigInt& z, const BigInt& u) {
  if (u < 0) throw std::domain_error("cmp_int_sqrt: negative radicand");
  if (z < 0) return -1;
  return cmp(z * z, u);
}

// ---- rational helpers ------------------------------------------------------

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("make_rational: zero denominator");
  Rational r;
  r.get_num() = num;
  r.get_den() = den;
  r.canonicalize();
  return r;
}

static bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (ch < '0' || ch > '9') return false;
  return true;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("parse_rational: empty string");

  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::string ns = text.substr(0, slash), ds = text.substr(slash + 1);
    bool neg = false;
    if (!ns.empty() && (ns[0] == '+' || ns[0] == '-')) {
      neg = ns[0] == '-';
      ns = ns.substr(1);
    }
    if (!all_digits(ns) || !all_digits(ds))
      throw std::invalid_argument("parse_rational: bad fraction: " + text);
    BigInt num(ns, 10), den(ds, 10);  // base fixed: leading zeros stay decimal
    if (den == 0)
      throw std::invalid_argument("parse_rational: zero denominator: " + text);
    if (neg) num = -num;
    return make_rational(num, den);
  }

  std::string s = text;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    s = s.substr(1);
  }
  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    std::string es = s.substr(epos + 1);
    s = s.substr(0, epos);
    bool eneg = false;
    if (!es.empty() && (es[0] == '+' || es[0] == '-')) {
      eneg = es[0] == '-';
      es = es.substr(1);
    }
    if (!all_digits(es) || es.size() > 6)
      throw std::invalid_argument("parse_rational: bad exponent: " + text);
    exp10 = std::stol(es);
    if (eneg) exp10 = -exp10;
  }
  std::string ipart = s, fpart;
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    ipart = s.substr(0, dot);
    fpart = s.substr(dot + 1);
  }
  if (ipart.empty() && fpart.empty())
    throw std::invalid_argument("parse_rational: no digits: " + text);
  if ((!ipart.empty() && !all_digits(ipart)) ||
      (!fpart.empty() && !all_digits(fpart)))
    throw std::invalid_argument("parse_rational: bad number: " + text);

  BigInt mant(ipart + fpart, 10);
  long shift = exp10 - static_cast<long>(fpart.size());
  BigInt ten(10);
  Rational r;
  if (shift >= 0)
    r = Rational(mant * pow_int(ten, static_cast<unsigned long>(shift)));
  else
    r = make_rational(mant, pow_int(ten, static_cast<unsigned long>(-shift)));
  if (neg) r = -r;
  return r;
}

BigInt floor_rational(const Rational& x) {
  return floor_div(BigInt(x.get_num()), BigInt(x.get_den()));
}

BigInt ceil_rational(const Rational& x) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

Rational abs_rational(const Rational& x) { return x < 0 ? Rational(-x) : x; }

Rational nearest_int_dist(const Rational& x) {
  Rational f = x - Rational(floor_rational(x));  // in [0, 1)
  Rational g = 1 - f;
  return f <= g ? f : g;
}

int cmp_pow(const Rational& value, const BigInt& R, long eu, unsigned long ev) {
  if (R < 2) throw std::domain_error("cmp_pow: R < 2");
  if (ev == 0) throw std::domain_error("cmp_pow: zero exponent denominator");
  if (value <= 0) return -1;  // R^(eu/ev) > 0 always
  BigInt lhs = pow_int(BigInt(value.get_num()), ev);
  BigInt rhs = pow_int(BigInt(value.get_den()), ev);
  if (eu > 0)
    rhs *= pow_int(R, static_cast<unsigned long>(eu));
  else if (eu < 0)
    lhs *= pow_int(R, static_cast<unsigned long>(-eu));
  return cmp(lhs, rhs);
}

static std::string decimal_from_scaled(const BigInt& n, unsigned digits) {
  BigInt m = abs(n);
  std::string s = m.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  if (digits > 0) s.insert(s.size() - digits, ".");
  if (n < 0) s.insert(0, "-");
  return s;
}

std::string decimal_lower(const Rational& x, unsigned digits) {
  Rational scaled = x * Rational(pow_int(BigInt(10), digits));
  return decimal_from_scaled(floor_rational(scaled), digits);
}

std::string decimal_upper(const Rational& x, unsigned digits) {
  Rational scaled = x * Rational(pow_int(BigInt(10), digits));
  return decimal_from_scaled(ceil_rational(scaled), digits);
}

// ---- QuadraticNumber -------------------------------------------------------

QuadraticNumber::QuadraticNumber(BigInt a, BigInt b, BigInt c, BigInt d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (c_ == 0) throw std::domain_error("QuadraticNumber: zero denominator");
  if (d_ <= 1 || mpz_perfect_square_p(d_.get_mpz_t()))
    throw std::domain_error("QuadraticNumber: d must be > 1 and non-square");
  normalize();
}

void QuadraticNumber::normalize() {
  if (c_ < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
  }
  // Square factors move out of the radical so equal values share one tuple:
  // b sqrt(f^2 e) = b f sqrt(e).  d stays > 1 because it is never a square.
  BigInt f = 2;
  while (true) {
    BigInt sq = f * f;
    if (sq > d_) break;
    if (d_ % sq == 0) {
      d_ /= sq;
      b_ *= f;
    } else {
      ++f;
    }
  }
  BigInt g = gcd(gcd(a_, b_), c_);
  if (g > 1) {
    a_ /= g;
    b_ /= g;
    c_ /= g;
  }
}

QuadraticNumber QuadraticNumber::from_rational(const Rational& r,
                                               const BigInt& d) {
  return QuadraticNumber(BigInt(r.get_num()), 0, BigInt(r.get_den()), d);
}

Rational QuadraticNumber::as_rational() const {
  if (b_ != 0) throw std::domain_error("as_rational: irrational value");
  return make_rational(a_, c_);
}

int QuadraticNumber::sign() const {
  // c_ > 0, so the sign is that of a_ + b_*sqrt(d_).  When a_ and b_
  // disagree in sign, square the radical away: |b|sqrt(d) vs |a| is decided
  // by b^2 d vs a^2 (never equal for b != 0 since d is non-square).
  if (b_ == 0) return sgn(a_);
  if (a_ == 0) return sgn(b_);
  if (a_ > 0 && b_ > 0) return 1;
  if (a_ < 0 && b_ < 0) return -1;
  int c = cmp(b_ * b_ * d_, a_ * a_);
  return b_ > 0 ? c : -c;
}

static void require_same_field(const QuadraticNumber& x,
                               const QuadraticNumber& y) {
  if (x.d() != y.d())
    throw std::domain_error("QuadraticNumber: mixed radicands");
}

int QuadraticNumber::compare(const QuadraticNumber& other) const {
  require_same_field(*this, other);
  return (*this - other).sign();
}

int QuadraticNumber::compare(const Rational& r) const {
  return (*this - r).sign();
}

QuadraticNumber QuadraticNumber::operator-() const {
  return QuadraticNumber(-a_, -b_, c_, d_);
}

QuadraticNumber QuadraticNumber::operator+(const QuadraticNumber& o) const {
  require_same_field(*this, o);
  return QuadraticNumber(a_ * o.c_ + o.a_ * c_, b_ * o.c_ + o.b_ * c_,
                         c_ * o.c_, d_);
}

QuadraticNumber QuadraticNumber::operator-(const QuadraticNumber& o) const {
  return *this + (-o);
}

QuadraticNumber QuadraticNumber::operator*(const QuadraticNumber& o) const {
  require_same_field(*this, o);
  return QuadraticNumber(a_ * o.a_ + b_ * o.b_ * d_, a_ * o.b_ + b_ * o.a_,
                         c_ * o.c_, d_);
}

QuadraticNumber QuadraticNumber::operator/(const QuadraticNumber& o) const {
  require_same_field(*this, o);
  if (o.sign() == 0) throw std::domain_error("QuadraticNumber: divide by zero");
  // 1/o = c (a - b sqrt(d)) / (a^2 - b^2 d)
  BigInt norm = o.a_ * o.a_ - o.b_ * o.b_ * o.d_;
  QuadraticNumber inv(o.c_ * o.a_, -o.c_ * o.b_, norm, d_);
  return *this * inv;
}

QuadraticNumber QuadraticNumber::operator+(const Rational& r) const {
  return *this + from_rational(r, d_);
}

QuadraticNumber QuadraticNumber::operator-(const Rational& r) const {
  return *this + from_rational(-r, d_);
}

QuadraticNumber QuadraticNumber::operator*(const Rational& r) const {
  return *this * from_rational(r, d_);
}

QuadraticNumber QuadraticNumber::operator/(const Rational& r) const {
  if (r == 0) throw std::domain_error("QuadraticNumber: divide by zero");
  return *this * from_rational(Rational(1) / r, d_);
}

QuadraticNumber QuadraticNumber::abs() const {
  return sign() < 0 ? -*this : *this;
}

QuadraticNumber QuadraticNumber::pow(unsigned long e) const {
  QuadraticNumber result = from_rational(Rational(1), d_);
  QuadraticNumber base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

BigInt QuadraticNumber::floor() const {
  if (b_ == 0) return floor_div(a_, c_);
  BigInt s = floor_sqrt(b_ * b_ * d_);
  // b sqrt(d) lies in [s, s+1) when b > 0, in (-(s+1), -s] when b < 0.
  BigInt tlo = b_ > 0 ? s : BigInt(-(s + 1));
  BigInt m = floor_div(a_ + tlo, c_);
  while (compare(Rational(m + 1)) >= 0) ++m;  // at most one step
  return m;
}

QuadraticNumber QuadraticNumber::frac() const {
  return *this - Rational(floor());
}

std::pair<Rational, Rational> QuadraticNumber::enclosure(
    const Rational& tol) const {
  if (tol <= 0) throw std::domain_error("enclosure: tol must be positive");
  if (b_ == 0) {
    Rational v = as_rational();
    return {v, v};
  }
  // Pick N with 1/(c 2^N) < tol, i.e. 2^N > den(tol) / (num(tol) c).
  BigInt need = ceil_rational(make_rational(BigInt(tol.get_den()),
                                            BigInt(tol.get_num()) * c_));
  if (need < 1) need = 1;
  unsigned long N = mpz_sizeinbase(need.get_mpz_t(), 2);
  BigInt u = b_ * b_ * d_;
  mpz_mul_2exp(u.get_mpz_t(), u.get_mpz_t(), 2 * N);
  BigInt s = floor_sqrt(u);
  BigInt a_scaled = a_;
  mpz_mul_2exp(a_scaled.get_mpz_t(), a_scaled.get_mpz_t(), N);
  BigInt den = c_;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), N);
  BigInt lo_num = b_ > 0 ? BigInt(a_scaled + s) : BigInt(a_scaled - s - 1);
  return {make_rational(lo_num, den), make_rational(lo_num + 1, den)};
}

std::string QuadraticNumber::str() const {
  if (b_ == 0) {
    Rational r = as_rational();
    return r.get_str();
  }
  BigInt babs = b_ < 0 ? BigInt(-b_) : b_;
  std::string s = "(" + a_.get_str() + (b_ < 0 ? " - " : " + ") +
                  babs.get_str() + "*sqrt(" + d_.get_str() + "))/" +
                  c_.get_str();
  return s;
}

QuadraticNumber nearest_int_dist(const QuadraticNumber& x) {
  QuadraticNumber f = x.frac();
  QuadraticNumber g = (-f) + Rational(1);
  return f.compare(g) <= 0 ? f : g;
}

// ---- ContinuedFraction -----------------------------------------------------

ContinuedFraction::ContinuedFraction(std::vector<BigInt> terms,
                                     std::optional<std::size_t> period_start)
    : terms_(std::move(terms)), period_start_(period_start) {
  if (terms_.empty())
    throw std::invalid_argument("ContinuedFraction: no terms");
  for (std::size_t i = 1; i < terms_.size(); ++i)
    if (terms_[i] < 1)
      throw std::invalid_argument("ContinuedFraction: partial quotient < 1");
  if (period_start_) {
    if (*period_start_ >= terms_.size())
      throw std::invalid_argument("ContinuedFraction: empty period");
    if (*period_start_ == 0 && terms_[0] < 1)
      throw std::invalid_argument(
          "ContinuedFraction: purely periodic needs a0 >= 1");
  }
}

std::size_t ContinuedFraction::preperiod_length() const {
  return period_start_ ? *period_start_ : terms_.size();
}

BigInt ContinuedFraction::term(std::size_t i) const {
  if (i < terms_.size()) return terms_[i];
  if (!period_start_)
    throw std::out_of_range("ContinuedFraction: term index past finite end");
  std::size_t ps = *period_start_;
  std::size_t len = terms_.size() - ps;
  return terms_[ps + (i - ps) % len];
}

std::vector<Convergent> ContinuedFraction::convergents(
    std::size_t count) const {
  if (!period_start_ && count > terms_.size()) count = terms_.size();
  std::vector<Convergent> out;
  out.reserve(count);
  BigInt p_prev2 = 0, q_prev2 = 1;  // p_{-2}/q_{-2}
  BigInt p_prev1 = 1, q_prev1 = 0;  // p_{-1}/q_{-1}
  for (std::size_t i = 0; i < count; ++i) {
    BigInt a = term(i);
    BigInt p = a * p_prev1 + p_prev2;
    BigInt q = a * q_prev1 + q_prev2;
    out.push_back({p, q});
    p_prev2 = p_prev1;
    q_prev2 = q_prev1;
    p_prev1 = p;
    q_prev1 = q;
  }
  return out;
}

QuadraticNumber ContinuedFraction::to_quadratic() const {
  if (!period_start_)
    throw std::domain_error("to_quadratic: finite expansion is rational");
  std::size_t ps = *period_start_;
  // y = [a_ps; a_{ps+1}, ..., a_{m-1}, y]: fold the period into a Moebius
  // matrix M, then y is the positive root of P21 y^2 + (P22-P11) y - P12 = 0.
  BigInt p11 = 1, p12 = 0, p21 = 0, p22 = 1;
  for (std::size_t i = ps; i < terms_.size(); ++i) {
    const BigInt& a = terms_[i];
    BigInt n11 = p11 * a + p12;
    BigInt n21 = p21 * a + p22;
    p12 = p11;
    p22 = p21;
    p11 = n11;
    p21 = n21;
  }
  BigInt diff = p11 - p22;
  BigInt disc = diff * diff + 4 * p12 * p21;
  QuadraticNumber y(diff, 1, 2 * p21, disc);
  // Unfold the preperiod: x = (N11 y + N12) / (N21 y + N22).
  BigInt n11 = 1, n12 = 0, n21 = 0, n22 = 1;
  for (std::size_t i = ps; i-- > 0;) {
    const BigInt& a = terms_[i];
    BigInt m11 = a * n11 + n21;
    BigInt m12 = a * n12 + n22;
    n21 = n11;
    n22 = n12;
    n11 = m11;
    n12 = m12;
  }
  QuadraticNumber num = y * Rational(n11) + Rational(n12);
  QuadraticNumber den = y * Rational(n21) + Rational(n22);
  return num / den;
}

ContinuedFraction ContinuedFraction::expand(const QuadraticNumber& x,
                                            std::size_t max_terms) {
  if (x.is_rational())
    throw std::domain_error("expand: value is rational");
  std::vector<BigInt> terms;
  // The normalized (a, b, c) triple identifies a value of the field uniquely,
  // so the first repeated complete quotient closes the period.
  std::map<std::array<BigInt, 3>, std::size_t> seen;
  QuadraticNumber cur = x;
  for (std::size_t i = 0; i < max_terms; ++i) {
    std::array<BigInt, 3> key{cur.a(), cur.b(), cur.c()};
    auto it = seen.find(key);
    if (it != seen.end())
      return ContinuedFraction(std::move(terms), it->second);
    seen.emplace(std::move(key), i);
    BigInt a = cur.floor();
    terms.push_back(a);
    cur = QuadraticNumber::from_rational(Rational(1), x.d()) /
          (cur - Rational(a));
  }
  throw std::runtime_error("expand: period not found within term limit");
}

BigInt ContinuedFraction::max_partial_quotient() const {
  bool have = false;
  BigInt best = 0;
  for (std::size_t i = 1; i < terms_.size(); ++i) {
    if (!have || terms_[i] > best) best = terms_[i];
    have = true;
  }
  if (period_start_ && *period_start_ == 0) {
    // a0 recurs at positions that are multiples of the period length.
    if (!have || terms_[0] > best) best = terms_[0];
    have = true;
  }
  if (!have)
    throw std::domain_error("max_partial_quotient: no terms past a0");
  return best;
}

// ---- homogeneous minimum ---------------------------------------------------

HomogeneousMinimum homogeneous_minimum(const QuadraticNumber& theta,
                                       unsigned long q_max) {
  if (theta.is_rational())
    throw std::domain_error("homogeneous_minimum: theta must be irrational");
  if (q_max < 1)
    throw std::domain_error("homogeneous_minimum: q_max must be >= 1");

  const QuadraticNumber f = theta.frac();  // irrational, in (0, 1)
  const BigInt& d = theta.d();

  // Fixed-point image of f at 2^N: fhat = floor(f 2^N).  For each q,
  // ||q f|| 2^N > dmin(q) - q with dmin(q) the circle distance of q*fhat,
  // which prunes every q that cannot beat the incumbent.
  constexpr unsigned long N = 192;
  BigInt fhat = (f * Rational(pow_int(BigInt(2), N))).floor();
  BigInt full = pow_int(BigInt(2), N);

  BigInt best_q = 1;
  QuadraticNumber best_val = nearest_int_dist(f);
  BigInt best_upper = (best_val * Rational(full)).floor() + 1;

  BigInt t, m, dmin, lb, qsq;
  for (unsigned long q = 2; q <= q_max; ++q) {
    mpz_mul_ui(t.get_mpz_t(), fhat.get_mpz_t(), q);
    mpz_fdiv_r_2exp(m.get_mpz_t(), t.get_mpz_t(), N);
    dmin = full - m;
    if (m < dmin) dmin = m;
    lb = dmin - static_cast<long>(q);
    if (lb > 0) {
      mpz_set_ui(qsq.get_mpz_t(), q);
      qsq *= static_cast<long>(q);
      lb *= qsq;
      if (lb >= best_upper) continue;
    }
    QuadraticNumber val =
        nearest_int_dist(f * Rational(static_cast<long>(q))) *
        make_rational(BigInt(static_cast<long>(q)) * static_cast<long>(q), 1);
    if (val.compare(best_val) < 0) {
      best_q = static_cast<long>(q);
      best_val = val;
      best_upper = (best_val * Rational(full)).floor() + 1;
    }
  }

  auto [lo, hi] = best_val.enclosure(make_rational(1, pow_int(BigInt(10), 9)));
  return {best_q, best_val, lo, hi};
}

}  // namespace badpair
