#include "badpair/geometry.hpp"

namespace badpair {

Line::Line(BigInt a, BigInt b, BigInt c)
    : A(std::move(a)), B(std::move(b)), C(std::move(c)) {
  if (B < 1) throw std::domain_error("Line: B must be >= 1");
  BigInt g = gcd(gcd(A, B), C);
  if (g > 1) {
    A /= g;
    B /= g;
    C /= g;
  }
}

bool Line::operator<(const Line& o) const {
  if (B != o.B) return B < o.B;
  BigInt a1 = abs(A), a2 = abs(o.A);
  if (a1 != a2) return a1 < a2;
  bool n1 = A < 0, n2 = o.A < 0;
  if (n1 != n2) return !n1;  // +|A| sorts before -|A|
  return C < o.C;
}

BigInt height(const BigInt& A, const BigInt& B) {
  if (B < 1) throw std::domain_error("height: B must be >= 1");
  BigInt a2 = A * A, b2 = B * B;
  return B * (a2 > b2 ? a2 : b2);
}

RationalPoint::RationalPoint(BigInt p_, BigInt r_, BigInt q_)
    : p(std::move(p_)), r(std::move(r_)), q(std::move(q_)) {
  if (q == 0) throw std::domain_error("RationalPoint: zero denominator");
  if (q < 0) {
    p = -p;
    r = -r;
    q = -q;
  }
  BigInt g = gcd(gcd(p, r), q);
  if (g > 1) {
    p /= g;
    r /= g;
    q /= g;
  }
}

bool ForbiddenInterval::meets(const Rational& lo, const Rational& hi) const {
  return center.compare(hi + half_width) <= 0 &&
         center.compare(lo - half_width) >= 0;
}

ForbiddenInterval forbidden_interval(const Line& line,
                                     const QuadraticNumber& theta,
                                     const Rational& delta) {
  if (delta <= 0) throw std::domain_error("forbidden_interval: delta <= 0");
  QuadraticNumber center =
      (theta * Rational(line.A) + Rational(line.C)) / Rational(line.B);
  return {line, center, Rational(delta / Rational(height(line)))};
}

RationalPoint intersect(const Line& l1, const Line& l2) {
  BigInt sq = l1.A * l2.B - l2.A * l1.B;
  if (sq == 0) throw parallel_lines_error();
  BigInt sp = l1.B * l2.C - l2.B * l1.C;
  BigInt sr = l1.A * l2.C - l2.A * l1.C;
  return RationalPoint(sp, sr, sq);
}

BigInt lattice_residue(const BigInt& A, const BigInt& B,
                       const RationalPoint& pt) {
  BigInt v = A * pt.p - B * pt.r, res;
  mpz_fdiv_r(res.get_mpz_t(), v.get_mpz_t(), pt.q.get_mpz_t());
  return res;
}

BigInt lattice_residue(const Line& line, const RationalPoint& pt) {
  return lattice_residue(line.A, line.B, pt);
}

static BigInt ceil_qn(const QuadraticNumber& x) { return -(-x).floor(); }

std::vector<Line> enumerate_triples(const QuadraticNumber& theta,
                                    const Rational& delta,
                                    const Rational& y_lo, const Rational& y_hi,
                                    const BigInt& h_min, const BigInt& h_max) {
  if (delta <= 0) throw std::domain_error("enumerate_triples: delta <= 0");
  if (h_min < 1 || h_min > h_max)
    throw std::invalid_argument("enumerate_triples: bad height window");
  if (y_hi < y_lo)
    throw std::invalid_argument("enumerate_triples: empty window");
  std::vector<Line> out;
  for (BigInt B = 1; B * B * B < h_max; ++B) {
    for (BigInt a = 0;; ++a) {
      BigInt H = height(a, B);
      if (H >= h_max) break;  // reachable only once a > B
      if (H < h_min) continue;
      Rational w = delta / Rational(H);
      for (int s : {+1, -1}) {
        if (a == 0 && s < 0) continue;
        BigInt A = s > 0 ? a : BigInt(-a);
        // Closed overlap with [y_lo, y_hi] means
        // B(y_lo - w) - A theta <= C <= B(y_hi + w) - A theta.
        QuadraticNumber lo_bound =
            theta * Rational(-A) + Rational(Rational(B) * (y_lo - w));
        QuadraticNumber hi_bound =
            theta * Rational(-A) + Rational(Rational(B) * (y_hi + w));
        BigInt c_hi = hi_bound.floor();
        for (BigInt C = ceil_qn(lo_bound); C <= c_hi; ++C) {
          if (gcd(gcd(A, B), C) != 1) continue;  // covered by primitive line
          out.emplace_back(A, B, C);
        }
      }
    }
  }
  return out;
}

std::optional<CellRange> cells_meeting(const QuadraticNumber& center,
                                       const Rational& half_width,
                                       const Rational& origin,
                                       const Rational& cell_len,
                                       const BigInt& count) {
  if (cell_len <= 0) throw std::domain_error("cells_meeting: cell_len <= 0");
  if (half_width < 0) throw std::domain_error("cells_meeting: half_width < 0");
  if (count < 1) throw std::invalid_argument("cells_meeting: count < 1");
  // Cell j meets iff j <= (center + w - origin)/len and
  // j >= (center - w - origin)/len - 1, both ends attained (closed sets).
  QuadraticNumber hi = (center + Rational(half_width - origin)) / cell_len;
  QuadraticNumber lo = (center - Rational(half_width + origin)) / cell_len;
  BigInt last = hi.floor();
  BigInt first = -((-(lo - Rational(1))).floor());  // ceil(lo - 1)
  if (first < 0) first = 0;
  BigInt top = count - 1;
  if (last > top) last = top;
  if (first > last) return std::nullopt;
  return CellRange{first, last};
}

}  // namespace badpair
