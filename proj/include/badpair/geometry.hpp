#pragma once

// Integer lines A x - B y + C = 0 and the intervals they forbid on the
// vertical fiber x = theta.
//
// A line with B >= 1 meets the fiber at y = (A theta + C)/B; points of the
// fiber closer than delta/H to that value, H = B max(A^2, B^2) the height,
// violate the badness inequality for the pair (A, B), so the sieve must dodge
// the closed interval around it.  All interval endpoints are kept symbolic
// (rational offset plus one quadratic center), never rounded.

#include <optional>
#include <stdexcept>
#include <vector>

#include "badpair/exactnum.hpp"

namespace badpair {

struct Line {
  BigInt A, B, C;  // A x - B y + C = 0 with B >= 1, gcd(A, B, C) = 1

  Line(BigInt a, BigInt b, BigInt c);

  bool operator==(const Line& o) const {
    return A == o.A && B == o.B && C == o.C;
  }
  bool operator<(const Line& o) const;  // (B, |A|, sign of A, C) lexicographic
};

// H(A, B) = B max(A^2, B^2).
BigInt height(const BigInt& A, const BigInt& B);
inline BigInt height(const Line& line) { return height(line.A, line.B); }

// (p/q, r/q) over the least common denominator: q >= 1, gcd(p, r, q) = 1.
struct RationalPoint {
  BigInt p, r, q;

  RationalPoint(BigInt p_, BigInt r_, BigInt q_);  // canonicalizes

  Rational x() const { return make_rational(p, q); }
  Rational y() const { return make_rational(r, q); }
  bool operator==(const RationalPoint& o) const {
    return p == o.p && r == o.r && q == o.q;
  }
};

// Closed interval [center - half_width, center + half_width] on the fiber.
struct ForbiddenInterval {
  Line line;
  QuadraticNumber center;  // (A theta + C) / B
  Rational half_width;     // delta / H(A, B)

  // Closed-overlap test against [lo, hi]; lo == hi tests point membership.
  bool meets(const Rational& lo, const Rational& hi) const;
};

ForbiddenInterval forbidden_interval(const Line& line,
                                     const QuadraticNumber& theta,
                                     const Rational& delta);

struct parallel_lines_error : std::domain_error {
  parallel_lines_error() : std::domain_error("parallel lines") {}
};

// Intersection point of two non-parallel lines, reduced.  The un-reduced
// solution is (sp, sr, sq) = (B1 C2 - B2 C1, A1 C2 - A2 C1, A1 B2 - A2 B1).
RationalPoint intersect(const Line& l1, const Line& l2);

// (A p - B r) mod q in [0, q).  A line through the point has residue 0 (then
// C = -(A p - B r)/q completes A p - B r + C q = 0); nonzero residue means no
// line with this (A, B) and integer C passes through it.
BigInt lattice_residue(const Line& line, const RationalPoint& pt);
BigInt lattice_residue(const BigInt& A, const BigInt& B,
                       const RationalPoint& pt);

// All lines with h_min <= height < h_max whose forbidden interval (for this
// theta and delta) meets the closed window [y_lo, y_hi].  Output order: B
// ascending, then |A| ascending with +|A| before -|A|, then C ascending.
// h_min == h_max gives an empty list.
std::vector<Line> enumerate_triples(const QuadraticNumber& theta,
                                    const Rational& delta,
                                    const Rational& y_lo, const Rational& y_hi,
                                    const BigInt& h_min, const BigInt& h_max);

// Inclusive index range of the cells [origin + j len, origin + (j+1) len],
// 0 <= j < count, that meet the closed interval [center - w, center + w].
// nullopt when no cell does.  Requires len > 0, w >= 0, count >= 1.
struct CellRange {
  BigInt first, last;
};
std::optional<CellRange> cells_meeting(const QuadraticNumber& center,
                                       const Rational& half_width,
                                       const Rational& origin,
                                       const Rational& cell_len,
                                       const BigInt& count);

}  // namespace badpair
