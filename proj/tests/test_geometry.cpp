#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>

#include "badpair/geometry.hpp"
#include "doctest.h"

using namespace badpair;

namespace {
const QuadraticNumber kGolden(-1, 1, 2, 5);

// Naive oracle: loop every (A, B) with H in range, then test a generous C
// range by exact closed-overlap checks against the window.
std::vector<Line> naive_triples(const QuadraticNumber& theta,
                                const Rational& delta, const Rational& y_lo,
                                const Rational& y_hi, const BigInt& h_min,
                                const BigInt& h_max) {
  std::vector<Line> out;
  for (BigInt B = 1; B * B * B < h_max; ++B) {
    for (BigInt a = 0;; ++a) {
      BigInt H = height(a, B);
      if (a > B && H >= h_max) break;
      if (H < h_min || H >= h_max) continue;
      for (int sg : {+1, -1}) {
        if (a == 0 && sg < 0) continue;
        BigInt A = sg > 0 ? a : BigInt(-a);
        Rational w = delta / Rational(H);
        QuadraticNumber base = theta * Rational(-A);
        BigInt c_from =
            (base + Rational(Rational(B) * (y_lo - w))).floor() - 1;
        BigInt c_to = (base + Rational(Rational(B) * (y_hi + w))).floor() + 1;
        for (BigInt C = c_from; C <= c_to; ++C) {
          if (gcd(gcd(A, B), C) != 1) continue;
          Line l(A, B, C);
          if (forbidden_interval(l, theta, delta).meets(y_lo, y_hi))
            out.push_back(l);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("line canonicalization") {
  Line l(2, 4, 6);
  CHECK(l == Line(1, 2, 3));
  CHECK_THROWS_AS(Line(1, 0, 2), std::domain_error);
  CHECK_THROWS_AS(Line(1, -2, 3), std::domain_error);
  CHECK(Line(0, 3, 0) == Line(0, 1, 0));
  // ordering: B, then |A| with + before -, then C
  std::vector<Line> v{Line(1, 2, 0), Line(-1, 1, 1), Line(1, 1, 0),
                      Line(0, 1, 1), Line(0, 1, 0)};
  std::sort(v.begin(), v.end());
  CHECK(v[0] == Line(0, 1, 0));
  CHECK(v[1] == Line(0, 1, 1));
  CHECK(v[2] == Line(1, 1, 0));
  CHECK(v[3] == Line(-1, 1, 1));
  CHECK(v[4] == Line(1, 2, 0));
}

TEST_CASE("height") {
  CHECK(height(0, 1) == 1);
  CHECK(height(3, 2) == 18);
  CHECK(height(1, 3) == 27);
  CHECK(height(-3, 2) == 18);
  CHECK(height(Line(1, 3, 5)) == 27);
  // H >= B^3 and H >= A^2 for every pair
  for (long a = -9; a <= 9; ++a)
    for (long b = 1; b <= 9; ++b) {
      BigInt h = height(a, b);
      CHECK(h >= b * b * b);
      CHECK(h >= a * a);
    }
}

TEST_CASE("rational point canonicalization") {
  RationalPoint p(2, 4, 6);
  CHECK(p == RationalPoint(1, 2, 3));
  CHECK(RationalPoint(1, 1, -2) == RationalPoint(-1, -1, 2));
  CHECK(p.x() == make_rational(1, 3));
  CHECK(p.y() == make_rational(2, 3));
  CHECK_THROWS_AS(RationalPoint(1, 1, 0), std::domain_error);
}

TEST_CASE("forbidden intervals") {
  Rational delta = make_rational(1, 100);
  ForbiddenInterval f0 = forbidden_interval(Line(0, 1, 0), kGolden, delta);
  CHECK(f0.center == QuadraticNumber::from_rational(Rational(0), 5));
  CHECK(f0.half_width == delta);
  CHECK(f0.meets(make_rational(1, 200), make_rational(1, 2)));
  CHECK(f0.meets(make_rational(1, 100), make_rational(1, 2)));  // tangent
  CHECK(!f0.meets(make_rational(11, 1000), make_rational(1, 2)));

  ForbiddenInterval f1 = forbidden_interval(Line(1, 1, 0), kGolden, delta);
  CHECK(f1.center == kGolden);  // 0.61803...
  CHECK(f1.half_width == delta);

  ForbiddenInterval f2 = forbidden_interval(Line(1, 2, 0), kGolden, delta);
  CHECK(f2.center == kGolden / Rational(2));  // 0.30901...
  CHECK(f2.half_width == make_rational(1, 800));  // H = 2 max(1,4) = 8

  // point-membership form lo == hi
  CHECK(f2.meets(make_rational(309, 1000), make_rational(309, 1000)));
}

TEST_CASE("intersection of lines") {
  RationalPoint p1 = intersect(Line(1, 1, 0), Line(1, 2, 1));
  CHECK(p1 == RationalPoint(1, 1, 1));
  RationalPoint p2 = intersect(Line(1, 2, 0), Line(1, 3, 0));
  CHECK(p2 == RationalPoint(0, 0, 1));
  CHECK_THROWS_AS(intersect(Line(1, 2, 0), Line(1, 2, 1)),
                  parallel_lines_error);
}

TEST_CASE("lattice residues") {
  CHECK(lattice_residue(Line(1, 1, 0), RationalPoint(1, 1, 1)) == 0);
  CHECK(lattice_residue(Line(1, 1, 1), RationalPoint(0, 0, 1)) == 0);
  CHECK(lattice_residue(Line(1, 2, 0), RationalPoint(1, 1, 2)) == 1);
  CHECK(lattice_residue(BigInt(1), BigInt(2), RationalPoint(1, 1, 2)) == 1);
}

TEST_CASE("random intersections satisfy both equations and the q bound") {
  std::mt19937_64 rng(17);
  int done = 0;
  while (done < 2000) {
    BigInt a1 = static_cast<long>(rng() % 21) - 10;
    BigInt b1 = static_cast<long>(rng() % 10 + 1);
    BigInt c1 = static_cast<long>(rng() % 21) - 10;
    BigInt a2 = static_cast<long>(rng() % 21) - 10;
    BigInt b2 = static_cast<long>(rng() % 10 + 1);
    BigInt c2 = static_cast<long>(rng() % 21) - 10;
    Line l1(a1, b1, c1), l2(a2, b2, c2);
    if (l1.A * l2.B == l2.A * l1.B) continue;  // parallel
    RationalPoint P = intersect(l1, l2);
    for (const Line& l : {l1, l2}) {
      CHECK(l.A * P.p - l.B * P.r + l.C * P.q == 0);
      CHECK(lattice_residue(l, P) == 0);
    }
    BigInt amax = std::max(BigInt(abs(l1.A)), BigInt(abs(l2.A)));
    BigInt bmax = std::max(l1.B, l2.B);
    CHECK(P.q <= 2 * amax * bmax);
    ++done;
  }
}

TEST_CASE("enumerate_triples height-1 window [0,1]") {
  Rational delta = make_rational(1, 100);
  auto lines = enumerate_triples(kGolden, delta, Rational(0), Rational(1), 1,
                                 2);
  // exactly the H = 1 lines whose interval meets [0,1]:
  // centers 0, 1, theta, 1-theta
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == Line(0, 1, 0));
  CHECK(lines[1] == Line(0, 1, 1));
  CHECK(lines[2] == Line(1, 1, 0));
  CHECK(lines[3] == Line(-1, 1, 1));
}

TEST_CASE("enumerate_triples basic properties") {
  Rational delta = make_rational(1, 100);
  auto lines = enumerate_triples(kGolden, delta, Rational(0), Rational(1), 1,
                                 9);
  CHECK(std::find(lines.begin(), lines.end(), Line(1, 2, 0)) != lines.end());
  CHECK(enumerate_triples(kGolden, delta, Rational(0), Rational(1), 5, 5)
            .empty());
  for (const Line& l : lines) {
    BigInt h = height(l);
    CHECK(h >= 1);
    CHECK(h < 9);
    CHECK(gcd(gcd(l.A, l.B), l.C) == 1);
  }
  CHECK(std::is_sorted(lines.begin(), lines.end()));
}

TEST_CASE("enumerate_triples equals the naive oracle") {
  Rational delta = make_rational(1, 100);
  SUBCASE("window [0, 1/4], heights [1, 200)") {
    auto fast = enumerate_triples(kGolden, delta, Rational(0),
                                  make_rational(1, 4), 1, 200);
    auto slow = naive_triples(kGolden, delta, Rational(0),
                              make_rational(1, 4), 1, 200);
    CHECK(fast == slow);
    CHECK(!fast.empty());
  }
  SUBCASE("window [1/3, 1/2], heights [8, 64)") {
    QuadraticNumber s2(0, 1, 1, 2);
    auto fast = enumerate_triples(s2, delta, make_rational(1, 3),
                                  make_rational(1, 2), 8, 64);
    auto slow = naive_triples(s2, delta, make_rational(1, 3),
                              make_rational(1, 2), 8, 64);
    CHECK(fast == slow);
  }
}

TEST_CASE("cells_meeting matches per-cell overlap tests") {
  std::mt19937_64 rng(23);
  Rational origin = make_rational(1, 3);
  Rational len = make_rational(1, 64);
  BigInt count = 40;
  for (int trial = 0; trial < 300; ++trial) {
    BigInt a = static_cast<long>(rng() % 201) - 100;
    BigInt b = static_cast<long>(rng() % 21) - 10;
    BigInt c = static_cast<long>(rng() % 100 + 1);
    QuadraticNumber center(a, b, c, 5);
    Rational hw = make_rational(static_cast<long>(rng() % 50),
                                static_cast<long>(rng() % 900 + 100));
    auto range = cells_meeting(center, hw, origin, len, count);
    for (BigInt j = 0; j < count; ++j) {
      Rational lo = origin + Rational(j) * len;
      Rational hi = lo + len;
      bool meets = center.compare(Rational(hi + hw)) <= 0 &&
                   center.compare(Rational(lo - hw)) >= 0;
      bool in_range = range && j >= range->first && j <= range->last;
      CHECK(meets == in_range);
    }
  }
}

TEST_CASE("cells_meeting edges") {
  QuadraticNumber center = QuadraticNumber::from_rational(Rational(10), 5);
  CHECK(!cells_meeting(center, make_rational(1, 10), Rational(0),
                       make_rational(1, 4), 8));
  auto all = cells_meeting(QuadraticNumber::from_rational(Rational(1), 5),
                           Rational(100), Rational(0), make_rational(1, 4),
                           8);
  REQUIRE(all);
  CHECK(all->first == 0);
  CHECK(all->last == 7);
  // closed tangency at a cell boundary includes both neighbours
  auto touch = cells_meeting(
      QuadraticNumber::from_rational(make_rational(1, 4), 5), Rational(0),
      Rational(0), make_rational(1, 4), 8);
  REQUIRE(touch);
  CHECK(touch->first == 0);
  CHECK(touch->last == 1);
}
