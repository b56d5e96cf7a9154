#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "badpair/verify.hpp"

using namespace badpair;

namespace {

const QuadraticNumber kGolden{BigInt(-1), BigInt(1), BigInt(2), BigInt(5)};
const Rational kDelta = make_rational(1, 10000);

SieveState golden_run(unsigned long R, int steps) {
  Params p = Params::paper(BigInt(R), kDelta);
  SieveState s = init(p, Rational(0));
  for (int i = 0; i < steps; ++i) s = step(s, kGolden, p);
  return s;
}

// |A theta - B xi + C| max(A^2, B^2), the value the report claims to attain
QuadraticNumber attained(const BadnessReport& rep,
                         const QuadraticNumber& theta) {
  BigInt asq = rep.A * rep.A, bsq = rep.B * rep.B;
  BigInt mx = std::max(asq, bsq);
  return (theta * Rational(rep.A) - rep.witness_xi * Rational(rep.B) +
          Rational(rep.C))
             .abs() *
         Rational(mx);
}

}  // namespace

TEST_CASE("a point interval at zero fails through (0,1,0)") {
  BadnessReport rep =
      verify_bad(kGolden, Rational(0), Rational(0), kDelta, BigInt(100));
  CHECK_FALSE(rep.pass);
  CHECK(rep.A == 0);
  CHECK(rep.B == 1);
  CHECK(rep.C == 0);
  CHECK(rep.minimum.sign() == 0);
  CHECK(rep.witness_xi.sign() == 0);
  CHECK(rep.lo == 0);
  CHECK(rep.hi == 0);
}

TEST_CASE("survivors of a two-step run clear every height below R^2") {
  SieveState s = golden_run(16, 2);
  Params p = Params::paper(BigInt(16), kDelta);
  PointInterval pi = extract_point(s, p, ChainPolicy::leftmost);

  BadnessReport rep =
      verify_bad(kGolden, pi.left, pi.right, kDelta, BigInt(255));
  CHECK(rep.pass);
  CHECK(rep.lo > 0);
  CHECK(rep.lo <= rep.hi);
  CHECK(rep.hi - rep.lo <= make_rational(1, pow_int(BigInt(10), 18)));
  CHECK(attained(rep, kGolden) == rep.minimum);
}

TEST_CASE("reported minimum is a true lower bound over the interval") {
  const Rational lo = make_rational(1, 7);
  const Rational hi = lo + make_rational(1, 100);
  const BigInt h_max(50);
  BadnessReport rep = verify_bad(kGolden, lo, hi, kDelta, h_max);
  CHECK(attained(rep, kGolden) == rep.minimum);

  std::vector<Rational> samples = {lo, hi, (lo + hi) / 2,
                                   lo + (hi - lo) / 3,
                                   hi - (hi - lo) / 7};
  // B = 0 pairs
  for (BigInt A = 1; A * A <= h_max; ++A) {
    BigInt asq = A * A;
    QuadraticNumber v =
        nearest_int_dist(kGolden * Rational(A)) * Rational(asq);
    CHECK(v.compare(rep.minimum) >= 0);
  }
  // B >= 1 pairs at sampled points
  for (BigInt B = 1; B * B * B <= h_max; ++B)
    for (BigInt a = 0;; ++a) {
      BigInt asq = a * a, bsq = B * B;
      BigInt mx = std::max(asq, bsq);
      if (B * mx > h_max) break;
      for (int sg : {+1, -1}) {
        if (a == 0 && sg < 0) continue;
        BigInt A = sg > 0 ? a : BigInt(-a);
        for (const Rational& x : samples) {
          QuadraticNumber t = kGolden * Rational(A) - Rational(B) * x;
          QuadraticNumber v = nearest_int_dist(t) * Rational(mx);
          CHECK(v.compare(rep.minimum) >= 0);
        }
      }
    }

  // determinism, including the tie-break fields
  BadnessReport again = verify_bad(kGolden, lo, hi, kDelta, h_max);
  CHECK(again.A == rep.A);
  CHECK(again.B == rep.B);
  CHECK(again.C == rep.C);
  CHECK(again.minimum == rep.minimum);
  CHECK(again.witness_xi == rep.witness_xi);
}

TEST_CASE("an interval containing integers pins the first zero in scan order") {
  BadnessReport rep =
      verify_bad(kGolden, Rational(0), Rational(1), kDelta, BigInt(64));
  CHECK(rep.minimum.sign() == 0);
  CHECK_FALSE(rep.pass);
  // B = 0 rows are all positive; the first zero is (A,B) = (0,1), whose
  // attained integer inside [0,1] resolves to xi = 1
  CHECK(rep.A == 0);
  CHECK(rep.B == 1);
  CHECK(rep.C == 1);
  CHECK(rep.witness_xi == QuadraticNumber::from_rational(Rational(1),
                                                         kGolden.d()));
}

TEST_CASE("badness input validation") {
  QuadraticNumber rat = QuadraticNumber::from_rational(make_rational(1, 3),
                                                       BigInt(5));
  CHECK_THROWS_AS(
      verify_bad(rat, Rational(0), Rational(1), kDelta, BigInt(10)),
      std::invalid_argument);
  CHECK_THROWS_AS(
      verify_bad(kGolden, Rational(1), Rational(0), kDelta, BigInt(10)),
      std::invalid_argument);
  CHECK_THROWS_AS(
      verify_bad(kGolden, Rational(0), Rational(1), kDelta, BigInt(0)),
      std::invalid_argument);
}

TEST_CASE("grid oracle level 1 admits the whole window") {
  Params p = Params::paper(BigInt(16), kDelta);
  Rational j1_hi = p.kappa / Rational(p.R);
  GridResult g = grid_oracle(kGolden, p, 1, Rational(0), j1_hi, BigInt(0));
  REQUIRE(g.levels.size() == 1);
  CHECK(g.levels[0].level == 1);
  REQUIRE(g.levels[0].permitted.size() == 1);
  CHECK(g.levels[0].permitted[0] == 0);
  CHECK(g.tests == 0);
}

TEST_CASE("grid oracle reproduces the first refinement by hand") {
  Params p = Params::paper(BigInt(16), kDelta);
  Rational j1_hi = p.kappa / Rational(p.R);
  GridResult g =
      grid_oracle(kGolden, p, 2, Rational(0), j1_hi, BigInt(1000000));
  REQUIRE(g.levels.size() == 2);
  // (0,1,0) wipes cells 0..9 of the sixteen level-2 cells
  std::vector<BigInt> expect;
  for (long i = 10; i < 16; ++i) expect.push_back(BigInt(i));
  CHECK(g.levels[1].permitted == expect);
}

TEST_CASE("grid oracle agrees with the sieve level by level") {
  for (unsigned long Rv : {16ul, 32ul}) {
    CAPTURE(Rv);
    Params p = Params::paper(BigInt(Rv), kDelta);
    SieveState s = golden_run(Rv, 3);
    Rational j1_hi = p.kappa / Rational(p.R);
    GridResult g =
        grid_oracle(kGolden, p, 4, Rational(0), j1_hi, BigInt(100000000));
    REQUIRE(g.levels.size() == 4);
    for (unsigned long m = 0; m < 4; ++m) {
      std::vector<BigInt> cells;
      for (const Segment& seg : s.levels[m])
        cells.push_back(seg.cell_index(p.R));
      CHECK(g.levels[m].permitted == cells);
    }
    CHECK(g.tests > 0);
    CHECK(g.tests <= BigInt(100000000));
  }
}

TEST_CASE("grid oracle input validation and work cap") {
  Params p = Params::paper(BigInt(16), kDelta);
  Rational j1_hi = p.kappa / Rational(p.R);
  CHECK_THROWS_AS(
      grid_oracle(kGolden, p, 0, Rational(0), j1_hi, BigInt(100)),
      std::invalid_argument);
  CHECK_THROWS_AS(
      grid_oracle(kGolden, p, 2, Rational(0), j1_hi / 2, BigInt(100)),
      std::invalid_argument);  // half a cell
  CHECK_THROWS_AS(
      grid_oracle(kGolden, p, 2, Rational(0), Rational(2), BigInt(100)),
      std::invalid_argument);  // outside [0, 1]
  CHECK_THROWS_AS(
      grid_oracle(kGolden, p, 2, j1_hi, Rational(0), BigInt(100)),
      std::invalid_argument);  // empty
  CHECK_THROWS_AS(
      grid_oracle(kGolden, p, 2, Rational(0), j1_hi, BigInt(10)),
      feasibility_error);
}

TEST_CASE("soundness passes on a real run and is trivial before step one") {
  Params p = Params::paper(BigInt(16), kDelta);
  SieveState fresh = init(p, Rational(0));
  SoundnessReport r0 = check_soundness(fresh, kGolden, p);
  CHECK(r0.pass);
  CHECK(r0.intervals_checked == 0);

  SieveState s = golden_run(16, 3);
  SoundnessReport rep = check_soundness(s, kGolden, p);
  CHECK(rep.pass);
  CHECK(rep.violations.empty());
  CHECK(rep.intervals_checked == 1);  // only (0,1,0) reaches J1 below R^3
}

TEST_CASE("soundness detects a smuggled survivor") {
  Params p = Params::paper(BigInt(16), kDelta);
  SieveState s = golden_run(16, 3);
  // the leftmost level-4 cell descends from a child removed at step one
  s.levels.back().push_back(Segment{4, {1, 1, 1, 1}});
  SoundnessReport rep = check_soundness(s, kGolden, p);
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0] == "1.1.1.1 meets (0,1,0)");
}

TEST_CASE("homogeneous condition certificate for the golden ratio") {
  Condition0Report rep = certify_condition0(kGolden, kDelta, 1000);
  CHECK(rep.pass);
  CHECK(rep.q == 1);
  // q = 1 attains (3 - sqrt 5)/2
  CHECK(rep.value == QuadraticNumber{BigInt(3), BigInt(-1), BigInt(2),
                                     BigInt(5)});
  CHECK(rep.lo > make_rational(3819, 10000));
  CHECK(rep.hi < make_rational(3820, 10000));
  CHECK(rep.a_max == 1);
  CHECK(rep.cf_floor == make_rational(1, 3));
  CHECK(rep.all_q);

  Condition0Report tight = certify_condition0(kGolden, make_rational(2, 5), 50);
  CHECK_FALSE(tight.pass);   // 0.3819... < 2/5
  CHECK_FALSE(tight.all_q);  // 1/3 < 2/5

  Condition0Report free = certify_condition0(kGolden, Rational(0), 10);
  CHECK(free.pass);
  CHECK(free.all_q);
}

TEST_CASE("homogeneous condition certificate for sqrt2 - 1") {
  QuadraticNumber root2m1{BigInt(-1), BigInt(1), BigInt(1), BigInt(2)};
  Condition0Report rep = certify_condition0(root2m1, make_rational(1, 4), 10);
  CHECK(rep.q == 1);
  CHECK(rep.value == root2m1);
  CHECK(rep.a_max == 2);
  CHECK(rep.cf_floor == make_rational(1, 4));
  CHECK(rep.all_q);  // 1/4 >= 1/4
  CHECK(rep.pass);

  CHECK_THROWS_AS(certify_condition0(kGolden, kDelta, 0),
                  std::invalid_argument);
}
