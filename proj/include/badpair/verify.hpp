#pragma once

// Oracles that judge a finished run without trusting the sieve's own
// bookkeeping: a direct minimization of the badness form over an interval, a
// brute-force grid re-derivation of the permitted cells, a survivor
// cross-check against a fresh interval enumeration, and the homogeneous
// condition on theta itself.

#include <vector>

#include "badpair/sieve.hpp"

namespace badpair {

// Thrown when a requested exhaustive check would exceed its work cap.
struct feasibility_error : std::runtime_error {
  explicit feasibility_error(const std::string& what)
      : std::runtime_error(what) {}
};

struct BadnessReport {
  BigInt h_max;
  Rational delta;
  BigInt A, B, C;            // minimizing pair with its best integer offset
  QuadraticNumber minimum;   // worst value over the interval, exact
  QuadraticNumber witness_xi;  // a xi attaining it
  Rational lo, hi;           // enclosure of minimum, width <= 10^-18
  bool pass = false;         // minimum >= delta
};

// min over 0 < B max(A^2,B^2) <= h_max and B = 0, 1 <= A^2 <= h_max of
//   inf_{xi in [xi_lo, xi_hi]} ||A theta - B xi|| * max(A^2, B^2)
// computed exactly (for B >= 1 the infimum sits at an endpoint or at an
// interior zero).  Ties resolve to the first candidate in (B, |A|, sign, C)
// order, B = 0 scanned first.  Requires xi_lo <= xi_hi and theta irrational.
BadnessReport verify_bad(const QuadraticNumber& theta, const Rational& xi_lo,
                         const Rational& xi_hi, const Rational& delta,
                         const BigInt& h_max);

struct GridLevel {
  unsigned long level = 0;
  std::vector<BigInt> permitted;  // ascending absolute cell indices
};

struct GridResult {
  std::vector<GridLevel> levels;  // 1 .. depth
  BigInt tests = 0;               // work units actually spent
};

// Re-derives the permitted hierarchy over [window_lo, window_hi] from
// scratch: level 1 is every cell of length kappa/R, and a level-(m+1) cell is
// permitted iff its parent is and it meets no forbidden interval of height in
// [R^(m-1), R^m).  The window must span a whole number of level-1 cells.
// Work is metered against `cap` before each refinement; exceeding it throws
// feasibility_error.  Independent of the sieve: marks index ranges per
// interval instead of scanning children per parent.
GridResult grid_oracle(const QuadraticNumber& theta, const Params& p,
                       unsigned long depth, const Rational& window_lo,
                       const Rational& window_hi, const BigInt& cap);

struct SoundnessReport {
  bool pass = true;
  unsigned long intervals_checked = 0;
  std::vector<std::string> violations;  // "<lineage> meets <A,B,C>"
};

// Confirms the final survivor list against a fresh enumeration of every
// forbidden interval with height < R^(level-1) over the whole of J1.  Only
// the survivor lineages are trusted, not the ledgers.
SoundnessReport check_soundness(const SieveState& s,
                                const QuadraticNumber& theta, const Params& p);

struct Condition0Report {
  BigInt q;                 // minimizing denominator within 1..q_max
  QuadraticNumber value;    // q^2 ||q theta||
  Rational lo, hi;          // enclosure of value
  Rational delta;
  bool pass = false;        // value >= delta
  BigInt a_max;             // largest partial quotient a_i, i >= 1
  Rational cf_floor;        // 1/(a_max + 2) < q^2 ||q theta|| for every q >= 1
  bool all_q = false;       // cf_floor >= delta: the scan extends to all q
};

// Exhaustive check of q^2 ||q theta|| >= delta for q <= q_max, plus the
// continued-fraction bound that upgrades it to every denominator when the
// partial quotients are small enough.
Condition0Report certify_condition0(const QuadraticNumber& theta,
                                    const Rational& delta,
                                    unsigned long q_max);

}  // namespace badpair
