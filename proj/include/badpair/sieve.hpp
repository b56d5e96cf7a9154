#pragma once

// Interval sieve on the fiber x = theta.
//
// Level n holds survivor segments of length kappa/R^n.  A step subdivides
// each survivor into R children and deletes every child that meets (closed
// overlap, hence conservatively) a forbidden interval whose height lies in
// [R^(n-1), R^n).  Induction gives: a level-n survivor avoids every forbidden
// interval of height < R^(n-1), so any xi inside it satisfies the badness
// inequality for all pairs up to that height.
//
// Each step also files a ledger: per-parent line lists, one removal record
// per deleted child (attributed to the first interval that hit it, tagged
// with its dyadic height class k and slope class l), and the exact
// child-intersection count per (interval, parent) pair that the counting
// bounds constrain.

#include <string>
#include <vector>

#include "badpair/geometry.hpp"

namespace badpair {

struct Params {
  BigInt R;                // >= 2
  Rational delta;          // > 0
  Rational kappa;          // > 0
  Rational lambda;         // 1741/330 unless overridden
  bool strict_mode = false;

  // kappa = delta * floor(R^(6/5)); exact R^(6/5) whenever R is a fifth
  // power.  The floor keeps kappa rational for every R.
  static Params paper(const BigInt& R, const Rational& delta,
                      bool strict = false);
  static Params empirical(const BigInt& R, const Rational& delta,
                          const Rational& kappa, bool strict = false);

  // Highest admissible dyadic class index, floor(log2 R).
  unsigned long k_max() const;

  // Basic invariants always; in strict mode additionally R >= 2^422,
  // delta <= 2^(-1622), kappa <= 1/(3 R^(lambda/2)).  Throws on violation.
  void validate() const;
};

// d_k = floor((kappa/delta * 2^k/R)^(2/3) * R^(2/165)), evaluated exactly as
// a 165th root of an integer.  k must lie in [0, k_max].  May be 0 or 1 for
// small R; the regime bound 2 <= floor(R^(8/55)) <= d_k <= R^(134/165) is a
// diagnostic, not a precondition.
BigInt derived_dk(const Params& p, unsigned long k);

// K_k = (delta/kappa) * R^2 / 2^k, exact.
Rational derived_Kk(const Params& p, unsigned long k);

// The unique k with 2^k R^(n-1) <= H < 2^(k+1) R^(n-1); requires
// R^(n-1) <= H < R^n.
unsigned long dyadic_class(const BigInt& H, unsigned long n, const BigInt& R);

// Slope classification at level n: "bounded" when B > R^(n/3 - lambda),
// otherwise the least l >= 1 with R^(n/3 - lambda(l+1)) <= B (shared
// endpoints resolve to the smaller l).
struct SlopeClass {
  bool bounded;
  unsigned long l;  // 0 when bounded, else >= 1

  bool operator==(const SlopeClass& o) const {
    return bounded == o.bounded && l == o.l;
  }
};
SlopeClass slope_class(const BigInt& B, unsigned long n, const Params& p);

// A survivor interval, stored by lineage only; endpoints are recomputed from
// (params, start) so nesting and disjointness are structural.
struct Segment {
  unsigned long level;                  // n >= 1
  std::vector<unsigned long> lineage;   // size == level; [0] is the root
                                        // marker 1, later entries in [1, R]

  // Index among the R^(n-1) level-n cells of J1, counted from its left end.
  BigInt cell_index(const BigInt& R) const;
  Rational left(const Params& p, const Rational& start) const;
  Rational length(const Params& p) const;
  std::string lineage_str() const;  // dotted, e.g. "1.3.2"

  bool operator==(const Segment& o) const {
    return level == o.level && lineage == o.lineage;
  }
};

// The R children of seg, in left-to-right order, lineage extended by 1..R.
std::vector<Segment> subdivide(const Segment& seg, const BigInt& R);

struct LineRecord {
  Line line;
  BigInt H;
  unsigned long k;
  SlopeClass slope;
};

struct RemovalRecord {
  Segment parent;
  unsigned long mu;  // removed child index in [1, R]
  Line line;         // first interval (in enumeration order) hitting it
  unsigned long k;
  SlopeClass slope;
};

struct DeltaCount {
  Line line;
  Segment parent;
  unsigned long k;
  unsigned long count;  // children of parent meeting the closed interval
};

struct LevelLedger {
  unsigned long n = 0;  // the step went from level n to n+1
  std::vector<std::pair<Segment, std::vector<LineRecord>>> parent_lines;
  std::vector<RemovalRecord> removals;
  std::vector<DeltaCount> delta_counts;
};

struct SieveState {
  Rational start;                            // left end of J1
  unsigned long level = 0;
  std::vector<std::vector<Segment>> levels;  // levels[i] = survivors, level i+1
  std::vector<BigInt> counts;                // T_1 .. T_level
  std::vector<LevelLedger> ledgers;          // one per completed step

  const std::vector<Segment>& survivors() const { return levels.back(); }
};

// Level-1 state holding J1 = [start, start + kappa/R]; requires J1 within
// [0, 1].
SieveState init(const Params& p, const Rational& start);

// One sieve step; theta must be irrational and identical across all steps of
// a run.  An empty survivor set is a valid outcome, not an error.
SieveState step(const SieveState& s, const QuadraticNumber& theta,
                const Params& p);

struct CountBoundReport {
  bool pass = true;
  unsigned long checked = 0;              // (interval, parent) pairs examined
  std::vector<std::string> violations;    // deterministic order
};

// Recomputes every per-(interval, parent) child count from raw endpoints and
// checks count <= |interval|/|child| + 2 and count <= 2 K_k + 2; also
// re-verifies the ledger's stored counts.  Failures are implementation bugs,
// never parameter-regime effects.
CountBoundReport count_bound_check(const LevelLedger& ledger,
                                   const SieveState& s,
                                   const QuadraticNumber& theta,
                                   const Params& p);

enum class ChainPolicy { leftmost, deepest_subtree };

struct PointInterval {
  Rational left, right;
  Segment segment;
};

// The chosen final-level survivor.  leftmost takes the least left endpoint;
// deepest_subtree walks from the root picking the child whose subtree holds
// the most final-level survivors (ties toward the left).
PointInterval extract_point(const SieveState& s, const Params& p,
                            ChainPolicy policy);

// Upper estimate of closed-overlap tests a depth-step run will perform
// (forbidden intervals times child segments, using the J1 hull as the window
// at every level).  Used to refuse configurations above a test cap.
BigInt estimate_sieve_cost(const Params& p, unsigned long depth);

}  // namespace badpair
