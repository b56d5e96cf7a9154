#pragma once

// Executable form of the counting machinery that the survivor recursion
// rests on.  Every inequality is evaluated in exact arithmetic; quantities
// involving fourth or 660th roots are compared after raising both sides to
// the matching power.
//
// Status semantics: `holds`/`fails` are exact verdicts on the stated
// inequality for this instance; `not_applicable` means a hypothesis is
// unmet, `not_evaluated` means a cost cap or parameter shape prevented
// evaluation, and `indeterminate` means the verdict fell inside the gap of a
// certified enclosure (only possible for bounds carrying R^(52/55) or ln R).
// Out-of-regime parameters make several bounds legitimately fail; a failure
// is only an implementation bug for the checks documented as identities.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "badpair/sieve.hpp"

namespace badpair {

enum class CheckStatus {
  holds,
  fails,
  not_applicable,
  not_evaluated,
  indeterminate,
};
const char* to_string(CheckStatus s);

struct NoParallelReport {
  CheckStatus status = CheckStatus::not_applicable;
  std::optional<std::pair<Line, Line>> witness;  // a parallel pair, on fails
};
// Pairwise slope test; not_applicable with fewer than two lines.
NoParallelReport check_no_parallel(const std::vector<Line>& lines);

struct CommonPointReport {
  CheckStatus status = CheckStatus::not_applicable;
  std::optional<RationalPoint> point;          // on holds
  std::optional<std::array<Line, 3>> witness;  // non-concurrent triple
  BigInt det = 0;                              // its determinant, |det| >= 1
};
// Intersects the first non-parallel pair and confirms every other line
// passes through that point (A p - B r + C q = 0).  An all-parallel
// collection of two or more distinct lines fails with no triple witness.
CommonPointReport check_common_point(const std::vector<Line>& lines);

struct PairIdentityReport {
  CheckStatus part_i = CheckStatus::not_applicable;
  CheckStatus part_ii = CheckStatus::not_applicable;
  unsigned long pairs_i = 0, pairs_ii = 0;  // qualifying pairs examined
  std::optional<std::pair<Line, Line>> witness;
};
// Intersection-point identities over all pairs in the collection.  For a
// non-parallel pair meeting at (p/q, r/q):
//   (i)  both fiber points inside [seg_lo, seg_hi] (closed) implies
//        |q theta - p| <= (seg_hi - seg_lo) B1 B2;
//   (ii) q <= 2 max(|A1|,|A2|) max(B1,B2), unconditionally.
// Both are identities: a failure is an implementation bug.
PairIdentityReport check_pair_identities(const std::vector<Line>& lines,
                                         const QuadraticNumber& theta,
                                         const Rational& seg_lo,
                                         const Rational& seg_hi);

// Premises 0 < B <= sigma, A^2 <= sigma B, H(A,B) >= W force
// |A|/B <= (sigma^3/W)^(1/4), compared as A^4 W <= B^4 sigma^3.
// not_applicable when a premise is unmet.
CheckStatus slope_ratio_check(const Rational& sigma, const Rational& W,
                              const BigInt& A, const BigInt& B);

// sigma_k = (2 kappa / d_k)(2^k / R) / |q theta - p|,  W_k = 2^k R^(n-1),
// omega_k^4 = (theta - p/q)^4 sigma_k^3 / W_k.  Requires d_k >= 1.
struct KClassQuantities {
  BigInt d_k;
  BigInt W_k;
  QuadraticNumber sigma;
  QuadraticNumber omega4;
};
KClassQuantities k_class_quantities(const RationalPoint& P, unsigned long k,
                                    const QuadraticNumber& theta,
                                    const Params& p, unsigned long n);

struct SplitReport {
  std::vector<Line> a_coll;  // fiber point within omega_k of r/q (closed)
  std::vector<Line> b_coll;  // the rest
  CheckStatus b_bound = CheckStatus::not_evaluated;  // #b_coll <= d_k
  KClassQuantities quantities;
};
// Splits a concurrent class-k collection around Omega = [r/q - omega_k,
// r/q + omega_k].  b_bound is a regime bound, not an identity.
SplitReport split_collections(const std::vector<Line>& lines,
                              const RationalPoint& P, unsigned long k,
                              const QuadraticNumber& theta, const Params& p,
                              unsigned long n);

struct PrincipalReport {
  bool gate = false;  // #a_coll >= 2 d_k; the inequalities below need it
  CheckStatus lattice = CheckStatus::not_applicable;  // A p ≡ B r (mod q),
                                                      // all lines; identity
  CheckStatus first_principal = CheckStatus::not_applicable;
  // q d_k <= 12 sigma_k^2
  CheckStatus height_gap = CheckStatus::not_applicable;
  // (q theta - p)^2 <= 48 kappa^2 4^k / (d_k^3 q R^2)
  CheckStatus height_gap_chain = CheckStatus::not_applicable;
  // omega_k^8 <= 2^8 * 12 kappa^8 (2^k/R)^6 / (d_k^9 q^9 R^(2n));
  // an exact consequence of height_gap, so an identity once height_gap holds
  CheckStatus q_upper = CheckStatus::not_applicable;      // q^3 < R^(2(n-1))
  CheckStatus second_principal = CheckStatus::not_applicable;
  // omega_k^4 >= delta^4/(16 q^6)
  CheckStatus pigeonhole = CheckStatus::not_applicable;
  std::optional<std::pair<BigInt, BigInt>> pigeonhole_witness;
};
// The principal inequality chain for one (segment, k) instance.  q_upper is
// always evaluated; first_principal, height_gap, and the chain need the
// gate; second_principal needs the gate and q_upper.  pigeonhole searches
// 0 <= B <= floor(sqrt(q)), |A| <= floor(sqrt(q)) for a nonzero pair with
// A p ≡ B r (mod q); skipped (not_evaluated) when the box exceeds
// `pigeonhole_cap` candidates.
PrincipalReport principal_inequalities(const SplitReport& split,
                                       const RationalPoint& P, unsigned long k,
                                       const QuadraticNumber& theta,
                                       const Params& p, unsigned long n,
                                       const BigInt& pigeonhole_cap);

// sigma(l) = kappa R^l / |q theta - p|,
// omega(l)^4 = (theta - p/q)^4 sigma(l)^3 / R^(n-1).
struct SteepQuantities {
  QuadraticNumber sigma;
  QuadraticNumber omega4;
};

struct SteepReport {
  unsigned long l = 0;
  CheckStatus coincidence_gap = CheckStatus::not_evaluated;
  // |q theta - p|^165 <= kappa^165 R^-(55 n + 1576 l)
  CheckStatus sigma_bound = CheckStatus::not_applicable;
  // H <= sigma(l) B^2 for every line but the minimal-B one
  CheckStatus slope_ratio = CheckStatus::not_applicable;
  // A^4 R^(n-1) <= B^4 sigma(l)^3 over a_coll
  CheckStatus a_in_omega = CheckStatus::not_applicable;
  // fiber points of a_coll lie within omega(l) of r/q; follows from slope_ratio
  CheckStatus omega_chain = CheckStatus::not_evaluated;
  // omega(l)^660 <= (kappa/q)^660 R^(165 - 1081 l - 220 n)
  CheckStatus q_lower = CheckStatus::not_evaluated;
  // q^3 >= R^(2(n - l - 1)); regime bound
  CheckStatus omega_upper = CheckStatus::not_evaluated;
  // omega(l)^660 <= kappa^660 R^(605 - 641 l - 660 n); regime bound
  CheckStatus q_upper = CheckStatus::not_evaluated;  // q^3 < R^(2(n - l - 1))
  CheckStatus second_principal_steep = CheckStatus::not_applicable;
  // omega(l)^4 >= delta^4/(16 q^6), under q_upper
  std::vector<Line> a_coll, b_coll;  // b_coll = the single minimal-B line
  std::optional<SteepQuantities> quantities;
};
// Steep-line (slope class l >= 1) chain for a concurrent collection on an
// ancestor segment.  The 165/660-power exponent checks encode lambda =
// 1741/330 and report not_evaluated under any other lambda.  Requires at
// least two lines.
SteepReport steep_checks(const std::vector<Line>& lines, unsigned long l,
                         const RationalPoint& P, const QuadraticNumber& theta,
                         const Params& p, unsigned long n);

struct SegmentKReport {
  Segment parent;
  unsigned long k = 0;
  std::vector<Line> coll;      // class-k bounded-slope, fiber point in parent
  unsigned long overhang = 0;  // same class, interval reaches in from outside
  NoParallelReport no_parallel;
  CommonPointReport common;
  PairIdentityReport pair_identities;
  std::optional<SplitReport> split;
  std::optional<PrincipalReport> principal;
  unsigned long children_hit = 0;  // distinct children meeting a class-k
                                   // bounded-slope interval
  CheckStatus a_cover = CheckStatus::not_applicable;
  // children hit via a_coll <= 2 omega_k R^(n+1)/kappa + 2 K_k + 2; identity
  CheckStatus fl1_class = CheckStatus::not_evaluated;
  // children_hit <= 2^12 R^(52/55)
  bool fl1_vacuous = false;  // certified floor of the bound >= R
};

struct AncestorLReport {
  Segment ancestor;  // level n - l
  unsigned long l = 0;
  std::vector<Line> coll;  // slope-class-l, fiber point in ancestor, deduped
  unsigned long overhang = 0;
  unsigned long parents = 0;  // level-n survivors inside the ancestor
  NoParallelReport no_parallel;
  CommonPointReport common;
  PairIdentityReport pair_identities;
  std::optional<SteepReport> steep;
  unsigned long children_hit = 0;  // distinct children of those survivors
                                   // meeting a class-l interval
  CheckStatus a_cover = CheckStatus::not_applicable;
  // children hit via a_coll <= (2 omega(l) + 2 delta/R^(n-1)) R^(n+1)/kappa
  // + 2; identity
  CheckStatus fl2 = CheckStatus::not_evaluated;
  // children_hit <= 8 R^(52/55)
  bool fl2_vacuous = false;  // certified floor of the bound >= R * parents
};

struct ParentTotal {
  Segment parent;
  unsigned long children_hit = 0;  // union over every bounded class k
  CheckStatus status = CheckStatus::not_evaluated;
  // children_hit <= 2^13 R^(52/55) ln R, via certified enclosures of both
  // factors
  bool vacuous = false;
};

struct RecursionCheck {
  unsigned long level = 0;  // compares T_(level+1) against T_level
  BigInt t_n, t_next;
  CheckStatus status = CheckStatus::not_evaluated;
  // T_(n+1) >= T_n (R - 2^14 R^(52/55) ln R)
  bool vacuous = false;  // certified upper bound of the right side <= 0
};

struct LevelDiagnostics {
  unsigned long level = 0;  // the step J_n -> I_(n+1) under scrutiny
  std::vector<SegmentKReport> per_segment_k;
  std::vector<AncestorLReport> per_ancestor_l;
  std::vector<ParentTotal> fl1_totals;
  RecursionCheck recursion;
  unsigned long skipped_groups = 0;  // slope class l exceeded level depth
};

// Full diagnostic pass over the ledger of step n of a completed run.  The
// state must contain that ledger and the level-(n+1) counts.  Deterministic:
// report order follows ledger order, then ascending k or (ancestor, l).
LevelDiagnostics level_diagnostics(const SieveState& s, unsigned long n,
                                   const QuadraticNumber& theta,
                                   const Params& p,
                                   const BigInt& pigeonhole_cap);

struct DiagnosticsSummary {
  unsigned long holds = 0, fails = 0, not_applicable = 0, not_evaluated = 0,
                indeterminate = 0;
  std::vector<std::string> failures;  // "level N <where>: <check>"
  bool identities_ok = true;  // no identity-class check failed
};
DiagnosticsSummary summarize(const std::vector<LevelDiagnostics>& levels);

}  // namespace badpair
