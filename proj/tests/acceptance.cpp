// Acceptance gate: one line per criterion, exit code = number of failures.
// Everything here re-derives its expectations from scratch; nothing trusts
// the library's own bookkeeping beyond the API under test.

#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "badpair/certificate.hpp"

using namespace badpair;

namespace {

const QuadraticNumber kGolden{BigInt(-1), BigInt(1), BigInt(2), BigInt(5)};
const Rational kDelta = make_rational(1, 10000);

int failures = 0;

void report(int n, bool ok, const std::string& what,
            const std::string& detail = "") {
  std::printf("criterion %d: %s — %s%s\n", n, ok ? "PASS" : "FAIL",
              what.c_str(),
              (!ok && !detail.empty()) ? ("; " + detail).c_str() : "");
  if (!ok) ++failures;
}

struct RunArtifacts {
  Params p;
  SieveState s;
  PointInterval xi;
  BadnessReport bad;
  bool counts_positive = true;
};

RunArtifacts make_run(unsigned long R) {
  RunArtifacts art{Params::paper(BigInt(R), kDelta), {}, {}, {}};
  art.s = init(art.p, Rational(0));
  for (int i = 0; i < 3; ++i) art.s = step(art.s, kGolden, art.p);
  for (const BigInt& t : art.s.counts)
    if (t <= 0) art.counts_positive = false;
  art.xi = extract_point(art.s, art.p, ChainPolicy::leftmost);
  art.bad = verify_bad(kGolden, art.xi.left, art.xi.right, kDelta,
                       pow_int(art.p.R, 2));
  return art;
}

}  // namespace

int main() try {
  // 1. parameter identities at R = 2^55
  {
    BigInt R = pow_int(BigInt(2), 55);
    Params p = Params::paper(R, kDelta);
    BigInt d0 = derived_dk(p, 0);
    Rational K0 = derived_Kk(p, 0);
    Rational prod = Rational(d0) * K0;
    bool ok = d0 == 256 && d0 == floor_nth_root(pow_int(R, 8), 55) &&
              K0 == Rational(pow_int(BigInt(2), 44)) &&
              prod == Rational(pow_int(BigInt(2), 52)) &&
              cmp_pow(prod, R, 52, 55) == 0;
    report(1, ok,
           "R = 2^55: d_0 = 256 = floor(R^(8/55)) and d_0 K_0 = R^(52/55) "
           "exactly");
  }

  // 2. homogeneous condition on theta up to q = 10^6
  {
    HomogeneousMinimum hm = homogeneous_minimum(kGolden, 1000000);
    bool ok = hm.q == 1 && hm.lo > make_rational(3819, 10000) &&
              hm.hi < make_rational(3820, 10000);
    report(2, ok,
           "min over q <= 10^6 of q^2 ||q theta|| sits at q = 1 inside "
           "(0.3819, 0.3820)",
           "q = " + hm.q.get_str());
  }

  RunArtifacts r16 = make_run(16);
  RunArtifacts r32 = make_run(32);

  // 3. end-to-end sieve soundness on both configurations
  {
    bool ok = true;
    std::string detail;
    for (const RunArtifacts* art : {&r16, &r32}) {
      if (!art->counts_positive) {
        ok = false;
        detail = "empty level in R = " + art->p.R.get_str() + " run";
      }
      if (!art->bad.pass) {
        ok = false;
        detail = "badness minimum below delta in R = " + art->p.R.get_str() +
                 " run";
      }
    }
    report(3, ok,
           "depth-3 runs at R = 16 and 32 keep survivors at every level and "
           "the extracted interval clears H_max = R^2",
           detail);
  }

  // 4. grid oracle reproduces the sieve's permitted sets
  {
    bool ok = true;
    for (const RunArtifacts* art : {&r16, &r32}) {
      Rational j1_hi = art->p.kappa / Rational(art->p.R);
      GridResult g = grid_oracle(kGolden, art->p, 4, Rational(0), j1_hi,
                                 BigInt(100000000));
      if (g.levels.size() != 4) ok = false;
      for (unsigned long m = 0; m < 4 && ok; ++m) {
        std::vector<BigInt> cells;
        for (const Segment& seg : art->s.levels[m])
          cells.push_back(seg.cell_index(art->p.R));
        if (g.levels[m].permitted != cells) ok = false;
      }
    }
    report(4, ok,
           "independent grid refinement yields identical permitted cells at "
           "all four levels, both configurations");
  }

  // 5. per-(interval, parent) counting bounds
  {
    bool ok = true;
    unsigned long checked = 0;
    std::string detail;
    for (const RunArtifacts* art : {&r16, &r32})
      for (const LevelLedger& led : art->s.ledgers) {
        CountBoundReport cb = count_bound_check(led, art->s, kGolden, art->p);
        checked += cb.checked;
        if (!cb.pass) {
          ok = false;
          if (!cb.violations.empty()) detail = cb.violations.front();
        }
      }
    report(5, ok,
           "child-intersection counts never exceed |interval|/|child| + 2 "
           "nor 2 K_k + 2 (" +
               std::to_string(checked) + " pairs)",
           detail);
  }

  // 6. intersection identities over random concurrent pairs
  {
    std::mt19937 rng(6021023u);
    bool ok = true;
    std::string detail;
    int done = 0;
    while (done < 10000 && ok) {
      unsigned long q = 1 + rng() % 40;
      BigInt pp(static_cast<unsigned long>(rng() % (2 * q + 1)));
      BigInt rr(static_cast<unsigned long>(rng() % (2 * q + 1)));
      RationalPoint P(pp, rr, BigInt(q));

      std::vector<Line> found;
      for (long B = 1; B <= 12 && found.size() < 8; ++B)
        for (long A = -12; A <= 12 && found.size() < 8; ++A) {
          BigInt num = BigInt(B) * P.r - BigInt(A) * P.p;
          if (num % P.q != 0) continue;
          Line cand(BigInt(A), BigInt(B), num / P.q);
          bool dup = false;
          for (const Line& f : found)
            if (f == cand) dup = true;
          if (!dup) found.push_back(cand);
        }
      if (found.size() < 2) continue;

      std::size_t i = rng() % found.size();
      std::size_t j = rng() % found.size();
      if (i == j) continue;
      const Line &L1 = found[i], &L2 = found[j];
      RationalPoint got = intersect(L1, L2);
      BigInt a1 = abs(L1.A), a2 = abs(L2.A);
      BigInt amax = std::max(a1, a2);
      BigInt bmax = std::max(L1.B, L2.B);
      bool good = got == P &&
                  L1.A * got.p - L1.B * got.r + L1.C * got.q == 0 &&
                  L2.A * got.p - L2.B * got.r + L2.C * got.q == 0 &&
                  got.q <= 2 * amax * bmax &&
                  lattice_residue(L1, got) == 0 && lattice_residue(L2, got) == 0;
      if (!good) {
        ok = false;
        detail = "pair through (" + P.p.get_str() + "/" + P.q.get_str() +
                 ", " + P.r.get_str() + "/" + P.q.get_str() + ")";
      }
      ++done;
    }
    report(6, ok && done == 10000,
           "10^4 random non-parallel primitive pairs: exact reduced "
           "intersection, q <= 2 max|A| max B, zero lattice residues",
           detail);
  }

  // 7. slope-height bound: extremal equality and random premise triples
  {
    const Rational sigma(16), W(16);
    BigInt a4 = pow_int(BigInt(4), 4);
    Rational s3 = sigma * sigma * sigma;
    bool ok = slope_ratio_check(sigma, W, BigInt(4), BigInt(1)) ==
                  CheckStatus::holds &&
              Rational(a4) * W == s3 &&  // both sides are 4096
              Rational(a4) * W == Rational(4096);
    std::mt19937 rng(77u);
    for (int i = 0; i < 1000 && ok; ++i) {
      long b = 1 + rng() % 40;
      Rational s = Rational(b) + Rational(static_cast<long>(rng() % 60));
      BigInt sb = s.get_num() * b / s.get_den();
      BigInt bound = floor_sqrt(sb);
      BigInt A(static_cast<long>(rng() % (bound.get_ui() + 1)));
      if (rng() % 2) A = -A;
      Rational Wr = make_rational(height(A, BigInt(b)),
                                  BigInt(1 + rng() % 3));
      if (slope_ratio_check(s, Wr, A, BigInt(b)) != CheckStatus::holds) ok = false;
    }
    report(7, ok,
           "at sigma = W = 16 the slope bound is attained exactly at (4, 1); "
           "10^3 premise-satisfying triples stay within it");
  }

  // 8. byte-identical reruns
  {
    RunConfig cfg;
    RunOutcome a = run(cfg);
    RunOutcome b = run(cfg);
    bool ok = a.certificate.dump(2) == b.certificate.dump(2) &&
              a.intervals_csv == b.intervals_csv;
    report(8, ok,
           "two identical R = 16 runs emit byte-identical certificates and "
           "interval tables");
  }

  // 9. removal attribution and the survivor recursion
  {
    bool ok = true;
    std::string detail;
    for (const RunArtifacts* art : {&r16, &r32}) {
      for (const LevelLedger& led : art->s.ledgers) {
        std::set<std::pair<std::string, unsigned long>> seen;
        std::size_t bucketed = 0;
        std::map<std::string, std::size_t> buckets;
        for (const RemovalRecord& rec : led.removals) {
          if (!seen.emplace(rec.parent.lineage_str(), rec.mu).second) {
            ok = false;
            detail = "child removed twice at step " + std::to_string(led.n);
          }
          std::string key = rec.slope.bounded
                                ? "k" + std::to_string(rec.k)
                                : "l" + std::to_string(rec.slope.l);
          ++buckets[key];
        }
        for (const auto& kv : buckets) bucketed += kv.second;
        if (bucketed != led.removals.size()) ok = false;
        BigInt expect =
            art->p.R * art->s.counts[led.n - 1] - BigInt(led.removals.size());
        if (art->s.counts[led.n] != expect) {
          ok = false;
          detail = "T recursion broken at step " + std::to_string(led.n);
        }
      }
      for (std::size_t i = 0; i < art->s.levels.size(); ++i)
        if (BigInt(art->s.levels[i].size()) != art->s.counts[i]) {
          ok = false;
          detail = "stored count disagrees with survivor list";
        }
    }
    report(9, ok,
           "every removal lands in exactly one class bucket, bucket sums "
           "match totals, and T_(n+1) = R T_n - removals against recounted "
           "lists",
           detail);
  }

  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures;
} catch (const std::exception& e) {
  std::printf("aborted: %s\n", e.what());
  return 10;
}
