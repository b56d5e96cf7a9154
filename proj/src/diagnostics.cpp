#include "badpair/diagnostics.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace badpair {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::holds: return "holds";
    case CheckStatus::fails: return "fails";
    case CheckStatus::not_applicable: return "not_applicable";
    case CheckStatus::not_evaluated: return "not_evaluated";
    case CheckStatus::indeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

Rational rat_pow(const Rational& x, unsigned long e) {
  return make_rational(pow_int(x.get_num(), e), pow_int(x.get_den(), e));
}

// R^e as an exact rational, e of either sign.
Rational pow_R(const BigInt& R, long e) {
  if (e >= 0) return Rational(pow_int(R, static_cast<unsigned long>(e)));
  return make_rational(1, pow_int(R, static_cast<unsigned long>(-e)));
}

QuadraticNumber fiber_point(const Line& L, const QuadraticNumber& theta) {
  return (theta * Rational(L.A) + Rational(L.C)) / Rational(L.B);
}

bool parallel(const Line& a, const Line& b) { return a.A * b.B == b.A * a.B; }

BigInt det3(const Line& l1, const Line& l2, const Line& l3) {
  return l1.A * (l2.B * l3.C - l3.B * l2.C) -
         l1.B * (l2.A * l3.C - l3.A * l2.C) +
         l1.C * (l2.A * l3.B - l3.A * l2.B);
}

}  // namespace

NoParallelReport check_no_parallel(const std::vector<Line>& lines) {
  NoParallelReport rep;
  if (lines.size() < 2) return rep;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (parallel(lines[i], lines[j])) {
        rep.status = CheckStatus::fails;
        rep.witness = std::make_pair(lines[i], lines[j]);
        return rep;
      }
  rep.status = CheckStatus::holds;
  return rep;
}

CommonPointReport check_common_point(const std::vector<Line>& lines) {
  CommonPointReport rep;
  if (lines.size() < 2) return rep;
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < lines.size() && bi == bj; ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (!parallel(lines[i], lines[j])) {
        bi = i;
        bj = j;
        break;
      }
  if (bi == bj) {  // two or more distinct parallels: no common point
    rep.status = CheckStatus::fails;
    return rep;
  }
  RationalPoint P = intersect(lines[bi], lines[bj]);
  for (const Line& L : lines) {
    if (L.A * P.p - L.B * P.r + L.C * P.q != 0) {
      rep.status = CheckStatus::fails;
      rep.witness = std::array<Line, 3>{lines[bi], lines[bj], L};
      rep.det = det3(lines[bi], lines[bj], L);
      return rep;
    }
  }
  rep.status = CheckStatus::holds;
  rep.point = P;
  return rep;
}

PairIdentityReport check_pair_identities(const std::vector<Line>& lines,
                                         const QuadraticNumber& theta,
                                         const Rational& seg_lo,
                                         const Rational& seg_hi) {
  PairIdentityReport rep;
  Rational len = seg_hi - seg_lo;
  if (len < 0) throw std::invalid_argument("check_pair_identities: bad segment");
  bool ok_i = true, ok_ii = true;
  for (std::size_t i = 0; i < lines.size() && ok_i && ok_ii; ++i) {
    QuadraticNumber yi = fiber_point(lines[i], theta);
    bool in_i = yi.compare(seg_lo) >= 0 && yi.compare(seg_hi) <= 0;
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (parallel(lines[i], lines[j])) continue;
      RationalPoint P = intersect(lines[i], lines[j]);
      BigInt amax = std::max(abs(lines[i].A), abs(lines[j].A));
      BigInt bmax = std::max(lines[i].B, lines[j].B);
      ++rep.pairs_ii;
      if (P.q > 2 * amax * bmax) {
        ok_ii = false;
        rep.witness = std::make_pair(lines[i], lines[j]);
        break;
      }
      if (!in_i) continue;
      QuadraticNumber yj = fiber_point(lines[j], theta);
      if (yj.compare(seg_lo) < 0 || yj.compare(seg_hi) > 0) continue;
      ++rep.pairs_i;
      QuadraticNumber dist = (theta * Rational(P.q) - Rational(P.p)).abs();
      if (dist.compare(Rational(len * Rational(lines[i].B * lines[j].B))) > 0) {
        ok_i = false;
        rep.witness = std::make_pair(lines[i], lines[j]);
        break;
      }
    }
  }
  if (rep.pairs_i > 0 || !ok_i)
    rep.part_i = ok_i ? CheckStatus::holds : CheckStatus::fails;
  if (rep.pairs_ii > 0 || !ok_ii)
    rep.part_ii = ok_ii ? CheckStatus::holds : CheckStatus::fails;
  return rep;
}

CheckStatus slope_ratio_check(const Rational& sigma, const Rational& W,
                         const BigInt& A, const BigInt& B) {
  if (sigma <= 0 || W <= 0 || B <= 0) return CheckStatus::not_applicable;
  if (Rational(B) > sigma) return CheckStatus::not_applicable;
  if (Rational(A * A) > sigma * Rational(B)) return CheckStatus::not_applicable;
  if (Rational(height(A, B)) < W) return CheckStatus::not_applicable;
  Rational lhs = Rational(pow_int(A, 4)) * W;
  Rational rhs = Rational(pow_int(B, 4)) * rat_pow(sigma, 3);
  return lhs <= rhs ? CheckStatus::holds : CheckStatus::fails;
}

KClassQuantities k_class_quantities(const RationalPoint& P, unsigned long k,
                                    const QuadraticNumber& theta,
                                    const Params& p, unsigned long n) {
  if (n < 1) throw std::invalid_argument("k_class_quantities: n < 1");
  BigInt dk = derived_dk(p, k);
  if (dk < 1) throw std::domain_error("k_class_quantities: d_k = 0");
  BigInt Wk = pow_int(2, k) * pow_int(p.R, n - 1);
  QuadraticNumber dist = (theta * Rational(P.q) - Rational(P.p)).abs();
  Rational coef = Rational(2) * p.kappa * Rational(pow_int(2, k)) /
                  Rational(dk * p.R);
  QuadraticNumber sigma =
      QuadraticNumber::from_rational(coef, theta.d()) / dist;
  QuadraticNumber omega4 =
      (theta - P.x()).abs().pow(4) * sigma.pow(3) / Rational(Wk);
  return KClassQuantities{dk, Wk, sigma, omega4};
}

SplitReport split_collections(const std::vector<Line>& lines,
                              const RationalPoint& P, unsigned long k,
                              const QuadraticNumber& theta, const Params& p,
                              unsigned long n) {
  SplitReport rep;
  rep.quantities = k_class_quantities(P, k, theta, p, n);
  Rational rq = make_rational(P.r, P.q);
  for (const Line& L : lines) {
    QuadraticNumber off4 = (fiber_point(L, theta) - rq).abs().pow(4);
    if (off4.compare(rep.quantities.omega4) <= 0)
      rep.a_coll.push_back(L);
    else
      rep.b_coll.push_back(L);
  }
  rep.b_bound = BigInt(rep.b_coll.size()) <= rep.quantities.d_k
                    ? CheckStatus::holds
                    : CheckStatus::fails;
  return rep;
}

PrincipalReport principal_inequalities(const SplitReport& split,
                                       const RationalPoint& P, unsigned long k,
                                       const QuadraticNumber& theta,
                                       const Params& p, unsigned long n,
                                       const BigInt& pigeonhole_cap) {
  PrincipalReport rep;
  const KClassQuantities& Q = split.quantities;
  const BigInt& q = P.q;
  rep.gate = BigInt(split.a_coll.size()) >= 2 * Q.d_k;

  if (!split.a_coll.empty() || !split.b_coll.empty()) {
    bool ok = true;
    for (const Line& L : split.a_coll)
      if (lattice_residue(L, P) != 0) ok = false;
    for (const Line& L : split.b_coll)
      if (lattice_residue(L, P) != 0) ok = false;
    rep.lattice = ok ? CheckStatus::holds : CheckStatus::fails;
  }

  rep.q_upper = pow_int(q, 3) < pow_int(p.R, 2 * (n - 1)) ? CheckStatus::holds
                                                     : CheckStatus::fails;

  if (rep.gate) {
    rep.first_principal = Q.sigma.pow(2).compare(make_rational(q * Q.d_k, 12)) >= 0
                     ? CheckStatus::holds
                     : CheckStatus::fails;
    QuadraticNumber dist2 =
        (theta * Rational(q) - Rational(P.p)).abs().pow(2);
    Rational rhs8 = Rational(48) * rat_pow(p.kappa, 2) *
                    Rational(pow_int(2, 2 * k)) /
                    Rational(pow_int(Q.d_k, 3) * q * pow_int(p.R, 2));
    rep.height_gap =
        dist2.compare(rhs8) <= 0 ? CheckStatus::holds : CheckStatus::fails;
    if (rep.height_gap == CheckStatus::holds) {
      // exact 8th-power form of substituting height_gap into omega_k
      Rational rhs = Rational(3072) * rat_pow(p.kappa, 8) *
                     Rational(pow_int(2, 6 * k)) /
                     Rational(pow_int(Q.d_k, 9) * pow_int(q, 9) *
                              pow_int(p.R, 2 * n + 6));
      rep.height_gap_chain = Q.omega4.pow(2).compare(rhs) <= 0
                             ? CheckStatus::holds
                             : CheckStatus::fails;
    }
    if (rep.q_upper == CheckStatus::holds) {
      Rational rhs9 = rat_pow(p.delta, 4) / Rational(16 * pow_int(q, 6));
      rep.second_principal = Q.omega4.compare(rhs9) >= 0 ? CheckStatus::holds
                                               : CheckStatus::fails;
    }
  }

  BigInt s = floor_sqrt(q);
  if ((2 * s + 1) * (s + 1) > pigeonhole_cap) {
    rep.pigeonhole = CheckStatus::not_evaluated;
  } else {
    std::optional<std::pair<BigInt, BigInt>> found;
    for (BigInt B = 0; B <= s && !found; ++B)
      for (BigInt a = 0; a <= s && !found; ++a)
        for (int sg : {+1, -1}) {
          if (a == 0 && (sg < 0 || B == 0)) continue;
          BigInt A = sg > 0 ? a : BigInt(-a);
          if (lattice_residue(A, B, P) == 0) {
            found = std::make_pair(A, B);
            break;
          }
        }
    rep.pigeonhole = found ? CheckStatus::holds : CheckStatus::fails;
    rep.pigeonhole_witness = found;
  }
  return rep;
}

SteepReport steep_checks(const std::vector<Line>& lines, unsigned long l,
                             const RationalPoint& P,
                             const QuadraticNumber& theta, const Params& p,
                             unsigned long n) {
  if (l < 1) throw std::invalid_argument("steep_checks: l < 1");
  if (n < 1) throw std::invalid_argument("steep_checks: n < 1");
  if (lines.size() < 2)
    throw std::invalid_argument("steep_checks: need two lines");
  SteepReport rep;
  rep.l = l;
  const BigInt& q = P.q;
  const BigInt& R = p.R;

  QuadraticNumber dist = (theta * Rational(q) - Rational(P.p)).abs();
  QuadraticNumber sigma =
      QuadraticNumber::from_rational(p.kappa * Rational(pow_int(R, l)),
                                     theta.d()) /
      dist;
  QuadraticNumber omega4 =
      (theta - P.x()).abs().pow(4) * sigma.pow(3) / Rational(pow_int(R, n - 1));
  rep.quantities = SteepQuantities{sigma, omega4};

  auto mn = std::min_element(lines.begin(), lines.end());
  rep.b_coll = {*mn};
  for (const Line& L : lines)
    if (!(L == *mn)) rep.a_coll.push_back(L);

  {
    bool ok = true;
    for (const Line& L : rep.a_coll)
      if ((sigma * Rational(L.B * L.B)).compare(Rational(height(L))) < 0)
        ok = false;
    rep.sigma_bound = ok ? CheckStatus::holds : CheckStatus::fails;
  }
  {
    QuadraticNumber s3 = sigma.pow(3);
    bool ok = true;
    for (const Line& L : rep.a_coll) {
      Rational lhs = Rational(pow_int(L.A, 4) * pow_int(R, n - 1));
      if ((s3 * Rational(pow_int(L.B, 4))).compare(lhs) < 0) ok = false;
    }
    rep.slope_ratio = ok ? CheckStatus::holds : CheckStatus::fails;
  }
  {
    Rational rq = make_rational(P.r, P.q);
    bool ok = true;
    for (const Line& L : rep.a_coll)
      if ((fiber_point(L, theta) - rq).abs().pow(4).compare(omega4) > 0)
        ok = false;
    rep.a_in_omega = ok ? CheckStatus::holds : CheckStatus::fails;
  }

  if (p.lambda == make_rational(1741, 330)) {
    long nl = static_cast<long>(n), ll = static_cast<long>(l);
    rep.coincidence_gap = dist.pow(165).compare(rat_pow(p.kappa, 165) *
                                        pow_R(R, -(55 * nl + 1576 * ll))) <= 0
                      ? CheckStatus::holds
                      : CheckStatus::fails;
    QuadraticNumber om660 = omega4.pow(165);
    Rational rhs1 = rat_pow(p.kappa / Rational(q), 660) *
                    pow_R(R, 165 - 1081 * ll - 220 * nl);
    rep.omega_chain =
        om660.compare(rhs1) <= 0 ? CheckStatus::holds : CheckStatus::fails;
    Rational rhs2 =
        rat_pow(p.kappa, 660) * pow_R(R, 605 - 641 * ll - 660 * nl);
    rep.omega_upper =
        om660.compare(rhs2) <= 0 ? CheckStatus::holds : CheckStatus::fails;
  }

  long e = 2 * (static_cast<long>(n) - static_cast<long>(l) - 1);
  bool qlow = e <= 0 ||
              pow_int(q, 3) >= pow_int(R, static_cast<unsigned long>(e));
  rep.q_lower = qlow ? CheckStatus::holds : CheckStatus::fails;
  rep.q_upper = qlow ? CheckStatus::fails : CheckStatus::holds;
  if (rep.q_upper == CheckStatus::holds) {
    Rational rhs9 = rat_pow(p.delta, 4) / Rational(16 * pow_int(q, 6));
    rep.second_principal_steep =
        omega4.compare(rhs9) >= 0 ? CheckStatus::holds : CheckStatus::fails;
  }
  return rep;
}

namespace {

struct Mask {
  std::vector<char> bits;
  unsigned long on = 0;

  explicit Mask(unsigned long size) : bits(size, 0) {}
  void mark(const CellRange& r) {
    for (unsigned long j = r.first.get_ui(); j <= r.last.get_ui(); ++j)
      if (!bits[j]) {
        bits[j] = 1;
        ++on;
      }
  }
};

// bound = mult * R^(52/55) with F <= R^(52/55) < F + 1.
CheckStatus root_trichotomy(unsigned long count, const BigInt& mult,
                            const BigInt& F) {
  if (BigInt(count) <= mult * F) return CheckStatus::holds;
  if (BigInt(count) >= mult * (F + 1)) return CheckStatus::fails;
  return CheckStatus::indeterminate;
}

// Certified ln R interval from ln 2 in (693147, 693148) / 10^6.
void ln_enclosure(const BigInt& R, Rational& lo, Rational& hi) {
  const Rational l2lo = make_rational(693147, 1000000);
  const Rational l2hi = make_rational(693148, 1000000);
  unsigned long e = mpz_sizeinbase(R.get_mpz_t(), 2) - 1;  // 2^e <= R < 2^(e+1)
  bool exact = R == pow_int(2, e);
  lo = Rational(e) * l2lo;
  hi = Rational(exact ? e : e + 1) * l2hi;
}

CheckStatus enclosed_bound(unsigned long count, const Rational& bound_lo,
                           const Rational& bound_hi) {
  if (Rational(count) <= bound_lo) return CheckStatus::holds;
  if (Rational(count) > bound_hi) return CheckStatus::fails;
  return CheckStatus::indeterminate;
}

}  // namespace

LevelDiagnostics level_diagnostics(const SieveState& s, unsigned long n,
                                   const QuadraticNumber& theta,
                                   const Params& p,
                                   const BigInt& pigeonhole_cap) {
  if (n < 1 || s.ledgers.size() < n)
    throw std::invalid_argument("level_diagnostics: no ledger for level");
  const LevelLedger& led = s.ledgers[n - 1];
  if (led.n != n) throw std::logic_error("level_diagnostics: ledger order");
  if (s.counts.size() < n + 1)
    throw std::logic_error("level_diagnostics: missing level counts");
  if (!p.R.fits_ulong_p())
    throw std::domain_error("level_diagnostics: R too large");
  unsigned long r = p.R.get_ui();
  const BigInt& R = p.R;

  LevelDiagnostics out;
  out.level = n;
  BigInt F = floor_nth_root(pow_int(R, 52), 55);
  Rational ln_lo, ln_hi;
  ln_enclosure(R, ln_lo, ln_hi);

  struct KBucket {
    std::vector<Line> coll;
    unsigned long overhang = 0;
    std::vector<std::pair<Line, std::optional<CellRange>>> ranged;
  };
  struct LGroup {
    bool init = false;
    Rational lo, hi;
    std::set<Line> coll_set, over_set;
    std::size_t last_parent = SIZE_MAX;
    std::vector<std::vector<std::pair<Line, std::optional<CellRange>>>>
        per_parent;
  };
  std::map<std::pair<std::vector<unsigned long>, unsigned long>, LGroup>
      groups;

  for (std::size_t pi = 0; pi < led.parent_lines.size(); ++pi) {
    const Segment& parent = led.parent_lines[pi].first;
    const auto& recs = led.parent_lines[pi].second;
    Rational pl = parent.left(p, s.start);
    Rational plen = parent.length(p);
    Rational pr = pl + plen;
    Rational clen = plen / Rational(R);
    std::map<unsigned long, KBucket> buckets;
    Mask all_mask(r);

    for (const LineRecord& rec : recs) {
      ForbiddenInterval fi = forbidden_interval(rec.line, theta, p.delta);
      auto range = cells_meeting(fi.center, fi.half_width, pl, clen, R);
      if (rec.slope.bounded) {
        KBucket& b = buckets[rec.k];
        bool inp =
            fi.center.compare(pl) >= 0 && fi.center.compare(pr) <= 0;
        if (inp)
          b.coll.push_back(rec.line);
        else
          ++b.overhang;
        b.ranged.emplace_back(rec.line, range);
        if (range) all_mask.mark(*range);
      } else {
        unsigned long l = rec.slope.l;
        if (l + 1 > n) {  // no ancestor segment exists for this class
          ++out.skipped_groups;
          continue;
        }
        auto key = std::make_pair(
            std::vector<unsigned long>(parent.lineage.begin(),
                                       parent.lineage.begin() + (n - l)),
            l);
        LGroup& g = groups[key];
        if (!g.init) {
          Segment anc{n - l, key.first};
          g.lo = anc.left(p, s.start);
          g.hi = g.lo + anc.length(p);
          g.init = true;
        }
        bool ina =
            fi.center.compare(g.lo) >= 0 && fi.center.compare(g.hi) <= 0;
        if (ina)
          g.coll_set.insert(rec.line);
        else
          g.over_set.insert(rec.line);
        if (g.last_parent != pi) {
          g.per_parent.emplace_back();
          g.last_parent = pi;
        }
        g.per_parent.back().emplace_back(rec.line, range);
      }
    }

    for (auto& [k, b] : buckets) {
      SegmentKReport kr;
      kr.parent = parent;
      kr.k = k;
      kr.coll = b.coll;
      kr.overhang = b.overhang;
      kr.no_parallel = check_no_parallel(kr.coll);
      kr.common = check_common_point(kr.coll);
      kr.pair_identities = check_pair_identities(kr.coll, theta, pl, pr);
      Mask km(r);
      for (const auto& [line, range] : b.ranged)
        if (range) km.mark(*range);
      kr.children_hit = km.on;
      kr.fl1_class = root_trichotomy(km.on, 4096, F);
      kr.fl1_vacuous = 4096 * F >= R;
      BigInt dk = derived_dk(p, k);
      if (dk >= 1 && kr.common.point) {
        kr.split = split_collections(kr.coll, *kr.common.point, k, theta, p, n);
        kr.principal = principal_inequalities(*kr.split, *kr.common.point, k,
                                              theta, p, n, pigeonhole_cap);
        std::set<Line> a_set(kr.split->a_coll.begin(), kr.split->a_coll.end());
        Mask am(r);
        for (const auto& [line, range] : b.ranged)
          if (range && a_set.count(line)) am.mark(*range);
        Rational slack =
            Rational(am.on) - 2 * derived_Kk(p, k) - 2;
        if (slack <= 0) {
          kr.a_cover = CheckStatus::holds;
        } else {
          Rational u = slack * p.kappa / (2 * Rational(pow_int(R, n + 1)));
          kr.a_cover = kr.split->quantities.omega4.compare(rat_pow(u, 4)) >= 0
                           ? CheckStatus::holds
                           : CheckStatus::fails;
        }
      } else if (kr.coll.size() >= 2) {
        kr.a_cover = CheckStatus::not_evaluated;  // no usable common point
      }
      out.per_segment_k.push_back(std::move(kr));
    }

    ParentTotal tot;
    tot.parent = parent;
    tot.children_hit = all_mask.on;
    BigInt m_lo = 8192 * F, m_hi = 8192 * (F + 1);
    Rational b_lo = Rational(m_lo) * ln_lo;
    Rational b_hi = Rational(m_hi) * ln_hi;
    tot.status = enclosed_bound(all_mask.on, b_lo, b_hi);
    tot.vacuous = b_lo >= Rational(R);
    out.fl1_totals.push_back(std::move(tot));
  }

  for (auto& [key, g] : groups) {
    AncestorLReport ar;
    ar.ancestor = Segment{n - key.second, key.first};
    ar.l = key.second;
    ar.coll.assign(g.coll_set.begin(), g.coll_set.end());
    ar.overhang = g.over_set.size();
    for (const auto& [parent, recs] : led.parent_lines)
      if (std::equal(key.first.begin(), key.first.end(),
                     parent.lineage.begin()))
        ++ar.parents;
    ar.no_parallel = check_no_parallel(ar.coll);
    ar.common = check_common_point(ar.coll);
    ar.pair_identities = check_pair_identities(ar.coll, theta, g.lo, g.hi);
    unsigned long hit = 0;
    for (const auto& entries : g.per_parent) {
      Mask m(r);
      for (const auto& [line, range] : entries)
        if (range) m.mark(*range);
      hit += m.on;
    }
    ar.children_hit = hit;
    ar.fl2 = root_trichotomy(hit, 8, F);
    ar.fl2_vacuous = 8 * F >= BigInt(r) * BigInt(ar.parents);
    if (ar.coll.size() >= 2 && ar.common.point) {
      ar.steep =
          steep_checks(ar.coll, ar.l, *ar.common.point, theta, p, n);
      if (ar.steep->a_in_omega == CheckStatus::holds) {
        std::set<Line> a_set(ar.steep->a_coll.begin(),
                             ar.steep->a_coll.end());
        unsigned long ca = 0;
        for (const auto& entries : g.per_parent) {
          Mask m(r);
          for (const auto& [line, range] : entries)
            if (range && a_set.count(line)) m.mark(*range);
          ca += m.on;
        }
        // ca <= (2 omega(l) + 2 delta/R^(n-1)) R^(n+1)/kappa + 2
        Rational slack = Rational(ca) - 2 -
                         2 * p.delta * Rational(pow_int(R, 2)) / p.kappa;
        if (slack <= 0) {
          ar.a_cover = CheckStatus::holds;
        } else {
          Rational u = slack * p.kappa / (2 * Rational(pow_int(R, n + 1)));
          ar.a_cover =
              ar.steep->quantities->omega4.compare(rat_pow(u, 4)) >= 0
                  ? CheckStatus::holds
                  : CheckStatus::fails;
        }
      } else if (ar.steep->a_in_omega == CheckStatus::fails) {
        ar.a_cover = CheckStatus::not_applicable;
      }
    } else if (ar.coll.size() >= 2) {
      ar.a_cover = CheckStatus::not_evaluated;
    }
    out.per_ancestor_l.push_back(std::move(ar));
  }

  RecursionCheck rc;
  rc.level = n;
  rc.t_n = s.counts[n - 1];
  rc.t_next = s.counts[n];
  BigInt r_lo = 16384 * F, r_hi = 16384 * (F + 1);
  Rational x_lo = Rational(r_lo) * ln_lo;
  Rational x_hi = Rational(r_hi) * ln_hi;
  Rational rhs_hi = Rational(rc.t_n) * (Rational(R) - x_lo);
  Rational rhs_lo = Rational(rc.t_n) * (Rational(R) - x_hi);
  if (rhs_hi <= 0) {
    rc.status = CheckStatus::holds;
    rc.vacuous = true;
  } else if (Rational(rc.t_next) >= rhs_hi) {
    rc.status = CheckStatus::holds;
  } else if (Rational(rc.t_next) < rhs_lo) {
    rc.status = CheckStatus::fails;
  } else {
    rc.status = CheckStatus::indeterminate;
  }
  out.recursion = rc;
  return out;
}

DiagnosticsSummary summarize(const std::vector<LevelDiagnostics>& levels) {
  DiagnosticsSummary sum;
  auto add = [&sum](CheckStatus st, bool identity, const std::string& where,
                    const char* name) {
    switch (st) {
      case CheckStatus::holds: ++sum.holds; break;
      case CheckStatus::fails: ++sum.fails; break;
      case CheckStatus::not_applicable: ++sum.not_applicable; break;
      case CheckStatus::not_evaluated: ++sum.not_evaluated; break;
      case CheckStatus::indeterminate: ++sum.indeterminate; break;
    }
    if (st == CheckStatus::fails) {
      sum.failures.push_back(where + ": " + name);
      if (identity) sum.identities_ok = false;
    }
  };
  for (const LevelDiagnostics& ld : levels) {
    std::string lvl = "level " + std::to_string(ld.level);
    for (const SegmentKReport& kr : ld.per_segment_k) {
      std::string at =
          lvl + " parent " + kr.parent.lineage_str() + " k=" +
          std::to_string(kr.k);
      add(kr.no_parallel.status, false, at, "no_parallel");
      add(kr.common.status, false, at, "common_point");
      add(kr.pair_identities.part_i, true, at, "pair_identity_i");
      add(kr.pair_identities.part_ii, true, at, "pair_identity_ii");
      if (kr.split) add(kr.split->b_bound, false, at, "b_bound");
      if (kr.principal) {
        const PrincipalReport& pr = *kr.principal;
        add(pr.lattice, true, at, "lattice");
        add(pr.first_principal, false, at, "first_principal");
        add(pr.height_gap, false, at, "height_gap");
        add(pr.height_gap_chain, true, at, "height_gap_chain");
        add(pr.second_principal, false, at, "second_principal");
        add(pr.pigeonhole, true, at, "pigeonhole");
      }
      add(kr.a_cover, true, at, "a_cover");
      add(kr.fl1_class, false, at, "fl1_class");
    }
    for (const AncestorLReport& ar : ld.per_ancestor_l) {
      std::string at = lvl + " ancestor " + ar.ancestor.lineage_str() +
                       " l=" + std::to_string(ar.l);
      add(ar.no_parallel.status, false, at, "no_parallel");
      add(ar.common.status, false, at, "common_point");
      add(ar.pair_identities.part_i, true, at, "pair_identity_i");
      add(ar.pair_identities.part_ii, true, at, "pair_identity_ii");
      if (ar.steep) {
        const SteepReport& sr = *ar.steep;
        add(sr.coincidence_gap, false, at, "coincidence_gap");
        add(sr.sigma_bound, false, at, "sigma_bound");
        add(sr.slope_ratio, false, at, "slope_ratio");
        add(sr.a_in_omega, sr.slope_ratio == CheckStatus::holds, at, "a_in_omega");
        add(sr.omega_chain, false, at, "omega_chain");
        add(sr.q_lower, false, at, "q_lower");
        add(sr.omega_upper, false, at, "omega_upper");
        add(sr.second_principal_steep, false, at, "second_principal_steep");
      }
      add(ar.a_cover, true, at, "a_cover");
      add(ar.fl2, false, at, "fl2");
    }
    for (const ParentTotal& pt : ld.fl1_totals)
      add(pt.status, false,
          lvl + " parent " + pt.parent.lineage_str(), "fl1_total");
    add(ld.recursion.status, false, lvl, "survivor_recursion");
  }
  return sum;
}

}  // namespace badpair
