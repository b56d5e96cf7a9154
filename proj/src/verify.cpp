#include "badpair/verify.hpp"

#include <algorithm>
#include <map>

namespace badpair {

namespace {

BigInt ceil_qn(const QuadraticNumber& x) { return -(-x).floor(); }

}  // namespace

BadnessReport verify_bad(const QuadraticNumber& theta, const Rational& xi_lo,
                         const Rational& xi_hi, const Rational& delta,
                         const BigInt& h_max) {
  if (theta.is_rational())
    throw std::invalid_argument("verify_bad: theta rational");
  if (xi_hi < xi_lo) throw std::invalid_argument("verify_bad: empty interval");
  if (h_max < 1) throw std::invalid_argument("verify_bad: h_max < 1");

  BadnessReport rep;
  rep.h_max = h_max;
  rep.delta = delta;
  bool have = false;

  auto consider = [&](const BigInt& A, const BigInt& B, const BigInt& C,
                      const QuadraticNumber& value,
                      const QuadraticNumber& witness) {
    if (have && value.compare(rep.minimum) >= 0) return;
    have = true;
    rep.A = A;
    rep.B = B;
    rep.C = C;
    rep.minimum = value;
    rep.witness_xi = witness;
  };

  QuadraticNumber xi_lo_q =
      QuadraticNumber::from_rational(xi_lo, theta.d());

  // B = 0: the xi-independent pairs; ||A theta|| * A^2.
  for (BigInt A = 1; A * A <= h_max; ++A) {
    QuadraticNumber t = theta * Rational(A);
    BigInt fl = t.floor();
    QuadraticNumber fr = t - Rational(fl);
    BigInt m = fr.compare(make_rational(1, 2)) <= 0 ? fl : BigInt(fl + 1);
    BigInt asq = A * A;
    QuadraticNumber value = (t - Rational(m)).abs() * Rational(asq);
    consider(A, 0, -m, value, xi_lo_q);
  }

  for (BigInt B = 1; B * B * B <= h_max; ++B) {
    for (BigInt a = 0;; ++a) {
      BigInt asq = a * a, bsq = B * B;
      BigInt mx = std::max(asq, bsq);
      BigInt H = B * mx;
      if (H > h_max) break;  // reachable only once a > B
      for (int sg : {+1, -1}) {
        if (a == 0 && sg < 0) continue;
        BigInt A = sg > 0 ? a : BigInt(-a);
        QuadraticNumber t = theta * Rational(A);
        Rational b_hi = Rational(B) * xi_hi, b_lo = Rational(B) * xi_lo;
        QuadraticNumber u = t - b_hi;
        QuadraticNumber v = t - b_lo;
        BigInt cu = ceil_qn(u), fv = v.floor();
        if (cu <= fv) {
          // an integer value is attained inside the interval
          QuadraticNumber witness = (t - Rational(cu)) / Rational(B);
          consider(A, B, -cu,
                   QuadraticNumber::from_rational(Rational(0), theta.d()),
                   witness);
        } else {
          BigInt fv1 = fv + 1;
          QuadraticNumber d1 = u - Rational(fv);       // at xi_hi
          QuadraticNumber d2 = -(v - Rational(fv1));   // at xi_lo
          if (d1.compare(d2) <= 0)
            consider(A, B, -fv, d1 * Rational(mx),
                     QuadraticNumber::from_rational(xi_hi, theta.d()));
          else
            consider(A, B, -fv1, d2 * Rational(mx), xi_lo_q);
        }
      }
    }
  }

  rep.pass = rep.minimum.compare(delta) >= 0;
  auto enc = rep.minimum.enclosure(make_rational(1, pow_int(10, 18)));
  rep.lo = enc.first;
  rep.hi = enc.second;
  return rep;
}

GridResult grid_oracle(const QuadraticNumber& theta, const Params& p,
                       unsigned long depth, const Rational& window_lo,
                       const Rational& window_hi, const BigInt& cap) {
  if (depth < 1) throw std::invalid_argument("grid_oracle: depth < 1");
  if (window_lo < 0 || window_hi > 1 || window_hi <= window_lo)
    throw std::invalid_argument("grid_oracle: bad window");
  if (!p.R.fits_ulong_p())
    throw feasibility_error("grid_oracle: R exceeds cell addressing");
  unsigned long r = p.R.get_ui();
  Rational len1 = p.kappa / Rational(p.R);
  Rational ratio = (window_hi - window_lo) / len1;
  if (ratio.get_den() != 1)
    throw std::invalid_argument(
        "grid_oracle: window must span whole level-1 cells");
  BigInt ncells1 = ratio.get_num();

  GridResult res;
  GridLevel first;
  first.level = 1;
  for (BigInt i = 0; i < ncells1; ++i) first.permitted.push_back(i);
  res.levels.push_back(std::move(first));

  Rational cell_len = len1;
  for (unsigned long m = 1; m < depth; ++m) {
    BigInt hmin = pow_int(p.R, m - 1);
    BigInt hmax = hmin * p.R;
    auto lines =
        enumerate_triples(theta, p.delta, window_lo, window_hi, hmin, hmax);
    const auto& prev = res.levels.back().permitted;
    BigInt cells_next = ncells1 * pow_int(p.R, m);
    BigInt work = BigInt(4) * BigInt(lines.size()) +
                  BigInt(prev.size()) * p.R;
    res.tests += work;
    if (res.tests > cap)
      throw feasibility_error("grid_oracle: cap exceeded at level " +
                              std::to_string(m + 1) + " (work so far " +
                              res.tests.get_str() + ")");
    if (!cells_next.fits_ulong_p() || cells_next > 100000000)
      throw feasibility_error("grid_oracle: cell table too large");
    cell_len /= Rational(p.R);

    std::vector<char> removed(cells_next.get_ui(), 0);
    for (const Line& L : lines) {
      ForbiddenInterval fi = forbidden_interval(L, theta, p.delta);
      auto range = cells_meeting(fi.center, fi.half_width, window_lo, cell_len,
                                 cells_next);
      if (!range) continue;
      for (unsigned long j = range->first.get_ui();
           j <= range->last.get_ui(); ++j)
        removed[j] = 1;
    }

    GridLevel next;
    next.level = m + 1;
    for (const BigInt& pi : prev) {
      BigInt base = pi * p.R;
      for (unsigned long j = 0; j < r; ++j) {
        BigInt ci = base + j;
        if (!removed[ci.get_ui()]) next.permitted.push_back(ci);
      }
    }
    res.levels.push_back(std::move(next));
  }
  return res;
}

SoundnessReport check_soundness(const SieveState& s,
                                const QuadraticNumber& theta,
                                const Params& p) {
  SoundnessReport rep;
  unsigned long n = s.level;
  if (n < 2) return rep;  // no heights below R^(n-1) = 1 exist
  Rational j1_lo = s.start;
  Rational j1_hi = s.start + p.kappa / Rational(p.R);
  BigInt hmax = pow_int(p.R, n - 1);
  Rational cell_len = p.kappa / Rational(pow_int(p.R, n));
  BigInt cells_total = pow_int(p.R, n - 1);

  std::map<BigInt, const Segment*> index;
  for (const Segment& seg : s.survivors())
    index.emplace(seg.cell_index(p.R), &seg);

  auto lines = enumerate_triples(theta, p.delta, j1_lo, j1_hi, 1, hmax);
  rep.intervals_checked = lines.size();
  for (const Line& L : lines) {
    ForbiddenInterval fi = forbidden_interval(L, theta, p.delta);
    auto range =
        cells_meeting(fi.center, fi.half_width, j1_lo, cell_len, cells_total);
    if (!range) continue;
    for (BigInt ci = range->first; ci <= range->last; ++ci) {
      auto it = index.find(ci);
      if (it == index.end()) continue;
      Rational lo = j1_lo + Rational(ci) * cell_len;
      if (!fi.meets(lo, lo + cell_len)) continue;  // defense in depth
      rep.pass = false;
      rep.violations.push_back(it->second->lineage_str() + " meets (" +
                               L.A.get_str() + "," + L.B.get_str() + "," +
                               L.C.get_str() + ")");
    }
  }
  return rep;
}

Condition0Report certify_condition0(const QuadraticNumber& theta,
                                    const Rational& delta,
                                    unsigned long q_max) {
  if (q_max < 1) throw std::invalid_argument("certify_condition0: q_max < 1");
  Condition0Report rep;
  HomogeneousMinimum hm = homogeneous_minimum(theta, q_max);
  rep.q = hm.q;
  rep.value = hm.value;
  rep.lo = hm.lo;
  rep.hi = hm.hi;
  rep.delta = delta;
  rep.pass = hm.value.compare(delta) >= 0;
  ContinuedFraction cf = ContinuedFraction::expand(theta);
  rep.a_max = cf.max_partial_quotient();
  rep.cf_floor = make_rational(1, rep.a_max + 2);
  rep.all_q = rep.cf_floor >= delta;
  return rep;
}

}  // namespace badpair
