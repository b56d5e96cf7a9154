#include "badpair/sieve.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace badpair {

Params Params::paper(const BigInt& R, const Rational& delta, bool strict) {
  Params p;
  p.R = R;
  p.delta = delta;
  p.kappa = delta * Rational(floor_nth_root(pow_int(R, 6), 5));
  p.lambda = make_rational(1741, 330);
  p.strict_mode = strict;
  p.validate();
  return p;
}

Params Params::empirical(const BigInt& R, const Rational& delta,
                         const Rational& kappa, bool strict) {
  Params p;
  p.R = R;
  p.delta = delta;
  p.kappa = kappa;
  p.lambda = make_rational(1741, 330);
  p.strict_mode = strict;
  p.validate();
  return p;
}

unsigned long Params::k_max() const {
  return mpz_sizeinbase(R.get_mpz_t(), 2) - 1;
}

void Params::validate() const {
  if (R < 2) throw std::domain_error("Params: R must be >= 2");
  if (delta <= 0) throw std::domain_error("Params: delta must be positive");
  if (kappa <= 0) throw std::domain_error("Params: kappa must be positive");
  if (lambda <= 0) throw std::domain_error("Params: lambda must be positive");
  if (strict_mode) {
    if (R < pow_int(BigInt(2), 422))
      throw std::domain_error("Params: strict mode requires R >= 2^422");
    if (delta > make_rational(1, pow_int(BigInt(2), 1622)))
      throw std::domain_error("Params: strict mode requires delta <= 2^-1622");
    // kappa <= 1/(3 R^(lambda/2)), i.e. 3 kappa <= R^(-num/(2 den))
    BigInt lnum(lambda.get_num()), lden(lambda.get_den());
    if (!lnum.fits_slong_p() || !lden.fits_slong_p())
      throw std::domain_error("Params: lambda exponent out of range");
    if (cmp_pow(3 * kappa, R, -lnum.get_si(),
                2 * static_cast<unsigned long>(lden.get_ui())) > 0)
      throw std::domain_error(
          "Params: strict mode requires kappa <= 1/(3 R^(lambda/2))");
  }
}

BigInt derived_dk(const Params& p, unsigned long k) {
  if (k > p.k_max()) throw std::out_of_range("derived_dk: k > log2 R");
  // (kappa/delta * 2^k/R)^(2/3) * R^(2/165) = (v^110 R^2)^(1/165)
  Rational v = p.kappa * Rational(pow_int(BigInt(2), k)) / (p.delta * Rational(p.R));
  BigInt t = pow_int(BigInt(v.get_num()), 110) * p.R * p.R;
  BigInt u = pow_int(BigInt(v.get_den()), 110);
  return floor_nth_root(floor_div(t, u), 165);
}

Rational derived_Kk(const Params& p, unsigned long k) {
  if (k > p.k_max()) throw std::out_of_range("derived_Kk: k > log2 R");
  return p.delta * Rational(p.R) * Rational(p.R) /
         (p.kappa * Rational(pow_int(BigInt(2), k)));
}

unsigned long dyadic_class(const BigInt& H, unsigned long n, const BigInt& R) {
  if (n < 1) throw std::domain_error("dyadic_class: level must be >= 1");
  BigInt lo = pow_int(R, n - 1);
  if (H < lo || H >= lo * R)
    throw std::out_of_range("dyadic_class: H outside [R^(n-1), R^n)");
  BigInt t = floor_div(H, lo);  // >= 1
  return mpz_sizeinbase(t.get_mpz_t(), 2) - 1;
}

SlopeClass slope_class(const BigInt& B, unsigned long n, const Params& p) {
  if (B < 1) throw std::domain_error("slope_class: B must be >= 1");
  if (n < 1) throw std::domain_error("slope_class: level must be >= 1");
  BigInt lnum(p.lambda.get_num()), lden(p.lambda.get_den());
  if (!lnum.fits_slong_p() || !lden.fits_slong_p())
    throw std::domain_error("slope_class: lambda exponent out of range");
  long lu = lnum.get_si();
  long lv = lden.get_si();
  // B > R^(n/3 - lambda) <=> B^(3 lv) > R^(n lv - 3 lu)
  long nl = static_cast<long>(n) * lv;
  unsigned long ev = 3 * static_cast<unsigned long>(lv);
  if (cmp_pow(Rational(B), p.R, nl - 3 * lu, ev) > 0) return {true, 0};
  for (unsigned long l = 1;; ++l) {
    // R^(n/3 - lambda(l+1)) <= B, the first l that holds classifies B
    long eu = nl - 3 * lu * static_cast<long>(l + 1);
    if (cmp_pow(Rational(B), p.R, eu, ev) >= 0) return {false, l};
  }
}

BigInt Segment::cell_index(const BigInt& R) const {
  BigInt idx = 0;
  for (std::size_t i = 1; i < lineage.size(); ++i)
    idx = idx * R + static_cast<long>(lineage[i] - 1);
  return idx;
}

Rational Segment::left(const Params& p, const Rational& start) const {
  return start + Rational(cell_index(p.R)) * length(p);
}

Rational Segment::length(const Params& p) const {
  return p.kappa / Rational(pow_int(p.R, level));
}

std::string Segment::lineage_str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < lineage.size(); ++i) {
    if (i) os << '.';
    os << lineage[i];
  }
  return os.str();
}

std::vector<Segment> subdivide(const Segment& seg, const BigInt& R) {
  if (!R.fits_ulong_p())
    throw std::domain_error("subdivide: R too large to materialize children");
  unsigned long r = R.get_ui();
  std::vector<Segment> out;
  out.reserve(r);
  for (unsigned long mu = 1; mu <= r; ++mu) {
    Segment child{seg.level + 1, seg.lineage};
    child.lineage.push_back(mu);
    out.push_back(std::move(child));
  }
  return out;
}

SieveState init(const Params& p, const Rational& start) {
  Rational len = p.kappa / Rational(p.R);
  if (start < 0 || start + len > 1)
    throw std::domain_error("init: J1 must lie within [0, 1]");
  SieveState s;
  s.start = start;
  s.level = 1;
  s.levels.push_back({Segment{1, {1}}});
  s.counts.push_back(1);
  return s;
}

SieveState step(const SieveState& s, const QuadraticNumber& theta,
                const Params& p) {
  if (s.level < 1) throw std::logic_error("step: uninitialized state");
  if (theta.is_rational())
    throw std::domain_error("step: theta must be irrational");
  if (!p.R.fits_ulong_p())
    throw std::domain_error("step: R too large to materialize children");
  const unsigned long n = s.level;
  const unsigned long r = p.R.get_ui();
  const BigInt hmin = pow_int(p.R, n - 1);
  const BigInt hmax = hmin * p.R;
  const Rational child_len = p.kappa / Rational(pow_int(p.R, n + 1));

  LevelLedger ledger;
  ledger.n = n;
  std::vector<Segment> next;

  for (const Segment& parent : s.survivors()) {
    const Rational pl = parent.left(p, s.start);
    const Rational pr = pl + parent.length(p);
    auto lines = enumerate_triples(theta, p.delta, pl, pr, hmin, hmax);
    auto children = subdivide(parent, p.R);
    std::vector<char> removed(r, 0);
    std::vector<LineRecord> recs;
    recs.reserve(lines.size());
    for (const Line& line : lines) {
      BigInt H = height(line);
      unsigned long k = dyadic_class(H, n, p.R);
      SlopeClass sc = slope_class(line.B, n, p);
      recs.push_back({line, H, k, sc});
      ForbiddenInterval fi = forbidden_interval(line, theta, p.delta);
      unsigned long cnt = 0;
      Rational cl = pl;
      for (unsigned long j = 0; j < r; ++j) {
        Rational cr = cl + child_len;
        if (fi.meets(cl, cr)) {
          ++cnt;
          if (!removed[j]) {
            removed[j] = 1;
            ledger.removals.push_back({parent, j + 1, line, k, sc});
          }
        }
        cl = cr;
      }
      ledger.delta_counts.push_back({line, parent, k, cnt});
    }
    for (unsigned long j = 0; j < r; ++j)
      if (!removed[j]) next.push_back(children[j]);
    ledger.parent_lines.emplace_back(parent, std::move(recs));
  }

  SieveState out = s;
  out.level = n + 1;
  out.counts.push_back(BigInt(static_cast<unsigned long>(next.size())));
  out.levels.push_back(std::move(next));
  out.ledgers.push_back(std::move(ledger));
  return out;
}

CountBoundReport count_bound_check(const LevelLedger& ledger,
                                   const SieveState& s,
                                   const QuadraticNumber& theta,
                                   const Params& p) {
  CountBoundReport rep;
  const unsigned long n = ledger.n;
  const Rational child_len = p.kappa / Rational(pow_int(p.R, n + 1));
  const unsigned long r = p.R.get_ui();
  for (const DeltaCount& dc : ledger.delta_counts) {
    ++rep.checked;
    ForbiddenInterval fi = forbidden_interval(dc.line, theta, p.delta);
    const Rational pl = dc.parent.left(p, s.start);
    unsigned long cnt = 0;
    Rational cl = pl;
    for (unsigned long j = 0; j < r; ++j) {
      Rational cr = cl + child_len;
      if (fi.meets(cl, cr)) ++cnt;
      cl = cr;
    }
    auto flag = [&](const std::string& what) {
      std::ostringstream os;
      os << "line (" << dc.line.A.get_str() << "," << dc.line.B.get_str()
         << "," << dc.line.C.get_str() << ") parent "
         << dc.parent.lineage_str() << ": " << what;
      rep.violations.push_back(os.str());
      rep.pass = false;
    };
    if (cnt != dc.count) flag("ledger count mismatch");
    Rational count_q(static_cast<unsigned long>(cnt));
    Rational bound1 =
        2 * fi.half_width / child_len + 2;  // |interval|/|child| + 2
    if (count_q > bound1) flag("count exceeds |interval|/|child| + 2");
    Rational bound2 = 2 * derived_Kk(p, dc.k) + 2;
    if (count_q > bound2) flag("count exceeds 2 K_k + 2");
  }
  return rep;
}

PointInterval extract_point(const SieveState& s, const Params& p,
                            ChainPolicy policy) {
  const auto& finals = s.survivors();
  if (finals.empty()) throw std::domain_error("extract_point: no survivors");
  const Segment* chosen = &finals.front();
  if (policy == ChainPolicy::deepest_subtree) {
    std::vector<const Segment*> cand;
    cand.reserve(finals.size());
    for (const auto& seg : finals) cand.push_back(&seg);
    for (std::size_t pos = 1; pos < s.level && cand.size() > 1; ++pos) {
      std::map<unsigned long, unsigned long> bucket;
      for (auto* seg : cand) ++bucket[seg->lineage[pos]];
      unsigned long best = 0, best_count = 0;
      for (const auto& [mu, c] : bucket)
        if (c > best_count) {  // ties keep the smaller mu (map order)
          best = mu;
          best_count = c;
        }
      std::vector<const Segment*> kept;
      for (auto* seg : cand)
        if (seg->lineage[pos] == best) kept.push_back(seg);
      cand.swap(kept);
    }
    chosen = cand.front();
  }
  Rational left = chosen->left(p, s.start);
  return {left, left + chosen->length(p), *chosen};
}

BigInt estimate_sieve_cost(const Params& p, unsigned long depth) {
  const Rational window = p.kappa / Rational(p.R) + 2 * p.delta;
  BigInt total = 0;
  for (unsigned long n = 1; n <= depth; ++n) {
    BigInt hmin = pow_int(p.R, n - 1);
    BigInt hmax = hmin * p.R;
    BigInt triples = 0;
    for (BigInt B = 1; B * B * B < hmax; ++B) {
      for (BigInt a = 0;; ++a) {
        BigInt H = height(a, B);
        if (H >= hmax) break;
        if (H < hmin) continue;
        BigInt c_count = floor_rational(Rational(B) * window) + 2;
        triples += (a == 0 ? c_count : 2 * c_count);
      }
    }
    total += triples * p.R;
  }
  return total;
}

}  // namespace badpair
