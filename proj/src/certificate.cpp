#include "badpair/certificate.hpp"

#include <chrono>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <sstream>

namespace badpair {

using nlohmann::ordered_json;

namespace {

const BigInt kPigeonholeCap = 4000000;
const unsigned long kCondition0QMax = 1000;

ordered_json rat_json(const Rational& r) {
  return ordered_json{{"num", r.get_num().get_str()},
                      {"den", r.get_den().get_str()}};
}

ordered_json quad_json(const QuadraticNumber& x) {
  return ordered_json{{"a", x.a().get_str()},
                      {"b", x.b().get_str()},
                      {"c", x.c().get_str()},
                      {"d", x.d().get_str()}};
}

Rational rat_from_json(const ordered_json& j) {
  return make_rational(BigInt(j.at("num").get<std::string>(), 10),
                       BigInt(j.at("den").get<std::string>(), 10));
}

QuadraticNumber quad_from_json(const ordered_json& j) {
  return QuadraticNumber(BigInt(j.at("a").get<std::string>(), 10),
                         BigInt(j.at("b").get<std::string>(), 10),
                         BigInt(j.at("c").get<std::string>(), 10),
                         BigInt(j.at("d").get<std::string>(), 10));
}

ordered_json line_json(const Line& L) {
  return ordered_json{L.A.get_str(), L.B.get_str(), L.C.get_str()};
}

std::string slope_str(const SlopeClass& s) {
  return s.bounded ? "bounded" : "steep:" + std::to_string(s.l);
}

std::string diag_str(DiagLevel d) {
  switch (d) {
    case DiagLevel::off: return "off";
    case DiagLevel::summary: return "summary";
    default: return "full";
  }
}

class StderrTimer {
 public:
  explicit StderrTimer(std::string label)
      : label_(std::move(label)),
        t0_(std::chrono::steady_clock::now()) {}
  ~StderrTimer() {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0_)
                  .count();
    std::cerr << "timing: " << label_ << ": " << ms << " ms\n";
  }

 private:
  std::string label_;
  std::chrono::steady_clock::time_point t0_;
};

ordered_json checks_json(
    std::initializer_list<std::pair<const char*, CheckStatus>> items) {
  ordered_json out = ordered_json::object();
  for (const auto& [name, st] : items) out[name] = to_string(st);
  return out;
}

ordered_json segment_k_json(const SegmentKReport& r) {
  ordered_json j;
  j["parent"] = r.parent.lineage_str();
  j["k"] = r.k;
  j["lines"] = r.coll.size();
  j["overhang"] = r.overhang;
  j["children_hit"] = r.children_hit;
  ordered_json checks = checks_json({
      {"no_parallel", r.no_parallel.status},
      {"common_point", r.common.status},
      {"pair_identity_i", r.pair_identities.part_i},
      {"pair_identity_ii", r.pair_identities.part_ii},
  });
  if (r.split) checks["b_bound"] = to_string(r.split->b_bound);
  if (r.principal) {
    const auto& p = *r.principal;
    checks["lattice"] = to_string(p.lattice);
    checks["first_principal"] = to_string(p.first_principal);
    checks["height_gap"] = to_string(p.height_gap);
    checks["height_gap_chain"] = to_string(p.height_gap_chain);
    checks["second_principal"] = to_string(p.second_principal);
    checks["pigeonhole"] = to_string(p.pigeonhole);
  }
  checks["a_cover"] = to_string(r.a_cover);
  checks["fl1_class"] = to_string(r.fl1_class);
  j["checks"] = std::move(checks);
  if (r.fl1_vacuous) j["fl1_vacuous"] = true;
  if (r.common.point)
    j["point"] = ordered_json{r.common.point->p.get_str(),
                              r.common.point->r.get_str(),
                              r.common.point->q.get_str()};
  return j;
}

ordered_json ancestor_l_json(const AncestorLReport& r) {
  ordered_json j;
  j["ancestor"] = r.ancestor.lineage_str();
  j["l"] = r.l;
  j["lines"] = r.coll.size();
  j["overhang"] = r.overhang;
  j["parents"] = r.parents;
  j["children_hit"] = r.children_hit;
  ordered_json checks = checks_json({
      {"no_parallel", r.no_parallel.status},
      {"common_point", r.common.status},
      {"pair_identity_i", r.pair_identities.part_i},
      {"pair_identity_ii", r.pair_identities.part_ii},
  });
  if (r.steep) {
    const auto& s = *r.steep;
    checks["coincidence_gap"] = to_string(s.coincidence_gap);
    checks["sigma_bound"] = to_string(s.sigma_bound);
    checks["slope_ratio"] = to_string(s.slope_ratio);
    checks["a_in_omega"] = to_string(s.a_in_omega);
    checks["omega_chain"] = to_string(s.omega_chain);
    checks["q_lower"] = to_string(s.q_lower);
    checks["omega_upper"] = to_string(s.omega_upper);
    checks["second_principal_steep"] = to_string(s.second_principal_steep);
  }
  checks["a_cover"] = to_string(r.a_cover);
  checks["fl2"] = to_string(r.fl2);
  j["checks"] = std::move(checks);
  if (r.fl2_vacuous) j["fl2_vacuous"] = true;
  if (r.common.point)
    j["point"] = ordered_json{r.common.point->p.get_str(),
                              r.common.point->r.get_str(),
                              r.common.point->q.get_str()};
  return j;
}

ordered_json level_diag_json(const LevelDiagnostics& d) {
  ordered_json j;
  j["level"] = d.level;
  ordered_json ks = ordered_json::array();
  for (const auto& r : d.per_segment_k) ks.push_back(segment_k_json(r));
  j["per_segment_k"] = std::move(ks);
  ordered_json ls = ordered_json::array();
  for (const auto& r : d.per_ancestor_l) ls.push_back(ancestor_l_json(r));
  j["per_ancestor_l"] = std::move(ls);
  ordered_json totals = ordered_json::array();
  for (const auto& t : d.fl1_totals) {
    ordered_json tj;
    tj["parent"] = t.parent.lineage_str();
    tj["children_hit"] = t.children_hit;
    tj["status"] = to_string(t.status);
    if (t.vacuous) tj["vacuous"] = true;
    totals.push_back(std::move(tj));
  }
  j["fl1_totals"] = std::move(totals);
  ordered_json rec;
  rec["level"] = d.recursion.level;
  rec["t_n"] = d.recursion.t_n.get_str();
  rec["t_next"] = d.recursion.t_next.get_str();
  rec["status"] = to_string(d.recursion.status);
  if (d.recursion.vacuous) rec["vacuous"] = true;
  j["recursion"] = std::move(rec);
  j["skipped_groups"] = d.skipped_groups;
  return j;
}

ordered_json summary_json(const DiagnosticsSummary& s) {
  ordered_json j;
  j["holds"] = s.holds;
  j["fails"] = s.fails;
  j["not_applicable"] = s.not_applicable;
  j["not_evaluated"] = s.not_evaluated;
  j["indeterminate"] = s.indeterminate;
  j["identities_ok"] = s.identities_ok;
  j["failures"] = s.failures;
  return j;
}

}  // namespace

DiagLevel parse_diag_level(const std::string& s) {
  if (s == "off") return DiagLevel::off;
  if (s == "summary") return DiagLevel::summary;
  if (s == "full") return DiagLevel::full;
  throw std::invalid_argument("diag level must be off, summary or full");
}

QuadraticNumber parse_theta(const std::string& spec) {
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
      if (ch == sep) {
        out.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    out.push_back(cur);
    return out;
  };
  try {
    if (spec.rfind("quad:", 0) == 0) {
      auto parts = split(spec.substr(5), ',');
      if (parts.size() != 4)
        throw std::invalid_argument("quad: needs a,b,c,d");
      QuadraticNumber x{BigInt(parts[0], 10), BigInt(parts[1], 10),
                        BigInt(parts[2], 10), BigInt(parts[3], 10)};
      if (x.is_rational())
        throw std::invalid_argument("theta must be irrational (b != 0)");
      return x;
    }
    if (spec.rfind("cf:", 0) == 0) {
      std::string body = spec.substr(3);
      std::optional<std::size_t> period = 0;  // whole list repeats
      auto tilde = body.find('~');
      if (tilde != std::string::npos) {
        period = std::stoul(body.substr(tilde + 1));
        body = body.substr(0, tilde);
      }
      std::vector<BigInt> terms;
      for (const auto& t : split(body, ',')) terms.emplace_back(t, 10);
      ContinuedFraction cf(std::move(terms), period);
      return cf.to_quadratic();
    }
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("bad theta spec: ") + e.what());
  }
  throw std::invalid_argument("theta spec must start with quad: or cf:");
}

std::string emit_intervals(const SieveState& s, const Params& p) {
  std::ostringstream out;
  out << "level,lineage,left_num,left_den,length_num,length_den\n";
  for (const auto& level : s.levels) {
    for (const Segment& seg : level) {
      Rational left = seg.left(p, s.start);
      Rational len = seg.length(p);
      out << seg.level << ',' << seg.lineage_str() << ','
          << left.get_num().get_str() << ',' << left.get_den().get_str() << ','
          << len.get_num().get_str() << ',' << len.get_den().get_str() << '\n';
    }
  }
  return out.str();
}

RunOutcome run(const RunConfig& cfg) {
  QuadraticNumber theta = parse_theta(cfg.theta);
  Rational delta = parse_rational(cfg.delta);
  Rational start = parse_rational(cfg.start);

  RunOutcome out{.params = cfg.kappa == "paper"
                     ? Params::paper(cfg.R, delta, cfg.strict)
                     : Params::empirical(cfg.R, delta,
                                         parse_rational(cfg.kappa),
                                         cfg.strict),
                 .state = {},
                 .condition0 = {},
                 .xi = std::nullopt,
                 .badness = std::nullopt,
                 .diag_summary = {},
                 .certificate = {},
                 .intervals_csv = {},
                 .exit_code = 0};
  const Params& p = out.params;
  p.validate();

  BigInt h_max = cfg.h_max ? *cfg.h_max
                           : (cfg.depth >= 1 ? pow_int(p.R, cfg.depth - 1)
                                             : BigInt(1));

  BigInt estimate = estimate_sieve_cost(p, cfg.depth);
  if (estimate > cfg.cap)
    throw feasibility_error("estimated " + estimate.get_str() +
                            " overlap tests exceed cap " + cfg.cap.get_str());

  {
    StderrTimer t("init");
    out.state = init(p, start);
  }
  std::vector<LevelDiagnostics> diags;
  ordered_json steps = ordered_json::array();
  for (unsigned long n = 1; n <= cfg.depth; ++n) {
    {
      StderrTimer t("step " + std::to_string(n));
      out.state = step(out.state, theta, p);
    }
    const LevelLedger& ledger = out.state.ledgers.back();
    CountBoundReport cb;
    {
      StderrTimer t("count bounds " + std::to_string(n));
      cb = count_bound_check(ledger, out.state, theta, p);
    }
    ordered_json sj;
    sj["step"] = n;
    sj["count"] = out.state.counts.back().get_str();
    sj["count_bounds_pass"] = cb.pass;
    if (!cb.pass) sj["count_bound_violations"] = cb.violations;
    ordered_json removals = ordered_json::array();
    for (const RemovalRecord& r : ledger.removals) {
      ordered_json rj;
      rj["parent"] = r.parent.lineage_str();
      rj["child"] = r.mu;
      rj["line"] = line_json(r.line);
      rj["k"] = r.k;
      rj["slope"] = slope_str(r.slope);
      removals.push_back(std::move(rj));
    }
    sj["removals"] = std::move(removals);
    steps.push_back(std::move(sj));
    if (cfg.diag != DiagLevel::off) {
      StderrTimer t("diagnostics " + std::to_string(n));
      diags.push_back(level_diagnostics(out.state, n, theta, p,
                                        kPigeonholeCap));
    }
  }
  out.diag_summary = summarize(diags);

  if (!out.state.survivors().empty()) {
    out.xi = extract_point(out.state, p, ChainPolicy::leftmost);
    if (cfg.depth >= 1) {
      StderrTimer t("badness minimization");
      out.badness = verify_bad(theta, out.xi->left, out.xi->right, delta,
                               h_max);
    }
  }
  {
    StderrTimer t("homogeneous check");
    out.condition0 = certify_condition0(theta, delta, kCondition0QMax);
  }

  ordered_json cert;
  cert["format"] = "badpair-certificate/1";
  {
    ordered_json cj;
    cj["theta"] = cfg.theta;
    cj["R"] = p.R.get_str();
    cj["delta"] = rat_json(p.delta);
    cj["kappa"] = rat_json(p.kappa);
    cj["kappa_mode"] = cfg.kappa == "paper" ? "paper" : "explicit";
    cj["lambda"] = rat_json(p.lambda);
    cj["depth"] = cfg.depth;
    cj["start"] = rat_json(start);
    cj["strict"] = p.strict_mode;
    cj["h_max"] = h_max.get_str();
    cj["cap"] = cfg.cap.get_str();
    cj["diag"] = diag_str(cfg.diag);
    cert["config"] = std::move(cj);
  }
  cert["theta_value"] = quad_json(theta);
  {
    const Condition0Report& c = out.condition0;
    ordered_json j;
    j["q_max"] = kCondition0QMax;
    j["q"] = c.q.get_str();
    j["value"] = quad_json(c.value);
    j["value_lo"] = rat_json(c.lo);
    j["value_hi"] = rat_json(c.hi);
    j["delta"] = rat_json(c.delta);
    j["pass"] = c.pass;
    j["max_partial_quotient"] = c.a_max.get_str();
    j["cf_floor"] = rat_json(c.cf_floor);
    j["covers_all_q"] = c.all_q;
    cert["condition0"] = std::move(j);
  }
  {
    ordered_json lv = ordered_json::array();
    for (std::size_t i = 0; i < out.state.counts.size(); ++i)
      lv.push_back(ordered_json{{"level", i + 1},
                                {"count", out.state.counts[i].get_str()}});
    cert["levels"] = std::move(lv);
  }
  cert["steps"] = std::move(steps);
  {
    ordered_json sv = ordered_json::array();
    for (const Segment& seg : out.state.survivors()) {
      Rational left = seg.left(p, start);
      Rational right = left + seg.length(p);
      sv.push_back(ordered_json{{"lineage", seg.lineage_str()},
                                {"left", rat_json(left)},
                                {"right", rat_json(right)}});
    }
    cert["survivors"] = std::move(sv);
  }
  if (out.xi) {
    cert["xi"] = ordered_json{{"lineage", out.xi->segment.lineage_str()},
                              {"left", rat_json(out.xi->left)},
                              {"right", rat_json(out.xi->right)}};
  } else {
    cert["xi"] = nullptr;
  }
  if (out.badness) {
    const BadnessReport& b = *out.badness;
    ordered_json j;
    j["h_max"] = b.h_max.get_str();
    j["delta"] = rat_json(b.delta);
    j["pair"] = ordered_json{b.A.get_str(), b.B.get_str(), b.C.get_str()};
    j["minimum"] = quad_json(b.minimum);
    j["minimum_lo"] = rat_json(b.lo);
    j["minimum_hi"] = rat_json(b.hi);
    j["witness_xi"] = quad_json(b.witness_xi);
    j["pass"] = b.pass;
    cert["badness"] = std::move(j);
  } else {
    cert["badness"] = nullptr;
  }
  if (cfg.diag == DiagLevel::off) {
    cert["diagnostics"] = nullptr;
  } else {
    ordered_json j;
    j["summary"] = summary_json(out.diag_summary);
    if (cfg.diag == DiagLevel::full) {
      ordered_json lv = ordered_json::array();
      for (const auto& d : diags) lv.push_back(level_diag_json(d));
      j["levels"] = std::move(lv);
    }
    cert["diagnostics"] = std::move(j);
  }
  out.certificate = std::move(cert);
  out.intervals_csv = emit_intervals(out.state, p);

  bool complete_pass =
      cfg.depth == 0
          ? !out.state.survivors().empty()
          : (out.badness.has_value() && out.badness->pass);
  out.exit_code = complete_pass ? 0 : 2;

  if (!cfg.out_cert.empty()) {
    std::ofstream f(cfg.out_cert, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + cfg.out_cert);
    f << out.certificate.dump(2) << '\n';
  }
  if (!cfg.out_intervals.empty()) {
    std::ofstream f(cfg.out_intervals, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + cfg.out_intervals);
    f << out.intervals_csv;
  }
  return out;
}

RecheckReport recheck(const ordered_json& cert) {
  RecheckReport rep;
  try {
    if (cert.at("format") != "badpair-certificate/1") {
      rep.detail = "unrecognized format";
      return rep;
    }
    if (cert.at("badness").is_null() || cert.at("xi").is_null()) {
      rep.detail = "certificate has no badness report to re-check";
      return rep;
    }
    QuadraticNumber theta =
        parse_theta(cert.at("config").at("theta").get<std::string>());
    if (!(quad_json(theta) == cert.at("theta_value"))) {
      rep.detail = "theta_value does not match the theta spec";
      return rep;
    }
    const auto& bj = cert.at("badness");
    Rational xi_lo = rat_from_json(cert.at("xi").at("left"));
    Rational xi_hi = rat_from_json(cert.at("xi").at("right"));
    Rational delta = rat_from_json(bj.at("delta"));
    BigInt h_max(bj.at("h_max").get<std::string>(), 10);
    BadnessReport fresh = verify_bad(theta, xi_lo, xi_hi, delta, h_max);
    QuadraticNumber stated = quad_from_json(bj.at("minimum"));
    if (!(fresh.minimum == stated)) {
      rep.detail = "minimum mismatch: recomputed " + fresh.minimum.str() +
                   ", certificate " + stated.str();
      return rep;
    }
    ordered_json pair{fresh.A.get_str(), fresh.B.get_str(),
                      fresh.C.get_str()};
    if (pair != bj.at("pair")) {
      rep.detail = "minimizing pair mismatch";
      return rep;
    }
    if (fresh.pass != bj.at("pass").get<bool>()) {
      rep.detail = "pass verdict mismatch";
      return rep;
    }
    rep.pass = true;
    rep.detail = "badness report reproduced: minimum " +
                 decimal_lower(fresh.lo, 12) + "..., pass " +
                 (fresh.pass ? std::string("true") : std::string("false"));
  } catch (const std::exception& e) {
    rep.detail = std::string("re-check error: ") + e.what();
  }
  return rep;
}

}  // namespace badpair
