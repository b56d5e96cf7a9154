// Command-line driver.  `run` executes the sieve pipeline and emits the
// certificate and survivor-interval CSV; `check` re-verifies the badness
// minimization stated in an existing certificate.
//
// Exit codes: 0 success/pass, 2 complete but failed (badness fail, empty
// survivors, or re-check mismatch), 3 configuration or feasibility rejection.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "badpair/certificate.hpp"

namespace {

using namespace badpair;

int do_run(const RunConfig& cfg) {
  RunOutcome out = run(cfg);
  std::cout << "survivors:";
  for (const BigInt& t : out.state.counts) std::cout << ' ' << t.get_str();
  std::cout << '\n';
  const auto& c0 = out.condition0;
  std::cout << "condition0: " << (c0.pass ? "pass" : "FAIL") << " at q="
            << c0.q.get_str() << ", q^2||q theta|| in ["
            << decimal_lower(c0.lo, 9) << ", " << decimal_upper(c0.hi, 9)
            << "], covers_all_q=" << (c0.all_q ? "yes" : "no") << '\n';
  if (out.xi) {
    std::cout << "xi: cell " << out.xi->segment.lineage_str() << " = ["
              << out.xi->left.get_str() << ", " << out.xi->right.get_str()
              << "]\n";
  } else {
    std::cout << "xi: none (no survivors)\n";
  }
  if (out.badness) {
    const auto& b = *out.badness;
    std::cout << "badness: " << (b.pass ? "pass" : "FAIL") << " at h_max="
              << b.h_max.get_str() << ", min in [" << decimal_lower(b.lo, 12)
              << ", " << decimal_upper(b.hi, 12) << "] from (A,B,C)=("
              << b.A.get_str() << "," << b.B.get_str() << "," << b.C.get_str()
              << ")\n";
  }
  if (cfg.diag != DiagLevel::off) {
    const auto& d = out.diag_summary;
    std::cout << "diagnostics: holds=" << d.holds << " fails=" << d.fails
              << " n/a=" << d.not_applicable << " n/e=" << d.not_evaluated
              << " indet=" << d.indeterminate
              << " identities_ok=" << (d.identities_ok ? "yes" : "NO")
              << '\n';
    for (const std::string& f : d.failures)
      std::cout << "  check failed: " << f << '\n';
  }
  return out.exit_code;
}

int do_check(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "cannot read " << path << '\n';
    return 3;
  }
  nlohmann::ordered_json cert;
  try {
    f >> cert;
  } catch (const std::exception& e) {
    std::cerr << "bad certificate: " << e.what() << '\n';
    return 3;
  }
  RecheckReport rep = recheck(cert);
  std::cout << (rep.pass ? "pass" : "FAIL") << ": " << rep.detail << '\n';
  return rep.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interval sieve for badly approximable pairs"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string r_str = "16", hmax_str, cap_str = "100000000", diag = "summary";
  CLI::App* runc = app.add_subcommand("run", "execute a sieve run");
  runc->add_option("--theta", cfg.theta,
                   "quad:a,b,c,d or cf:a0,a1,...~period-start");
  runc->add_option("--R", r_str, "subdivision factor, >= 2");
  runc->add_option("--delta", cfg.delta, "badness margin, rational");
  runc->add_option("--kappa", cfg.kappa,
                   "J1 scale, rational or 'paper' for delta*floor(R^(6/5))");
  runc->add_option("--depth", cfg.depth, "number of sieve steps");
  runc->add_option("--start", cfg.start, "left end of J1, rational in [0,1)");
  runc->add_flag("--strict", cfg.strict,
                 "enforce the full-strength parameter regime");
  runc->add_option("--hmax", hmax_str,
                   "height bound for verification (default R^(depth-1))");
  runc->add_option("--cap", cap_str, "feasibility cap in overlap tests");
  runc->add_option("--out-cert", cfg.out_cert, "certificate JSON path");
  runc->add_option("--out-intervals", cfg.out_intervals,
                   "survivor-interval CSV path");
  runc->add_option("--diag", diag, "diagnostics detail")
      ->check(CLI::IsMember({"off", "summary", "full"}));

  std::string cert_path;
  CLI::App* checkc =
      app.add_subcommand("check", "re-verify a certificate's badness report");
  checkc->add_option("certificate", cert_path, "certificate JSON path")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (runc->parsed()) {
      cfg.R = BigInt(r_str, 10);
      cfg.cap = BigInt(cap_str, 10);
      if (!hmax_str.empty()) cfg.h_max = BigInt(hmax_str, 10);
      cfg.diag = parse_diag_level(diag);
      return do_run(cfg);
    }
    return do_check(cert_path);
  } catch (const std::exception& e) {
    std::cerr << "rejected: " << e.what() << '\n';
    return 3;
  }
}
