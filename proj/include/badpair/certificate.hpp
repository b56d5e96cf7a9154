#pragma once

// Run orchestration and the machine-readable certificate.  A certificate
// records the configuration, the homogeneous check on theta, per-level
// survivor counts and removal ledgers, the final survivors, the extracted xi
// interval, the badness minimization, and a diagnostics section.  All exact
// numbers are serialized as decimal-integer strings (numerator/denominator
// pairs); identical configurations yield byte-identical output.  Wall-clock
// timings go to stderr only, never into the certificate.

#include <optional>
#include <string>

#include "badpair/diagnostics.hpp"
#include "badpair/verify.hpp"
#include "json.hpp"

namespace badpair {

enum class DiagLevel { off, summary, full };
DiagLevel parse_diag_level(const std::string& s);  // "off"|"summary"|"full"

struct RunConfig {
  std::string theta = "cf:0,1~1";  // golden-type default
  BigInt R = 16;
  std::string delta = "1/10000";
  std::string kappa = "paper";     // or an explicit rational
  unsigned long depth = 3;         // sieve steps; levels 1 .. depth+1
  std::string start = "0";         // left end of J1
  bool strict = false;
  std::optional<BigInt> h_max;     // default R^(depth-1)
  BigInt cap = 100000000;          // feasibility gate, in overlap tests
  std::string out_cert;            // empty = don't write
  std::string out_intervals;       // empty = don't write
  DiagLevel diag = DiagLevel::summary;
};

// `quad:a,b,c,d` -> (a + b sqrt(d)) / c, b != 0;
// `cf:a0,a1,...~p` -> periodic continued fraction, period from index p
// (whole list repeats when `~p` is omitted).  Throws std::invalid_argument.
QuadraticNumber parse_theta(const std::string& spec);

struct RunOutcome {
  Params params;
  SieveState state;
  Condition0Report condition0;
  std::optional<PointInterval> xi;        // absent when survivors are empty
  std::optional<BadnessReport> badness;   // absent at depth 0 or no xi
  DiagnosticsSummary diag_summary;        // zeroes when diag == off
  nlohmann::ordered_json certificate;
  std::string intervals_csv;
  int exit_code = 0;  // 0 pass; 2 complete but failed badness or no survivors
};

// Full pipeline: parse config -> feasibility gate -> init -> depth steps
// (ledger consistency + diagnostics per step) -> extract xi -> badness
// minimization -> homogeneous check -> certificate assembly.  Writes the
// output files when paths are set.  Throws std::invalid_argument on an
// unparseable config, std::domain_error on parameter-invariant violations,
// and feasibility_error when the estimate exceeds the cap; all map to
// process exit 3 in the CLI.
RunOutcome run(const RunConfig& cfg);

// CSV of survivor intervals, one row per survivor at every level:
// level,lineage,left_num,left_den,length_num,length_den.  LF line endings.
std::string emit_intervals(const SieveState& s, const Params& p);

struct RecheckReport {
  bool pass = false;
  std::string detail;
};

// Independent validation pass: re-runs the badness minimization for the
// certificate's stated xi interval, H_max and delta, and compares pair,
// minimum and verdict field by field.
RecheckReport recheck(const nlohmann::ordered_json& certificate);

}  // namespace badpair
