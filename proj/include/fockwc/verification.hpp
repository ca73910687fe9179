// verification.hpp — the built-in verification grid.
//
// Each check cross-validates one closed-form statement about C_{psi,phi}
// against an independent matrix-level oracle (SVD, dense eigensolve,
// self-commutator spectrum, residual norms, witness decay).  Checks carry a
// criterion id so the acceptance suite can aggregate them; the CLI groups
// them by suite instead.

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fockwc {

struct VerifyOptions {
  int inner_dim = 64;
  int outer_pad = 0;      // 0: automatic outer growth
  double pad_tol = 1e-10;
  // Set when the user relaxes tolerances explicitly (--tol); residual-type
  // checks then use max(default, floor).  Margin-type thresholds are never
  // relaxed.
  std::optional<double> tol_floor;
};

struct CheckResult {
  int criterion = 0;  // 1..10
  std::string suite;
  std::string name;
  std::string params;
  bool pass = false;
  std::string metric_name;
  double metric = 0.0;
  std::string note;
};

const std::vector<std::string>& verify_suite_names();  // includes "all"

// Runs one named suite (or "all"); throws Error for unknown names.
std::vector<CheckResult> run_verify_suite(const std::string& suite,
                                          const VerifyOptions& opts = {});

// One line per check plus per-suite summaries; deterministic bytes.
std::string render_checks_text(const std::vector<CheckResult>& checks);
std::string render_checks_json(const std::vector<CheckResult>& checks);
std::string render_checks_csv(const std::vector<CheckResult>& checks);

}  // namespace fockwc
