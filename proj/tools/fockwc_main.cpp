// fockwc — classify weighted composition operators on the Fock space,
// cross-check closed-form norms against dense matrix oracles, emit witness
// tables and truncated matrices.
//
// Exit codes: 0 verdict success, 1 verification failure, 2 usage/parse
// error, 3 unsupported input.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fockwc/matrixizer.hpp"
#include "fockwc/numerics.hpp"
#include "fockwc/report.hpp"
#include "fockwc/text_format.hpp"
#include "fockwc/verification.hpp"

namespace {

using namespace fockwc;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnsupported = 3;

// usage-level error (exit 2), distinct from domain errors (exit 3)
struct UsageError {
  std::string message;
};

struct DomainRejection {
  std::string message;
};

Complex parse_complex_arg(const std::string& text, const char* flag) {
  const auto parsed = parse_complex(text);
  if (!parsed) {
    throw UsageError{std::string("invalid complex literal '") + text +
                     "' for " + flag +
                     " (expected forms: 1.5, -2e-3, 0.5i, 1+2i)"};
  }
  return *parsed;
}

void write_payload(const RunConfig& cfg, const std::string& payload) {
  if (cfg.out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) throw UsageError{"cannot open output file: " + cfg.out_path};
  out << payload;
}

OutputFormat resolve_format(const std::string& requested,
                            OutputFormat fallback) {
  if (requested.empty()) return fallback;
  if (requested == "json") return OutputFormat::Json;
  if (requested == "text") return OutputFormat::Text;
  if (requested == "csv") return OutputFormat::Csv;
  throw UsageError{"unknown format: " + requested};
}

struct ComplexArgs {
  std::string gamma{"1"};
  std::string c{"0"};
  std::string a;
  std::string b;
};

void add_operator_options(CLI::App* sub, ComplexArgs& args) {
  sub->add_option("--gamma", args.gamma, "weight scale gamma (complex)")
      ->capture_default_str();
  sub->add_option("--c", args.c, "kernel parameter c in psi = gamma*K_c")
      ->capture_default_str();
  sub->add_option("--a", args.a, "dilation coefficient of phi(z) = az+b")
      ->required();
  sub->add_option("--b", args.b, "translation coefficient of phi(z) = az+b")
      ->required();
}

int run_classify(const ComplexArgs& args, const RunConfig& cfg) {
  const Complex gamma = parse_complex_arg(args.gamma, "--gamma");
  const Complex c = parse_complex_arg(args.c, "--c");
  const Complex a = parse_complex_arg(args.a, "--a");
  const Complex b = parse_complex_arg(args.b, "--b");
  const ClassifyDocument doc = build_classify_document(gamma, c, a, b, cfg);
  switch (cfg.output_format) {
    case OutputFormat::Json: write_payload(cfg, classify_report_json(doc)); break;
    case OutputFormat::Text: write_payload(cfg, classify_report_text(doc)); break;
    case OutputFormat::Csv: write_payload(cfg, classify_report_csv(doc)); break;
  }
  return kExitOk;
}

int run_verify(const std::string& suite, const RunConfig& cfg,
               bool tol_explicit) {
  VerifyOptions opts;
  opts.inner_dim = cfg.inner_dim;
  opts.outer_pad = cfg.outer_pad;
  if (tol_explicit) opts.tol_floor = cfg.tol;

  std::vector<CheckResult> checks;
  try {
    checks = run_verify_suite(suite, opts);
  } catch (const NonConvergenceError& e) {
    std::cerr << "non-convergence: " << e.what() << '\n';
    return kExitVerifyFail;
  }

  int passed = 0;
  for (const CheckResult& c : checks) {
    if (c.pass) ++passed;
  }
  const int total = static_cast<int>(checks.size());
  const bool ok = passed == total;

  switch (cfg.output_format) {
    case OutputFormat::Text: {
      std::ostringstream os;
      os << render_checks_text(checks);
      os << "verify " << suite << ": " << (ok ? "PASS" : "FAIL") << " ("
         << passed << '/' << total << " checks)\n";
      write_payload(cfg, os.str());
      break;
    }
    case OutputFormat::Json:
      write_payload(cfg, render_checks_json(checks));
      break;
    case OutputFormat::Csv:
      write_payload(cfg, render_checks_csv(checks));
      break;
  }
  return ok ? kExitOk : kExitVerifyFail;
}

int run_witness(const ComplexArgs& args, double r_max, int steps,
                const RunConfig& cfg) {
  const Complex gamma = parse_complex_arg(args.gamma, "--gamma");
  const Complex c = parse_complex_arg(args.c, "--c");
  const Complex a = parse_complex_arg(args.a, "--a");
  const Complex b = parse_complex_arg(args.b, "--b");
  if (gamma == Complex(0.0)) {
    throw DomainRejection{"witness requires a nonzero weight (gamma != 0)"};
  }
  if (on_unit_circle(a, cfg.unit_circle_eps)) {
    throw DomainRejection{
        "witness is defined only for |a| < 1; on the unit circle the "
        "operator has closed range exactly when c = -conj(a)*b (run "
        "`classify` for the verdict)"};
  }
  if (std::abs(a) > 1.0) {
    throw DomainRejection{"|a| > 1: the operator is unbounded"};
  }

  std::vector<double> grid;
  grid.reserve(steps);
  for (int j = 0; j < steps; ++j) {
    grid.push_back(r_max * static_cast<double>(j) /
                   static_cast<double>(steps - 1));
  }
  const auto table = closed_range_witness(gamma, c, a, b, grid);

  std::ostringstream os;
  write_witness_csv(os, table);
  write_payload(cfg, os.str());

  std::string marker = "no r in grid with g <= 1e-12";
  for (const WitnessPoint& p : table) {
    if (p.g <= 1e-12) {
      marker = "first r with g <= 1e-12: " + g17(p.r);
      break;
    }
  }
  // keep the CSV stream clean: the marker goes to stderr when the table is
  // written to stdout
  if (cfg.out_path.empty()) {
    std::cerr << marker << '\n';
  } else {
    std::cout << marker << '\n';
  }
  return kExitOk;
}

int run_matrix(const ComplexArgs& args, int inner, int outer,
               const std::string& format, const RunConfig& cfg) {
  const Complex gamma = parse_complex_arg(args.gamma, "--gamma");
  const Complex c = parse_complex_arg(args.c, "--c");
  const Complex a = parse_complex_arg(args.a, "--a");
  const Complex b = parse_complex_arg(args.b, "--b");
  const OperatorSpec spec{EntireWeight::scaled_kernel(gamma, c),
                          AffineSymbol(a, b)};
  const int n = inner > 0 ? inner : cfg.inner_dim;

  TruncatedOperator op;
  if (outer > 0) {
    op = build_matrix(spec, outer, n);  // DimensionError when outer < n
  } else {
    PaddingOptions popts;
    popts.initial_outer = cfg.outer_pad;
    op = build_resolved(spec, n, popts);
  }

  std::ostringstream os;
  if (format == "csv") {
    write_matrix_csv(os, op.entries);
  } else if (format.empty() || format == "text") {
    write_fockmat(os, op.entries);
  } else {
    throw UsageError{"matrix supports the fockmat text format or csv, not " +
                     format};
  }
  write_payload(cfg, os.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted composition operators C_{psi,phi} on the Fock "
               "space: classification, norms, verification suites, witness "
               "tables, truncated matrices"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format;
  CLI::Option* tol_opt = nullptr;
  app.add_option("--inner-dim", cfg.inner_dim,
                 "inner truncation dimension (domain)")
      ->check(CLI::Range(4, 256))
      ->capture_default_str();
  app.add_option("--outer-pad", cfg.outer_pad,
                 "initial outer dimension (0: automatic)")
      ->check(CLI::Range(0, 4096))
      ->capture_default_str();
  tol_opt = app.add_option("--tol", cfg.tol,
                           "convergence tolerance; for `verify`, an explicit "
                           "value also relaxes residual checks")
                ->check(CLI::PositiveNumber)
                ->capture_default_str();
  app.add_option("--unit-circle-eps", cfg.unit_circle_eps,
                 "tolerance for treating |a| as exactly 1")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--format", format, "output format: json, text or csv");
  app.add_option("--out", cfg.out_path, "write output to a file");

  ComplexArgs classify_args;
  auto* classify_cmd =
      app.add_subcommand("classify", "closed-form classification report");
  classify_cmd->fallthrough();
  add_operator_options(classify_cmd, classify_args);

  std::string suite;
  auto* verify_cmd = app.add_subcommand(
      "verify", "run a verification suite against the built-in grid");
  verify_cmd->fallthrough();
  verify_cmd
      ->add_option("suite", suite,
                   "norms | commutator | conjugation | adjoint | spectrum | "
                   "witness | all")
      ->required()
      ->check(CLI::IsMember(verify_suite_names()));

  ComplexArgs witness_args;
  double r_max = 8.0;
  int steps = 101;
  auto* witness_cmd = app.add_subcommand(
      "witness", "closed-range witness decay table g(r) as CSV");
  witness_cmd->fallthrough();
  add_operator_options(witness_cmd, witness_args);
  witness_cmd->add_option("--r-max", r_max, "largest radius in the grid")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  witness_cmd->add_option("--steps", steps, "number of grid points")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();

  ComplexArgs matrix_args;
  int matrix_inner = 0;
  int matrix_outer = 0;
  auto* matrix_cmd = app.add_subcommand(
      "matrix", "export the truncated operator matrix (fockmat or csv)");
  matrix_cmd->fallthrough();
  add_operator_options(matrix_cmd, matrix_args);
  matrix_cmd->add_option("--n", matrix_inner,
                         "inner dimension (default: --inner-dim)")
      ->check(CLI::Range(1, 4096));
  matrix_cmd->add_option("--m", matrix_outer,
                         "outer dimension (default: automatic growth)")
      ->check(CLI::Range(1, 8192));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*classify_cmd) {
      cfg.output_format = resolve_format(format, OutputFormat::Json);
      return run_classify(classify_args, cfg);
    }
    if (*verify_cmd) {
      cfg.output_format = resolve_format(format, OutputFormat::Text);
      return run_verify(suite, cfg, tol_opt->count() > 0);
    }
    if (*witness_cmd) {
      cfg.output_format = resolve_format(format, OutputFormat::Csv);
      return run_witness(witness_args, r_max, steps, cfg);
    }
    if (*matrix_cmd) {
      return run_matrix(matrix_args, matrix_inner, matrix_outer, format, cfg);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << '\n';
    return kExitUsage;
  } catch (const DomainRejection& e) {
    std::cerr << "unsupported: " << e.message << '\n';
    return kExitUnsupported;
  } catch (const UnsupportedWeightError& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerifyFail;
  }
  return kExitUsage;
}
