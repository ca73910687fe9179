#include "fockwc/classifier.hpp"

#include <cmath>

namespace fockwc {

namespace {

bool complex_matches(Complex x, Complex y, const ClassifyOptions& opts) {
  if (opts.exact_match) return x == y;
  return std::abs(x - y) <= opts.match_tol;
}

// exp(Re(w)) with overflow guard.
double abs_exp(Complex w) {
  if (w.real() > kMaxExpArg) {
    throw OverflowError("norm overflow: exponent " + std::to_string(w.real()));
  }
  return std::exp(w.real());
}

void range_warnings(Complex gamma, Complex c, Complex a, Complex b,
                    std::vector<std::string>& warnings) {
  (void)gamma;
  if (std::abs(b) > 2.0) {
    warnings.push_back("|b| > 2: outside the default working range, "
                       "truncation accuracy may degrade");
  }
  if (std::abs(c) > 2.0) {
    warnings.push_back("|c| > 2: outside the default working range, "
                       "truncation accuracy may degrade");
  }
  const double abs_a = std::abs(a);
  if (abs_a < 1.0 - kUnitCircleEps && abs_a > 0.999) {
    warnings.push_back("|a| close to 1: norm factors like "
                       "exp(|b|^2/(1-|a|^2)) blow up near the unit circle");
  }
}

}  // namespace

Complex critical_c(Complex a, Complex b) {
  if (a == Complex(1.0)) return -b;
  return b * (std::conj(a) - Complex(1.0)) / (a - Complex(1.0));
}

double exact_norm(Complex gamma, Complex c, Complex a, Complex b,
                  const ClassifyOptions& opts) {
  if (gamma == Complex(0.0)) return 0.0;
  const double abs_a = std::abs(a);
  if (std::abs(abs_a - 1.0) <= opts.unit_circle_eps) {
    // bounded on the circle only for c = -conj(a)·b
    if (!complex_matches(c, -std::conj(a) * b, opts)) {
      throw UnboundedOperatorError(
          "exact_norm: |a| = 1 requires c = -conj(a)*b");
    }
    if (std::abs(a - Complex(1.0)) <= opts.unit_circle_eps) {
      return std::abs(gamma) * abs_exp(Complex(0.5 * std::norm(b)));
    }
    return std::abs(gamma) *
           abs_exp(std::norm(b) / (Complex(1.0) - std::conj(a)));
  }
  if (abs_a > 1.0) {
    throw UnboundedOperatorError("exact_norm: |a| > 1 is unbounded");
  }
  // |a| < 1: |psi(p)| times the norm of the shifted composition operator
  const Complex p = b / (Complex(1.0) - a);
  const Complex s =
      c * (Complex(1.0) - a) / (std::conj(a) - Complex(1.0)) + b;
  const double exponent =
      0.5 * std::norm(s) / (1.0 - abs_a * abs_a);
  return std::abs(gamma) * abs_exp(std::conj(c) * p + exponent);
}

double eigenvalue_bound(Complex gamma, Complex c, Complex a, Complex b) {
  if (std::abs(a) >= 1.0 - kUnitCircleEps) {
    throw Error("eigenvalue_bound: defined only for |a| < 1");
  }
  if (gamma == Complex(0.0)) return 0.0;
  const Complex p = b / (Complex(1.0) - a);
  return std::abs(gamma) * abs_exp(std::conj(c) * p);
}

ClassificationReport classify(Complex gamma, Complex c, Complex a, Complex b,
                              const ClassifyOptions& opts) {
  ClassificationReport report;
  const double abs_a = std::abs(a);
  const bool circle = std::abs(abs_a - 1.0) <= opts.unit_circle_eps;
  const bool a_is_one = std::abs(a - Complex(1.0)) <= opts.unit_circle_eps;

  const Complex crit = a_is_one ? -b : critical_c(a, b);
  report.critical_c = crit;

  if (a_is_one) {
    if (std::abs(b) <= opts.match_tol) report.fixed_point = Complex(0.0);
    // translation: no finite fixed point, leave absent
  } else {
    report.fixed_point = b / (Complex(1.0) - a);
  }

  range_warnings(gamma, c, a, b, report.warnings);

  if (gamma == Complex(0.0)) {
    // zero operator: every lattice predicate is trivially true except the
    // range ones; reported as a degenerate verdict, not an error
    report.zero_operator = true;
    report.bounded = true;
    report.compact = true;
    report.normal = report.hyponormal = report.cohyponormal =
        report.normaloid = true;
    report.unitary_multiple = false;
    report.closed_range = false;
    report.exact_norm = 0.0;
    if (!circle && abs_a < 1.0) report.eigenvalue_bound = 0.0;
    report.warnings.push_back("gamma = 0: zero operator, degenerate verdict");
    return report;
  }

  if (circle) {
    const bool kernel_matches = complex_matches(c, -std::conj(a) * b, opts);
    report.bounded = kernel_matches;
    report.compact = false;
    report.unitary_multiple = kernel_matches;
    report.closed_range = kernel_matches;
    // constant multiples of unitaries are normal, hence all four predicates
    report.normal = report.hyponormal = report.cohyponormal =
        report.normaloid = kernel_matches;
    if (report.bounded) {
      report.exact_norm = exact_norm(gamma, c, a, b, opts);
    }
    return report;
  }

  if (abs_a > 1.0) {
    // nothing is bounded beyond the closed unit disk
    return report;
  }

  // |a| < 1
  report.bounded = true;
  report.compact = true;
  report.unitary_multiple = false;
  report.closed_range = false;
  const bool critical = complex_matches(c, crit, opts);
  report.normal = report.hyponormal = report.cohyponormal = report.normaloid =
      critical;
  try {
    report.exact_norm = exact_norm(gamma, c, a, b, opts);
  } catch (const OverflowError& e) {
    report.warnings.push_back(std::string("exact norm overflow: ") + e.what());
  }
  try {
    report.eigenvalue_bound = eigenvalue_bound(gamma, c, a, b);
  } catch (const OverflowError& e) {
    report.warnings.push_back(std::string("eigenvalue bound overflow: ") +
                              e.what());
  }
  return report;
}

ClassificationReport classify(const OperatorSpec& spec,
                              const ClassifyOptions& opts) {
  if (!spec.weight.is_scaled_kernel()) {
    throw UnsupportedWeightError(
        "classify: weight must be a scaled kernel gamma*K_c");
  }
  return classify(spec.weight.scalar(), spec.weight.kernel_param(),
                  spec.symbol.a(), spec.symbol.b(), opts);
}

}  // namespace fockwc
