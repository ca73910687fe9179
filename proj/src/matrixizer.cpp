#include "fockwc/matrixizer.hpp"

#include "fockwc/text_format.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace fockwc {

OperatorSpec composition_spec(const AffineSymbol& phi) {
  return OperatorSpec{EntireWeight(), phi};
}

TruncatedOperator build_matrix(const OperatorSpec& spec, int outer,
                               int inner) {
  if (inner < 1 || outer < inner) {
    throw DimensionError("build_matrix: need outer >= inner >= 1, got outer=" +
                         std::to_string(outer) +
                         " inner=" + std::to_string(inner));
  }
  const Complex a = spec.symbol.a();
  const Complex b = spec.symbol.b();

  Eigen::MatrixXcd entries(outer, inner);
  Eigen::VectorXcd col = weight_taylor(spec.weight, outer).coeffs();
  entries.col(0) = col;
  Eigen::VectorXcd next(outer);
  for (int n = 1; n < inner; ++n) {
    // psi·phi^n/sqrt(n!) = (az+b) · [psi·phi^{n-1}/sqrt((n-1)!)] / sqrt(n);
    // multiplication by z in the e basis only moves mass upward, so the
    // first `outer` entries are exact.  sqrt(m)/sqrt(n) is 1 exactly at
    // m = n, which keeps diagonal and unitary cases free of rounding noise.
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    next(0) = b * col(0) / sqrt_n;
    for (int m = 1; m < outer; ++m) {
      next(m) = a * col(m - 1) * (std::sqrt(static_cast<double>(m)) / sqrt_n) +
                b * col(m) / sqrt_n;
    }
    entries.col(n) = next;
    col.swap(next);
  }
  return TruncatedOperator{std::move(entries), outer, inner, spec};
}

TruncatedOperator build_resolved(const OperatorSpec& spec, int inner,
                                 const PaddingOptions& opts,
                                 PaddingReport* report) {
  int outer = opts.initial_outer > 0 ? std::max(opts.initial_outer, inner)
                                     : inner + std::max(32, inner / 2);
  outer = std::min(outer, opts.max_outer);

  TruncatedOperator op = build_matrix(spec, outer, inner);
  Eigen::MatrixXcd gram = op.entries.adjoint() * op.entries;
  if (report) {
    *report = PaddingReport{};
    report->outer_dims.push_back(outer);
  }

  bool converged = false;
  while (outer < opts.max_outer) {
    outer = std::min(2 * outer, opts.max_outer);
    TruncatedOperator grown = build_matrix(spec, outer, inner);
    Eigen::MatrixXcd gram2 = grown.entries.adjoint() * grown.entries;
    const double delta = (gram2 - gram).norm();
    op = std::move(grown);
    gram = std::move(gram2);
    if (report) {
      report->outer_dims.push_back(outer);
      report->deltas.push_back(delta);
    }
    if (delta < opts.tol) {
      converged = true;
      break;
    }
  }
  if (report) report->converged = converged;
  return op;
}

TruncatedOperator weyl_matrix(Complex u, int dim) {
  const OperatorSpec spec{normalized_kernel_weight(u),
                          AffineSymbol(Complex(1.0), -u)};
  return build_matrix(spec, dim, dim);
}

OperatorSpec adjoint_spec(const AffineSymbol& phi) {
  if (std::abs(phi.a()) > 1.0 + kUnitCircleEps) {
    throw UnboundedOperatorError(
        "adjoint_spec: |a| > 1 gives an unbounded operator");
  }
  return OperatorSpec{EntireWeight::scaled_kernel(Complex(1.0), phi.b()),
                      AffineSymbol(std::conj(phi.a()), Complex(0.0))};
}

OperatorSpec compose_specs(const OperatorSpec& first,
                           const OperatorSpec& second) {
  EntireWeight weight =
      first.weight.times(second.weight.composed_with(first.symbol));
  AffineSymbol symbol = compose(second.symbol, first.symbol);
  return OperatorSpec{std::move(weight), symbol};
}

OperatorSpec weyl_conjugate(const OperatorSpec& spec, Complex u) {
  const Complex a = spec.symbol.a();
  const Complex b = spec.symbol.b();
  const AffineSymbol conjugated_symbol(a, u * (Complex(1.0) - a) + b);
  const Complex const_exponent =
      std::norm(u) * (a - Complex(1.0)) - std::conj(u) * b;
  EntireWeight weight = spec.weight.shifted(u)
                            .times_exp(std::conj(u) * (Complex(1.0) - a))
                            .scaled(checked_exp(const_exponent));
  return OperatorSpec{std::move(weight), conjugated_symbol};
}

// ---------------------------------------------------------------------------
// Export formats
// ---------------------------------------------------------------------------

void write_fockmat(std::ostream& os, const Eigen::MatrixXcd& entries) {
  const auto rows = entries.rows();
  const auto cols = entries.cols();
  os << "fockmat " << rows << ' ' << cols << '\n';
  for (Eigen::Index m = 0; m < rows; ++m) {
    for (Eigen::Index n = 0; n < cols; ++n) {
      const Complex v = entries(m, n);
      os << m << ' ' << n << ' ' << g17(v.real()) << ' ' << g17(v.imag())
         << '\n';
    }
  }
}

Eigen::MatrixXcd read_fockmat(std::istream& is) {
  std::string magic;
  long rows = 0;
  long cols = 0;
  if (!(is >> magic >> rows >> cols) || magic != "fockmat" || rows < 1 ||
      cols < 1 || rows < cols) {
    throw Error("read_fockmat: malformed header");
  }
  Eigen::MatrixXcd entries(rows, cols);
  for (long k = 0; k < rows * cols; ++k) {
    long m = 0;
    long n = 0;
    double re = 0.0;
    double im = 0.0;
    if (!(is >> m >> n >> re >> im)) {
      throw Error("read_fockmat: truncated entry list at record " +
                  std::to_string(k));
    }
    if (m < 0 || m >= rows || n < 0 || n >= cols) {
      throw Error("read_fockmat: entry index out of range");
    }
    entries(m, n) = Complex(re, im);
  }
  return entries;
}

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXcd& entries) {
  os << "row,col,re,im\n";
  for (Eigen::Index m = 0; m < entries.rows(); ++m) {
    for (Eigen::Index n = 0; n < entries.cols(); ++n) {
      const Complex v = entries(m, n);
      os << m << ',' << n << ',' << g17(v.real()) << ',' << g17(v.imag())
         << '\n';
    }
  }
}

}  // namespace fockwc
