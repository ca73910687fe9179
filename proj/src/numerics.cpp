#include "fockwc/numerics.hpp"

#include "fockwc/text_format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace fockwc {

namespace {

int default_square(int inner) { return inner + std::max(32, inner / 2); }

// Boundedness gate for norm estimation: scaled kernels go through the
// classifier; polynomial weights are accepted only strictly inside the disk.
void require_bounded(const OperatorSpec& spec) {
  if (spec.weight.is_scaled_kernel()) {
    if (!classify(spec).bounded) {
      throw UnboundedOperatorError(
          "op_norm_estimate: spec classifies as unbounded (use force to "
          "override)");
    }
    return;
  }
  if (std::abs(spec.symbol.a()) >= 1.0 - kUnitCircleEps) {
    throw UnboundedOperatorError(
        "op_norm_estimate: polynomial weight requires |a| < 1");
  }
}

}  // namespace

void write_convergence_csv(std::ostream& os, const ConvergenceRecord& record) {
  os << "N,M,value\n";
  for (std::size_t i = 0; i < record.values.size(); ++i) {
    os << record.dims[i].first << ',' << record.dims[i].second << ','
       << g17(record.values[i]) << '\n';
  }
}

double sigma_max(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

double singular_norm_at(const OperatorSpec& spec, int inner,
                        const PaddingOptions& padding, int* outer_used) {
  const TruncatedOperator op = build_resolved(spec, inner, padding);
  if (outer_used) *outer_used = op.outer_dim;
  return sigma_max(op.entries);
}

NormEstimate op_norm_estimate(const OperatorSpec& spec, double tol,
                              const NormEstimateOptions& opts) {
  if (!opts.force) require_bounded(spec);

  NormEstimate est;
  est.record.final_delta = 0.0;  // meaningful once two dims were sampled
  int inner = std::min(opts.min_inner, opts.max_inner);
  double prev = 0.0;
  bool have_prev = false;
  while (true) {
    int outer = 0;
    const double sigma = singular_norm_at(spec, inner, opts.padding, &outer);
    est.record.dims.emplace_back(inner, outer);
    est.record.values.push_back(sigma);
    est.value = sigma;
    if (have_prev) {
      est.record.final_delta = std::abs(sigma - prev);
      if (est.record.final_delta <= tol) {
        est.record.converged = true;
        break;
      }
    }
    prev = sigma;
    have_prev = true;
    if (inner >= opts.max_inner) break;  // flagged, not silent
    inner = std::min(2 * inner, opts.max_inner);
  }
  return est;
}

const char* to_string(CommutatorClass c) {
  switch (c) {
    case CommutatorClass::NormalLike: return "NormalLike";
    case CommutatorClass::Indefinite: return "Indefinite";
    case CommutatorClass::PositiveDefectLike: return "PositiveDefectLike";
    case CommutatorClass::NegativeDefectLike: return "NegativeDefectLike";
  }
  return "?";
}

CommutatorVerdict self_commutator(const OperatorSpec& spec, int inner,
                                  int outer, const DefectThresholds& thresholds,
                                  const PaddingOptions& padding) {
  if (inner < 1) throw DimensionError("self_commutator: inner must be >= 1");
  // Square working truncation S of dimension L: the principal inner block of
  // S^H S needs resolved rows, the one of S S^H needs resolved columns, so
  // both grow with L.
  auto defect_block = [&](int L) -> Eigen::MatrixXcd {
    const Eigen::MatrixXcd s = build_matrix(spec, L, L).entries;
    const Eigen::MatrixXcd g1 =
        (s.adjoint() * s).topLeftCorner(inner, inner);
    const Eigen::MatrixXcd g2 = (s * s.adjoint()).topLeftCorner(inner, inner);
    return g1 - g2;
  };

  int L = std::max(outer, default_square(inner));
  Eigen::MatrixXcd defect = defect_block(L);
  bool converged = false;
  while (L < padding.max_outer) {
    const int L2 = std::min(2 * L, padding.max_outer);
    Eigen::MatrixXcd next = defect_block(L2);
    const double delta = (next - defect).norm();
    defect = std::move(next);
    L = L2;
    if (delta < padding.tol) {
      converged = true;
      break;
    }
  }

  if (!converged) {
    throw NonConvergenceError(
        "self_commutator: defect block did not stabilize below " +
        std::to_string(padding.tol) + " by square dimension " +
        std::to_string(L));
  }

  // hermitize before the symmetric eigensolve; the block is Hermitian up to
  // rounding
  const Eigen::MatrixXcd herm = 0.5 * (defect + defect.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm,
                                                      Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = eig.eigenvalues();

  CommutatorVerdict verdict;
  verdict.min_eig = ev.minCoeff();
  verdict.max_eig = ev.maxCoeff();
  verdict.defect_norm =
      std::max(std::abs(verdict.min_eig), std::abs(verdict.max_eig));
  verdict.outer_dim = L;
  verdict.converged = converged;

  if (verdict.defect_norm <= thresholds.normal_tol) {
    verdict.verdict = CommutatorClass::NormalLike;
  } else if (verdict.min_eig >= -thresholds.normal_tol) {
    verdict.verdict = CommutatorClass::PositiveDefectLike;
  } else if (verdict.max_eig <= thresholds.normal_tol) {
    verdict.verdict = CommutatorClass::NegativeDefectLike;
  } else {
    verdict.verdict = CommutatorClass::Indefinite;
  }
  return verdict;
}

double spectral_radius_estimate(const OperatorSpec& spec, int inner) {
  const Eigen::MatrixXcd block = build_matrix(spec, inner, inner).entries;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(block, false);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

std::vector<Complex> point_spectrum_estimate(const OperatorSpec& spec,
                                             int inner, int k) {
  const Eigen::MatrixXcd block = build_matrix(spec, inner, inner).entries;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(block, false);
  std::vector<Complex> values(eig.eigenvalues().data(),
                              eig.eigenvalues().data() + inner);
  std::sort(values.begin(), values.end(), [](Complex x, Complex y) {
    const double ax = std::abs(x);
    const double ay = std::abs(y);
    if (ax != ay) return ax > ay;
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  if (k < static_cast<int>(values.size())) values.resize(k);
  return values;
}

double conjugation_residual(const OperatorSpec& spec, Complex u, int inner,
                            int max_square) {
  const OperatorSpec conjugated = weyl_conjugate(spec, u);

  auto conjugated_block = [&](int L) -> Eigen::MatrixXcd {
    const Eigen::MatrixXcd w = weyl_matrix(u, L).entries;
    const Eigen::MatrixXcd a = build_matrix(spec, L, L).entries;
    return (w * a * w.adjoint()).topLeftCorner(inner, inner);
  };

  int L = default_square(inner);
  Eigen::MatrixXcd block = conjugated_block(L);
  bool converged = false;
  while (L < max_square) {
    const int L2 = std::min(2 * L, max_square);
    Eigen::MatrixXcd next = conjugated_block(L2);
    const double delta = (next - block).norm();
    block = std::move(next);
    L = L2;
    if (delta <= 1e-11 * std::max(1.0, block.norm())) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NonConvergenceError(
        "conjugation_residual: conjugated block did not stabilize by square "
        "dimension " +
        std::to_string(L));
  }
  // entries of a truncation do not depend on the outer dimension, so the
  // principal block of the conjugated spec is exact as built
  const Eigen::MatrixXcd target =
      build_matrix(conjugated, inner, inner).entries;
  return sigma_max(block - target);
}

double adjoint_residual(const OperatorSpec& spec, Complex w, int inner,
                        int max_outer) {
  const Complex psi_w = spec.weight(w);
  const Complex phi_w = spec.symbol(w);
  const Eigen::VectorXcd target =
      std::conj(psi_w) * kernel_vector(phi_w, inner).vec.coeffs();

  int outer = default_square(inner);
  Eigen::VectorXcd image =
      build_matrix(spec, outer, inner).entries.adjoint() *
      kernel_vector(w, outer).vec.coeffs();
  while (outer < max_outer) {
    const int next_outer = std::min(2 * outer, max_outer);
    Eigen::VectorXcd next =
        build_matrix(spec, next_outer, inner).entries.adjoint() *
        kernel_vector(w, next_outer).vec.coeffs();
    const double delta = (next - image).norm();
    image = std::move(next);
    outer = next_outer;
    if (delta <= 1e-13 * std::max(1.0, image.norm())) break;
  }

  const double scale = target.norm();
  const double resid = (image - target).norm();
  return scale > 0.0 ? resid / scale : resid;
}

// ---------------------------------------------------------------------------
// Closed-range witness
// ---------------------------------------------------------------------------

double log_closed_range_witness(Complex gamma, Complex c, Complex a,
                                double r) {
  if (gamma == Complex(0.0)) {
    throw Error("closed_range_witness: gamma must be nonzero");
  }
  const double theta = (a == Complex(0.0)) ? 0.0 : std::arg(a);
  const Complex direction = std::polar(1.0, -theta);
  // log g(r) = 2 log|gamma| + 2 r Re(conj(c) e^{-i theta}) + r²(|a|²-1)
  return 2.0 * std::log(std::abs(gamma)) +
         2.0 * r * (std::conj(c) * direction).real() +
         r * r * (std::norm(a) - 1.0);
}

std::vector<WitnessPoint> closed_range_witness(
    Complex gamma, Complex c, Complex a, Complex b,
    const std::vector<double>& r_grid) {
  (void)b;  // the witness direction comes from a alone
  if (std::abs(a) >= 1.0 - kUnitCircleEps) {
    throw Error("closed_range_witness: defined only for |a| < 1");
  }
  std::vector<WitnessPoint> table;
  table.reserve(r_grid.size());
  for (double r : r_grid) {
    const double lg = log_closed_range_witness(gamma, c, a, r);
    table.push_back(WitnessPoint{r, lg > kMaxExpArg
                                        ? std::numeric_limits<double>::infinity()
                                        : std::exp(lg)});
  }
  return table;
}

double witness_peak(Complex gamma, Complex c, Complex a) {
  (void)gamma;
  const double theta = (a == Complex(0.0)) ? 0.0 : std::arg(a);
  const Complex direction = std::polar(1.0, -theta);
  const double slope = (std::conj(c) * direction).real();
  return std::max(0.0, slope / (1.0 - std::norm(a)));
}

double witness_threshold(Complex gamma, Complex c, Complex a, double target) {
  if (std::abs(a) >= 1.0 - kUnitCircleEps) {
    throw Error("witness_threshold: defined only for |a| < 1");
  }
  // Solve alpha r² + beta r + delta = log(target) for the larger root.
  const double theta = (a == Complex(0.0)) ? 0.0 : std::arg(a);
  const Complex direction = std::polar(1.0, -theta);
  const double alpha = std::norm(a) - 1.0;  // < 0
  const double beta = 2.0 * (std::conj(c) * direction).real();
  const double delta = 2.0 * std::log(std::abs(gamma)) - std::log(target);
  const double disc = beta * beta - 4.0 * alpha * delta;
  if (disc < 0.0) return 0.0;  // g never exceeds target
  const double root = (-beta - std::sqrt(disc)) / (2.0 * alpha);
  return std::max(0.0, root);
}

void write_witness_csv(std::ostream& os,
                       const std::vector<WitnessPoint>& table) {
  os << "r,g\n";
  for (const WitnessPoint& p : table) {
    os << g17(p.r) << ',' << g17(p.g) << '\n';
  }
}

double eigen_relation_check(const OperatorSpec& spec, Complex lambda,
                            const EntireWeight& h, int n,
                            const std::vector<Complex>& z_samples) {
  if (n < 1) throw Error("eigen_relation_check: n must be >= 1");
  const Complex lambda_n = cpow_int(lambda, n);
  double worst = 0.0;
  for (Complex z : z_samples) {
    Complex product(1.0);
    for (int j = 0; j < n; ++j) {
      product *= spec.weight(iterate(spec.symbol, j)(z));
    }
    const Complex rhs = product * h(iterate(spec.symbol, n)(z));
    const Complex lhs = lambda_n * h(z);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace fockwc
