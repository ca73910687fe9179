// numerics.hpp — independent numerical oracles that check the closed-form
// classification against truncated matrices: singular values, eigenvalues,
// self-commutator spectra, conjugation/adjoint residuals, and the
// closed-range witness function.
//
// Everything runs on dense Eigen decompositions at desk scale (inner
// dimension <= 256); every estimate carries its convergence record because
// the truncation of a product is not the product of truncations.

#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "fockwc/classifier.hpp"
#include "fockwc/matrixizer.hpp"

namespace fockwc {

struct ConvergenceRecord {
  std::vector<std::pair<int, int>> dims;  // (inner N, outer M)
  std::vector<double> values;
  bool converged = false;
  double final_delta = 0.0;
};

// CSV with header "N,M,value".
void write_convergence_csv(std::ostream& os, const ConvergenceRecord& record);

// Largest singular value, dense JacobiSVD.
double sigma_max(const Eigen::MatrixXcd& m);

// sigma_max of the outer-resolved truncation at a fixed inner dimension.
double singular_norm_at(const OperatorSpec& spec, int inner,
                        const PaddingOptions& padding = {},
                        int* outer_used = nullptr);

struct NormEstimate {
  double value = 0.0;
  ConvergenceRecord record;
};

struct NormEstimateOptions {
  int min_inner = 8;
  int max_inner = 256;
  bool force = false;  // skip the boundedness gate (exploratory use)
  PaddingOptions padding{};
};

// Largest singular value over doubling inner dimensions until successive
// estimates differ by at most tol.  Non-convergence at the dimension cap is
// returned as a flagged record, never silently.
NormEstimate op_norm_estimate(const OperatorSpec& spec, double tol,
                              const NormEstimateOptions& opts = {});

enum class CommutatorClass {
  NormalLike,
  Indefinite,
  PositiveDefectLike,
  NegativeDefectLike,
};

const char* to_string(CommutatorClass c);

struct DefectThresholds {
  // Calibrated against the dense eigensolve oracle; configuration, not
  // constants.
  double normal_tol = 1e-8;
  double indefinite_tol = 1e-4;
};

struct CommutatorVerdict {
  double defect_norm = 0.0;  // spectral norm of the principal defect block
  double min_eig = 0.0;
  double max_eig = 0.0;
  CommutatorClass verdict = CommutatorClass::NormalLike;
  int outer_dim = 0;  // square working dimension actually used
  bool converged = false;
};

// Principal inner×inner block of A^H A - A A^H, computed from a square
// working truncation whose dimension is grown until the block stabilizes.
CommutatorVerdict self_commutator(const OperatorSpec& spec, int inner,
                                  int outer = 0,
                                  const DefectThresholds& thresholds = {},
                                  const PaddingOptions& padding = {});

// Max modulus of the eigenvalues of the principal N×N truncation; the
// principal block does not depend on outer padding.  Meaningful for
// |a| < 1 where the operator is compact.
double spectral_radius_estimate(const OperatorSpec& spec, int inner);

// k largest-modulus eigenvalues of the principal N×N truncation, sorted by
// modulus (ties broken by real then imaginary part, descending).
std::vector<Complex> point_spectrum_estimate(const OperatorSpec& spec,
                                             int inner, int k);

// Spectral norm of (W_u A W_u^H - B) on the leading inner×inner block,
// where B truncates weyl_conjugate(spec, u).  The square working dimension
// grows until the conjugated block stabilizes; throws NonConvergenceError
// at the cap.
double conjugation_residual(const OperatorSpec& spec, Complex u, int inner,
                            int max_square = 1024);

// Relative residual of A^H K_w = conj(psi(w)) K_{phi(w)} at inner
// dimension N (rows padded until the product stabilizes).
double adjoint_residual(const OperatorSpec& spec, Complex w, int inner,
                        int max_outer = 2048);

// --- closed-range witness ---------------------------------------------------
//
// For |a| < 1 the function
//   g(r) = |psi(r e^{-i·theta})|² · exp(r²(|a|²-1)),  theta = arg(a),
// tends to 0, which is exactly why the operator cannot have closed range.
// Evaluated in log space to avoid underflow at large r.

double log_closed_range_witness(Complex gamma, Complex c, Complex a, double r);

struct WitnessPoint {
  double r = 0.0;
  double g = 0.0;
};

std::vector<WitnessPoint> closed_range_witness(Complex gamma, Complex c,
                                               Complex a, Complex b,
                                               const std::vector<double>& r_grid);

// Location of the witness maximum (clamped at 0).
double witness_peak(Complex gamma, Complex c, Complex a);

// Smallest r beyond the peak with g(r) <= target (0 when g never exceeds
// target).
double witness_threshold(Complex gamma, Complex c, Complex a,
                         double target = 1e-12);

// CSV with header "r,g".
void write_witness_csv(std::ostream& os, const std::vector<WitnessPoint>& table);

// Max over z samples of |lambda^n h(z) - prod_{j<n} psi(phi_j(z)) · h(phi_n(z))|
// with phi_j the closed-form iterates; 0 for true eigenpairs (lambda, h).
double eigen_relation_check(const OperatorSpec& spec, Complex lambda,
                            const EntireWeight& h, int n,
                            const std::vector<Complex>& z_samples);

}  // namespace fockwc
