// matrixizer.hpp — truncated matrix representations of weighted composition
// operators C_{psi,phi} f = psi · (f ∘ phi) in the e_n basis.
//
// Truncations are two-level: the domain is span{e_0..e_{N-1}} (inner
// dimension N) but each column is resolved to outer dimension M >= N.
// Products and adjoints of truncations are only trustworthy once the range
// is resolved, so derived quantities grow M until their principal N×N
// blocks stabilize.

#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "fockwc/fock_core.hpp"

namespace fockwc {

struct OperatorSpec {
  EntireWeight weight;
  AffineSymbol symbol;
};

// Plain composition operator C_phi (psi ≡ 1).
OperatorSpec composition_spec(const AffineSymbol& phi);

struct TruncatedOperator {
  Eigen::MatrixXcd entries;  // outer_dim × inner_dim
  int outer_dim = 0;
  int inner_dim = 0;
  OperatorSpec spec{EntireWeight(), AffineSymbol::identity()};
};

// Column n holds the e_m coefficients (m < M) of psi·(az+b)^n/sqrt(n!).
// Columns are derived from one another by a single (az+b)-multiplication
// step in the e_n basis, so every entry is exact up to rounding and the
// b = 0, psi ≡ 1 case is structurally diagonal.
TruncatedOperator build_matrix(const OperatorSpec& spec, int outer, int inner);

struct PaddingOptions {
  int initial_outer = 0;  // 0: inner + max(32, inner/2)
  double tol = 1e-10;     // Frobenius stabilization of the column Gram block
  int max_outer = 2048;
};

struct PaddingReport {
  std::vector<int> outer_dims;
  std::vector<double> deltas;
  bool converged = false;
};

// Doubles the outer dimension until the principal inner×inner block of
// A^H A changes by less than tol.
TruncatedOperator build_resolved(const OperatorSpec& spec, int inner,
                                 const PaddingOptions& opts = {},
                                 PaddingReport* report = nullptr);

// Weyl unitary C_{k_u, z-u}: weight k_u = exp(-|u|²/2)K_u, symbol z - u.
TruncatedOperator weyl_matrix(Complex u, int dim);

// Adjoint of the unweighted composition operator:
// C_{az+b}^* = C_{K_b, conj(a)·z}.  Requires |a| <= 1.
OperatorSpec adjoint_spec(const AffineSymbol& phi);

// Spec of the operator product (first applied after second):
// C_{psi1,phi1} C_{psi2,phi2} = C_{psi1·(psi2∘phi1), phi2∘phi1}.
OperatorSpec compose_specs(const OperatorSpec& first,
                           const OperatorSpec& second);

// Conjugation by the Weyl unitary:
//   C_{k_u,z-u} C_{psi,phi} C_{k_{-u},z+u} = C_{psi~,phi~},
//   phi~(z) = a z + u(1-a) + b,
//   psi~(z) = exp(|u|²(a-1) - conj(u)b) · exp(conj(u)(1-a)z) · psi(z-u).
// For a pure scaled kernel gamma·K_c the result is a scaled kernel with
// parameter c + u(1-conj(a)).
OperatorSpec weyl_conjugate(const OperatorSpec& spec, Complex u);

// --- export formats ---------------------------------------------------------
//
// fockmat: header line "fockmat M N", then M·N lines "row col re im" in
// row-major order.  Values are printed with 17 significant digits, so a
// read-back reproduces every double bit-exactly.

void write_fockmat(std::ostream& os, const Eigen::MatrixXcd& entries);
Eigen::MatrixXcd read_fockmat(std::istream& is);

// CSV of (row, col, re, im) triplets with a header line.
void write_matrix_csv(std::ostream& os, const Eigen::MatrixXcd& entries);

}  // namespace fockwc
