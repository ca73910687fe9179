// classifier.hpp — closed-form classification of C_{psi,phi} on F² for
// scaled-kernel weights psi = gamma·K_c and affine symbols phi(z) = az + b.
//
// Decision table (gamma != 0):
//   bounded          <=>  |a| < 1, or |a| = 1 and c = -conj(a)·b
//   compact          <=>  bounded and |a| < 1
//   unitary multiple <=>  |a| = 1 and c = -conj(a)·b
//   normal = hyponormal = cohyponormal = normaloid
//                    <=>  bounded and c = critical_c(a, b)
//   closed range     <=>  unitary multiple
// On the unit circle (a != 1) the two kernel parameters coincide:
// critical_c = b(conj(a)-1)/(a-1) = -conj(a)·b, so every bounded operator
// there is automatically normal.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fockwc/fock_core.hpp"
#include "fockwc/matrixizer.hpp"

namespace fockwc {

struct ClassifyOptions {
  // Absolute tolerance for kernel-parameter equalities (user-entered
  // decimals); set exact_match to require bitwise equality instead.
  double match_tol = 1e-12;
  bool exact_match = false;
  double unit_circle_eps = kUnitCircleEps;
};

struct ClassificationReport {
  bool bounded = false;
  bool compact = false;
  bool unitary_multiple = false;
  bool normal = false;
  bool hyponormal = false;
  bool cohyponormal = false;
  bool normaloid = false;
  bool closed_range = false;
  std::optional<double> exact_norm;
  std::optional<Complex> fixed_point;
  std::optional<double> eigenvalue_bound;
  std::optional<Complex> critical_c;
  bool zero_operator = false;  // degenerate gamma = 0 verdict
  std::vector<std::string> warnings;
};

// Kernel parameter making C_{K_c,phi} normal/hyponormal/cohyponormal/
// normaloid: b(conj(a)-1)/(a-1) for a != 1, -b for a = 1.
Complex critical_c(Complex a, Complex b);

// Operator norm of gamma·C_{K_c, az+b}:
//   |a| < 1:        |gamma·psi(p)| · exp(|s|²/(2(1-|a|²))),
//                   p = b/(1-a),  s = c(1-a)/(conj(a)-1) + b
//   |a| = 1, a != 1: |gamma| · |exp(|b|²/(1-conj(a)))|
//   a = 1:           |gamma| · exp(|b|²/2)
// Throws UnboundedOperatorError when the operator is unbounded.
double exact_norm(Complex gamma, Complex c, Complex a, Complex b,
                  const ClassifyOptions& opts = {});

// Bound on point-spectrum moduli for |a| < 1:
// |lambda| <= |psi(b/(1-a))| = |gamma·exp(conj(c)·b/(1-a))|.
double eigenvalue_bound(Complex gamma, Complex c, Complex a, Complex b);

ClassificationReport classify(Complex gamma, Complex c, Complex a, Complex b,
                              const ClassifyOptions& opts = {});

// Spec-level entry point; throws UnsupportedWeightError unless the weight
// is a scaled kernel.
ClassificationReport classify(const OperatorSpec& spec,
                              const ClassifyOptions& opts = {});

}  // namespace fockwc
