// fock_core.hpp — scalar/series layer for the Fock space F².
//
// F² is the Hilbert space of entire functions square-integrable against the
// Gaussian measure, with orthonormal basis e_n(z) = z^n/sqrt(n!) and
// reproducing kernel K_w(z) = exp(conj(w)·z).  Everything here is expressed
// in the e_n basis so coefficients stay O(1); monomial <-> basis conversions
// run through ratio recurrences (sqrt(n!) = sqrt((n-1)!)·sqrt(n)), never raw
// factorials.
//
// Conjugation convention, fixed once for the whole codebase:
//     K_c(z) = exp(conj(c)·z),  so the Taylor coefficients of K_c are
//     conj(c)^n / n!.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace fockwc {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a requested value exceeds the double exponent range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Translation symbols (a = 1, b != 0) have no finite fixed point.
class NoFiniteFixedPoint : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// The classifier only handles scaled-kernel weights gamma·K_c.
class UnsupportedWeightError : public Error {
 public:
  using Error::Error;
};

class UnboundedOperatorError : public Error {
 public:
  using Error::Error;
};

class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

// Largest safe argument for std::exp on doubles (log(DBL_MAX) ~ 709.78).
inline constexpr double kMaxExpArg = 709.0;

// |a| is treated as exactly 1 when ||a|-1| <= eps; the theory bifurcates
// discontinuously at the unit circle, so detection must be explicit.
inline constexpr double kUnitCircleEps = 1e-12;

bool on_unit_circle(Complex a, double eps = kUnitCircleEps);

// exp with an explicit overflow guard on the real part of the exponent.
Complex checked_exp(Complex w);

// Integer power by repeated squaring (std::pow on complex goes through
// log/exp and loses exactness for dyadic inputs).
Complex cpow_int(Complex base, long n);

// ---------------------------------------------------------------------------
// AffineSymbol: phi(z) = a z + b
// ---------------------------------------------------------------------------

class AffineSymbol {
 public:
  AffineSymbol(Complex a, Complex b) : a_(a), b_(b) {}

  Complex a() const { return a_; }
  Complex b() const { return b_; }

  Complex operator()(Complex z) const { return a_ * z + b_; }

  static AffineSymbol identity() { return AffineSymbol(1.0, 0.0); }
  bool is_identity() const { return a_ == Complex(1.0) && b_ == Complex(0.0); }

 private:
  Complex a_;
  Complex b_;
};

// Fixed point b/(1-a); 0 by convention for the identity map.
// Throws NoFiniteFixedPoint for proper translations (a = 1, b != 0).
Complex fixed_point(const AffineSymbol& phi);

// n-th iterate phi_n = phi ∘ phi_{n-1}, closed form (a^n, b(1-a^n)/(1-a));
// iterate(phi, 0) is the identity.
AffineSymbol iterate(const AffineSymbol& phi, long n);

// outer ∘ inner.
AffineSymbol compose(const AffineSymbol& outer, const AffineSymbol& inner);

// ---------------------------------------------------------------------------
// FockVector: coefficients in the orthonormal basis {e_n}
// ---------------------------------------------------------------------------

class FockVector {
 public:
  FockVector() = default;
  explicit FockVector(int dim) : c_(Eigen::VectorXcd::Zero(dim)) {}
  explicit FockVector(Eigen::VectorXcd coeffs) : c_(std::move(coeffs)) {}

  int dim() const { return static_cast<int>(c_.size()); }
  Complex operator[](int n) const { return c_(n); }
  Complex& operator[](int n) { return c_(n); }

  // Parseval: ||f||² = sum |coeffs[n]|².
  double squared_norm() const { return c_.squaredNorm(); }
  double norm() const { return c_.norm(); }

  const Eigen::VectorXcd& coeffs() const { return c_; }
  Eigen::VectorXcd& coeffs() { return c_; }

  // Value of the truncated series sum_n coeffs[n]·z^n/sqrt(n!) at z.
  Complex eval(Complex z) const;

 private:
  Eigen::VectorXcd c_;
};

// sum_n f_n conj(g_n); the shorter vector is zero-padded.
Complex fock_inner(const FockVector& f, const FockVector& g);

// ---------------------------------------------------------------------------
// Reproducing kernel
// ---------------------------------------------------------------------------

// ||K_w|| = exp(|w|²/2); throws OverflowError outside the double range.
double kernel_norm(Complex w);

// Crude tail majorant for the kernel truncation at dimension dim:
//   sum_{n>=dim} |w|^{2n}/n!  <=  |w|^{2·dim}/dim! · exp(|w|²),
// evaluated in log space.  Cheap and sufficient at desk scale.
double kernel_tail_bound(Complex w, int dim);

struct KernelVector {
  FockVector vec;     // coeffs[n] = conj(w)^n / sqrt(n!)
  double tail_bound;  // bound on the discarded sum_{n>=dim} |coeff|²
};

KernelVector kernel_vector(Complex w, int dim);

// ---------------------------------------------------------------------------
// EntireWeight: psi(z) = gamma · poly(z) · K_c(z)
// ---------------------------------------------------------------------------
//
// The closed form gamma·(sum p_k z^k)·exp(conj(c)z) is closed under all the
// algebra the operator calculus needs: products, kernel factors, argument
// shifts z -> z-u, exponential factors exp(d·z), and composition with affine
// maps.  A pure scaled kernel gamma·K_c is the case poly = [1].

class EntireWeight {
 public:
  // psi ≡ 1.
  EntireWeight() : gamma_(1.0), poly_{Complex(1.0)}, kernel_param_(0.0) {}

  EntireWeight(Complex gamma, std::vector<Complex> poly, Complex kernel_param);

  static EntireWeight constant(Complex value);
  static EntireWeight scaled_kernel(Complex gamma, Complex c);
  // gamma = 1, kernel param 0: a plain polynomial sum p_k z^k.
  static EntireWeight polynomial(std::vector<Complex> poly);

  Complex gamma() const { return gamma_; }
  const std::vector<Complex>& poly() const { return poly_; }
  Complex kernel_param() const { return kernel_param_; }

  int degree() const { return static_cast<int>(poly_.size()) - 1; }
  bool is_zero() const;
  // True when the polynomial factor is constant, i.e. psi = (gamma·p0)·K_c.
  bool is_scaled_kernel() const { return degree() == 0; }
  // gamma·p0 for a scaled kernel; throws UnsupportedWeightError otherwise.
  Complex scalar() const;

  // Pointwise value; the exponential factor is overflow-guarded.
  Complex operator()(Complex z) const;

  EntireWeight scaled(Complex s) const;
  EntireWeight times(const EntireWeight& other) const;
  // Multiply by K_c2 (kernel parameters add: K_c1·K_c2 = K_{c1+c2}).
  EntireWeight times_kernel(Complex c2) const;
  // Multiply by exp(d·z), i.e. K_{conj(d)}.
  EntireWeight times_exp(Complex d) const;
  // Argument shift: z -> psi(z - u).
  EntireWeight shifted(Complex u) const;
  // psi ∘ phi for affine phi.
  EntireWeight composed_with(const AffineSymbol& phi) const;

 private:
  Complex gamma_;
  std::vector<Complex> poly_;  // monomial coefficients, index = power
  Complex kernel_param_;       // c in K_c(z) = exp(conj(c)·z)

  void trim();
};

// Normalized kernel k_u = K_u/||K_u|| = exp(-|u|²/2)·K_u as a weight.
EntireWeight normalized_kernel_weight(Complex u);

// e_n coefficients of psi truncated to dim entries.
FockVector weight_taylor(const EntireWeight& psi, int dim);

}  // namespace fockwc
