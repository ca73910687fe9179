#include "fockwc/fock_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace fockwc {

bool on_unit_circle(Complex a, double eps) {
  return std::abs(std::abs(a) - 1.0) <= eps;
}

Complex checked_exp(Complex w) {
  if (w.real() > kMaxExpArg) {
    throw OverflowError("exp overflow: Re(exponent) = " +
                        std::to_string(w.real()));
  }
  return std::exp(w);
}

Complex cpow_int(Complex base, long n) {
  if (n < 0) throw Error("cpow_int: negative exponent");
  Complex result(1.0);
  Complex sq = base;
  while (n > 0) {
    if (n & 1) result *= sq;
    sq *= sq;
    n >>= 1;
  }
  return result;
}

// ---------------------------------------------------------------------------
// AffineSymbol
// ---------------------------------------------------------------------------

Complex fixed_point(const AffineSymbol& phi) {
  if (phi.a() == Complex(1.0)) {
    if (phi.b() == Complex(0.0)) return Complex(0.0);  // identity convention
    throw NoFiniteFixedPoint("translation z + b has no finite fixed point");
  }
  return phi.b() / (Complex(1.0) - phi.a());
}

AffineSymbol iterate(const AffineSymbol& phi, long n) {
  if (n < 0) throw Error("iterate: negative iteration count");
  if (n == 0) return AffineSymbol::identity();
  const Complex a = phi.a();
  const Complex b = phi.b();
  if (a == Complex(1.0)) return AffineSymbol(1.0, static_cast<double>(n) * b);
  const Complex an = cpow_int(a, n);
  return AffineSymbol(an, b * (Complex(1.0) - an) / (Complex(1.0) - a));
}

AffineSymbol compose(const AffineSymbol& outer, const AffineSymbol& inner) {
  return AffineSymbol(outer.a() * inner.a(),
                      outer.a() * inner.b() + outer.b());
}

// ---------------------------------------------------------------------------
// FockVector
// ---------------------------------------------------------------------------

Complex FockVector::eval(Complex z) const {
  // t_n = z^n / sqrt(n!), built by ratio recurrence.
  Complex acc(0.0);
  Complex t(1.0);
  for (int n = 0; n < dim(); ++n) {
    acc += c_(n) * t;
    t *= z / std::sqrt(static_cast<double>(n + 1));
  }
  return acc;
}

Complex fock_inner(const FockVector& f, const FockVector& g) {
  const int n = std::min(f.dim(), g.dim());
  if (n == 0) return Complex(0.0);
  return g.coeffs().head(n).dot(f.coeffs().head(n));
}

// ---------------------------------------------------------------------------
// Reproducing kernel
// ---------------------------------------------------------------------------

double kernel_norm(Complex w) {
  const double half_sq = 0.5 * std::norm(w);
  if (half_sq > kMaxExpArg) {
    throw OverflowError("kernel_norm overflow: |w|^2/2 = " +
                        std::to_string(half_sq));
  }
  return std::exp(half_sq);
}

double kernel_tail_bound(Complex w, int dim) {
  const double mod = std::abs(w);
  if (mod == 0.0) return 0.0;
  // log of |w|^{2·dim}/dim! · exp(|w|²)
  const double log_bound = 2.0 * dim * std::log(mod) -
                           std::lgamma(static_cast<double>(dim) + 1.0) +
                           std::norm(w);
  if (log_bound > kMaxExpArg) return std::numeric_limits<double>::infinity();
  return std::exp(log_bound);
}

KernelVector kernel_vector(Complex w, int dim) {
  if (dim < 1) throw DimensionError("kernel_vector: dim must be >= 1");
  kernel_norm(w);  // overflow guard: coefficients peak near ||K_w||
  Eigen::VectorXcd c(dim);
  const Complex wbar = std::conj(w);
  c(0) = Complex(1.0);
  for (int n = 1; n < dim; ++n) {
    c(n) = c(n - 1) * wbar / std::sqrt(static_cast<double>(n));
  }
  return KernelVector{FockVector(std::move(c)), kernel_tail_bound(w, dim)};
}

// ---------------------------------------------------------------------------
// EntireWeight
// ---------------------------------------------------------------------------

EntireWeight::EntireWeight(Complex gamma, std::vector<Complex> poly,
                           Complex kernel_param)
    : gamma_(gamma), poly_(std::move(poly)), kernel_param_(kernel_param) {
  if (poly_.empty()) poly_.push_back(Complex(1.0));
  trim();
}

void EntireWeight::trim() {
  while (poly_.size() > 1 && poly_.back() == Complex(0.0)) poly_.pop_back();
}

EntireWeight EntireWeight::constant(Complex value) {
  return EntireWeight(value, {Complex(1.0)}, Complex(0.0));
}

EntireWeight EntireWeight::scaled_kernel(Complex gamma, Complex c) {
  return EntireWeight(gamma, {Complex(1.0)}, c);
}

EntireWeight EntireWeight::polynomial(std::vector<Complex> poly) {
  return EntireWeight(Complex(1.0), std::move(poly), Complex(0.0));
}

bool EntireWeight::is_zero() const {
  if (gamma_ == Complex(0.0)) return true;
  for (const Complex& p : poly_) {
    if (p != Complex(0.0)) return false;
  }
  return true;
}

Complex EntireWeight::scalar() const {
  if (!is_scaled_kernel()) {
    throw UnsupportedWeightError(
        "weight has a nonconstant polynomial factor; not of the form "
        "gamma*K_c");
  }
  return gamma_ * poly_[0];
}

Complex EntireWeight::operator()(Complex z) const {
  Complex p(0.0);
  for (auto it = poly_.rbegin(); it != poly_.rend(); ++it) p = p * z + *it;
  return gamma_ * p * checked_exp(std::conj(kernel_param_) * z);
}

EntireWeight EntireWeight::scaled(Complex s) const {
  return EntireWeight(gamma_ * s, poly_, kernel_param_);
}

EntireWeight EntireWeight::times(const EntireWeight& other) const {
  std::vector<Complex> conv(poly_.size() + other.poly_.size() - 1,
                            Complex(0.0));
  for (std::size_t i = 0; i < poly_.size(); ++i) {
    for (std::size_t j = 0; j < other.poly_.size(); ++j) {
      conv[i + j] += poly_[i] * other.poly_[j];
    }
  }
  return EntireWeight(gamma_ * other.gamma_, std::move(conv),
                      kernel_param_ + other.kernel_param_);
}

EntireWeight EntireWeight::times_kernel(Complex c2) const {
  return EntireWeight(gamma_, poly_, kernel_param_ + c2);
}

EntireWeight EntireWeight::times_exp(Complex d) const {
  // exp(d·z) = K_{conj(d)}
  return times_kernel(std::conj(d));
}

EntireWeight EntireWeight::shifted(Complex u) const {
  // psi(z-u) = gamma·exp(-conj(c)u) · poly(z-u) · K_c(z)
  const int d = degree();
  std::vector<Complex> shifted_poly(d + 1, Complex(0.0));
  // binomial expansion of sum_k p_k (z-u)^k
  std::vector<double> binom(d + 1, 0.0);
  for (int k = 0; k <= d; ++k) {
    binom[0] = 1.0;
    for (int j = k; j >= 1; --j) binom[j] = binom[j] + binom[j - 1];
    Complex mu_pow(1.0);  // (-u)^{k-j}, built from j = k downward
    for (int j = k; j >= 0; --j) {
      shifted_poly[j] += poly_[k] * binom[j] * mu_pow;
      mu_pow *= -u;
    }
  }
  const Complex prefactor = checked_exp(-std::conj(kernel_param_) * u);
  return EntireWeight(gamma_ * prefactor, std::move(shifted_poly),
                      kernel_param_);
}

EntireWeight EntireWeight::composed_with(const AffineSymbol& phi) const {
  const Complex a = phi.a();
  const Complex b = phi.b();
  // poly(az+b) by Horner over polynomial coefficients
  std::vector<Complex> q{Complex(0.0)};
  for (auto it = poly_.rbegin(); it != poly_.rend(); ++it) {
    std::vector<Complex> next(q.size() + 1, Complex(0.0));
    for (std::size_t j = 0; j < q.size(); ++j) {
      next[j + 1] += q[j] * a;
      next[j] += q[j] * b;
    }
    next[0] += *it;
    q = std::move(next);
  }
  // exp(conj(c)(az+b)) = exp(conj(c)b) · K_{c·conj(a)}
  const Complex prefactor = checked_exp(std::conj(kernel_param_) * b);
  return EntireWeight(gamma_ * prefactor, std::move(q),
                      kernel_param_ * std::conj(a));
}

EntireWeight normalized_kernel_weight(Complex u) {
  return EntireWeight::scaled_kernel(std::exp(-0.5 * std::norm(u)), u);
}

FockVector weight_taylor(const EntireWeight& psi, int dim) {
  if (dim < 1) throw DimensionError("weight_taylor: dim must be >= 1");
  // e_n coefficients of K_c: conj(c)^n/sqrt(n!)
  Eigen::VectorXcd base(dim);
  const Complex cbar = std::conj(psi.kernel_param());
  base(0) = Complex(1.0);
  for (int n = 1; n < dim; ++n) {
    base(n) = base(n - 1) * cbar / std::sqrt(static_cast<double>(n));
  }
  // accumulate p_k · z^k · K_c; multiplication by z in the e_n basis is
  // g_m = sqrt(m)·f_{m-1}
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(dim);
  Eigen::VectorXcd zpow = base;
  const auto& poly = psi.poly();
  for (std::size_t k = 0; k < poly.size(); ++k) {
    if (k > 0) {
      for (int m = dim - 1; m >= 1; --m) {
        zpow(m) = std::sqrt(static_cast<double>(m)) * zpow(m - 1);
      }
      zpow(0) = Complex(0.0);
    }
    if (poly[k] != Complex(0.0)) acc += poly[k] * zpow;
  }
  acc *= psi.gamma();
  return FockVector(std::move(acc));
}

}  // namespace fockwc
