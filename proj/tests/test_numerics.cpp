#include <cmath>
#include <sstream>

#include <doctest.h>

#include "fockwc/numerics.hpp"

using namespace fockwc;

namespace {

OperatorSpec kernel_spec(Complex c, Complex a, Complex b) {
  return OperatorSpec{EntireWeight::scaled_kernel(Complex(1.0), c),
                      AffineSymbol(a, b)};
}

}  // namespace

TEST_SUITE_BEGIN("numerics");

TEST_CASE("op_norm_estimate: diagonal case is exact") {
  const auto est =
      op_norm_estimate(composition_spec(AffineSymbol(0.5, 0.0)), 1e-10);
  CHECK(est.value == 1.0);
  CHECK(est.record.converged);
}

TEST_CASE("op_norm_estimate agrees with the closed forms") {
  const auto comp =
      op_norm_estimate(composition_spec(AffineSymbol(0.5, 0.3)), 1e-8);
  CHECK(std::abs(comp.value - std::exp(0.06)) <= 1e-8);
  CHECK(comp.record.converged);
  CHECK(comp.record.dims.size() == comp.record.values.size());

  const auto weighted = op_norm_estimate(kernel_spec(0.3, 0.5, 0.3), 1e-8);
  CHECK(std::abs(weighted.value - std::exp(0.18)) <= 1e-8);
}

TEST_CASE("op_norm_estimate flags non-convergence instead of hiding it") {
  NormEstimateOptions opts;
  opts.min_inner = 8;
  opts.max_inner = 16;
  // an impossible tolerance cannot converge; the record says so
  const auto est =
      op_norm_estimate(composition_spec(AffineSymbol(0.5, 0.3)), 0.0, opts);
  CHECK_FALSE(est.record.converged);
  CHECK(est.record.dims.back().first == 16);
}

TEST_CASE("op_norm_estimate gates unbounded specs") {
  CHECK_THROWS_AS(
      op_norm_estimate(kernel_spec(0.5, Complex(0, 1), 1.0), 1e-8),
      UnboundedOperatorError);
  NormEstimateOptions force;
  force.force = true;
  force.max_inner = 16;
  // exploratory override still runs
  const auto est =
      op_norm_estimate(kernel_spec(0.5, Complex(0, 1), 1.0), 1e30, force);
  CHECK(est.value > 0.0);
}

TEST_CASE("singular values of a fixed inner dim grow toward the norm") {
  const OperatorSpec spec = kernel_spec(0.3, 0.5, 0.3);
  const double n16 = singular_norm_at(spec, 16);
  const double n64 = singular_norm_at(spec, 64);
  CHECK(n16 <= n64 + 1e-12);
  CHECK(std::abs(n64 - std::exp(0.18)) <= 1e-10);
}

TEST_CASE("self_commutator: diagonal composition operators are normal") {
  const auto verdict =
      self_commutator(composition_spec(AffineSymbol(0.5, 0.0)), 24);
  CHECK(verdict.verdict == CommutatorClass::NormalLike);
  CHECK(verdict.defect_norm <= 1e-15);
}

TEST_CASE("self_commutator dichotomy at the reference spec") {
  const auto normal = self_commutator(kernel_spec(0.3, 0.5, 0.3), 48);
  CHECK(normal.verdict == CommutatorClass::NormalLike);
  CHECK(normal.defect_norm <= 1e-8);
  CHECK(normal.converged);

  const auto off = self_commutator(kernel_spec(0.8, 0.5, 0.3), 48, 128);
  CHECK(off.verdict == CommutatorClass::Indefinite);
  CHECK(off.min_eig < -1e-4);
  CHECK(off.max_eig > 1e-4);
  CHECK(off.outer_dim >= 128);
}

TEST_CASE("spectral radius estimates") {
  CHECK(spectral_radius_estimate(composition_spec(AffineSymbol(0.5, 0.0)),
                                 32) == 1.0);
  CHECK(std::abs(spectral_radius_estimate(
                     composition_spec(AffineSymbol(0.5, 0.3)), 64) -
                 1.0) <= 1e-8);
  CHECK(std::abs(spectral_radius_estimate(kernel_spec(0.3, 0.5, 0.3), 64) -
                 std::exp(0.18)) <= 1e-6);
}

TEST_CASE("point spectrum: diagonal and weighted geometric decay") {
  const auto diag =
      point_spectrum_estimate(composition_spec(AffineSymbol(0.5, 0.0)), 16, 3);
  REQUIRE(diag.size() == 3);
  CHECK(diag[0] == Complex(1.0));
  CHECK(diag[1] == Complex(0.5));
  CHECK(diag[2] == Complex(0.25));

  const auto top = point_spectrum_estimate(kernel_spec(0.3, 0.5, 0.3), 64, 3);
  const double base = std::exp(0.18);
  CHECK(std::abs(top[0] - Complex(base)) <= 1e-6);
  CHECK(std::abs(top[1] - Complex(0.5 * base)) <= 1e-6);
  CHECK(std::abs(top[2] - Complex(0.25 * base)) <= 1e-6);

  // every truncated eigenvalue obeys the fixed-point bound
  const auto all = point_spectrum_estimate(kernel_spec(0.8, 0.5, 0.3), 48, 48);
  const double bound = eigenvalue_bound(1.0, 0.8, 0.5, 0.3);
  CHECK(bound == doctest::Approx(std::exp(0.48)).epsilon(1e-14));
  for (const Complex& l : all) {
    CHECK(std::abs(l) <= bound * (1.0 + 1e-6));
  }
}

TEST_CASE("conjugation residual: exact at u=0, small on theory cases") {
  const OperatorSpec spec = kernel_spec(0.3, 0.5, 0.3);
  CHECK(conjugation_residual(spec, Complex(0.0), 24) == 0.0);

  // u = b/(a-1): the conjugated operator is exp(0.18)·C_{0.5z}, an exactly
  // diagonal truncation
  const double resid = conjugation_residual(spec, Complex(-0.6), 32);
  CHECK(resid <= 1e-8);
  const OperatorSpec rotated = weyl_conjugate(spec, Complex(-0.6));
  const auto diag = build_matrix(rotated, 8, 8);
  for (int n = 0; n < 8; ++n) {
    CHECK(std::abs(diag.entries(n, n) -
                   std::exp(0.18) * std::pow(0.5, n)) < 1e-13);
    for (int m = 0; m < 8; ++m) {
      if (m != n) CHECK(std::abs(diag.entries(m, n)) < 1e-14);
    }
  }

  // u = -p: any spec is normalized to symbol az; for psi ≡ 1 the weight
  // becomes exp(conj(p)(a-1)z)
  const OperatorSpec comp = composition_spec(AffineSymbol(0.5, 0.3));
  CHECK(conjugation_residual(comp, Complex(-0.6), 32) <= 1e-8);
  const OperatorSpec centered = weyl_conjugate(comp, Complex(-0.6));
  CHECK(std::abs(centered.symbol.a() - Complex(0.5)) < 1e-15);
  CHECK(std::abs(centered.symbol.b()) < 1e-15);
  CHECK(std::abs(centered.weight.kernel_param() -
                 std::conj(Complex(0.6) * (0.5 - 1.0))) < 1e-15);
  CHECK(std::abs(centered.weight.scalar() - Complex(1.0)) < 1e-14);
}

TEST_CASE("adjoint residual: kernel images of the adjoint") {
  const OperatorSpec spec = kernel_spec(0.3, 0.5, 0.3);
  CHECK(adjoint_residual(spec, Complex(0.0), 64) <= 1e-8);
  CHECK(adjoint_residual(spec, Complex(1.5), 64) <= 1e-8);

  // C_{0.5z}^* maps K_1 to K_0.5
  const OperatorSpec rot = composition_spec(AffineSymbol(0.5, 0.0));
  CHECK(adjoint_residual(rot, Complex(1.0), 64) <= 1e-8);

  // bounded unitary-multiple case
  const OperatorSpec um = kernel_spec(Complex(0, 1), Complex(0, 1), 1.0);
  CHECK(adjoint_residual(um, Complex(0.7), 96) <= 1e-6);
}

TEST_CASE("gram spec eigenvector relation") {
  const AffineSymbol phi(0.5, 0.3);
  const OperatorSpec gram =
      compose_specs(adjoint_spec(phi), composition_spec(phi));
  const Complex wstar = Complex(0.3) / (1.0 - 0.25);
  CHECK(adjoint_residual(gram, wstar, 64) <= 1e-8);
}

TEST_CASE("closed-range witness closed forms") {
  const auto half = closed_range_witness(1.0, 0.0, 0.5, 0.0, {2.0});
  CHECK(half[0].g == doctest::Approx(std::exp(-3.0)).epsilon(1e-14));

  const auto origin = closed_range_witness(1.0, 0.3, 0.0, 0.2, {0.0, 1.0});
  CHECK(origin[0].g == 1.0);  // g(0) = |gamma|² = 1
  // a = 0: g(r) = |psi(r)|² e^{-r²} along theta = 0
  CHECK(origin[1].g ==
        doctest::Approx(std::exp(2.0 * 0.3 - 1.0)).epsilon(1e-13));

  // peak and decay threshold of the reference weighted spec
  CHECK(witness_peak(1.0, 0.3, 0.5) == doctest::Approx(0.4).epsilon(1e-13));
  const double r0 = witness_threshold(1.0, 0.3, 0.5, 1e-12);
  CHECK(r0 > 6.0);
  CHECK(r0 < 6.5);
  CHECK(log_closed_range_witness(1.0, 0.3, 0.5, r0 + 1e-9) <=
        std::log(1e-12) + 1e-6);
  // no underflow surprises in log space far out
  CHECK(log_closed_range_witness(1.0, 0.3, 0.5, 40.0) < -1000.0);
  const auto far = closed_range_witness(1.0, 0.3, 0.5, 0.3, {40.0});
  CHECK(far[0].g == 0.0);  // underflows cleanly to zero

  CHECK_THROWS_AS(closed_range_witness(1.0, 0.0, Complex(0, 1), 0.0, {1.0}),
                  Error);
  CHECK_THROWS_AS(closed_range_witness(0.0, 0.0, 0.5, 0.0, {1.0}), Error);
}

TEST_CASE("eigen relation check") {
  // n = 1 is the eigen-equation itself
  const OperatorSpec comp = composition_spec(AffineSymbol(0.5, 0.3));
  const EntireWeight h = EntireWeight::polynomial({Complex(-0.6), Complex(1.0)});
  const std::vector<Complex> zs{Complex(0.0), Complex(1.0), Complex(0, 1)};
  CHECK(eigen_relation_check(comp, 0.5, h, 1, zs) <= 1e-15);
  CHECK(eigen_relation_check(comp, 0.5, h, 4, zs) <= 1e-12);
  // a wrong eigenvalue shows up immediately
  CHECK(eigen_relation_check(comp, 0.55, h, 1, zs) > 1e-3);

  // after centering the critical spec, the constant function is an
  // eigenvector and the weight product telescopes to lambda^n
  const OperatorSpec spec = kernel_spec(0.3, 0.5, 0.3);
  const OperatorSpec centered = weyl_conjugate(spec, Complex(-0.6));
  CHECK(eigen_relation_check(centered, std::exp(0.18), EntireWeight(), 3, zs) <=
        1e-10);

  // eigenpairs of the uncentered spec: K_0.6 and (z-0.6)K_0.6
  CHECK(eigen_relation_check(spec, std::exp(0.18),
                             EntireWeight::scaled_kernel(1.0, 0.6), 3, zs) <=
        1e-10);
  CHECK(eigen_relation_check(
            spec, 0.5 * std::exp(0.18),
            EntireWeight(1.0, {Complex(-0.6), Complex(1.0)}, 0.6), 3, zs) <=
        1e-10);
}

TEST_CASE("bound saturation: radius matches norm exactly on the normaloid set") {
  const OperatorSpec critical = kernel_spec(0.3, 0.5, 0.3);
  const double sigma = singular_norm_at(critical, 64);
  const double radius = spectral_radius_estimate(critical, 64);
  CHECK(std::abs(sigma - radius) <= 1e-6);

  const OperatorSpec off = kernel_spec(0.0, 0.5, 0.3);
  const double sigma_off = singular_norm_at(off, 64);
  const double radius_off = spectral_radius_estimate(off, 64);
  CHECK(sigma_off - radius_off >= 1e-3);
}

TEST_CASE("csv exports carry the documented headers") {
  ConvergenceRecord rec;
  rec.dims = {{8, 44}, {16, 56}};
  rec.values = {1.0, 1.25};
  rec.converged = true;
  rec.final_delta = 0.25;
  std::ostringstream os;
  write_convergence_csv(os, rec);
  CHECK(os.str() == "N,M,value\n8,44,1\n16,56,1.25\n");

  std::ostringstream ws;
  write_witness_csv(ws, {{0.0, 1.0}, {2.0, std::exp(-3.0)}});
  CHECK(ws.str() ==
        "r,g\n0,1\n2,0.049787068367863944\n");
}

TEST_SUITE_END();
