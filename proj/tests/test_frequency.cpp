#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "corpus.hpp"
#include "pspectral/error.hpp"
#include "pspectral/frequency.hpp"

using namespace pspectral;
constexpr double pi = std::numbers::pi;

TEST_CASE("Gauss-Legendre nodes integrate polynomials") {
  const auto gl = gauss_legendre(8);
  double s = 0;
  for (const auto& [x, w] : gl) s += w * std::pow(x, 14);
  CHECK(s == doctest::Approx(2.0 / 15.0).epsilon(1e-14));
}

TEST_CASE("sphere moments and product rules agree") {
  CHECK(sphere_moment({0, 0}) == doctest::Approx(2 * pi));
  CHECK(sphere_moment({0, 0, 0}) == doctest::Approx(4 * pi));
  CHECK(sphere_moment({2, 0, 0}) == doctest::Approx(4 * pi / 3));
  CHECK(sphere_moment({1, 0}) == 0.0);
  for (const auto& u : corpus::harmonic_corpus()) {
    const auto& p = u.poly();
    CHECK(sphere_mean_square(p, QuadratureMode::Product) ==
          doctest::Approx(sphere_mean_square(p, QuadratureMode::Moments)).epsilon(1e-12));
  }
  const auto x = Polynomial::variable(3, 0);
  CHECK(ball_integral_exact(x * x) == doctest::Approx(4 * pi / 15));
}

TEST_CASE("homogeneous harmonics have constant frequency") {
  for (int n : {2, 3}) {
    for (int d = 1; d <= 5; ++d) {
      const HarmonicPolynomial u(real_power(n, d));
      for (double r : {0.1, 0.5, 2.0}) {
        CHECK(frequency_eval(u, std::vector<double>(n, 0.0), r).N ==
              doctest::Approx(d).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("linear functions") {
  const HarmonicPolynomial u(Polynomial::variable(2, 0));
  const auto v = frequency_eval(u, {0.0, 0.0}, 1.0);
  CHECK(v.H == doctest::Approx(pi));
  CHECK(v.D == doctest::Approx(pi));
  CHECK(v.N == doctest::Approx(1.0));
  const HarmonicPolynomial w(Polynomial::variable(3, 2) + Polynomial::constant(3, 3.0));
  for (double r : {0.2, 1.0, 3.0}) {
    CHECK(frequency_eval(w, {0.1, 0.2, 0.3}, r).Nbar == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("monotonicity and doubling on the corpus") {
  std::vector<double> radii;
  for (int i = 1; i <= 12; ++i) radii.push_back(0.1 * i);
  for (const auto& u : corpus::harmonic_corpus()) {
    const auto c = frequency_curve(u, std::vector<double>(u.dim(), 0.05), radii);
    CHECK(c.max_violation_N <= 1e-8);
    CHECK(c.max_violation_Nbar <= 1e-8);
    CHECK(c.doubling_residual_rel <= 1e-6);
  }
}

TEST_CASE("rescaled polynomial is normalized") {
  const HarmonicPolynomial u(real_power(2, 2) + 0.1 * Polynomial::variable(2, 0));
  const auto t = rescale(u, {0.2, -0.1}, 0.5);
  CHECK(t({0.0, 0.0}) == doctest::Approx(0.0));
  CHECK(sphere_mean_square(t.poly()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(rescale(HarmonicPolynomial(Polynomial::constant(2, 1.0)), {0.0, 0.0}, 1.0),
                  DegenerateStateError);
}

TEST_CASE("symmetry measure") {
  const HarmonicPolynomial u(real_power(2, 2) + 0.3 * real_power(2, 3));
  const double expected = 2 - 2 / std::sqrt(1.09);
  CHECK(symmetry_measure(u, {0, 0}, 1, SymmetryMethod::Fourier).measure ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(symmetry_measure(u, {0, 0}, 1, SymmetryMethod::Homogeneous).measure ==
        doctest::Approx(expected).epsilon(1e-12));
  for (int n : {2, 3}) {
    for (int d = 1; d <= 4; ++d) {
      const HarmonicPolynomial h(imag_power(n, d));
      const auto rep = symmetry_measure(h, std::vector<double>(n, 0.0), 0.7);
      CHECK(rep.measure == 0.0);
      CHECK(rep.best_degree == d);
    }
  }
  const HarmonicPolynomial lin(Polynomial::variable(3, 1));
  const auto rep = symmetry_measure(lin, {0, 0, 0}, 1);
  CHECK(k_symmetry_measure(rep, 3, 2) == doctest::Approx(0.0));
  CHECK(std::isinf(k_symmetry_measure(rep, 3, 3)));
  CHECK_THROWS_AS(k_symmetry_measure(rep, 3, 1), DomainError);
}

TEST_CASE("pinching forces homogeneity") {
  int pinched = 0;
  for (const auto& u : corpus::harmonic_corpus()) {
    const std::vector<double> x(u.dim(), 0.0);
    const double n1 = frequency_eval(u, x, 0.3).Nbar;
    const double n2 = frequency_eval(u, x, 0.9).Nbar;
    if (std::abs(n2 - n1) < 1e-10) {
      ++pinched;
      CHECK(symmetry_measure(u, x, 0.9).measure < 1e-8);
    }
  }
  CHECK(pinched >= 4);
}

TEST_CASE("effective strata") {
  const HarmonicPolynomial u(real_power(2, 2));
  const auto s0 = stratum_membership(u, {0, 0}, 0.5, 0.05, 0);
  CHECK(s0.member);
  CHECK(s0.trace.size() == 5);
  // away from the critical point u looks linear, so it is 1-symmetric
  const auto s1 = stratum_membership(u, {0.8, 0.1}, 0.5, 0.01, 0, 0.5);
  CHECK_FALSE(s1.member);
}
