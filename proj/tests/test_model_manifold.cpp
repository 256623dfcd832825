#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pspectral/error.hpp"
#include "pspectral/model_manifold.hpp"

using namespace pspectral;
constexpr double pi = std::numbers::pi;

TEST_CASE("areas and volumes") {
  CHECK(unit_sphere_area(2) == doctest::Approx(2 * pi));
  CHECK(unit_sphere_area(3) == doctest::Approx(4 * pi));
  const auto w = Warping::euclid(3);
  CHECK(w.area(2.0) == doctest::Approx(16 * pi).epsilon(1e-14));
  CHECK(w.volume(2.0) == doctest::Approx(32 * pi / 3).epsilon(1e-12));
  CHECK(w.shell_volume(1, 2) == doctest::Approx(28 * pi / 3).epsilon(1e-12));
  const auto h = Warping::hyperbolic(2, -1);
  CHECK(h.area(1.0) == doctest::Approx(2 * pi * std::sinh(1.0)).epsilon(1e-14));
  CHECK_THROWS_AS(Warping::hyperbolic(2, 1), DomainError);
}

TEST_CASE("table warping interpolates") {
  std::vector<double> t, s;
  for (int i = 0; i <= 200; ++i) {
    t.push_back(0.05 * i);
    s.push_back(0.05 * i);
  }
  const auto w = Warping::table(3, t, s);
  CHECK(w.sigma(1.234) == doctest::Approx(1.234).epsilon(1e-12));
  CHECK(capacity(w, 2, 1, 2).exact == doctest::Approx(8 * pi).epsilon(1e-8));
  CHECK_THROWS_AS(Warping::table(3, {0, 1, 0.5}, {0, 1, 2}), DomainError);
}

TEST_CASE("radial p-harmonic function") {
  const auto w = Warping::euclid(2);
  CHECK(radial_p_harmonic(w, 2, 1, std::exp(1.0)) == doctest::Approx(1 / (2 * pi)).epsilon(1e-10));
  CHECK(radial_p_harmonic(w, 2, 1, 1) == 0.0);
  double last = 0;
  for (double r = 1.5; r < 50; r *= 1.5) {
    const double f = radial_p_harmonic(w, 3, 1, r);
    CHECK(f > last);
    last = f;
  }
}

TEST_CASE("parabolicity of R^n") {
  for (int n : {2, 3, 4, 5}) {
    for (double p : {1.5, 2.0, 3.0, 4.0, 5.0, 6.0}) {
      CAPTURE(n);
      CAPTURE(p);
      const auto expected = p >= n ? Parabolicity::Parabolic : Parabolicity::Hyperbolic;
      CHECK(is_p_parabolic(Warping::euclid(n), p) == expected);
    }
  }
  CHECK(is_p_parabolic(Warping::hyperbolic(3, -1), 4) == Parabolicity::Hyperbolic);
  CHECK(is_p_parabolic(Warping::exp_surface(), 1.5) == Parabolicity::Parabolic);
}

TEST_CASE("Evans potential identities") {
  const auto w = Warping::euclid(2);
  const auto e = evans(w, 2, 1, 2);
  CHECK(e.radius == doctest::Approx(std::exp(4 * pi)).epsilon(1e-9));
  CHECK(e.cap == doctest::Approx(0.5));
  for (double p : {1.5, 2.0, 3.0}) {
    for (double t : {0.5, 1.0, 2.0}) {
      const auto r = evans(Warping::exp_surface(), p, 1, t);
      CHECK(std::pow(t, p - 1) * r.cap_quadrature == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
  CHECK_THROWS_AS(evans(Warping::euclid(3), 2, 1, 1), PreconditionError);
}

TEST_CASE("capacity bounds") {
  const auto c = capacity(Warping::euclid(3), 2, 1, 2);
  CHECK(c.exact == doctest::Approx(8 * pi).epsilon(1e-10));
  CHECK(c.area_bound == doctest::Approx(8 * pi).epsilon(1e-10));
  CHECK(c.volume_bound >= c.exact);
  const auto h = capacity(Warping::hyperbolic(3, -1), 3, 0.5, 2);
  CHECK(h.area_bound <= h.exact * (1 + 1e-10));
  CHECK(h.volume_bound >= h.exact);
}

TEST_CASE("cutoff energies on the exp surface") {
  const auto w = Warping::exp_surface();
  const auto c = cutoff_energy(w, 2, 5, 10);
  const double closed = 2 * pi / (std::exp(10.0) - std::exp(5.0));
  CHECK(c.phi_energy == doctest::Approx(closed).epsilon(1e-10));
  CHECK(c.phi_energy_quadrature == doctest::Approx(closed).epsilon(1e-8));
  CHECK(c.phi_energy <= c.xi_energy_bound);
  // the linear cutoff has at least the optimal energy
  const double lin = radial_energy(w, 2, 5, 10, [](double) { return -1.0 / 5.0; });
  CHECK(c.phi_energy <= lin);
}

TEST_CASE("Stokes conditions") {
  const auto f = [](double) { return 1.0; };
  const auto holds = stokes_condition(Warping::exp_surface(), 2, f, StokesMode::AMp,
                                      {1, 2, 4, 8, 16});
  CHECK(holds.verdict == StokesVerdict::Holds);
  const auto fails = stokes_condition(Warping::euclid(2), 2, f, StokesMode::AMp,
                                      {1, 2, 4, 8, 16});
  CHECK(fails.verdict == StokesVerdict::Fails);
  CHECK(fails.tail_slope == doctest::Approx(2.0).epsilon(1e-6));
  const auto v = stokes_condition(Warping::exp_surface(), 2, f, StokesMode::VMp,
                                  {1, 2, 4, 8}, [](double r) { return r; });
  CHECK(v.q.size() == 4);
}
