#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pspectral/error.hpp"
#include "pspectral/ptrig.hpp"

using namespace pspectral;

TEST_CASE("pi_p closed form and values") {
  CHECK(pi_p(2.0) == doctest::Approx(std::numbers::pi).epsilon(1e-15));
  CHECK(pi_p(1.5) == doctest::Approx(4.83679830462458).epsilon(1e-13));
  CHECK(pi_p(3.0) == doctest::Approx(2.41839915231229).epsilon(1e-13));
  for (double p : {1.2, 1.5, 2.0, 3.0, 4.0, 7.0}) {
    CHECK(std::abs(pi_p(p) - oracle::pi_p_quadrature(p)) < 1e-8);
  }
  CHECK_THROWS_AS(pi_p(1.0), DomainError);
  CHECK_THROWS_AS(pi_p(0.5), DomainError);
}

TEST_CASE("signed_pow") {
  CHECK(signed_pow(0.0, 0.5) == 0.0);
  CHECK(signed_pow(0.3, 1.7) == doctest::Approx(0.129153486074980).epsilon(1e-13));
  CHECK(signed_pow(-0.3, 1.7) == doctest::Approx(-0.129153486074980).epsilon(1e-13));
}

TEST_CASE("p-trig identity on a dense grid") {
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const double pp = pi_p(p);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double x = -2.0 * pp + 4.0 * pp * i / 999.0;
      const auto sc = sincos_p(p, x);
      worst = std::max(worst, std::abs(std::pow(std::abs(sc.sin), p) +
                                       std::pow(std::abs(sc.cos), p) - 1.0));
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("p = 2 reduces to sin and cos") {
  for (double x = -7.0; x < 7.0; x += 0.173) {
    CHECK(sin_p(2.0, x) == doctest::Approx(std::sin(x)).epsilon(1e-12));
    CHECK(cos_p(2.0, x) == doctest::Approx(std::cos(x)).epsilon(1e-12));
  }
}

TEST_CASE("symmetries and periodicity") {
  std::mt19937 gen(7);
  for (double p : {1.3, 1.5, 2.5, 4.0}) {
    const double pp = pi_p(p);
    std::uniform_real_distribution<double> dist(-3 * pp, 3 * pp);
    for (int i = 0; i < 200; ++i) {
      const double x = dist(gen);
      CHECK(sin_p(p, -x) == doctest::Approx(-sin_p(p, x)).epsilon(1e-12));
      CHECK(sin_p(p, pp - x) == doctest::Approx(sin_p(p, x)).epsilon(1e-10));
      CHECK(sin_p(p, x + 2 * pp) == doctest::Approx(sin_p(p, x)).epsilon(1e-10));
      CHECK(cos_p(p, -x) == doctest::Approx(cos_p(p, x)).epsilon(1e-10));
    }
    CHECK(sin_p(p, pp / 2) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(cos_p(p, pp / 2)) < 1e-10);
  }
}

TEST_CASE("derivative of sin_p is cos_p") {
  for (double p : {1.5, 2.0, 3.0}) {
    const double pp = pi_p(p);
    for (double x = -0.45 * pp; x < 0.45 * pp; x += 0.05 * pp) {
      const double h = 1e-5;
      const double fd = (sin_p(p, x + h) - sin_p(p, x - h)) / (2 * h);
      CHECK(fd == doctest::Approx(cos_p(p, x)).epsilon(1e-7));
    }
  }
}

TEST_CASE("tabulated inverse agrees with sin_p") {
  for (double p : {1.5, 3.0}) {
    for (const auto& [x, s] : oracle::sin_p_table(p, 200)) {
      CHECK(sin_p(p, x) == doctest::Approx(s).epsilon(1e-11));
    }
  }
  CHECK(sin_p(1.5, 0.7) == doctest::Approx(0.599589865145832).epsilon(1e-12));
}

TEST_CASE("arcsin_p round trip") {
  for (double p : {1.5, 2.0, 3.0}) {
    for (double s = -1.0; s <= 1.0; s += 0.01) {
      CHECK(sin_p(p, arcsin_p(p, s)) == doctest::Approx(s).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(arcsin_p(2.0, 1.5), DomainError);
}

TEST_CASE("prufer coordinates") {
  for (double p : {1.5, 2.0, 3.0}) {
    for (double phi = -3.0; phi <= 3.0; phi += 0.37) {
      const double x = phi * pi_p(p) / 3.2;
      const double e = 1.7;
      const auto pt = prufer_coords(p, e * sin_p(p, x), e * cos_p(p, x));
      CHECK(pt.e == doctest::Approx(e).epsilon(1e-12));
      CHECK(pt.phi == doctest::Approx(x).epsilon(1e-10));
      const auto again = prufer_coords(p, e * sin_p(p, x), e * cos_p(p, x), x + 2 * pi_p(p) + 0.1);
      CHECK(again.phi == doctest::Approx(x + 2 * pi_p(p)).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(prufer_coords(2.0, 0.0, 0.0), DegenerateStateError);
}

TEST_CASE("PContext caches pi_p") {
  PContext ctx(3.0);
  CHECK(ctx.pi_p() == pi_p(3.0));
  CHECK(ctx.sin(0.4) == sin_p(3.0, 0.4));
}
