#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "pspectral/eigen_bounds.hpp"
#include "pspectral/error.hpp"
#include "pspectral/ptrig.hpp"

using namespace pspectral;

namespace {

struct GridValue {
  double n, k, d, lambda;
};

// Neumann shooting of the linear p = 2 model, frozen.
constexpr GridValue kLinearGrid[] = {
    {2, -0.5, 1, 9.625574196323965},  {2, -0.5, 2, 2.23958616699462},
    {2, -0.5, 4, 0.4361165342039015}, {2, -1, 1, 9.392890087281195},
    {2, -1, 2, 2.048504103076545},    {2, -1, 4, 0.3318927212193739},
    {2, -2, 1, 8.958344667978482},    {2, -2, 2, 1.744466136815604},
    {2, -2, 4, 0.2139621080597477},   {3, -0.5, 1, 9.385521188649971},
    {3, -0.5, 2, 2.026425877607231},  {3, -0.5, 4, 0.297577730806143},
    {3, -1, 1, 8.931660146395316},    {3, -1, 2, 1.682043320038551},
    {3, -1, 4, 0.161289601828911},    {3, -2, 1, 8.105703510428924},
    {3, -2, 2, 1.190310923224575},    {3, -2, 4, 0.05743806003390833},
    {5, -0.5, 1, 8.917329186623558},  {5, -0.5, 2, 1.643189295373103},
    {5, -0.5, 4, 0.1243176675778862}, {5, -1, 1, 8.05539435146064},
    {5, -1, 2, 1.096184768768146},    {5, -1, 4, 0.02850917301565884},
    {5, -2, 1, 6.572757181492412},    {5, -2, 2, 0.4972706703115473},
    {5, -2, 4, 0.002281483930975832},
};

}  // namespace

TEST_CASE("k = 0 closed form") {
  CHECK(sharp_gap(2, 3, 0, std::numbers::pi) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sharp_gap(3, 2, 0, 1) == doctest::Approx(2 * std::pow(pi_p(3), 3)).epsilon(1e-13));
  CHECK(sharp_gap_report(3, 2, 0, 1).iterations == 0);
}

TEST_CASE("p = 2 grid against linear shooting") {
  for (const auto& g : kLinearGrid) {
    CAPTURE(g.n);
    CAPTURE(g.k);
    CAPTURE(g.d);
    CHECK(sharp_gap(2, g.n, g.k, g.d) == doctest::Approx(g.lambda).epsilon(1e-8));
  }
  // the frozen table itself against the in-process shooting oracle
  CHECK(oracle::linear_neumann_gap(3, -1, 2) == doctest::Approx(1.682043320038551).epsilon(1e-9));
}

TEST_CASE("monotone in d and k, decreasing in n for k < 0") {
  for (double p : {1.5, 2.0, 3.0}) {
    CHECK(sharp_gap(p, 3, -1, 1) > sharp_gap(p, 3, -1, 2));
    CHECK(sharp_gap(p, 3, -0.5, 2) > sharp_gap(p, 3, -1, 2));
    CHECK(sharp_gap(p, 2, -1, 2) > sharp_gap(p, 3, -1, 2));
    CHECK(sharp_gap(p, 2, 0, 2) == doctest::Approx(sharp_gap(p, 5, 0, 2)).epsilon(1e-15));
  }
}

TEST_CASE("continuity as k tends to 0") {
  for (double p : {1.5, 2.0, 3.0}) {
    const double k0 = sharp_gap(p, 3, 0, 2);
    CHECK(sharp_gap(p, 3, -1e-6, 2) == doctest::Approx(k0).epsilon(1e-5));
  }
}

TEST_CASE("delta_bar inverts sharp_gap") {
  const double d = delta_bar(2, 3, -1, 5);
  CHECK(d == doctest::Approx(1.29341227635).epsilon(1e-9));
  CHECK(sharp_gap(2, 3, -1, d) == doctest::Approx(5.0).epsilon(1e-8));
  CHECK(sharp_gap(3, 2, -0.5, delta_bar(3, 2, -0.5, 2)) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK_THROWS_AS(delta_bar(2, 3, -1, 0.5), DomainError);
}

TEST_CASE("gap eigenfunction is a Neumann crest at d") {
  for (double p : {1.5, 2.0}) {
    const auto r = gap_eigenfunction(p, 3, -1, 2);
    REQUIRE(r.status == ProfileStatus::Finite);
    CHECK(r.delta == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(*r.m == doctest::Approx(1.0).epsilon(1e-7));
  }
}

TEST_CASE("warped product witness") {
  const auto w = sharpness_witness(2, 3, -1, 2, 10);
  CHECK(w.ricci_ok);
  CHECK(w.convex_ok);
  CHECK(w.diameter_bound > 2.0);
  CHECK(w.lambda_bar == doctest::Approx(sharp_gap(2, 3, -1, 2)).epsilon(1e-12));
  double last = sharpness_witness(2, 3, -1, 2, 2).diameter_bound;
  for (int i : {4, 8, 16, 64}) {
    const double db = sharpness_witness(2, 3, -1, 2, i).diameter_bound;
    CHECK(db < last);
    last = db;
  }
  CHECK(last - 2.0 < 0.01);
  const WarpedProduct wp{3, -1, 0.1};
  CHECK(wp.ricci_radial(0.3) == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("bad arguments") {
  CHECK_THROWS_AS(sharp_gap(2, 3, 1, 2), DomainError);
  CHECK_THROWS_AS(sharp_gap(2, 3, -1, -2), DomainError);
  CHECK_THROWS_AS(sharp_gap(1, 3, -1, 2), DomainError);
}
