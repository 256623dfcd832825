#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "pspectral/error.hpp"
#include "pspectral/ode_model.hpp"
#include "pspectral/ptrig.hpp"

using namespace pspectral;

TEST_CASE("family names round trip") {
  for (auto f : {ModelFamily::Flat0, ModelFamily::FlatRadial, ModelFamily::HypSinh,
                 ModelFamily::HypExp, ModelFamily::HypCosh}) {
    CHECK(parse_family(to_string(f)) == f);
  }
  CHECK_THROWS_AS(parse_family("cosh"), DomainError);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS((ModelProblem{1.0, 2, 0, 1, ModelFamily::Flat0, 0}.validate()), DomainError);
  CHECK_THROWS_AS((ModelProblem{2.0, 2, 0, -1, ModelFamily::Flat0, 0}.validate()), DomainError);
  CHECK_THROWS_AS((ModelProblem{2.0, 2, 0, 1, ModelFamily::HypCosh, 0}.validate()), DomainError);
}

TEST_CASE("Flat0 crest at pi_p / alpha") {
  for (double p : {1.5, 2.0, 3.0}) {
    const ModelProblem pr{p, 3, 0, 2.0, ModelFamily::Flat0, 0.4};
    const auto r = profile(pr);
    REQUIRE(r.status == ProfileStatus::Finite);
    CHECK(r.delta == doctest::Approx(pi_p(p) / pr.alpha()).epsilon(1e-9));
    CHECK(*r.m == doctest::Approx(1.0).epsilon(1e-7));
  }
}

TEST_CASE("FlatRadial matches -sin t / t") {
  const ModelProblem pr{2, 3, 0, 1, ModelFamily::FlatRadial, 0};
  const auto r = profile(pr);
  const double b = oracle::tan_root();
  CHECK(r.b == doctest::Approx(b).epsilon(1e-9));
  CHECK(*r.m == doctest::Approx(-std::sin(b) / b).epsilon(1e-8));
  const auto& tr = *r.trajectory;
  for (double t = 0.1; t < b; t += 0.3) {
    CHECK(tr.at(t).w == doctest::Approx(-std::sin(t) / t).epsilon(1e-8));
  }
}

TEST_CASE("energy decreases along damped models") {
  const ModelProblem pr{3, 3, -1, 2, ModelFamily::HypSinh, 0.5};
  const auto tr = solve_ivp(pr, 4.0);
  double last = tr.samples().front().e;
  for (const auto& s : tr.samples()) {
    CHECK(s.e <= last + 1e-8);
    last = s.e;
  }
}

TEST_CASE("delta exceeds pi_p / alpha and tends to it") {
  for (double p : {1.5, 2.0, 3.0}) {
    for (double n : {2.0, 3.0}) {
      ModelProblem pr{p, n, 0, 1, ModelFamily::FlatRadial, 0};
      const double limit = pi_p(p) / pr.alpha();
      for (double a : {0.0, 1.0, 5.0}) {
        pr.a = a;
        CHECK(profile(pr).delta > limit + 1e-6);
      }
      pr.a = 1000.0;
      CHECK(std::abs(profile(pr).delta / limit - 1.0) < 0.01);
    }
  }
}

TEST_CASE("oscillation threshold") {
  CHECK(coupling_extremum(2.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(alpha_bar(2, 3, -1) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(alpha_bar(2, 3, 0), DomainError);
  const double lam = 4.0 * 4.0 * 0.5 / 4.0;  // (n-1)^2 (-k) / 4, n = 5, k = -0.5
  CHECK(classify_oscillation(2, 5, -0.5, lam * (1 + 1e-6)) == Oscillation::Oscillatory);
  CHECK(classify_oscillation(2, 5, -0.5, lam * (1 - 1e-6)) == Oscillation::NonOscillatory);
  CHECK(classify_oscillation(2, 5, -0.5, lam) == Oscillation::Critical);
}

TEST_CASE("non-oscillatory profiles have no crest") {
  const ModelProblem pr{1.5, 3, -1, 0.3, ModelFamily::HypSinh, 0};
  CHECK(profile(pr).status == ProfileStatus::Infinite);
}

TEST_CASE("symmetric start gives an odd solution") {
  const double abar = symmetric_start(2, 2, -1, 5);
  CHECK(abar == doctest::Approx(0.6722678881197286).epsilon(1e-9));
  SolverTolerances tight;
  tight.rtol = 1e-12;
  tight.atol = 1e-14;
  for (double p : {1.5, 2.0, 3.0}) {
    const double lam = 6.0;
    const double a = symmetric_start(p, 3, -1, lam, tight);
    const ModelProblem pr{p, 3, -1, lam, ModelFamily::HypCosh, -a};
    const auto tr = solve_ivp(pr, a, tight);
    for (double s = 0.0; s <= a; s += a / 16) {
      CHECK(std::abs(tr.at(s).w + tr.at(-s).w) < 1e-8);
    }
    CHECK(std::abs(tr.at(a).v) < 1e-8);
  }
  CHECK(symmetric_start(2, 1, -1, 4) == doctest::Approx(pi_p(2) / 4).epsilon(1e-14));
}

TEST_CASE("gradient comparison between models") {
  const double lam = 20;
  const ModelProblem exp_model{2, 3, -1, lam, ModelFamily::HypExp, 0};
  const double a = symmetric_start(2, 3, -1, lam);
  const ModelProblem cosh_model{2, 3, -1, lam, ModelFamily::HypCosh, -a};
  const auto r1 = profile(exp_model);
  const auto r2 = profile(cosh_model);
  REQUIRE(r1.status == ProfileStatus::Finite);
  REQUIRE(r2.status == ProfileStatus::Finite);
  const auto rep = compare_models(r1, r2);
  CHECK(rep.max_violation <= 1e-8);
  CHECK(rep.samples > 0);
}
