#include "pspectral/eigen_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pspectral/error.hpp"
#include "pspectral/ptrig.hpp"

namespace pspectral {

namespace {

constexpr double kAlphaTol = 1e-10;
constexpr int kMaxBisection = 400;

void check_gap_args(double p, double n, double k, double d) {
  if (!(p > 1.0)) throw DomainError("sharp_gap: p must be > 1");
  if (!(n >= 1.0)) throw DomainError("sharp_gap: n must be >= 1");
  if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("sharp_gap: d must be > 0");
  if (k > 0.0) throw DomainError("sharp_gap: k > 0 is not supported");
  if (!std::isfinite(k)) throw DomainError("sharp_gap: k must be finite");
}

SolverTolerances shooting_tolerances() {
  SolverTolerances tol;
  tol.rtol = 1e-12;
  tol.atol = 1e-14;
  return tol;
}

}  // namespace

SharpGapResult sharp_gap_report(double p, double n, double k, double d) {
  check_gap_args(p, n, k, d);
  const double pip = pi_p(p);
  const double half = 0.5 * pip;
  if (k == 0.0) {
    const double alpha = pip / d;
    return {p, n, k, d, (p - 1.0) * std::pow(alpha, p), alpha, 0};
  }

  const auto tol = shooting_tolerances();
  auto excess = [&](double alpha) {
    return hypcosh_phase(p, n, k, alpha, 0.5 * d, tol) - half;
  };
  // phidot >= alpha while phi is in [0, pi_p/2], so alpha = pi_p/d overshoots.
  double hi = pip / d;
  double lo = 0.5 * hi;
  int iterations = 0;
  while (excess(lo) >= 0.0) {
    hi = lo;
    lo *= 0.5;
    if (++iterations > 200) {
      throw NumericalError("sharp_gap: could not bracket the eigenvalue");
    }
  }
  while (hi - lo > kAlphaTol) {
    if (++iterations > kMaxBisection) {
      throw NumericalError("sharp_gap: bisection did not converge");
    }
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) >= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double alpha = 0.5 * (lo + hi);
  return {p, n, k, d, (p - 1.0) * std::pow(alpha, p), alpha, iterations};
}

double sharp_gap(double p, double n, double k, double d) {
  return sharp_gap_report(p, n, k, d).lambda_bar;
}

double delta_bar(double p, double n, double k, double lambda) {
  if (!(k < 0.0)) throw DomainError("delta_bar: requires k < 0");
  if (!(lambda > 0.0)) throw DomainError("delta_bar: lambda must be > 0");
  if (n > 1.0 &&
      classify_oscillation(p, n, k, lambda) == Oscillation::NonOscillatory) {
    throw DomainError("delta_bar: model is non-oscillatory, diameter is infinite");
  }
  return 2.0 * symmetric_start(p, n, k, lambda, shooting_tolerances());
}

ProfileResult gap_eigenfunction(double p, double n, double k, double d) {
  const double lambda = sharp_gap(p, n, k, d);
  ModelProblem pr;
  pr.p = p;
  pr.n = n;
  pr.k = k;
  pr.lambda = lambda;
  pr.family = k < 0.0 ? ModelFamily::HypCosh : ModelFamily::Flat0;
  pr.a = -0.5 * d;
  return profile(pr, 1.5 * d, shooting_tolerances());
}

double WarpedProduct::f(double t) const {
  return scale * std::cosh(std::sqrt(-k) * t);
}

double WarpedProduct::fdot(double t) const {
  const double s = std::sqrt(-k);
  return scale * s * std::sinh(s * t);
}

double WarpedProduct::fddot(double t) const {
  return -k * f(t);
}

double WarpedProduct::ricci_radial(double t) const {
  return -(n - 1.0) * fddot(t) / f(t);
}

double WarpedProduct::ricci_fiber(double t) const {
  const double ft = f(t);
  const double fd = fdot(t);
  return -fddot(t) / ft + (n - 2.0) * (1.0 - fd * fd) / (ft * ft);
}

double WarpedProduct::second_fundamental_form(double t) const {
  return fdot(t) * f(t);
}

WitnessReport sharpness_witness(double p, double n, double k, double d, int i,
                                std::size_t samples) {
  check_gap_args(p, n, k, d);
  if (i < 1) throw DomainError("sharpness_witness: i must be >= 1");
  if (samples < 2) throw DomainError("sharpness_witness: need >= 2 samples");

  const auto gap = sharp_gap_report(p, n, k, d);
  const WarpedProduct wp{n, k, 1.0 / i};
  const double tau_half = std::cosh(std::sqrt(-k) * 0.5 * d);
  const double pi = std::numbers::pi;

  WitnessReport r{};
  r.p = p;
  r.n = n;
  r.k = k;
  r.d = d;
  r.i = i;
  r.diameter_bound =
      std::sqrt(d * d + pi * pi * tau_half * tau_half / (double(i) * i));
  r.lambda_bar = gap.lambda_bar;
  r.alpha = gap.alpha;
  r.ricci_lower = (n - 1.0) * k;
  r.ricci_radial_min = std::numeric_limits<double>::infinity();
  r.ricci_fiber_min = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < samples; ++j) {
    const double t = -0.5 * d + d * double(j) / double(samples - 1);
    r.ricci_radial_min = std::min(r.ricci_radial_min, wp.ricci_radial(t));
    r.ricci_fiber_min = std::min(r.ricci_fiber_min, wp.ricci_fiber(t));
  }
  const double slack = 1e-12 * std::max(1.0, std::abs(r.ricci_lower));
  r.ricci_ok = r.ricci_radial_min >= r.ricci_lower - slack &&
               r.ricci_fiber_min >= r.ricci_lower - slack;
  r.convexity_left = -wp.second_fundamental_form(-0.5 * d);
  r.convexity_right = wp.second_fundamental_form(0.5 * d);
  r.convex_ok = r.convexity_left >= 0.0 && r.convexity_right >= 0.0;
  return r;
}

}  // namespace pspectral
