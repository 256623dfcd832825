#include "pspectral/model_manifold.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "pspectral/error.hpp"

namespace pspectral {

namespace {

constexpr int kDoublings = 20;
constexpr double kSlopeResolution = 1e-3;

void check_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("p must be > 1");
}

void check_radii(const Warping& w, double r1, double r2) {
  if (!(r1 > 0.0) || !(r2 > r1)) {
    throw DomainError("radii must satisfy 0 < r1 < r2");
  }
  if (r1 < w.domain_start() || r2 > w.domain_end()) {
    throw DomainError("radii outside the warping domain");
  }
}

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double nx = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= nx;
  my /= nx;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

double a_p_integral(const Warping& w, double p, double r1, double r2) {
  return integrate([&](double t) { return w.a_p(p, t); }, r1, r2);
}

}  // namespace

double radial_p_harmonic(const Warping& w, double p, double r_bar, double r) {
  check_p(p);
  if (!(r_bar > 0.0) || !(r >= r_bar)) {
    throw DomainError("radial_p_harmonic: requires 0 < r_bar <= r");
  }
  return a_p_integral(w, p, r_bar, r);
}

std::string_view to_string(Parabolicity v) {
  switch (v) {
    case Parabolicity::Parabolic: return "parabolic";
    case Parabolicity::Hyperbolic: return "hyperbolic";
    case Parabolicity::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

ParabolicityReport parabolicity_report(const Warping& w, double p) {
  check_p(p);
  ParabolicityReport rep{Parabolicity::Inconclusive, 0.0, 0.0, {}, {}};
  const double t0 = std::max(1.0, w.domain_start() + 1.0);
  rep.horizons.push_back(t0);
  for (int j = 0; j < kDoublings; ++j) {
    const double lo = rep.horizons.back();
    const double hi = std::min(2.0 * lo, w.domain_end());
    if (!(hi > lo)) break;
    if (!std::isfinite(w.a_p(p, hi))) {
      // a_p overflowed: the integrand grows without bound.
      rep.verdict = Parabolicity::Parabolic;
      rep.geometric_slope = std::numeric_limits<double>::infinity();
      return rep;
    }
    rep.increments.push_back(a_p_integral(w, p, lo, hi));
    rep.horizons.push_back(hi);
    if (hi >= w.domain_end()) break;
  }
  const std::size_t m = rep.increments.size();
  if (m < 6) {
    return rep;  // horizon too short to judge
  }
  const std::size_t first = m / 2;
  std::vector<double> j, lj, llt, li;
  for (std::size_t i = first; i < m; ++i) {
    const double inc = rep.increments[i];
    if (!(inc > 0.0)) {
      rep.verdict = Parabolicity::Hyperbolic;  // underflowed tail
      rep.geometric_slope = -std::numeric_limits<double>::infinity();
      return rep;
    }
    j.push_back(static_cast<double>(i));
    lj.push_back(std::log2(inc));
    llt.push_back(std::log(std::log(rep.horizons[i])));
    li.push_back(std::log(inc));
  }
  rep.geometric_slope = ls_slope(j, lj);
  rep.log_slope = ls_slope(llt, li);
  if (rep.geometric_slope > kSlopeResolution) {
    rep.verdict = Parabolicity::Parabolic;
  } else if (rep.geometric_slope < -kSlopeResolution) {
    rep.verdict = Parabolicity::Hyperbolic;
  } else if (rep.log_slope > -1.0 + kSlopeResolution) {
    // Increments decay no faster than 1/log t: the partial sums diverge.
    rep.verdict = Parabolicity::Parabolic;
  } else if (rep.log_slope < -1.0 - kSlopeResolution) {
    rep.verdict = Parabolicity::Hyperbolic;
  }
  return rep;
}

Parabolicity is_p_parabolic(const Warping& w, double p) {
  return parabolicity_report(w, p).verdict;
}

EvansResult evans(const Warping& w, double p, double r_bar, double t) {
  check_p(p);
  if (!(t > 0.0)) throw DomainError("evans: t must be > 0");
  if (!(r_bar > 0.0) || r_bar < w.domain_start()) {
    throw DomainError("evans: r_bar must be positive and inside the domain");
  }
  if (is_p_parabolic(w, p) != Parabolicity::Parabolic) {
    throw PreconditionError("evans: model is not p-parabolic");
  }
  double acc = 0.0;
  double lo = r_bar;
  double hi = r_bar;
  bool bracketed = false;
  for (int it = 0; it < 4000; ++it) {
    hi = std::min(lo + std::max(lo, 1.0), w.domain_end());
    const double piece = a_p_integral(w, p, lo, hi);
    if (acc + piece >= t) {
      bracketed = true;
      break;
    }
    acc += piece;
    if (hi >= w.domain_end()) break;
    lo = hi;
  }
  if (!bracketed) {
    throw NumericalError("evans: level t not reached, root not bracketed");
  }
  auto g = [&](double r) { return acc + a_p_integral(w, p, lo, r) - t; };
  std::uintmax_t iters = 200;
  const auto root = boost::math::tools::toms748_solve(
      g, lo, hi, g(lo), g(hi), boost::math::tools::eps_tolerance<double>(50),
      iters);
  const double radius = 0.5 * (root.first + root.second);

  EvansResult r;
  r.radius = radius;
  r.cap = std::pow(t, 1.0 - p);
  const double energy = integrate(
      [&](double s) { return std::pow(w.a_p(p, s), p) * w.area(s); }, r_bar,
      radius);
  r.cap_quadrature = std::pow(t, -p) * energy;
  return r;
}

CapacityResult capacity(const Warping& w, double p, double r1, double r2) {
  check_p(p);
  check_radii(w, r1, r2);
  const double f = a_p_integral(w, p, r1, r2);
  CapacityResult r;
  r.area_bound = std::pow(f, 1.0 - p);
  // Energy of the radial minimizer u' = a_p / f.
  r.exact = std::pow(f, -p) *
            integrate([&](double s) { return std::pow(w.a_p(p, s), p) * w.area(s); },
                      r1, r2);
  const double vint = integrate(
      [&](double s) {
        return std::pow((s - r1) / w.shell_volume(r1, s), 1.0 / (p - 1.0));
      },
      r1, r2, 1e-10);
  r.volume_bound = std::pow(2.0, p) * std::pow(vint, 1.0 - p);
  return r;
}

double radial_energy(const Warping& w, double p, double r1, double r2,
                     const std::function<double(double)>& dpsi) {
  check_p(p);
  check_radii(w, r1, r2);
  return integrate(
      [&](double s) { return std::pow(std::abs(dpsi(s)), p) * w.area(s); }, r1,
      r2);
}

CutoffEnergy cutoff_energy(const Warping& w, double p, double r1, double r2) {
  check_p(p);
  check_radii(w, r1, r2);
  const double f = a_p_integral(w, p, r1, r2);
  CutoffEnergy r;
  r.phi_energy = std::pow(f, 1.0 - p);
  r.phi_energy_quadrature =
      radial_energy(w, p, r1, r2, [&](double s) { return -w.a_p(p, s) / f; });
  r.xi_energy_bound = std::pow(1.0 / (r2 - r1), p) * w.shell_volume(r1, r2);
  return r;
}

std::string_view to_string(StokesMode m) {
  return m == StokesMode::AMp ? "AMp" : "VMp";
}

std::string_view to_string(StokesVerdict v) {
  switch (v) {
    case StokesVerdict::Holds: return "holds";
    case StokesVerdict::Fails: return "fails";
    case StokesVerdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

StokesReport stokes_condition(const Warping& w, double p,
                              const std::function<double(double)>& f,
                              StokesMode mode, const std::vector<double>& radii,
                              const std::function<double(double)>& g) {
  check_p(p);
  if (radii.size() < 3) {
    throw DomainError("stokes_condition: need at least 3 radii");
  }
  if (mode == StokesMode::VMp && !g) {
    throw DomainError("stokes_condition: VMp needs a gap function g");
  }
  StokesReport rep{mode, radii, {}, 0.0, StokesVerdict::Inconclusive};
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double R = radii[i];
    if (!(R > 0.0) || (i > 0 && !(R > radii[i - 1]))) {
      throw DomainError("stokes_condition: radii must be positive and increasing");
    }
    const double upper = mode == StokesMode::AMp ? 2.0 * R : R + g(R);
    if (!(upper > R)) throw DomainError("stokes_condition: g must be positive");
    const double num =
        integrate([&](double s) { return f(s) * w.area(s); }, R, upper);
    double den = 0.0;
    if (mode == StokesMode::AMp) {
      den = a_p_integral(w, p, R, upper);
    } else {
      den = integrate(
          [&](double s) { return std::pow(s / w.volume(s), 1.0 / (p - 1.0)); },
          R, upper, 1e-10);
    }
    rep.q.push_back(std::isfinite(den) && den > 0.0 ? num / den : 0.0);
  }

  const std::size_t m = rep.q.size();
  const std::size_t first = m - std::max<std::size_t>(3, m / 3);
  if (rep.q.back() == 0.0) {
    rep.verdict = StokesVerdict::Holds;
    rep.tail_slope = -std::numeric_limits<double>::infinity();
    return rep;
  }
  std::vector<double> lx, ly;
  for (std::size_t i = first; i < m; ++i) {
    if (rep.q[i] != 0.0) {
      lx.push_back(std::log(radii[i]));
      ly.push_back(std::log(std::abs(rep.q[i])));
    }
  }
  if (lx.size() < 2) return rep;
  rep.tail_slope = ls_slope(lx, ly);
  if (rep.tail_slope < -kSlopeResolution &&
      std::abs(rep.q.back()) < std::abs(rep.q[first])) {
    rep.verdict = StokesVerdict::Holds;
  } else if (rep.tail_slope > kSlopeResolution) {
    rep.verdict = StokesVerdict::Fails;
  }
  return rep;
}

}  // namespace pspectral
