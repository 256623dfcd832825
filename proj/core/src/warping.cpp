// pchip.hpp in Boost 1.74 uses an unqualified isnan; fpclassify must come first.
#include <boost/math/special_functions/fpclassify.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace boost::math::interpolators {
using boost::math::isnan;
}
#include <boost/math/interpolators/pchip.hpp>

#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "pspectral/error.hpp"
#include "pspectral/model_manifold.hpp"

namespace pspectral {

double unit_sphere_area(int n) {
  if (n < 1) throw DomainError("unit_sphere_area: n must be >= 1");
  const double half = 0.5 * n;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

namespace {

double integrate_piece(const std::function<double(double)>& f, double a,
                       double b, double rel_tol) {
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, 20, rel_tol, &err);
  if (!std::isfinite(v)) {
    throw NumericalError("integrate: non-finite result on [" +
                         std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  if (err > 1e-6 * std::abs(v) + 1e-300) {
    throw NumericalError("integrate: tolerance not met on [" +
                         std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  return v;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
  if (a == b) return 0.0;
  if (b < a) return -integrate(f, b, a, rel_tol);
  // Geometric pieces keep integrands like 1/t or t^{-2} well resolved over
  // long ranges.
  if (a > 0.0 && b / a > 4.0) {
    double sum = 0.0;
    double lo = a;
    while (lo < b) {
      const double hi = std::min(2.0 * lo, b);
      sum += integrate_piece(f, lo, hi, rel_tol);
      lo = hi;
    }
    return sum;
  }
  return integrate_piece(f, a, b, rel_tol);
}

Warping::Warping(int n, Profile sigma, double start, double end,
                 std::string name)
    : n_(n),
      sigma_(std::move(sigma)),
      start_(start),
      end_(end),
      name_(std::move(name)),
      area_constant_(0.0) {
  if (n < 2) throw DomainError("Warping: n must be >= 2");
  if (!sigma_) throw DomainError("Warping: empty sigma handle");
  if (!(end > start)) throw DomainError("Warping: empty domain");
  area_constant_ = unit_sphere_area(n);
}

Warping Warping::euclid(int n) {
  return Warping(n, [](double t) { return t; }, 0.0,
                 std::numeric_limits<double>::infinity(), "euclid");
}

Warping Warping::hyperbolic(int n, double k) {
  if (!(k < 0.0)) throw DomainError("Warping::hyperbolic: requires k < 0");
  const double s = std::sqrt(-k);
  return Warping(n, [s](double t) { return std::sinh(s * t) / s; }, 0.0,
                 std::numeric_limits<double>::infinity(),
                 "hyperbolic(" + std::to_string(k) + ")");
}

Warping Warping::exp_surface(double r0) {
  return Warping(2, [](double t) { return std::exp(-t); }, r0,
                 std::numeric_limits<double>::infinity(), "exp_surface");
}

Warping Warping::table(int n, std::vector<double> t, std::vector<double> sigma) {
  if (t.size() != sigma.size() || t.size() < 4) {
    throw DomainError("Warping::table: need >= 4 matching (t, sigma) samples");
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i > 0 && !(t[i] > t[i - 1])) {
      throw DomainError("Warping::table: t must be strictly increasing");
    }
    if (!(sigma[i] > 0.0) && !(t[i] == 0.0 && sigma[i] == 0.0)) {
      throw DomainError("Warping::table: sigma must be positive");
    }
  }
  const double lo = t.front();
  const double hi = t.back();
  using Pchip = boost::math::interpolators::pchip<std::vector<double>>;
  auto interp = std::make_shared<const Pchip>(std::move(t), std::move(sigma));
  return Warping(n, [interp](double x) { return (*interp)(x); }, lo, hi,
                 "table");
}

Warping Warping::custom(int n, Profile sigma, double domain_start,
                        double domain_end, std::string name) {
  return Warping(n, std::move(sigma), domain_start, domain_end,
                 std::move(name));
}

void Warping::check_t(double t) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(t));
  if (!(t >= start_ - slack) || !(t <= end_ + slack)) {
    throw DomainError("Warping '" + name_ + "': t = " + std::to_string(t) +
                      " outside the domain");
  }
}

double Warping::sigma(double t) const {
  check_t(t);
  return sigma_(t);
}

double Warping::area(double t) const {
  return area_constant_ * std::pow(sigma(t), n_ - 1);
}

double Warping::volume(double t) const {
  return shell_volume(start_, t);
}

double Warping::shell_volume(double r1, double r2) const {
  check_t(r1);
  check_t(r2);
  return integrate([this](double s) { return area(s); }, r1, r2);
}

double Warping::a_p(double p, double t) const {
  if (!(p > 1.0)) throw DomainError("a_p: p must be > 1");
  return std::pow(area(t), -1.0 / (p - 1.0));
}

}  // namespace pspectral
