#include "pspectral/ptrig.hpp"

#include <boost/math/policies/policy.hpp>
#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <numbers>
#include <string>

#include "pspectral/error.hpp"

namespace pspectral {
namespace {

using NoPromote = boost::math::policies::policy<
    boost::math::policies::promote_double<false>>;

void require_exponent(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw DomainError("p-trig: exponent must satisfy p > 1, got " +
                      std::to_string(p));
  }
}

// The defining integral is an incomplete beta function:
//   F(s) = (pi_p / 2) * I_{s^p}(1/p, 1 - 1/p).
// Inverting it on the quarter period [0, pi_p/2] gives s^p and, from the
// same call, 1 - s^p = cos_p^p. Past the midpoint the complementary inverse
// is used so that cos_p keeps full relative accuracy near the crest.
SinCosP quarter(double p, double half_period, double y) {
  const double a = 1.0 / p;
  const double b = 1.0 - a;
  const double z = y / half_period;
  double sp = 0.0;
  double cp = 1.0;
  if (z <= 0.0) {
    return {0.0, 1.0};
  }
  if (z >= 1.0) {
    return {1.0, 0.0};
  }
  if (z <= 0.5) {
    sp = boost::math::ibeta_inv(a, b, z, &cp, NoPromote());
  } else {
    const double q = (half_period - y) / half_period;
    sp = boost::math::ibetac_inv(a, b, q, &cp, NoPromote());
  }
  return {std::pow(sp, a), std::pow(cp, a)};
}

}  // namespace

double pi_p(double p) {
  require_exponent(p);
  return 2.0 * std::numbers::pi / (p * std::sin(std::numbers::pi / p));
}

double signed_pow(double w, double q) {
  if (w == 0.0) {
    return 0.0;
  }
  const double mag = std::pow(std::abs(w), q);
  return w < 0.0 ? -mag : mag;
}

SinCosP sincos_p(double p, double x) {
  const double period_half = pi_p(p);
  const double quarter_period = 0.5 * period_half;
  const double period = 2.0 * period_half;

  // Reduce to [-pi_p/2, 3 pi_p/2).
  double r = x - period * std::floor((x + quarter_period) / period);
  double cos_sign = 1.0;
  if (r > quarter_period) {
    r = period_half - r;
    cos_sign = -1.0;
  }
  const double sin_sign = r < 0.0 ? -1.0 : 1.0;
  const SinCosP q = quarter(p, quarter_period, std::abs(r));
  return {sin_sign * q.sin, cos_sign * q.cos};
}

double sin_p(double p, double x) { return sincos_p(p, x).sin; }

double cos_p(double p, double x) { return sincos_p(p, x).cos; }

double prufer_coupling(double p, double x) {
  const SinCosP sc = sincos_p(p, x);
  return signed_pow(sc.cos, p - 1.0) * sc.sin;
}

double arcsin_p(double p, double s) {
  require_exponent(p);
  if (!(std::abs(s) <= 1.0)) {
    throw DomainError("arcsin_p: argument outside [-1, 1]");
  }
  const double quarter_period = 0.5 * pi_p(p);
  const double a = 1.0 / p;
  const double sp = std::pow(std::abs(s), p);
  const double x = quarter_period * boost::math::ibeta(a, 1.0 - a, sp, NoPromote());
  return s < 0.0 ? -x : x;
}

PContext::PContext(double p) : p_(p), pi_p_(pspectral::pi_p(p)) {}

PruferPoint prufer_coords(double p, double w_scaled, double wdot,
                          std::optional<double> phi_hint) {
  require_exponent(p);
  const double aw = std::abs(w_scaled);
  const double ad = std::abs(wdot);
  const double scale = std::max(aw, ad);
  if (scale == 0.0) {
    throw DegenerateStateError("prufer_coords: origin of phase space");
  }
  const double sp_raw = std::pow(aw / scale, p);
  const double cp_raw = std::pow(ad / scale, p);
  const double sum = sp_raw + cp_raw;
  const double e = scale * std::pow(sum, 1.0 / p);
  const double sp = sp_raw / sum;
  const double cp = cp_raw / sum;

  const double half_period = pspectral::pi_p(p);
  const double quarter_period = 0.5 * half_period;
  const double a = 1.0 / p;
  double theta = 0.0;
  if (sp <= 0.5) {
    theta = quarter_period * boost::math::ibeta(a, 1.0 - a, sp, NoPromote());
  } else {
    theta = quarter_period -
            quarter_period * boost::math::ibeta(1.0 - a, a, cp, NoPromote());
  }

  double phi = 0.0;
  if (w_scaled >= 0.0) {
    phi = wdot >= 0.0 ? theta : half_period - theta;
  } else {
    phi = wdot >= 0.0 ? -theta : -(half_period - theta);
  }
  if (phi <= -half_period) {
    phi += 2.0 * half_period;
  }

  if (phi_hint) {
    const double period = 2.0 * half_period;
    phi += period * std::round((*phi_hint - phi) / period);
  }
  return {e, phi};
}

}  // namespace pspectral
