#pragma once

#include <optional>

namespace pspectral {

/// Generalized trigonometry for the one-dimensional p-Laplacian.
///
/// sin_p is the inverse of F(s) = int_0^s (1 - |r|^p)^{-1/p} dr on
/// [-pi_p/2, pi_p/2], reflected as sin_p(pi_p - x) on [pi_p/2, 3 pi_p/2] and
/// extended 2 pi_p periodically. cos_p is its derivative, and
/// |sin_p|^p + |cos_p|^p = 1.
///
/// All functions are pure and thread safe.

/// Half period pi_p = 2 pi / (p sin(pi/p)). Throws DomainError if p <= 1.
double pi_p(double p);

/// |w|^q sign(w). signed_pow(0, q) == 0.
double signed_pow(double w, double q);

double sin_p(double p, double x);
double cos_p(double p, double x);

/// Both values at once; cheaper than two separate calls.
struct SinCosP {
  double sin;
  double cos;
};
SinCosP sincos_p(double p, double x);

/// cos_p^{(p-1)}(x) * sin_p(x), the nonlinearity of the Prufer phase equation.
double prufer_coupling(double p, double x);

/// Inverse of sin_p on [-1, 1] -> [-pi_p/2, pi_p/2].
double arcsin_p(double p, double s);

/// Precomputed constants for a fixed exponent.
class PContext {
 public:
  explicit PContext(double p);

  double p() const { return p_; }
  double pi_p() const { return pi_p_; }

  double sin(double x) const { return sin_p(p_, x); }
  double cos(double x) const { return cos_p(p_, x); }

 private:
  double p_;
  double pi_p_;
};

/// p-polar coordinates of a phase-space point: w_scaled = e sin_p(phi) and
/// wdot = e cos_p(phi).
struct PruferPoint {
  double e;
  double phi;
};

/// Without a hint phi lies on the principal branch (-pi_p, pi_p]. With a hint
/// the branch closest to the hint is returned, which keeps phi continuous
/// along a trajectory. Throws DegenerateStateError at (0, 0).
PruferPoint prufer_coords(double p, double w_scaled, double wdot,
                          std::optional<double> phi_hint = std::nullopt);

}  // namespace pspectral
