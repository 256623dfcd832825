#pragma once

#include <cstddef>
#include <vector>

#include "pspectral/ode_model.hpp"

namespace pspectral {

struct SharpGapResult {
  double p;
  double n;
  double k;
  double d;
  double lambda_bar;
  double alpha;
  int iterations;  // bisection steps; 0 for the closed form at k = 0
};

/// Sharp lower bound for the first nontrivial Neumann eigenvalue of the
/// p-Laplacian under Ric >= (n-1)k and diameter d.
///
/// k = 0: (p-1)(pi_p/d)^p. k < 0: the Neumann eigenvalue of the cosh model on
/// [-d/2, d/2], found by bisection in alpha on phi(d/2) = pi_p/2.
SharpGapResult sharp_gap_report(double p, double n, double k, double d);
double sharp_gap(double p, double n, double k, double d);

/// Smallest model diameter at eigenvalue lambda, 2 * symmetric_start.
/// Throws DomainError when the model does not oscillate.
double delta_bar(double p, double n, double k, double lambda);

/// Model eigenfunction on [-d/2, d/2] at lambda_bar, profiled from -d/2.
ProfileResult gap_eigenfunction(double p, double n, double k, double d);

/// Warped product [-d/2, d/2] x_f S^{n-1} with f = cosh(sqrt(-k) t) / i.
struct WarpedProduct {
  double n;
  double k;
  double scale;  // 1/i

  double f(double t) const;
  double fdot(double t) const;
  double fddot(double t) const;
  /// Ric(dt, dt) = -(n-1) f''/f
  double ricci_radial(double t) const;
  /// Ric(X, X) for a unit fiber vector: -f''/f + (n-2)(1 - f'^2)/f^2
  double ricci_fiber(double t) const;
  /// Second fundamental form of the slice {t} with normal +dt: f' f.
  double second_fundamental_form(double t) const;
};

struct WitnessReport {
  double p;
  double n;
  double k;
  double d;
  int i;
  double diameter_bound;
  double lambda_bar;
  double alpha;
  double ricci_lower;       // (n-1)k
  double ricci_radial_min;  // sampled over [-d/2, d/2]
  double ricci_fiber_min;
  bool ricci_ok;
  double convexity_left;   // II at -d/2 with outward normal -dt
  double convexity_right;  // II at +d/2 with outward normal +dt
  bool convex_ok;
};

WitnessReport sharpness_witness(double p, double n, double k, double d, int i,
                                std::size_t samples = 257);

}  // namespace pspectral
