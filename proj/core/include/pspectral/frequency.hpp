#pragma once

#include <utility>
#include <vector>

#include "pspectral/polynomial.hpp"

namespace pspectral {

/// Gauss-Legendre nodes and weights on [-1, 1] (Golub-Welsch).
std::vector<std::pair<double, double>> gauss_legendre(int m);

/// Product rule on S^{n-1}, n in {2, 3}, exact for polynomials of total
/// degree <= degree. Nodes are stored row by row.
struct SphereRule {
  int n = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return weights.size(); }
};
SphereRule sphere_rule(int n, int degree);

/// int_{S^{n-1}} y^alpha dS in closed form.
double sphere_moment(const MultiIndex& alpha);
/// Exact integrals of a polynomial over S^{n-1} and B_1 via moments.
double sphere_integral_exact(const Polynomial& p);
double ball_integral_exact(const Polynomial& p);

enum class QuadratureMode {
  Auto,     // Product for n in {2, 3}, Moments otherwise
  Product,  // Gauss-Legendre product rules
  Moments   // exact monomial moments
};

/// Mean of p^2 over the unit sphere.
double sphere_mean_square(const Polynomial& p,
                          QuadratureMode mode = QuadratureMode::Auto);

struct FrequencyValues {
  double r;
  double H;     // int_{dB_r(x)} u^2
  double D;     // int_{B_r(x)} |grad u|^2
  double N;     // r D / H
  double Hbar;  // H for u - u(x)
  double Nbar;  // r D / Hbar
};

FrequencyValues frequency_eval(const HarmonicPolynomial& u,
                               const std::vector<double>& x, double r,
                               QuadratureMode mode = QuadratureMode::Auto);

struct FrequencyCurve {
  std::vector<double> center;
  std::vector<FrequencyValues> values;
  int quadrature_degree;  // exactness degree of the sphere rule
  double max_violation_N;     // max over consecutive radii of (N_i - N_{i+1})^+
  double max_violation_Nbar;
  /// max over consecutive radii of
  /// |H_m(r2)/H_m(r1) - exp(2 int_{r1}^{r2} N/s ds)|, H_m = H / r^{n-1}
  double doubling_residual;
  double doubling_residual_rel;
  std::vector<double> drops;  // N(r_{i+1}) - N(r_i)
};

FrequencyCurve frequency_curve(const HarmonicPolynomial& u,
                               const std::vector<double>& x,
                               const std::vector<double>& radii,
                               QuadratureMode mode = QuadratureMode::Auto);

/// T_{x,r}(y) = (u(x + r y) - u(x)) / (mean over S^{n-1} of (u(x+r.) - u(x))^2)^{1/2}
HarmonicPolynomial rescale(const HarmonicPolynomial& u,
                           const std::vector<double>& x, double r);

enum class SymmetryMethod {
  Auto,        // Fourier for n = 2, Homogeneous for n = 3
  Fourier,     // n = 2: trace on the unit circle
  Homogeneous  // degree-d homogeneous components (spherical harmonics)
};

/// Distance of T_{x,r} to normalized homogeneous harmonic polynomials, in
/// mean square on S^{n-1}:
///   dist_d = 2 - 2 (mean of (proj_d T)^2)^{1/2},  measure = min_d dist_d.
/// Arguments are ordered (u, x, r); a polynomial is (eps, r, k, x)-symmetric
/// when the k-measure at (x, r) is <= eps.
struct SymmetryReport {
  std::vector<double> center;
  double scale;
  double measure;  // k = 0
  int best_degree;
  Polynomial best_polynomial;
  std::vector<double> degree_distance;  // index d - 1
  /// (k, measure) for the supported k: 0 and n - 1. k = n - 1 admits only
  /// linear polynomials.
  std::vector<std::pair<int, double>> k_measures;
};

SymmetryReport symmetry_measure(const HarmonicPolynomial& u,
                                const std::vector<double>& x, double r,
                                SymmetryMethod method = SymmetryMethod::Auto);

/// Measure for k-symmetry taken from a report. k >= n has no normalized
/// candidate and returns +inf. Throws DomainError for 0 < k < n - 1.
double k_symmetry_measure(const SymmetryReport& report, int n, int k);

struct StratumTrace {
  double scale;
  double measure;  // (k+1)-symmetry measure at this scale
};

struct StratumReport {
  bool member;
  std::vector<StratumTrace> trace;
};

/// x is in the effective stratum S^k_{eta,r} when at every scale
/// s in {r gamma^{-j}} within [r, 1] the (k+1)-symmetry measure exceeds eta.
StratumReport stratum_membership(const HarmonicPolynomial& u,
                                 const std::vector<double>& x, double eta,
                                 double r, int k, double gamma = 0.5);

}  // namespace pspectral
