#pragma once

#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace pspectral {

/// Spherically symmetric model dr^2 + sigma(r)^2 dtheta^2 in dimension n.
///
/// A(t) = n omega_n sigma(t)^{n-1} is the true area of the geodesic sphere,
/// V(t) the volume from the domain start, a_p(t) = A(t)^{-1/(p-1)}.
/// Immutable; the sigma handle must be safe to call concurrently.
class Warping {
 public:
  using Profile = std::function<double(double)>;

  /// sigma(t) = t
  static Warping euclid(int n);
  /// sigma(t) = sinh(sqrt(-k) t) / sqrt(-k), k < 0
  static Warping hyperbolic(int n, double k);
  /// Surface with sigma(t) = e^{-t} on [r0, inf), so A = 2 pi e^{-t}.
  static Warping exp_surface(double r0 = 0.0);
  /// Monotone cubic interpolation of (t, sigma) samples. The domain is the
  /// table range; t must be strictly increasing and sigma positive except
  /// possibly at t = 0.
  static Warping table(int n, std::vector<double> t, std::vector<double> sigma);
  static Warping custom(int n, Profile sigma, double domain_start = 0.0,
                        double domain_end = std::numeric_limits<double>::infinity(),
                        std::string name = "custom");

  int n() const { return n_; }
  const std::string& name() const { return name_; }
  double domain_start() const { return start_; }
  double domain_end() const { return end_; }

  double sigma(double t) const;
  double area(double t) const;
  /// Volume of the region between the domain start and t.
  double volume(double t) const;
  /// Volume of the shell r1 < r < r2, integrated directly.
  double shell_volume(double r1, double r2) const;
  double a_p(double p, double t) const;

 private:
  Warping(int n, Profile sigma, double start, double end, std::string name);
  void check_t(double t) const;

  int n_;
  Profile sigma_;
  double start_;
  double end_;
  std::string name_;
  double area_constant_;  // n omega_n
};

/// n omega_n, the area of the unit sphere S^{n-1}.
double unit_sphere_area(int n);

/// Adaptive Gauss-Kronrod integral of f on [a, b] (b may be below a). Throws
/// NumericalError when the error estimate is not met or the result is not
/// finite.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12);

/// f_{p,rbar}(r) = int_{rbar}^r a_p.
double radial_p_harmonic(const Warping& w, double p, double r_bar, double r);

enum class Parabolicity { Parabolic, Hyperbolic, Inconclusive };
std::string_view to_string(Parabolicity v);

struct ParabolicityReport {
  Parabolicity verdict;
  double geometric_slope;  // log2 growth of the doubling increments
  double log_slope;        // exponent of the increments against log t
  std::vector<double> horizons;
  std::vector<double> increments;  // int_{T_j}^{T_{j+1}} a_p
};

/// Integral test for int^inf a_p over doubling horizons T0 2^j, j <= 20.
ParabolicityReport parabolicity_report(const Warping& w, double p);
Parabolicity is_p_parabolic(const Warping& w, double p);

struct EvansResult {
  double radius;          // R(t) with f_{p,rbar}(R) = t
  double cap;             // t^{1-p}
  double cap_quadrature;  // int |grad(E/t)|^p dV over {E < t}
};

/// Evans potential level set and condenser capacity cap(B_rbar, {E < t}).
/// Throws PreconditionError on non-parabolic models.
EvansResult evans(const Warping& w, double p, double r_bar, double t);

struct CapacityResult {
  double exact;         // p-energy of the radial potential
  double area_bound;    // (int a_p)^{1-p}
  double volume_bound;  // 2^p (int ((t-r1)/(V(t)-V(r1)))^{1/(p-1)})^{1-p}
};

CapacityResult capacity(const Warping& w, double p, double r1, double r2);

struct CutoffEnergy {
  double phi_energy;             // closed form (int a_p)^{1-p}
  double phi_energy_quadrature;  // int |phi'|^p A
  double xi_energy_bound;        // (1/(r2-r1))^p int A
};

CutoffEnergy cutoff_energy(const Warping& w, double p, double r1, double r2);

/// p-energy int_{r1}^{r2} |psi'(r)|^p A(r) dr of a radial cutoff.
double radial_energy(const Warping& w, double p, double r1, double r2,
                     const std::function<double(double)>& dpsi);

enum class StokesMode { AMp, VMp };
enum class StokesVerdict { Holds, Fails, Inconclusive };
std::string_view to_string(StokesMode m);
std::string_view to_string(StokesVerdict v);

struct StokesReport {
  StokesMode mode;
  std::vector<double> radii;
  std::vector<double> q;
  double tail_slope;  // d log|q| / d log R over the tail
  StokesVerdict verdict;
};

/// q(R) = (int_{B_{R+g}\B_R} f dV)(int_R^{R+g} kernel)^{-1}, with g(R) = R and
/// kernel a_p for AMp, and kernel (t/V(t))^{1/(p-1)} with the supplied g for
/// VMp.
StokesReport stokes_condition(const Warping& w, double p,
                              const std::function<double(double)>& f,
                              StokesMode mode, const std::vector<double>& radii,
                              const std::function<double(double)>& g = {});

}  // namespace pspectral
