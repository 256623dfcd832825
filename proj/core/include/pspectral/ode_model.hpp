#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pspectral/detail/dopri5.hpp"

namespace pspectral {

/// Drift families of the one-dimensional comparison equation
///   d/dt (v) = T(t) v - lambda w^{(p-1)},   v = wdot^{(p-1)},
/// equivalently d/dt(mu v) + lambda mu w^{(p-1)} = 0 with (log mu)' = -T.
///
///   Flat0       T = 0                               on R
///   FlatRadial  T = -(n-1)/t                        on (0, inf)
///   HypSinh     T = -(n-1) s coth(s t),  s = sqrt(-k)  on (0, inf)
///   HypExp      T = -(n-1) s                        on R
///   HypCosh     T = -(n-1) s tanh(s t)              on R
enum class ModelFamily { Flat0, FlatRadial, HypSinh, HypExp, HypCosh };

std::string_view to_string(ModelFamily family);
/// Accepts "flat0", "flat-radial", "hyp-sinh", "hyp-exp", "hyp-cosh".
ModelFamily parse_family(std::string_view name);

/// True when the family's domain is (0, inf) rather than R.
bool has_singular_origin(ModelFamily family);
bool requires_negative_curvature(ModelFamily family);

/// T(t). Throws DomainError for t <= 0 on the half-line families.
double drift(ModelFamily family, double n, double k, double t);

/// log mu(t) where mu = tau^{n-1}, tau in {1, t, sinh(st), exp(st), cosh(st)}.
double log_weight(ModelFamily family, double n, double k, double t);

struct ModelProblem {
  double p = 2.0;
  double n = 2.0;  // real dimension >= 1
  double k = 0.0;
  double lambda = 1.0;
  ModelFamily family = ModelFamily::Flat0;
  double a = 0.0;

  /// (lambda / (p-1))^{1/p}
  double alpha() const;
  /// Throws DomainError when the fields are inconsistent.
  void validate() const;
};

struct SolverTolerances {
  double rtol = 1e-10;
  double atol = 1e-12;
  double event_tol = 1e-12;  // in t
};

struct TrajectorySample {
  double t;
  double w;
  double v;  // wdot^{(p-1)}
  double phi;
  double e;
};

enum class TrajectoryStatus { ReachedEvent, ReachedTmax };

/// Solution of the model IVP w(a) = -1, wdot(a) = 0 with the co-integrated
/// Prufer phase. Immutable once built.
class Trajectory {
 public:
  const ModelProblem& problem() const { return problem_; }
  const std::vector<TrajectorySample>& samples() const { return samples_; }
  TrajectoryStatus status() const { return status_; }
  const SolverTolerances& tolerances() const { return tol_; }
  double t_begin() const { return samples_.front().t; }
  double t_end() const { return samples_.back().t; }

  /// Dense evaluation anywhere in [t_begin, t_end].
  TrajectorySample at(double t) const;
  /// wdot at t.
  double wdot(double t) const;

 private:
  friend class TrajectoryBuilder;
  ModelProblem problem_;
  SolverTolerances tol_;
  TrajectoryStatus status_ = TrajectoryStatus::ReachedTmax;
  std::vector<TrajectorySample> samples_;
  std::vector<detail::DenseStep<3>> steps_;
  // Analytic prefix on [a, singular_handoff_] for starts at a singular origin.
  std::optional<double> singular_handoff_;
};

/// Integrates the model IVP on [a, t_end].
Trajectory solve_ivp(const ModelProblem& problem, double t_end,
                     const SolverTolerances& tol = {});

enum class ProfileStatus {
  Finite,               // crest reached at b < inf
  Infinite,             // no crest; the oscillation class rules it out
  CriticalUndetermined  // no crest within the horizon at alpha == alpha_bar
};

std::string_view to_string(ProfileStatus status);

struct ProfileResult {
  double b;      // +inf unless Finite
  double delta;  // b - a
  std::optional<double> m;  // w(b) when Finite
  ProfileStatus status;
  std::shared_ptr<const Trajectory> trajectory;
};

/// Default search horizon for profile().
double default_profile_horizon(const ModelProblem& problem);

/// First crest b > a where wdot(b) = 0, i.e. phi(b) = pi_p/2. Throws
/// InconclusiveError when the horizon is exhausted on an oscillatory instance.
ProfileResult profile(const ModelProblem& problem,
                      std::optional<double> t_max = std::nullopt,
                      const SolverTolerances& tol = {});

/// Damping threshold (n-1) l sqrt(-k) / (p-1), where -l is the minimum of
/// cos_p^{(p-1)}(psi) sin_p(psi) on [-pi_p/2, 0].
double alpha_bar(double p, double n, double k);

/// The constant l above, found by 1D maximization.
double coupling_extremum(double p);

enum class Oscillation { Oscillatory, Critical, NonOscillatory };
std::string_view to_string(Oscillation o);

Oscillation classify_oscillation(double p, double n, double k, double lambda);

/// Prufer phase of the cosh model started at phi(0) = 0, evaluated at t
/// (t may be negative). Shared by the odd-solution and sharp-gap shooting.
double hypcosh_phase(double p, double n, double k, double alpha, double t,
                     const SolverTolerances& tol = {});

/// a_bar > 0 such that the cosh-model solution started at -a_bar is odd.
double symmetric_start(double p, double n, double k, double lambda,
                       const SolverTolerances& tol = {});

struct ComparisonReport {
  double max_violation = 0.0;  // max over s of |w1'| - |w2'|, clipped at 0
  double max_abs_difference = 0.0;
  double s_min = 0.0;
  double s_max = 0.0;
  std::size_t samples = 0;
};

/// Checks |w1'|(w1^{-1}(s)) <= |w2'|(w2^{-1}(s)) on a grid of shared values s.
/// Requires both profiles finite and w1[a1,b1] contained in w2[a2,b2].
ComparisonReport compare_models(const ProfileResult& sol1,
                                const ProfileResult& sol2,
                                std::size_t grid_points = 256);

}  // namespace pspectral
