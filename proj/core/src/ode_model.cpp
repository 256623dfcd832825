#include "pspectral/ode_model.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pspectral/error.hpp"
#include "pspectral/ptrig.hpp"

namespace pspectral {

using detail::DenseStep;
using detail::State;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Analytic hand-off point for starts at a singular origin.
constexpr double kSingularHandoff = 1e-6;
constexpr double kCriticalBand = 1e-9;

double curvature_scale(double k) { return std::sqrt(-k); }

struct ModelRhs {
  double p;
  double n;
  double k;
  double lambda;
  double alpha;
  double inv_pm1;
  ModelFamily family;

  explicit ModelRhs(const ModelProblem& pr)
      : p(pr.p),
        n(pr.n),
        k(pr.k),
        lambda(pr.lambda),
        alpha(pr.alpha()),
        inv_pm1(1.0 / (pr.p - 1.0)),
        family(pr.family) {}

  void operator()(double t, const State<3>& y, State<3>& dy) const {
    const double T = drift(family, n, k, t);
    dy[0] = signed_pow(y[1], inv_pm1);
    dy[1] = T * y[1] - lambda * signed_pow(y[0], p - 1.0);
    dy[2] = alpha - T * inv_pm1 * prufer_coupling(p, y[2]);
  }
};

TrajectorySample make_sample(const ModelProblem& pr, double t,
                             const State<3>& y) {
  const double p = pr.p;
  const double wdot = signed_pow(y[1], 1.0 / (p - 1.0));
  const double aw = pr.alpha() * std::abs(y[0]);
  const double ad = std::abs(wdot);
  const double scale = std::max(aw, ad);
  double e = 0.0;
  if (scale > 0.0) {
    e = scale *
        std::pow(std::pow(aw / scale, p) + std::pow(ad / scale, p), 1.0 / p);
  }
  return {t, y[0], y[1], y[2], e};
}

// Leading-order behaviour at a singular origin: v ~ lambda t / n, so
// w ~ -1 + ((p-1)/p) (lambda/n)^{1/(p-1)} t^{p/(p-1)}.
State<3> singular_series(const ModelProblem& pr, double t) {
  const double p = pr.p;
  const double c = std::pow(pr.lambda / pr.n, 1.0 / (p - 1.0));
  const double w = -1.0 + (p - 1.0) / p * c * std::pow(t, p / (p - 1.0));
  const double v = pr.lambda * t / pr.n;
  const double wdot = signed_pow(v, 1.0 / (p - 1.0));
  const double half = 0.5 * pi_p(p);
  double phi = -half;
  if (t > 0.0) {
    phi = prufer_coords(p, pr.alpha() * w, wdot, -half).phi;
  }
  return {w, v, phi};
}

}  // namespace

std::string_view to_string(ModelFamily family) {
  switch (family) {
    case ModelFamily::Flat0: return "flat0";
    case ModelFamily::FlatRadial: return "flat-radial";
    case ModelFamily::HypSinh: return "hyp-sinh";
    case ModelFamily::HypExp: return "hyp-exp";
    case ModelFamily::HypCosh: return "hyp-cosh";
  }
  return "unknown";
}

ModelFamily parse_family(std::string_view name) {
  for (auto f : {ModelFamily::Flat0, ModelFamily::FlatRadial,
                 ModelFamily::HypSinh, ModelFamily::HypExp,
                 ModelFamily::HypCosh}) {
    if (to_string(f) == name) {
      return f;
    }
  }
  throw DomainError("unknown model family '" + std::string(name) + "'");
}

bool has_singular_origin(ModelFamily family) {
  return family == ModelFamily::FlatRadial || family == ModelFamily::HypSinh;
}

bool requires_negative_curvature(ModelFamily family) {
  return family == ModelFamily::HypSinh || family == ModelFamily::HypExp ||
         family == ModelFamily::HypCosh;
}

double drift(ModelFamily family, double n, double k, double t) {
  if (has_singular_origin(family) && !(t > 0.0)) {
    throw DomainError("drift: t must be positive for " +
                      std::string(to_string(family)));
  }
  switch (family) {
    case ModelFamily::Flat0:
      return 0.0;
    case ModelFamily::FlatRadial:
      return -(n - 1.0) / t;
    case ModelFamily::HypSinh: {
      const double s = curvature_scale(k);
      return -(n - 1.0) * s / std::tanh(s * t);
    }
    case ModelFamily::HypExp:
      return -(n - 1.0) * curvature_scale(k);
    case ModelFamily::HypCosh: {
      const double s = curvature_scale(k);
      return -(n - 1.0) * s * std::tanh(s * t);
    }
  }
  return 0.0;
}

double log_weight(ModelFamily family, double n, double k, double t) {
  if (has_singular_origin(family) && !(t > 0.0)) {
    throw DomainError("log_weight: t must be positive for " +
                      std::string(to_string(family)));
  }
  switch (family) {
    case ModelFamily::Flat0:
      return 0.0;
    case ModelFamily::FlatRadial:
      return (n - 1.0) * std::log(t);
    case ModelFamily::HypSinh: {
      const double s = curvature_scale(k);
      const double x = s * t;
      // log sinh x without overflow
      const double ls = x > 20.0 ? x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x))
                                 : std::log(std::sinh(x));
      return (n - 1.0) * ls;
    }
    case ModelFamily::HypExp:
      return (n - 1.0) * curvature_scale(k) * t;
    case ModelFamily::HypCosh: {
      const double x = std::abs(curvature_scale(k) * t);
      return (n - 1.0) * (x - std::log(2.0) + std::log1p(std::exp(-2.0 * x)));
    }
  }
  return 0.0;
}

double ModelProblem::alpha() const {
  return std::pow(lambda / (p - 1.0), 1.0 / p);
}

void ModelProblem::validate() const {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw DomainError("model problem: p must be > 1");
  }
  if (!(n >= 1.0) || !std::isfinite(n)) {
    throw DomainError("model problem: n must be >= 1");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("model problem: lambda must be > 0");
  }
  if (!std::isfinite(a)) {
    throw DomainError("model problem: start point must be finite");
  }
  if (requires_negative_curvature(family)) {
    if (!(k < 0.0)) {
      throw DomainError("model problem: family " +
                        std::string(to_string(family)) + " requires k < 0");
    }
  } else if (k != 0.0) {
    throw DomainError("model problem: family " +
                      std::string(to_string(family)) + " requires k = 0");
  }
  if (has_singular_origin(family) && a < 0.0) {
    throw DomainError("model problem: start must be >= 0 for " +
                      std::string(to_string(family)));
  }
}

// ---------------------------------------------------------------------------

class TrajectoryBuilder {
 public:
  static Trajectory build(const ModelProblem& pr, double t_end,
                          const SolverTolerances& tol, bool stop_at_crest,
                          bool& crest_found, double& crest_t) {
    pr.validate();
    if (!(t_end > pr.a)) {
      throw DomainError("solve_ivp: t_end must exceed the start point");
    }
    Trajectory traj;
    traj.problem_ = pr;
    traj.tol_ = tol;
    crest_found = false;
    crest_t = kInf;

    const double half = 0.5 * pi_p(pr.p);
    const double alpha = pr.alpha();
    State<3> y{-1.0, 0.0, -half};
    double t0 = pr.a;
    traj.samples_.push_back({pr.a, -1.0, 0.0, -half, alpha});

    if (has_singular_origin(pr.family) && pr.a == 0.0) {
      t0 = std::min(kSingularHandoff, 0.5 * t_end);
      y = singular_series(pr, t0);
      traj.singular_handoff_ = t0;
      traj.samples_.push_back(make_sample(pr, t0, y));
    }

    detail::StepperOptions opt;
    opt.rtol = tol.rtol;
    opt.atol = tol.atol;

    ModelRhs rhs(pr);
    auto observer = [&](const DenseStep<3>& step) {
      traj.steps_.push_back(step);
      if (stop_at_crest && step.y0[2] < half && step.y1[2] >= half) {
        const double tc = detail::locate_root(
            step, [half](const State<3>& s) { return s[2] - half; },
            tol.event_tol);
        crest_found = true;
        crest_t = tc;
        State<3> yc = step.at(tc);
        yc[2] = half;
        traj.samples_.push_back(make_sample(pr, tc, yc));
        return true;
      }
      traj.samples_.push_back(make_sample(pr, step.t1(), step.y1));
      return false;
    };
    detail::integrate<3>(rhs, t0, y, t_end, opt, observer);
    traj.status_ = crest_found ? TrajectoryStatus::ReachedEvent
                               : TrajectoryStatus::ReachedTmax;
    return traj;
  }

  static State<3> state_at(const Trajectory& traj, double t) {
    if (traj.singular_handoff_ && t <= *traj.singular_handoff_) {
      return singular_series(traj.problem_, std::max(t, 0.0));
    }
    if (traj.steps_.empty()) {
      const auto& s = traj.samples_.front();
      return {s.w, s.v, s.phi};
    }
    auto it = std::upper_bound(
        traj.steps_.begin(), traj.steps_.end(), t,
        [](double x, const DenseStep<3>& s) { return x < s.t0; });
    if (it != traj.steps_.begin()) {
      --it;
    }
    return it->at(std::clamp(t, it->t0, it->t1()));
  }
};

TrajectorySample Trajectory::at(double t) const {
  if (t < t_begin() || t > t_end()) {
    throw DomainError("Trajectory::at: t outside the integrated interval");
  }
  return make_sample(problem_, t, TrajectoryBuilder::state_at(*this, t));
}

double Trajectory::wdot(double t) const {
  return signed_pow(at(t).v, 1.0 / (problem_.p - 1.0));
}

Trajectory solve_ivp(const ModelProblem& problem, double t_end,
                     const SolverTolerances& tol) {
  bool found = false;
  double tc = 0.0;
  return TrajectoryBuilder::build(problem, t_end, tol, false, found, tc);
}

std::string_view to_string(ProfileStatus status) {
  switch (status) {
    case ProfileStatus::Finite: return "finite";
    case ProfileStatus::Infinite: return "infinite";
    case ProfileStatus::CriticalUndetermined: return "critical_undetermined";
  }
  return "unknown";
}

double default_profile_horizon(const ModelProblem& pr) {
  const double alpha = pr.alpha();
  const double pip = pi_p(pr.p);
  double horizon = 4.0 * std::max(pr.n, 1.0) * pip / alpha;
  if (requires_negative_curvature(pr.family) && pr.n > 1.0) {
    // Above the threshold phidot >= alpha - alpha_bar on the relevant arc.
    const double gap = alpha - alpha_bar(pr.p, pr.n, pr.k);
    if (gap > 0.0) {
      horizon += 2.0 * pip / gap;
    } else {
      horizon *= 4.0;
    }
    horizon += 2.0 * std::abs(pr.a);
  }
  return pr.a + horizon;
}

ProfileResult profile(const ModelProblem& pr, std::optional<double> t_max,
                      const SolverTolerances& tol) {
  pr.validate();
  const double horizon = t_max ? *t_max : default_profile_horizon(pr);
  bool found = false;
  double tc = kInf;
  auto traj = std::make_shared<const Trajectory>(
      TrajectoryBuilder::build(pr, horizon, tol, true, found, tc));
  if (found) {
    const double m = traj->samples().back().w;
    return {tc, tc - pr.a, m, ProfileStatus::Finite, traj};
  }
  if (!requires_negative_curvature(pr.family) || pr.n == 1.0) {
    throw InconclusiveError(
        "profile: no crest before t_max on an oscillatory model; raise t_max");
  }
  switch (classify_oscillation(pr.p, pr.n, pr.k, pr.lambda)) {
    case Oscillation::Oscillatory:
      throw InconclusiveError(
          "profile: no crest before t_max although alpha > alpha_bar");
    case Oscillation::Critical:
      return {kInf, kInf, std::nullopt, ProfileStatus::CriticalUndetermined,
              traj};
    case Oscillation::NonOscillatory:
      break;
  }
  return {kInf, kInf, std::nullopt, ProfileStatus::Infinite, traj};
}

double coupling_extremum(double p) {
  const double half = 0.5 * pi_p(p);
  auto f = [p](double psi) { return prufer_coupling(p, psi); };
  const auto [psi_min, value] = boost::math::tools::brent_find_minima(
      f, -half, 0.0, std::numeric_limits<double>::digits);
  (void)psi_min;
  return -value;
}

double alpha_bar(double p, double n, double k) {
  if (!(k < 0.0)) {
    throw DomainError("alpha_bar: requires k < 0");
  }
  if (!(n > 1.0)) {
    throw DomainError("alpha_bar: requires n > 1");
  }
  return (n - 1.0) * coupling_extremum(p) * std::sqrt(-k) / (p - 1.0);
}

std::string_view to_string(Oscillation o) {
  switch (o) {
    case Oscillation::Oscillatory: return "oscillatory";
    case Oscillation::Critical: return "critical";
    case Oscillation::NonOscillatory: return "non_oscillatory";
  }
  return "unknown";
}

Oscillation classify_oscillation(double p, double n, double k, double lambda) {
  const double threshold = alpha_bar(p, n, k);
  const double alpha = std::pow(lambda / (p - 1.0), 1.0 / p);
  if (std::abs(alpha - threshold) <= kCriticalBand * threshold) {
    return Oscillation::Critical;
  }
  return alpha > threshold ? Oscillation::Oscillatory
                           : Oscillation::NonOscillatory;
}

namespace {

struct CoshPhaseRhs {
  double p;
  double coupling_scale;  // (n-1) sqrt(-k) / (p-1)
  double s;
  double alpha;
  void operator()(double t, const State<1>& y, State<1>& dy) const {
    dy[0] = alpha + coupling_scale * std::tanh(s * t) * prufer_coupling(p, y[0]);
  }
};

CoshPhaseRhs cosh_rhs(double p, double n, double k, double alpha) {
  if (!(p > 1.0)) {
    throw DomainError("cosh model: p must be > 1");
  }
  if (!(n >= 1.0)) {
    throw DomainError("cosh model: n must be >= 1");
  }
  if (!(k <= 0.0)) {
    throw DomainError("cosh model: requires k <= 0");
  }
  const double s = std::sqrt(-k);
  return {p, (n - 1.0) * s / (p - 1.0), s, alpha};
}

}  // namespace

double hypcosh_phase(double p, double n, double k, double alpha, double t,
                     const SolverTolerances& tol) {
  CoshPhaseRhs rhs = cosh_rhs(p, n, k, alpha);
  detail::StepperOptions opt;
  opt.rtol = tol.rtol;
  opt.atol = tol.atol;
  const auto end = detail::integrate<1>(rhs, 0.0, State<1>{0.0}, t, opt,
                                        [](const DenseStep<1>&) { return false; });
  return end.y[0];
}

double symmetric_start(double p, double n, double k, double lambda,
                       const SolverTolerances& tol) {
  if (!(lambda > 0.0)) {
    throw DomainError("symmetric_start: lambda must be > 0");
  }
  const double alpha = std::pow(lambda / (p - 1.0), 1.0 / p);
  const double half = 0.5 * pi_p(p);
  CoshPhaseRhs rhs = cosh_rhs(p, n, k, alpha);
  if (n == 1.0 || k == 0.0) {
    return half / alpha;
  }
  detail::StepperOptions opt;
  opt.rtol = tol.rtol;
  opt.atol = tol.atol;
  // phi' >= alpha on the way down, so the crossing lies in [-pi_p/(2 alpha), 0].
  const double t_stop = -1.5 * half / alpha;
  double crossing = std::numeric_limits<double>::quiet_NaN();
  auto observer = [&](const DenseStep<1>& step) {
    if (step.y1[0] <= -half) {
      crossing = detail::locate_root(
          step, [half](const State<1>& s) { return s[0] + half; },
          tol.event_tol);
      return true;
    }
    return false;
  };
  detail::integrate<1>(rhs, 0.0, State<1>{0.0}, t_stop, opt, observer);
  if (!std::isfinite(crossing)) {
    throw NumericalError("symmetric_start: phase never reached -pi_p/2");
  }
  return -crossing;
}

namespace {

// Inverse of the increasing branch of w on [a, b].
double invert_increasing(const Trajectory& traj, double a, double b, double s) {
  double lo = a;
  double hi = b;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi));
       ++it) {
    const double mid = 0.5 * (lo + hi);
    if (traj.at(mid).w < s) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ComparisonReport compare_models(const ProfileResult& sol1,
                                const ProfileResult& sol2,
                                std::size_t grid_points) {
  if (sol1.status != ProfileStatus::Finite ||
      sol2.status != ProfileStatus::Finite || !sol1.trajectory ||
      !sol2.trajectory) {
    throw PreconditionError("compare_models: both profiles must be finite");
  }
  const ModelProblem& p1 = sol1.trajectory->problem();
  const ModelProblem& p2 = sol2.trajectory->problem();
  if (p1.p != p2.p || p1.lambda != p2.lambda || p1.n != p2.n || p1.k != p2.k) {
    throw PreconditionError(
        "compare_models: models must share p, n, k and lambda");
  }
  const double m1 = *sol1.m;
  const double m2 = *sol2.m;
  constexpr double kRangeSlack = 1e-9;
  if (m1 > m2 + kRangeSlack) {
    throw PreconditionError(
        "compare_models: range of the first model is not contained in the "
        "second (" + std::to_string(m1) + " > " + std::to_string(m2) + ")");
  }
  if (grid_points == 0) {
    throw DomainError("compare_models: grid_points must be positive");
  }

  ComparisonReport report;
  report.s_min = -1.0;
  report.s_max = m1;
  report.samples = grid_points;
  const double a1 = p1.a, a2 = p2.a;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double s =
        -1.0 + (m1 + 1.0) * (static_cast<double>(i) + 0.5) / grid_points;
    const double t1 = invert_increasing(*sol1.trajectory, a1, sol1.b, s);
    const double t2 = invert_increasing(*sol2.trajectory, a2, sol2.b, s);
    const double d1 = std::abs(sol1.trajectory->wdot(t1));
    const double d2 = std::abs(sol2.trajectory->wdot(t2));
    report.max_violation = std::max(report.max_violation, d1 - d2);
    report.max_abs_difference =
        std::max(report.max_abs_difference, std::abs(d1 - d2));
  }
  return report;
}

}  // namespace pspectral
