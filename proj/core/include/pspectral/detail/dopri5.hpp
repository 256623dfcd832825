#pragma once

// Dormand-Prince 5(4) with the 4th-order continuous extension of Hairer,
// Norsett & Wanner. Integrates forward or backward; every accepted step is
// handed to an observer as a DenseStep so callers can localize events.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "pspectral/error.hpp"

namespace pspectral::detail {

struct StepperOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double initial_step = 0.0;  // 0 selects automatically
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 2'000'000;
};

template <std::size_t N>
using State = std::array<double, N>;

template <std::size_t N>
struct DenseStep {
  double t0 = 0.0;
  double h = 0.0;
  State<N> y0{};
  State<N> y1{};
  std::array<State<N>, 5> cont{};

  double t1() const { return t0 + h; }

  State<N> at(double t) const {
    const double theta = (t - t0) / h;
    const double theta1 = 1.0 - theta;
    State<N> y{};
    for (std::size_t i = 0; i < N; ++i) {
      y[i] = cont[0][i] +
             theta * (cont[1][i] +
                      theta1 * (cont[2][i] +
                                theta * (cont[3][i] + theta1 * cont[4][i])));
    }
    return y;
  }

  bool contains(double t) const {
    return h > 0.0 ? (t >= t0 && t <= t0 + h) : (t <= t0 && t >= t0 + h);
  }
};

template <std::size_t N>
struct IntegrationEnd {
  double t = 0.0;
  State<N> y{};
  bool stopped_by_observer = false;
  std::size_t steps = 0;
};

namespace dp {
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                        a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113,
                        a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                        a76 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                        e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;
inline constexpr double d1 = -12715105075.0 / 11282082432.0,
                        d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0,
                        d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0,
                        d7 = 69997945.0 / 29380423.0;
}  // namespace dp

/// Integrates y' = rhs(t, y) from t_start to t_end. `rhs` has signature
/// void(double t, const State<N>& y, State<N>& dydt). `observer` has
/// signature bool(const DenseStep<N>&) and returns true to stop early.
template <std::size_t N, typename Rhs, typename Observer>
IntegrationEnd<N> integrate(Rhs&& rhs, double t_start, const State<N>& y_start,
                            double t_end, const StepperOptions& opt,
                            Observer&& observer) {
  IntegrationEnd<N> end;
  end.t = t_start;
  end.y = y_start;
  if (t_end == t_start) {
    return end;
  }
  const double dir = t_end > t_start ? 1.0 : -1.0;
  const double span = std::abs(t_end - t_start);

  State<N> y = y_start;
  double t = t_start;
  State<N> k1{}, k2{}, k3{}, k4{}, k5{}, k6{}, k7{}, tmp{}, y_new{};
  rhs(t, y, k1);

  auto err_scale = [&](std::size_t i, const State<N>& a, const State<N>& b) {
    return opt.atol + opt.rtol * std::max(std::abs(a[i]), std::abs(b[i]));
  };

  double h = opt.initial_step;
  if (!(h > 0.0)) {
    // Hairer's starting step heuristic.
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = err_scale(i, y, y);
      d0 += (y[i] / sc) * (y[i] / sc);
      d1 += (k1[i] / sc) * (k1[i] / sc);
    }
    d0 = std::sqrt(d0 / N);
    d1 = std::sqrt(d1 / N);
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min(h, span);
    for (std::size_t i = 0; i < N; ++i) {
      tmp[i] = y[i] + dir * h * k1[i];
    }
    rhs(t + dir * h, tmp, k2);
    double d2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = err_scale(i, y, y);
      d2 += ((k2[i] - k1[i]) / sc) * ((k2[i] - k1[i]) / sc);
    }
    d2 = std::sqrt(d2 / N) / h;
    const double dmax = std::max(d1, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6, h * 1e-3)
                                    : std::pow(0.01 / dmax, 0.2);
    h = std::min({100.0 * h, h1, span});
  }
  h = std::min(h, opt.max_step);

  using namespace dp;
  bool last_rejected = false;
  while (true) {
    if (end.steps >= opt.max_steps) {
      throw NumericalError("dopri5: maximum number of steps exceeded at t=" +
                           std::to_string(t));
    }
    const double remaining = std::abs(t_end - t);
    bool final_step = false;
    if (h >= remaining) {
      h = remaining;
      final_step = true;
    }
    const double min_step = 16.0 * std::numeric_limits<double>::epsilon() *
                            std::max(1.0, std::abs(t));
    if (h < min_step) {
      throw NumericalError("dopri5: step size underflow at t=" +
                           std::to_string(t));
    }
    const double hs = dir * h;

    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + hs * a21 * k1[i];
    rhs(t + c2 * hs, tmp, k2);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
    rhs(t + c3 * hs, tmp, k3);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + c4 * hs, tmp, k4);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] +
                            a54 * k4[i]);
    rhs(t + c5 * hs, tmp, k5);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                            a64 * k4[i] + a65 * k5[i]);
    const double t_new = final_step ? t_end : t + hs;
    rhs(t + hs, tmp, k6);
    for (std::size_t i = 0; i < N; ++i)
      y_new[i] = y[i] + hs * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] +
                              a75 * k5[i] + a76 * k6[i]);
    rhs(t_new, y_new, k7);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double ei = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                              e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double r = ei / err_scale(i, y, y_new);
      err += r * r;
    }
    err = std::sqrt(err / N);
    if (!std::isfinite(err)) {
      h *= 0.1;
      last_rejected = true;
      continue;
    }

    if (err <= 1.0) {
      DenseStep<N> step;
      step.t0 = t;
      step.h = t_new - t;
      step.y0 = y;
      step.y1 = y_new;
      for (std::size_t i = 0; i < N; ++i) {
        const double ydiff = y_new[i] - y[i];
        const double bspl = hs * k1[i] - ydiff;
        step.cont[0][i] = y[i];
        step.cont[1][i] = ydiff;
        step.cont[2][i] = bspl;
        step.cont[3][i] = ydiff - hs * k7[i] - bspl;
        step.cont[4][i] = hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] +
                                d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      ++end.steps;
      t = t_new;
      y = y_new;
      k1 = k7;
      end.t = t;
      end.y = y;
      if (observer(step)) {
        end.stopped_by_observer = true;
        return end;
      }
      if (final_step) {
        return end;
      }
      double fac = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
      fac = std::clamp(fac, 0.2, 5.0);
      if (last_rejected) {
        fac = std::min(fac, 1.0);
      }
      h = std::min(h * fac, opt.max_step);
      last_rejected = false;
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      last_rejected = true;
    }
  }
}

/// Bisects g(step.at(t)) for a sign change inside one dense step. Assumes
/// g(y0) and g(y1) bracket a root.
template <std::size_t N, typename G>
double locate_root(const DenseStep<N>& step, G&& g, double t_tol) {
  double lo = step.t0;
  double hi = step.t1();
  double g_lo = g(step.y0);
  for (int it = 0; it < 200 && std::abs(hi - lo) > t_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = g(step.at(mid));
    if (g_mid == 0.0) {
      return mid;
    }
    if ((g_mid < 0.0) == (g_lo < 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace pspectral::detail
