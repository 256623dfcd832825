#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pspectral/error.hpp"
#include "pspectral/frequency.hpp"

namespace pspectral {

namespace {

// 2 - 2 sqrt(ms_d) written as 2 (1 - ms_d) / (1 + sqrt(ms_d)), with
// 1 - ms_d supplied as the mass of the other components. This avoids the
// cancellation when T is nearly homogeneous.
double distance_from_masses(double ms_d, double ms_rest) {
  return 2.0 * ms_rest / (1.0 + std::sqrt(std::max(ms_d, 0.0)));
}

void finish(SymmetryReport& rep, int n) {
  rep.measure = std::numeric_limits<double>::infinity();
  rep.best_degree = 0;
  for (std::size_t i = 0; i < rep.degree_distance.size(); ++i) {
    if (rep.degree_distance[i] < rep.measure) {
      rep.measure = rep.degree_distance[i];
      rep.best_degree = static_cast<int>(i) + 1;
    }
  }
  rep.k_measures = {{0, rep.measure}};
  if (n - 1 > 0) rep.k_measures.push_back({n - 1, rep.degree_distance.front()});
}

}  // namespace

SymmetryReport symmetry_measure(const HarmonicPolynomial& u,
                                const std::vector<double>& x, double r,
                                SymmetryMethod method) {
  const int n = u.dim();
  if (n != 2 && n != 3) {
    throw DomainError("symmetry_measure: unsupported dimension " +
                      std::to_string(n));
  }
  if (method == SymmetryMethod::Auto) {
    method = n == 2 ? SymmetryMethod::Fourier : SymmetryMethod::Homogeneous;
  }
  if (method == SymmetryMethod::Fourier && n != 2) {
    throw DomainError("symmetry_measure: Fourier method needs n = 2");
  }
  const HarmonicPolynomial t = rescale(u, x, r);
  const int deg = t.degree();
  SymmetryReport rep{x, r, 0.0, 0, Polynomial(n), {}, {}};

  if (method == SymmetryMethod::Fourier) {
    // T on the circle is a trigonometric polynomial of degree <= deg, so
    // m > 2 deg equispaced samples give its coefficients exactly.
    const int m = 4 * (deg + 1);
    std::vector<double> vals(m);
    std::vector<double> y(2);
    for (int j = 0; j < m; ++j) {
      const double th = 2.0 * std::numbers::pi * j / m;
      y[0] = std::cos(th);
      y[1] = std::sin(th);
      vals[j] = t(y);
    }
    std::vector<double> a(deg + 1, 0.0), b(deg + 1, 0.0), mass(deg + 1, 0.0);
    for (int d = 0; d <= deg; ++d) {
      for (int j = 0; j < m; ++j) {
        const double th = 2.0 * std::numbers::pi * j / m;
        a[d] += vals[j] * std::cos(d * th);
        b[d] += vals[j] * std::sin(d * th);
      }
      a[d] *= (d == 0 ? 1.0 : 2.0) / m;
      b[d] *= 2.0 / m;
      // mean square of a cos(d th) + b sin(d th)
      mass[d] = d == 0 ? a[0] * a[0] : 0.5 * (a[d] * a[d] + b[d] * b[d]);
    }
    double total = 0.0;
    for (double v : mass) total += v;
    for (int d = 1; d <= deg; ++d) {
      rep.degree_distance.push_back(distance_from_masses(mass[d], total - mass[d]));
    }
    finish(rep, n);
    const int d = rep.best_degree;
    const double norm = std::sqrt(mass[d]);
    if (norm > 0.0) {
      rep.best_polynomial =
          (real_power(2, d) * a[d] + imag_power(2, d) * b[d]) * (1.0 / norm);
    }
    return rep;
  }

  std::vector<double> mass(deg + 1, 0.0);
  std::vector<Polynomial> parts;
  for (int d = 0; d <= deg; ++d) {
    parts.push_back(t.poly().homogeneous_part(d));
    mass[d] = parts.back().is_zero() ? 0.0 : sphere_mean_square(parts.back());
  }
  for (int d = 1; d <= deg; ++d) {
    double rest = 0.0;
    for (int e = 0; e <= deg; ++e) {
      if (e != d) rest += mass[e];
    }
    rep.degree_distance.push_back(distance_from_masses(mass[d], rest));
  }
  finish(rep, n);
  const int d = rep.best_degree;
  if (mass[d] > 0.0) rep.best_polynomial = parts[d] * (1.0 / std::sqrt(mass[d]));
  return rep;
}

double k_symmetry_measure(const SymmetryReport& report, int n, int k) {
  if (k < 0) throw DomainError("k_symmetry_measure: k must be >= 0");
  if (k >= n) return std::numeric_limits<double>::infinity();
  for (const auto& [kk, m] : report.k_measures) {
    if (kk == k) return m;
  }
  throw DomainError("k_symmetry_measure: k = " + std::to_string(k) +
                    " is not supported in dimension " + std::to_string(n));
}

StratumReport stratum_membership(const HarmonicPolynomial& u,
                                 const std::vector<double>& x, double eta,
                                 double r, int k, double gamma) {
  const int n = u.dim();
  if (!(eta > 0.0)) throw DomainError("stratum_membership: eta must be > 0");
  if (!(r > 0.0) || r > 1.0) {
    throw DomainError("stratum_membership: r must be in (0, 1]");
  }
  if (!(gamma > 0.0) || !(gamma < 1.0)) {
    throw DomainError("stratum_membership: gamma must be in (0, 1)");
  }
  if (k < 0 || k > n) throw DomainError("stratum_membership: bad k");
  StratumReport rep{true, {}};
  for (double s = r; s <= 1.0 * (1.0 + 1e-12); s /= gamma) {
    double measure = std::numeric_limits<double>::infinity();
    if (k + 1 < n) {
      measure = k_symmetry_measure(symmetry_measure(u, x, s), n, k + 1);
    }
    rep.trace.push_back({s, measure});
    if (!(measure > eta)) rep.member = false;
  }
  return rep;
}

}  // namespace pspectral
