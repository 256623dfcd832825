#include "pspectral/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "pspectral/error.hpp"

namespace pspectral {

std::vector<std::pair<double, double>> gauss_legendre(int m) {
  if (m < 1) throw DomainError("gauss_legendre: need at least one node");
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    jac(k, k - 1) = b;
    jac(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  std::vector<std::pair<double, double>> out(m);
  for (int i = 0; i < m; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    out[i] = {es.eigenvalues()(i), 2.0 * v0 * v0};
  }
  return out;
}

SphereRule sphere_rule(int n, int degree) {
  if (degree < 0) degree = 0;
  SphereRule rule;
  rule.n = n;
  const double two_pi = 2.0 * std::numbers::pi;
  if (n == 2) {
    const int m = degree + 2;
    for (int j = 0; j < m; ++j) {
      const double th = two_pi * j / m;
      rule.nodes.push_back(std::cos(th));
      rule.nodes.push_back(std::sin(th));
      rule.weights.push_back(two_pi / m);
    }
    return rule;
  }
  if (n == 3) {
    const auto gl = gauss_legendre(degree / 2 + 2);
    const int m = degree + 2;
    for (const auto& [z, wz] : gl) {
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      for (int j = 0; j < m; ++j) {
        const double ph = two_pi * j / m;
        rule.nodes.push_back(rho * std::cos(ph));
        rule.nodes.push_back(rho * std::sin(ph));
        rule.nodes.push_back(z);
        rule.weights.push_back(wz * two_pi / m);
      }
    }
    return rule;
  }
  throw DomainError("sphere_rule: product rules exist for n = 2, 3 only");
}

double sphere_moment(const MultiIndex& alpha) {
  const int n = static_cast<int>(alpha.size());
  if (n < 1) throw DomainError("sphere_moment: empty multi-index");
  double log_num = 0.0;
  int total = 0;
  for (int a : alpha) {
    if (a % 2 != 0) return 0.0;
    log_num += std::lgamma(0.5 * (a + 1));
    total += a;
  }
  return 2.0 * std::exp(log_num - std::lgamma(0.5 * (total + n)));
}

double sphere_integral_exact(const Polynomial& p) {
  double s = 0.0;
  for (const auto& [alpha, c] : p.terms()) s += c * sphere_moment(alpha);
  return s;
}

double ball_integral_exact(const Polynomial& p) {
  double s = 0.0;
  for (const auto& [alpha, c] : p.terms()) {
    int total = 0;
    for (int a : alpha) total += a;
    s += c * sphere_moment(alpha) / (total + p.dim());
  }
  return s;
}

namespace {

bool use_product(int n, QuadratureMode mode) {
  switch (mode) {
    case QuadratureMode::Product:
      if (n != 2 && n != 3) {
        throw DomainError("product quadrature needs n = 2 or 3");
      }
      return true;
    case QuadratureMode::Moments:
      return false;
    case QuadratureMode::Auto:
      return n == 2 || n == 3;
  }
  return false;
}

void check_center(const HarmonicPolynomial& u, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != u.dim()) {
    throw DomainError("center has wrong dimension");
  }
}

}  // namespace

double sphere_mean_square(const Polynomial& p, QuadratureMode mode) {
  const int n = p.dim();
  const double area = 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
  if (use_product(n, mode)) {
    const auto rule = sphere_rule(n, 2 * std::max(p.degree(), 0));
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double v = p(std::span<const double>(&rule.nodes[i * n], n));
      s += rule.weights[i] * v * v;
    }
    return s / area;
  }
  return sphere_integral_exact(p * p) / area;
}

FrequencyValues frequency_eval(const HarmonicPolynomial& u,
                               const std::vector<double>& x, double r,
                               QuadratureMode mode) {
  check_center(u, x);
  if (!(r > 0.0)) throw DomainError("frequency_eval: r must be > 0");
  if (u.degree() < 1) throw DomainError("frequency_eval: u is constant");
  const int n = u.dim();
  const double ux = u(x);
  FrequencyValues fv{};
  fv.r = r;

  if (use_product(n, mode)) {
    const int d = u.degree();
    const auto rule = sphere_rule(n, 2 * d);
    const auto grad = u.poly().gradient();
    std::vector<double> y(n);
    double h = 0.0, hbar = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      for (int c = 0; c < n; ++c) y[c] = x[c] + r * rule.nodes[i * n + c];
      const double v = u(y);
      h += rule.weights[i] * v * v;
      hbar += rule.weights[i] * (v - ux) * (v - ux);
    }
    const double rn1 = std::pow(r, n - 1);
    fv.H = rn1 * h;
    fv.Hbar = rn1 * hbar;
    const auto radial = gauss_legendre((n - 1 + 2 * (d - 1)) / 2 + 2);
    double dsum = 0.0;
    for (const auto& [z, wz] : radial) {
      const double s = 0.5 * r * (z + 1.0);
      double shell = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) {
        for (int c = 0; c < n; ++c) y[c] = x[c] + s * rule.nodes[i * n + c];
        double g2 = 0.0;
        for (const auto& g : grad) {
          const double gv = g(y);
          g2 += gv * gv;
        }
        shell += rule.weights[i] * g2;
      }
      dsum += 0.5 * r * wz * std::pow(s, n - 1) * shell;
    }
    fv.D = dsum;
  } else {
    const Polynomial v = u.poly().rescale(x, r);
    const Polynomial vbar = v - Polynomial::constant(n, ux);
    const double rn1 = std::pow(r, n - 1);
    fv.H = rn1 * sphere_integral_exact(v * v);
    fv.Hbar = rn1 * sphere_integral_exact(vbar * vbar);
    Polynomial g2(n);
    for (const auto& g : u.poly().gradient()) {
      const Polynomial gr = g.rescale(x, r);
      g2 += gr * gr;
    }
    fv.D = std::pow(r, n) * ball_integral_exact(g2);
  }
  if (!(fv.H > 0.0) || !(fv.Hbar > 0.0)) {
    throw DegenerateStateError("frequency_eval: boundary mass vanishes");
  }
  fv.N = r * fv.D / fv.H;
  fv.Nbar = r * fv.D / fv.Hbar;
  return fv;
}

FrequencyCurve frequency_curve(const HarmonicPolynomial& u,
                               const std::vector<double>& x,
                               const std::vector<double>& radii,
                               QuadratureMode mode) {
  if (radii.empty()) throw DomainError("frequency_curve: empty radius grid");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw DomainError("frequency_curve: radii must be positive and increasing");
    }
  }
  const int n = u.dim();
  FrequencyCurve c;
  c.center = x;
  c.quadrature_degree = 2 * u.degree();
  c.max_violation_N = 0.0;
  c.max_violation_Nbar = 0.0;
  c.doubling_residual = 0.0;
  c.doubling_residual_rel = 0.0;
  for (double r : radii) c.values.push_back(frequency_eval(u, x, r, mode));

  const auto gl = gauss_legendre(24);
  for (std::size_t i = 0; i + 1 < c.values.size(); ++i) {
    const auto& a = c.values[i];
    const auto& b = c.values[i + 1];
    c.max_violation_N = std::max(c.max_violation_N, a.N - b.N);
    c.max_violation_Nbar = std::max(c.max_violation_Nbar, a.Nbar - b.Nbar);
    c.drops.push_back(b.N - a.N);

    double integral = 0.0;
    for (const auto& [z, wz] : gl) {
      const double s = a.r + 0.5 * (b.r - a.r) * (z + 1.0);
      integral += 0.5 * (b.r - a.r) * wz * frequency_eval(u, x, s, mode).N / s;
    }
    const double ratio =
        (b.H / std::pow(b.r, n - 1)) / (a.H / std::pow(a.r, n - 1));
    const double predicted = std::exp(2.0 * integral);
    const double res = std::abs(ratio - predicted);
    c.doubling_residual = std::max(c.doubling_residual, res);
    c.doubling_residual_rel = std::max(c.doubling_residual_rel, res / predicted);
  }
  return c;
}

HarmonicPolynomial rescale(const HarmonicPolynomial& u,
                           const std::vector<double>& x, double r) {
  check_center(u, x);
  if (!(r > 0.0)) throw DomainError("rescale: r must be > 0");
  const int n = u.dim();
  Polynomial v = u.poly().rescale(x, r) - Polynomial::constant(n, u(x));
  // Drop the constant term exactly; rounding can leave a residue.
  Polynomial::Terms t = v.terms();
  t.erase(MultiIndex(n, 0));
  v = Polynomial(n, t);
  if (v.is_zero()) throw DegenerateStateError("rescale: u is constant");
  const double ms = sphere_mean_square(v);
  if (!(ms > 0.0)) throw DegenerateStateError("rescale: zero boundary mass");
  return HarmonicPolynomial(v * (1.0 / std::sqrt(ms)));
}

}  // namespace pspectral
