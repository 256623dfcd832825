#include "pspectral/critical_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_set>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "pspectral/error.hpp"

namespace pspectral {

namespace {

struct AbsTerm {
  double c;
  MultiIndex alpha;
};

// Absolute-coefficient form of a polynomial: sum |c| prod m_i^alpha_i bounds
// |p| on any box with |y_i| <= m_i.
std::vector<AbsTerm> abs_terms(const Polynomial& p) {
  std::vector<AbsTerm> out;
  for (const auto& [alpha, c] : p.terms()) out.push_back({std::abs(c), alpha});
  return out;
}

double abs_bound(const std::vector<AbsTerm>& terms, const std::vector<double>& m) {
  double s = 0.0;
  for (const auto& t : terms) {
    double v = t.c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (int e = 0; e < t.alpha[i]; ++e) v *= m[i];
    }
    s += v;
  }
  return s;
}

struct Derivatives {
  std::vector<Polynomial> grad;
  std::vector<Polynomial> hess;  // row-major n x n
  std::vector<std::vector<AbsTerm>> hess_abs;
};

Derivatives derivatives(const Polynomial& u) {
  Derivatives d;
  const int n = u.dim();
  d.grad = u.gradient();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      d.hess.push_back(d.grad[i].derivative(j));
      d.hess_abs.push_back(abs_terms(d.hess.back()));
    }
  }
  return d;
}

double grad_norm(const Derivatives& d, const std::vector<double>& x) {
  double s = 0.0;
  for (const auto& g : d.grad) {
    const double v = g(x);
    s += v * v;
  }
  return std::sqrt(s);
}

double hessian_bound(const Derivatives& d, const std::vector<double>& lo,
                     const std::vector<double>& hi) {
  std::vector<double> m(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    m[i] = std::max(std::abs(lo[i]), std::abs(hi[i]));
  }
  double f2 = 0.0;
  for (const auto& t : d.hess_abs) {
    const double b = abs_bound(t, m);
    f2 += b * b;
  }
  return std::sqrt(f2);  // Frobenius norm bounds the operator norm
}

bool newton(const Derivatives& d, std::vector<double>& x, int max_iterations,
            double grad_tol) {
  const int n = static_cast<int>(x.size());
  Eigen::VectorXd g(n);
  Eigen::MatrixXd h(n, n);
  for (int it = 0; it < max_iterations; ++it) {
    for (int i = 0; i < n; ++i) g(i) = d.grad[i](x);
    if (g.norm() == 0.0) return true;
    for (int i = 0; i < n * n; ++i) h(i / n, i % n) = d.hess[i](x);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(h);
    const Eigen::VectorXd step = cod.solve(g);
    if (!step.allFinite()) return false;
    double xnorm = 0.0;
    for (int i = 0; i < n; ++i) {
      x[i] -= step(i);
      xnorm = std::max(xnorm, std::abs(x[i]));
    }
    if (step.norm() <= 1e-15 * std::max(1.0, xnorm)) break;
  }
  return grad_norm(d, x) <= grad_tol;
}

std::uint64_t pack(const long* idx, int n) {
  constexpr long kOffset = 1L << 20;
  std::uint64_t key = 0;
  for (int i = 0; i < n; ++i) {
    key = (key << 21) | static_cast<std::uint64_t>(idx[i] + kOffset);
  }
  return key;
}

}  // namespace

std::vector<double> CriticalSet::cell_center(std::size_t i) const {
  std::vector<double> c(n_);
  for (int k = 0; k < n_; ++k) c[k] = box_.lo[k] + (cells_[i][k] + 0.5) * h_;
  return c;
}

bool CriticalSet::covers(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n_) return false;
  // Points on a cell face belong to both neighbours.
  std::vector<std::vector<long>> options(n_);
  for (int k = 0; k < n_; ++k) {
    const double s = (x[k] - box_.lo[k]) / h_;
    const long f = static_cast<long>(std::floor(s));
    options[k].push_back(f);
    if (s - f < 1e-9) options[k].push_back(f - 1);
    if (f + 1 - s < 1e-9) options[k].push_back(f + 1);
  }
  std::vector<long> idx(n_);
  std::vector<std::size_t> pick(n_, 0);
  while (true) {
    for (int k = 0; k < n_; ++k) idx[k] = options[k][pick[k]];
    if (std::binary_search(cells_.begin(), cells_.end(), idx)) return true;
    int k = 0;
    while (k < n_ && ++pick[k] == options[k].size()) pick[k++] = 0;
    if (k == n_) return false;
  }
}

bool refine_critical_point(const Polynomial& u, std::vector<double>& x,
                           int max_iterations) {
  const auto d = derivatives(u);
  return newton(d, x, max_iterations, 1e-10 * std::max(1.0, u.max_abs_coefficient()));
}

CriticalSet critical_set(const Polynomial& u, const Box& box, double h) {
  const int n = u.dim();
  if (!(h > 0.0)) throw DomainError("critical_set: pitch must be > 0");
  if (static_cast<int>(box.lo.size()) != n || static_cast<int>(box.hi.size()) != n) {
    throw DomainError("critical_set: box has wrong dimension");
  }
  std::vector<long> counts(n);
  for (int k = 0; k < n; ++k) {
    if (!(box.hi[k] > box.lo[k])) throw DomainError("critical_set: empty box");
    counts[k] = static_cast<long>(std::ceil((box.hi[k] - box.lo[k]) / h - 1e-9));
  }
  CriticalSet cs;
  cs.n_ = n;
  cs.h_ = h;
  cs.box_ = box;
  const auto d = derivatives(u);
  const double grad_tol = 1e-10 * std::max(1.0, u.max_abs_coefficient());

  std::unordered_set<std::uint64_t> seen;
  std::vector<long> a(n, 0), b = counts;
  std::vector<double> lo(n), hi(n), c(n);

  // Depth-first over index ranges; a range is pruned when no point of it can
  // have a vanishing gradient.
  auto visit = [&](auto&& self, const std::vector<long>& ra,
                   const std::vector<long>& rb) -> void {
    double diag2 = 0.0;
    bool leaf = true;
    for (int k = 0; k < n; ++k) {
      lo[k] = box.lo[k] + ra[k] * h;
      hi[k] = box.lo[k] + rb[k] * h;
      c[k] = 0.5 * (lo[k] + hi[k]);
      diag2 += (hi[k] - lo[k]) * (hi[k] - lo[k]);
      if (rb[k] - ra[k] > 1) leaf = false;
    }
    const double bound = hessian_bound(d, lo, hi) * std::sqrt(diag2);
    if (grad_norm(d, c) > bound) return;
    if (leaf) {
      cs.cells_.push_back(ra);
      std::vector<double> x = c;
      if (newton(d, x, 200, grad_tol)) {
        bool inside = true;
        for (int k = 0; k < n; ++k) {
          if (x[k] < box.lo[k] - h || x[k] > box.hi[k] + h) inside = false;
        }
        if (inside) {
          std::vector<long> key(n);
          for (int k = 0; k < n; ++k) key[k] = std::lround(x[k] / (0.5 * h));
          if (n <= 3) {
            if (seen.insert(pack(key.data(), n)).second) cs.points_.push_back(x);
          } else {
            cs.points_.push_back(x);
          }
        }
      } else {
        ++cs.unresolved_;
      }
      return;
    }
    // Split every axis with more than one cell.
    std::vector<int> axes;
    for (int k = 0; k < n; ++k) {
      if (rb[k] - ra[k] > 1) axes.push_back(k);
    }
    const int children = 1 << axes.size();
    for (int mask = 0; mask < children; ++mask) {
      std::vector<long> ca = ra, cb = rb;
      for (std::size_t j = 0; j < axes.size(); ++j) {
        const int k = axes[j];
        const long mid = (ra[k] + rb[k]) / 2;
        if (mask & (1 << j)) {
          ca[k] = mid;
        } else {
          cb[k] = mid;
        }
      }
      self(self, ca, cb);
    }
  };
  visit(visit, a, b);
  std::sort(cs.cells_.begin(), cs.cells_.end());
  return cs;
}

double tube_volume(const std::vector<std::vector<double>>& points, int n,
                   double r, double pitch) {
  if (n < 1 || n > 3) throw DomainError("tube_volume: supports n <= 3");
  if (!(r > 0.0) || !(pitch > 0.0)) throw DomainError("tube_volume: bad r or pitch");
  std::unordered_set<std::uint64_t> cells;
  const double r2 = r * r;
  long lo[3] = {0, 0, 0}, hi[3] = {0, 0, 0}, idx[3] = {0, 0, 0};
  for (const auto& p : points) {
    for (int k = 0; k < n; ++k) {
      lo[k] = static_cast<long>(std::floor((p[k] - r) / pitch)) - 1;
      hi[k] = static_cast<long>(std::ceil((p[k] + r) / pitch)) + 1;
      idx[k] = lo[k];
    }
    while (true) {
      double dist2 = 0.0, norm2 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double ck = (idx[k] + 0.5) * pitch;
        dist2 += (ck - p[k]) * (ck - p[k]);
        norm2 += ck * ck;
      }
      if (dist2 < r2 && norm2 < 0.25) cells.insert(pack(idx, n));
      int k = 0;
      while (k < n && ++idx[k] > hi[k]) {
        idx[k] = lo[k];
        ++k;
      }
      if (k == n) break;
    }
  }
  return static_cast<double>(cells.size()) * std::pow(pitch, n);
}

MinkowskiReport minkowski_report(const Polynomial& u,
                                 const std::vector<double>& radii) {
  if (radii.empty()) throw DomainError("minkowski_report: empty radius list");
  const int n = u.dim();
  const auto [rmin_it, rmax_it] = std::minmax_element(radii.begin(), radii.end());
  const double rmin = *rmin_it;
  const double rmax = *rmax_it;
  if (!(rmin > 0.0)) throw DomainError("minkowski_report: radii must be > 0");
  const double h = rmin / 8.0;
  Box box{std::vector<double>(n, -0.5 - rmax), std::vector<double>(n, 0.5 + rmax)};
  const CriticalSet cs = critical_set(u, box, h);

  MinkowskiReport rep;
  rep.radii = radii;
  rep.detection_pitch = h;
  rep.cells = cs.cell_count();
  rep.points = cs.points().size();
  std::vector<double> lr, lv;
  for (double r : radii) {
    const double v = tube_volume(cs.points(), n, r, r / 8.0);
    rep.volumes.push_back(v);
    if (v > 0.0) {
      lr.push_back(std::log(r));
      lv.push_back(std::log(v));
    }
  }
  rep.exponent = std::numeric_limits<double>::quiet_NaN();
  if (lr.size() >= 2) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lr.size(); ++i) {
      mx += lr[i];
      my += lv[i];
    }
    mx /= lr.size();
    my /= lr.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lr.size(); ++i) {
      sxy += (lr[i] - mx) * (lv[i] - my);
      sxx += (lr[i] - mx) * (lr[i] - mx);
    }
    if (sxx > 0.0) rep.exponent = sxy / sxx;
  }
  return rep;
}

Polynomial divergence_form(const Eigen::MatrixXd& a, const Polynomial& u) {
  const int n = u.dim();
  if (a.rows() != n || a.cols() != n) {
    throw DomainError("divergence_form: matrix shape mismatch");
  }
  Polynomial out(n);
  for (int i = 0; i < n; ++i) {
    const Polynomial di = u.derivative(i);
    for (int j = 0; j < n; ++j) {
      if (a(i, j) != 0.0) out += di.derivative(j) * a(i, j);
    }
  }
  return out;
}

AffineNormalization affine_normalize(const Eigen::MatrixXd& a,
                                     const std::vector<double>& x_bar,
                                     const Polynomial& u) {
  const int n = u.dim();
  if (a.rows() != n || a.cols() != n) {
    throw DomainError("affine_normalize: matrix shape mismatch");
  }
  if (static_cast<int>(x_bar.size()) != n) {
    throw DomainError("affine_normalize: x_bar has wrong dimension");
  }
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * a.cwiseAbs().maxCoeff()) {
    throw DomainError("affine_normalize: matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  const Eigen::VectorXd ev = es.eigenvalues();
  if (!(ev.minCoeff() > 0.0)) {
    throw DomainError("affine_normalize: matrix is not positive definite");
  }
  AffineNormalization out{Polynomial(n), es.operatorInverseSqrt(), {}, 0.0, false};
  out.U = u.compose_affine(x_bar, es.operatorSqrt());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(out.Q);
  out.q_singular_values = svd.singularValues();
  out.ellipticity = std::max(ev.maxCoeff(), 1.0 / ev.minCoeff());
  const double scale = std::max(out.U.max_abs_coefficient(), 1e-300);
  out.harmonic = !out.U.is_zero() &&
                 out.U.laplacian().max_abs_coefficient() <= 1e-12 * scale;
  return out;
}

}  // namespace pspectral
