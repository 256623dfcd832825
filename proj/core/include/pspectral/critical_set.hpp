#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "pspectral/polynomial.hpp"

namespace pspectral {

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
};

/// Cells of pitch h that may contain a zero of grad u, and Newton-refined
/// critical points. A cell is kept when |grad u(center)| <= L h sqrt(n), where
/// L bounds the Hessian norm on the cell from the absolute coefficients; the
/// kept cells therefore cover every critical point in the box.
class CriticalSet {
 public:
  int dim() const { return n_; }
  double pitch() const { return h_; }
  const Box& box() const { return box_; }
  std::size_t cell_count() const { return cells_.size(); }
  /// Center of cell i.
  std::vector<double> cell_center(std::size_t i) const;
  /// Refined critical points, deduplicated at h/2.
  const std::vector<std::vector<double>>& points() const { return points_; }
  /// Candidate cells whose Newton run did not converge.
  std::size_t unresolved() const { return unresolved_; }
  /// True when x lies in (the closure of) a reported cell.
  bool covers(const std::vector<double>& x) const;

 private:
  friend CriticalSet critical_set(const Polynomial&, const Box&, double);
  int n_ = 0;
  double h_ = 0.0;
  Box box_;
  std::vector<std::vector<long>> cells_;  // sorted grid indices
  std::vector<std::vector<double>> points_;
  std::size_t unresolved_ = 0;
};

CriticalSet critical_set(const Polynomial& u, const Box& box, double h);

/// Newton iteration for grad u = 0 with a pseudo-inverse Hessian. Returns
/// false when it does not converge.
bool refine_critical_point(const Polynomial& u, std::vector<double>& x,
                           int max_iterations = 200);

struct MinkowskiReport {
  std::vector<double> radii;
  std::vector<double> volumes;  // Vol(T_r(Cr u) intersect B_{1/2})
  double exponent;              // least-squares slope of log V against log r
  double detection_pitch;
  std::size_t cells;
  std::size_t points;
};

/// Tube volumes around the critical set inside B_{1/2}(0). Detection pitch is
/// min(r)/8 and each tube is counted on cells of pitch r/8.
MinkowskiReport minkowski_report(const Polynomial& u,
                                 const std::vector<double>& radii);

/// Volume of {y in B_{1/2} : dist(y, P) < r} by counting cells of pitch
/// `pitch` whose centers qualify.
double tube_volume(const std::vector<std::vector<double>>& points, int n,
                   double r, double pitch);

struct AffineNormalization {
  Polynomial U;       // y -> u(x_bar + Q^{-1} y)
  Eigen::MatrixXd Q;  // a^{-1/2}
  Eigen::VectorXd q_singular_values;
  double ellipticity;  // smallest lambda with lambda^{-1} <= a <= lambda
  bool harmonic;       // Laplacian of U vanishes exactly
};

/// Reduces div(a grad u) = 0 with constant SPD a to the Laplace equation.
AffineNormalization affine_normalize(const Eigen::MatrixXd& a,
                                     const std::vector<double>& x_bar,
                                     const Polynomial& u);

/// sum_ij a_ij d_i d_j u
Polynomial divergence_form(const Eigen::MatrixXd& a, const Polynomial& u);

}  // namespace pspectral
