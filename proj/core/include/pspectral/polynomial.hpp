#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pspectral {

using MultiIndex = std::vector<int>;

/// Sparse real polynomial in n variables with exact coefficient arithmetic.
/// Zero coefficients are never stored.
class Polynomial {
 public:
  using Terms = std::map<MultiIndex, double>;

  explicit Polynomial(int n);
  Polynomial(int n, Terms terms);

  static Polynomial constant(int n, double c);
  /// The coordinate function x_i (0-based).
  static Polynomial variable(int n, int i);

  int dim() const { return n_; }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  const Terms& terms() const { return terms_; }
  double coefficient(const MultiIndex& alpha) const;
  bool is_zero() const { return terms_.empty(); }
  double max_abs_coefficient() const;

  double operator()(std::span<const double> x) const;
  double operator()(const std::vector<double>& x) const {
    return (*this)(std::span<const double>(x));
  }

  Polynomial derivative(int i) const;
  std::vector<Polynomial> gradient() const;
  Polynomial laplacian() const;
  /// Sum of the terms of total degree d.
  Polynomial homogeneous_part(int d) const;

  /// y -> u(x0 + m y), m an n x n matrix.
  Polynomial compose_affine(const std::vector<double>& x0,
                            const Eigen::MatrixXd& m) const;
  /// y -> u(x0 + r y)
  Polynomial rescale(const std::vector<double>& x0, double r) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(double c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double c) { return a *= c; }
  friend Polynomial operator*(double c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  /// Drops coefficients with |c| <= tol * max|c|.
  Polynomial pruned(double tol) const;

  std::string to_string() const;

 private:
  void add_term(const MultiIndex& alpha, double c);
  int n_;
  Terms terms_;
};

/// Harmonic polynomial: nonzero with vanishing Laplacian. The Laplacian is
/// computed exactly on the coefficients and accepted when its coefficients are
/// below 1e-12 times the largest input coefficient.
class HarmonicPolynomial {
 public:
  explicit HarmonicPolynomial(Polynomial p);

  const Polynomial& poly() const { return p_; }
  int dim() const { return p_.dim(); }
  int degree() const { return p_.degree(); }
  double operator()(std::span<const double> x) const { return p_(x); }
  double operator()(const std::vector<double>& x) const { return p_(x); }

 private:
  Polynomial p_;
};

/// Re((x_1 + i x_2)^d) as a polynomial in n >= 2 variables.
Polynomial real_power(int n, int d);
/// Im((x_1 + i x_2)^d)
Polynomial imag_power(int n, int d);

/// Parses {"n": 2, "terms": [{"alpha": [2, 0], "c": 1.0}, ...]}.
Polynomial polynomial_from_json(const std::string& text);
std::string polynomial_to_json(const Polynomial& p);

}  // namespace pspectral
