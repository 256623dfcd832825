#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "pspectral/polynomial.hpp"

namespace corpus {

// Rotated and translated combinations of homogeneous harmonics; every fifth
// entry is a single homogeneous harmonic about the origin.
inline std::vector<pspectral::HarmonicPolynomial> harmonic_corpus(unsigned seed = 0) {
  using pspectral::Polynomial;
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::normal_distribution<double> gauss;
  std::vector<pspectral::HarmonicPolynomial> out;
  for (int i = 0; i < 20; ++i) {
    const int n = 2 + i % 2;
    std::vector<Polynomial> basis;
    for (int d = 1; d <= 4; ++d) {
      basis.push_back(pspectral::real_power(n, d));
      basis.push_back(pspectral::imag_power(n, d));
    }
    if (n == 3) {
      const auto x = Polynomial::variable(3, 0), y = Polynomial::variable(3, 1),
                 z = Polynomial::variable(3, 2);
      basis.push_back(x * y * z);
      basis.push_back(x * x - z * z);
      basis.push_back(z * (x * x - y * y));
    }
    if (i % 5 == 0) {
      out.emplace_back(basis[(i / 5) % basis.size()] + Polynomial(n));
      continue;
    }
    Polynomial u(n);
    for (const auto& b : basis) u += coef(gen) * b;
    Eigen::MatrixXd g(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) g(r, c) = gauss(gen);
    const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
    std::vector<double> shift(n);
    for (auto& s : shift) s = 0.3 * coef(gen);
    out.emplace_back(u.compose_affine(shift, q).pruned(1e-14));
  }
  return out;
}

}  // namespace corpus
