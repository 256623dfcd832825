#include "pspectral/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "pspectral/error.hpp"

namespace pspectral {

Polynomial::Polynomial(int n) : n_(n) {
  if (n < 1) throw DomainError("Polynomial: dimension must be >= 1");
}

Polynomial::Polynomial(int n, Terms terms) : Polynomial(n) {
  for (const auto& [alpha, c] : terms) {
    add_term(alpha, c);
  }
}

Polynomial Polynomial::constant(int n, double c) {
  Polynomial p(n);
  p.add_term(MultiIndex(n, 0), c);
  return p;
}

Polynomial Polynomial::variable(int n, int i) {
  if (i < 0 || i >= n) throw DomainError("Polynomial::variable: bad index");
  MultiIndex a(n, 0);
  a[i] = 1;
  Polynomial p(n);
  p.add_term(a, 1.0);
  return p;
}

void Polynomial::add_term(const MultiIndex& alpha, double c) {
  if (static_cast<int>(alpha.size()) != n_) {
    throw DomainError("Polynomial: multi-index has wrong length");
  }
  for (int e : alpha) {
    if (e < 0) throw DomainError("Polynomial: negative exponent");
  }
  if (!std::isfinite(c)) throw DomainError("Polynomial: non-finite coefficient");
  if (c == 0.0) return;
  auto it = terms_.find(alpha);
  if (it == terms_.end()) {
    terms_.emplace(alpha, c);
    return;
  }
  it->second += c;
  if (it->second == 0.0) terms_.erase(it);
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [alpha, c] : terms_) {
    int s = 0;
    for (int e : alpha) s += e;
    d = std::max(d, s);
  }
  return d;
}

double Polynomial::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? 0.0 : it->second;
}

double Polynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [alpha, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

double Polynomial::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) {
    throw DomainError("Polynomial: point has wrong dimension");
  }
  double sum = 0.0;
  for (const auto& [alpha, c] : terms_) {
    double v = c;
    for (int i = 0; i < n_; ++i) {
      for (int e = 0; e < alpha[i]; ++e) v *= x[i];
    }
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::derivative(int i) const {
  if (i < 0 || i >= n_) throw DomainError("Polynomial::derivative: bad index");
  Polynomial d(n_);
  for (const auto& [alpha, c] : terms_) {
    if (alpha[i] == 0) continue;
    MultiIndex b = alpha;
    b[i] -= 1;
    d.add_term(b, c * alpha[i]);
  }
  return d;
}

std::vector<Polynomial> Polynomial::gradient() const {
  std::vector<Polynomial> g;
  g.reserve(n_);
  for (int i = 0; i < n_; ++i) g.push_back(derivative(i));
  return g;
}

Polynomial Polynomial::laplacian() const {
  Polynomial l(n_);
  for (int i = 0; i < n_; ++i) l += derivative(i).derivative(i);
  return l;
}

Polynomial Polynomial::homogeneous_part(int d) const {
  Polynomial h(n_);
  for (const auto& [alpha, c] : terms_) {
    int s = 0;
    for (int e : alpha) s += e;
    if (s == d) h.add_term(alpha, c);
  }
  return h;
}

Polynomial Polynomial::compose_affine(const std::vector<double>& x0,
                                      const Eigen::MatrixXd& m) const {
  if (static_cast<int>(x0.size()) != n_ || m.rows() != n_ || m.cols() != n_) {
    throw DomainError("compose_affine: shape mismatch");
  }
  // Substituted coordinates x_i = x0_i + sum_j m_ij y_j and their powers.
  std::vector<std::vector<Polynomial>> powers(n_);
  std::vector<int> max_pow(n_, 0);
  for (const auto& [alpha, c] : terms_) {
    for (int i = 0; i < n_; ++i) max_pow[i] = std::max(max_pow[i], alpha[i]);
  }
  for (int i = 0; i < n_; ++i) {
    Polynomial xi = constant(n_, x0[i]);
    for (int j = 0; j < n_; ++j) {
      xi += variable(n_, j) * m(i, j);
    }
    powers[i].push_back(constant(n_, 1.0));
    for (int e = 1; e <= max_pow[i]; ++e) {
      powers[i].push_back(powers[i].back() * xi);
    }
  }
  Polynomial out(n_);
  for (const auto& [alpha, c] : terms_) {
    Polynomial t = constant(n_, c);
    for (int i = 0; i < n_; ++i) {
      if (alpha[i] > 0) t = t * powers[i][alpha[i]];
    }
    out += t;
  }
  return out;
}

Polynomial Polynomial::rescale(const std::vector<double>& x0, double r) const {
  return compose_affine(x0, Eigen::MatrixXd::Identity(n_, n_) * r);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.n_ != n_) throw DomainError("Polynomial: dimension mismatch");
  for (const auto& [alpha, c] : o.terms_) add_term(alpha, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.n_ != n_) throw DomainError("Polynomial: dimension mismatch");
  for (const auto& [alpha, c] : o.terms_) add_term(alpha, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double c) {
  if (c == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.n_ != b.n_) throw DomainError("Polynomial: dimension mismatch");
  Polynomial out(a.n_);
  MultiIndex g(a.n_);
  for (const auto& [al, ca] : a.terms_) {
    for (const auto& [be, cb] : b.terms_) {
      for (int i = 0; i < a.n_; ++i) g[i] = al[i] + be[i];
      out.add_term(g, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::pruned(double tol) const {
  const double cut = tol * max_abs_coefficient();
  Polynomial out(n_);
  for (const auto& [alpha, c] : terms_) {
    if (std::abs(c) > cut) out.add_term(alpha, c);
  }
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << it->second;
    for (int i = 0; i < n_; ++i) {
      if (it->first[i] == 0) continue;
      os << "*x" << i + 1;
      if (it->first[i] > 1) os << "^" << it->first[i];
    }
  }
  return os.str();
}

HarmonicPolynomial::HarmonicPolynomial(Polynomial p) : p_(std::move(p)) {
  if (p_.is_zero()) {
    throw DomainError("HarmonicPolynomial: polynomial is zero");
  }
  const double scale = p_.max_abs_coefficient();
  const double lap = p_.laplacian().max_abs_coefficient();
  if (lap > 1e-12 * scale) {
    throw DomainError("HarmonicPolynomial: Laplacian is not zero (max coefficient " +
                      std::to_string(lap) + ")");
  }
}

namespace {

// (x_1 + i x_2)^d = sum_j binom(d, j) x_1^{d-j} (i x_2)^j
Polynomial complex_power_part(int n, int d, bool real_part) {
  if (n < 2) throw DomainError("complex power: needs n >= 2");
  if (d < 0) throw DomainError("complex power: degree must be >= 0");
  Polynomial p(n);
  double binom = 1.0;
  for (int j = 0; j <= d; ++j) {
    if (j > 0) binom = binom * (d - j + 1) / j;
    const bool is_real = j % 2 == 0;
    if (is_real == real_part) {
      // i^j = 1, i, -1, -i
      const double sign = (j % 4 == 0 || j % 4 == 1) ? 1.0 : -1.0;
      MultiIndex a(n, 0);
      a[0] = d - j;
      a[1] = j;
      p += Polynomial(n, {{a, sign * binom}});
    }
  }
  return p;
}

}  // namespace

Polynomial real_power(int n, int d) { return complex_power_part(n, d, true); }
Polynomial imag_power(int n, int d) { return complex_power_part(n, d, false); }

Polynomial polynomial_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("polynomial JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("terms") ||
      !j["terms"].is_array()) {
    throw DomainError("polynomial JSON: expected {\"n\": int, \"terms\": [...]}");
  }
  const int n = j["n"].get<int>();
  Polynomial p(n);
  for (const auto& t : j["terms"]) {
    if (!t.contains("alpha") || !t.contains("c")) {
      throw DomainError("polynomial JSON: each term needs \"alpha\" and \"c\"");
    }
    p += Polynomial(n, {{t["alpha"].get<MultiIndex>(), t["c"].get<double>()}});
  }
  return p;
}

std::string polynomial_to_json(const Polynomial& p) {
  nlohmann::ordered_json j;
  j["n"] = p.dim();
  j["terms"] = nlohmann::ordered_json::array();
  for (const auto& [alpha, c] : p.terms()) {
    nlohmann::ordered_json t;
    t["alpha"] = alpha;
    t["c"] = c;
    j["terms"].push_back(t);
  }
  return j.dump();
}

}  // namespace pspectral
