#include "cutlab/poly.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace cutlab {

Poly::Poly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

Poly Poly::linear_power(double root, int power) {
  Poly result{1.0};
  const Poly factor{-root, 1.0};
  for (int k = 0; k < power; ++k) result = result * factor;
  return result;
}

double Poly::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Poly(std::move(d));
}

Poly Poly::antiderivative() const {
  if (coeffs_.empty()) return {};
  std::vector<double> a(coeffs_.size() + 1, 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) a[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
  return Poly(std::move(a));
}

Poly Poly::shifted(double shift) const {
  // Horner in the polynomial ring: p(x - s) = (...(c_d (x-s) + c_{d-1})(x-s) + ...)
  const Poly step{-shift, 1.0};
  Poly acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * step + Poly{*it};
  return acc;
}

double Poly::derivative_at(double x, int k) const {
  Poly d = *this;
  for (int j = 0; j < k; ++j) d = d.derivative();
  return d(x);
}

std::pair<Poly, double> Poly::divide_linear(double root) const {
  if (coeffs_.empty()) return {Poly{}, 0.0};
  const std::size_t n = coeffs_.size();
  std::vector<double> q(n - 1, 0.0);
  double carry = coeffs_[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) {
    q[k] = carry;
    carry = coeffs_[k] + carry * root;
  }
  return {Poly(std::move(q)), carry};
}

double Poly::norm() const noexcept {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<double> r(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = a[k] + b[k];
  return Poly(std::move(r));
}

Poly operator-(const Poly& a, const Poly& b) {
  std::vector<double> r(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = a[k] - b[k];
  return Poly(std::move(r));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> r(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly(std::move(r));
}

Poly operator*(double s, const Poly& p) {
  std::vector<double> r(p.coeffs_);
  for (double& c : r) c *= s;
  return Poly(std::move(r));
}

std::vector<double> real_roots(const Poly& p, double imag_tol) {
  const int n = p.degree();
  if (n < 1) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p[i] / p.leading();
  const Eigen::VectorXcd eig = Eigen::EigenSolver<Eigen::MatrixXd>(companion, false).eigenvalues();

  const Poly dp = p.derivative();
  std::vector<double> roots;
  for (int i = 0; i < n; ++i) {
    const double scale = std::max(1.0, std::abs(eig[i]));
    if (std::abs(eig[i].imag()) > imag_tol * scale) continue;
    double x = eig[i].real();
    for (int it = 0; it < 50; ++it) {
      const double d = dp(x);
      if (d == 0.0) break;
      const double step = p(x) / d;
      x -= step;
      if (std::abs(step) <= 1e-15 * scale) break;
    }
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double r : roots) {
    if (unique.empty() || std::abs(r - unique.back()) > 1e-9 * std::max(1.0, std::abs(r)))
      unique.push_back(r);
  }
  return unique;
}

}  // namespace cutlab
