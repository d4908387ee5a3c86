#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace cutlab {

/// Real polynomial stored lowest-degree-first. Trailing exact zeros are
/// trimmed on construction, so the last stored coefficient is nonzero unless
/// the polynomial is identically zero (empty storage).
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<double> coeffs);
  Poly(std::initializer_list<double> coeffs) : Poly(std::vector<double>(coeffs)) {}

  /// (x - root)^power
  static Poly linear_power(double root, int power);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  double operator[](std::size_t k) const noexcept {
    return k < coeffs_.size() ? coeffs_[k] : 0.0;
  }
  double leading() const noexcept { return coeffs_.empty() ? 0.0 : coeffs_.back(); }

  double operator()(double x) const noexcept;

  Poly derivative() const;
  /// Antiderivative with zero constant term.
  Poly antiderivative() const;
  /// Returns q with q(x) = p(x - shift).
  Poly shifted(double shift) const;
  /// k-th derivative evaluated at x.
  double derivative_at(double x, int k) const;

  /// Synthetic division by (x - root); returns (quotient, remainder).
  std::pair<Poly, double> divide_linear(double root) const;

  /// Largest coefficient magnitude.
  double norm() const noexcept;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(double s, const Poly& p);
  friend bool operator==(const Poly& a, const Poly& b) = default;

 private:
  std::vector<double> coeffs_;
};

/// Real roots of p, sorted ascending, each polished by Newton iteration.
/// Roots of even multiplicity are reported once; complex pairs whose
/// imaginary part is below `imag_tol` (relative to the root scale) count as real.
std::vector<double> real_roots(const Poly& p, double imag_tol = 1e-7);

}  // namespace cutlab
