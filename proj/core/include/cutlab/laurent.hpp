#pragma once

#include <span>
#include <vector>

#include "cutlab/poly.hpp"

namespace cutlab {

/// Truncated expansion at infinity:
///   f(z) = sum_{k < order} coeffs[k] * z^(lead_exp - k) + O(z^(lead_exp - order)).
struct LaurentTail {
  int lead_exp = 0;
  std::vector<double> coeffs;

  int order() const noexcept { return static_cast<int>(coeffs.size()); }
  /// Lowest exponent still carried by the truncation.
  int last_exp() const noexcept { return lead_exp - order() + 1; }
  /// Coefficient of z^exponent; zero above the leading term. Exponents below
  /// the truncation are unknown and raise InsufficientOrder.
  double coefficient(int exponent) const;
};

LaurentTail operator*(const LaurentTail& a, const LaurentTail& b);

/// Exact polynomial viewed as a series with `order` coefficients from its leading term.
LaurentTail to_laurent(const Poly& p, int order);

/// sqrt(prod (z - x_i)) at +infinity on the branch positive for real z beyond the
/// largest endpoint. Endpoints must be strictly increasing and even in number.
LaurentTail sqrt_sigma_series(std::span<const double> endpoints, int order);

/// 1 / sqrt(prod (z - x_i)), same branch.
LaurentTail inverse_sqrt_sigma_series(std::span<const double> endpoints, int order);

struct PolynomialPart {
  Poly M;
  LaurentTail remainder;  // V'/sqrt(sigma) - M, leading exponent -1
};

/// Splits V'/sqrt(sigma) into its polynomial part and the decaying remainder.
/// `order` counts series coefficients from the leading exponent deg(V') - s.
PolynomialPart polynomial_part(const Poly& vprime, std::span<const double> endpoints, int order);

/// Default truncation depth for a given V'.
inline int default_series_order(const Poly& vprime) { return vprime.degree() + 8; }

/// Throws NonIncreasingEndpoints unless the list is nonempty, even-sized and strictly increasing.
void check_endpoints(std::span<const double> endpoints);

}  // namespace cutlab
