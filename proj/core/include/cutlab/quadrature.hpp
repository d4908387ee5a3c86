#pragma once

#include <functional>
#include <span>
#include <vector>

#include "cutlab/poly.hpp"

namespace cutlab {

inline constexpr int kDefaultQuadratureNodes = 128;

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n nodes. Rules are built once per size and shared.
const QuadratureRule& gauss_legendre(int n);

// --- branch bookkeeping for sqrt(sigma), sigma(t) = prod (t - x_i) -------------

/// Number of endpoints strictly to the right of x.
int endpoints_right_of(std::span<const double> endpoints, double x) noexcept;

/// Index of the cut [x_{2i}, x_{2i+1}] whose open interior contains x, or -1.
int cut_containing(std::span<const double> endpoints, double x) noexcept;

double sqrt_abs_sigma(std::span<const double> endpoints, double x) noexcept;

/// Real boundary value of sqrt(sigma) off the cuts. Each endpoint to the right
/// contributes a factor i from the upper half-plane, so the sign is i^k with k even.
double sqrt_sigma_off_cut(std::span<const double> endpoints, double x) noexcept;

/// +1 or -1: sqrt(sigma(x + i0)) = i * sign * sqrt|sigma| inside a cut.
int sqrt_sigma_cut_sign(std::span<const double> endpoints, double x) noexcept;

// --- integrals ------------------------------------------------------------------

/// Integral of f(t) sqrt((t - left)(right - t)) over [left, right], computed in
/// the angular variable t = mid + half cos(theta) with the midpoint (Gauss-Chebyshev)
/// rule, exact for polynomial f of degree < 2 * nodes - 2.
double cut_integral(const std::function<double(double)>& f, double left, double right,
                    int nodes = kDefaultQuadratureNodes);

double cut_quadrature(const Poly& p, double left, double right, int nodes = kDefaultQuadratureNodes);

/// Integral of m(t) sqrt(sigma(t)) from `from` to `to` (signed), where the closed
/// interval lies in one component of the complement of the cuts. The square-root
/// endpoint behaviour is removed by t = end -/+ u^2 on each half, and the u-range
/// is split into geometrically graded Gauss-Legendre panels so a neighbouring
/// endpoint at small distance does not spoil convergence.
double gap_quadrature(const Poly& m, std::span<const double> endpoints, double from, double to,
                      int nodes = kDefaultQuadratureNodes);

}  // namespace cutlab
