#pragma once

#include <functional>
#include <span>
#include <vector>

#include "cutlab/poly.hpp"
#include "cutlab/quadrature.hpp"

namespace cutlab {

/// Density rho(x) = (1/2pi) M(x) Im sqrt(sigma(x + i0)) on the cuts, held per cut
/// as a cosine series in the angular variable x = mid + half cos(theta).
///
/// With rho dx = g(theta) dtheta and g(theta) = sum g_n cos(n theta), the
/// logarithmic kernel has the closed expansion
///   ln|cos(phi) - cos(theta)| = -ln 2 - 2 sum cos(n phi) cos(n theta) / n
/// (and its analytic continuation off the cut), so the log potential, the
/// cumulative mass and the Stieltjes transform are evaluated without touching
/// the log singularity at all.
class SpectralDensity {
 public:
  SpectralDensity(const Poly& M, std::span<const double> endpoints,
                  int nodes = kDefaultQuadratureNodes);

  std::span<const double> endpoints() const noexcept { return endpoints_; }
  int cuts() const noexcept { return static_cast<int>(cuts_.size()); }

  /// Pointwise density (signed; negative values flag a wrong phase).
  double value(double x) const noexcept;

  /// U(x) = integral of ln|x - y| rho(y) dy.
  double log_potential(double x) const noexcept;

  /// Integral of rho(y)/(x - y) dy for x off the support.
  double stieltjes(double x) const noexcept;

  /// Integral of rho over (-inf, x].
  double cdf(double x) const noexcept;

  /// Smallest x with cdf(x) = mass, for mass in [0, total_mass()].
  double quantile(double mass) const;

  double total_mass() const noexcept;
  std::vector<double> cut_masses() const;

  /// Integral of f(y) rho(y) dy.
  double integrate(const std::function<double(double)>& f) const;

 private:
  struct Cut {
    double mid = 0.0;
    double half = 0.0;
    std::vector<double> samples;  // g(theta_k) at theta_k = pi (k + 1/2) / K
    std::vector<double> cosine;   // g_n
  };

  double cut_cdf(const Cut& cut, double x) const noexcept;

  Poly M_;
  std::vector<double> endpoints_;
  std::vector<Cut> cuts_;
};

/// Log potential of the density described by (M, endpoints) at x.
double log_potential(double x, const Poly& M, std::span<const double> endpoints,
                     int nodes = kDefaultQuadratureNodes);

}  // namespace cutlab
