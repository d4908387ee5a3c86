#pragma once

// Independent reference computations for the unit and acceptance tests.
// Nothing here calls into the library's quadrature or series code.

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

/// Double-exponential (tanh-sinh) quadrature on [a, b]; tolerates integrable
/// endpoint singularities (square roots, logarithms).
inline double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                        double h = 1.0 / 64.0, double tmax = 3.15) {
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  const int K = static_cast<int>(tmax / h);
  for (int k = -K; k <= K; ++k) {
    const double t = k * h;
    const double u = 0.5 * kPi * std::sinh(t);
    const double w = 0.5 * kPi * std::cosh(t) / (std::cosh(u) * std::cosh(u));
    // distance to the nearer endpoint computed without cancellation
    double x;
    if (u < 0.0)
      x = a + (b - a) / (1.0 + std::exp(-2.0 * u));
    else
      x = b - (b - a) / (1.0 + std::exp(2.0 * u));
    if (x <= a || x >= b) continue;
    acc += w * f(x);
  }
  return acc * half * h;
}

/// Integral split at interior break points.
inline double tanh_sinh_split(const std::function<double(double)>& f, std::vector<double> points) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    if (points[i + 1] > points[i]) total += tanh_sinh(f, points[i], points[i + 1]);
  return total;
}

inline double poly_eval(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// (1/2pi)|M(y)| prod sqrt|y - x_i| inside the cuts; zero elsewhere.
inline double density(const std::vector<double>& M, const std::vector<double>& ep, double y) {
  bool inside = false;
  for (std::size_t i = 0; i + 1 < ep.size(); i += 2)
    if (y > ep[i] && y < ep[i + 1]) inside = true;
  if (!inside) return 0.0;
  double prod = 1.0;
  for (double e : ep) prod *= std::sqrt(std::abs(y - e));
  return std::abs(poly_eval(M, y)) * prod / (2.0 * kPi);
}

inline double log_potential(const std::vector<double>& M, const std::vector<double>& ep, double x) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < ep.size(); i += 2) {
    std::vector<double> pts{ep[i]};
    if (x > ep[i] && x < ep[i + 1]) pts.push_back(x);
    pts.push_back(ep[i + 1]);
    total += tanh_sinh_split([&](double y) { return std::log(std::abs(x - y)) * density(M, ep, y); }, pts);
  }
  return total;
}

inline double mass(const std::vector<double>& M, const std::vector<double>& ep) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < ep.size(); i += 2)
    total += tanh_sinh([&](double y) { return density(M, ep, y); }, ep[i], ep[i + 1]);
  return total;
}

// --- semicircle closed forms (V = x^2/2, mass T, support +-2 sqrt T) -------------

inline double semicircle_log_potential(double x) {
  const double a = std::abs(x);
  if (a <= 2.0) return x * x / 4.0 - 0.5;
  const double r = std::sqrt(x * x - 4.0);
  return x * x / 4.0 - 0.5 - a * r / 4.0 + std::log((a + r) / 2.0);
}

inline double gaussian_ell(double T) { return T - T * std::log(T); }
inline double gaussian_F(double T) { return 0.75 * T * T - 0.5 * T * T * std::log(T); }

/// Antiderivative of sqrt(t^2 - 4) for t >= 2.
inline double semicircle_gap_primitive(double t) {
  return t * std::sqrt(t * t - 4.0) / 2.0 - 2.0 * std::acosh(t / 2.0);
}

/// Largest zero of the Hermite polynomial H_n (physicists' convention), by Newton
/// iteration on the orthonormal recurrence, started beyond the zero.
inline double hermite_largest_zero(int n) {
  double x = std::sqrt(2.0 * n + 1.0);
  for (int it = 0; it < 100; ++it) {
    double prev = 0.0, cur = std::pow(kPi, -0.25);  // p_0, Gaussian factor irrelevant
    for (int k = 0; k < n; ++k) {
      const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
      prev = cur;
      cur = next;
    }
    const double step = cur / (std::sqrt(2.0 * n) * prev);  // p_n' = sqrt(2n) p_{n-1}
    x -= step;
    if (std::abs(step) < 1e-15 * x) break;
  }
  return x;
}

// --- random confining potentials ---------------------------------------------------

/// Convex quartic or sextic (V'' > 0 everywhere), lowest degree first.
inline std::vector<double> random_convex_potential(std::mt19937& rng, bool sextic, bool even) {
  std::uniform_real_distribution<double> u(0.2, 1.5);
  std::uniform_real_distribution<double> sgn(-1.0, 1.0);
  std::vector<double> c(sextic ? 7 : 5, 0.0);
  const double c2 = u(rng), c4 = u(rng);
  c[2] = c2;
  c[4] = c4;
  if (sextic) c[6] = 0.5 * u(rng);
  if (!even) {
    c[1] = sgn(rng);
    // 36 c3^2 < 96 c2 c4 keeps 2 c2 + 6 c3 x + 12 c4 x^2 positive
    c[3] = 0.9 * sgn(rng) * std::sqrt(96.0 * c2 * c4 / 36.0);
  }
  return c;
}

}  // namespace oracle
