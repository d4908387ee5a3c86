#include "cutlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "cutlab/error.hpp"
#include "cutlab/laurent.hpp"

namespace cutlab {

namespace {

QuadratureRule build_gauss_legendre(int n) {
  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const QuadratureRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<const QuadratureRule>(build_gauss_legendre(n));
  return *slot;
}

int endpoints_right_of(std::span<const double> endpoints, double x) noexcept {
  return static_cast<int>(std::count_if(endpoints.begin(), endpoints.end(),
                                        [x](double e) { return e > x; }));
}

int cut_containing(std::span<const double> endpoints, double x) noexcept {
  for (std::size_t i = 0; i + 1 < endpoints.size(); i += 2) {
    if (x > endpoints[i] && x < endpoints[i + 1]) return static_cast<int>(i / 2);
  }
  return -1;
}

double sqrt_abs_sigma(std::span<const double> endpoints, double x) noexcept {
  double prod = 1.0;
  for (double e : endpoints) prod *= std::sqrt(std::abs(x - e));
  return prod;
}

double sqrt_sigma_off_cut(std::span<const double> endpoints, double x) noexcept {
  const int k = endpoints_right_of(endpoints, x);
  return (k % 4 == 0 ? 1.0 : -1.0) * sqrt_abs_sigma(endpoints, x);
}

int sqrt_sigma_cut_sign(std::span<const double> endpoints, double x) noexcept {
  return endpoints_right_of(endpoints, x) % 4 == 1 ? 1 : -1;
}

double cut_integral(const std::function<double(double)>& f, double left, double right, int nodes) {
  if (!(left < right))
    throw Error(ErrorCode::EmptyInterval, "cut interval must satisfy left < right");
  const double mid = 0.5 * (left + right);
  const double half = 0.5 * (right - left);
  // mirrored nodes are summed in pairs so parity cancels exactly
  double acc = 0.0;
  for (int k = 0; k < nodes / 2; ++k) {
    const double theta = std::numbers::pi * (k + 0.5) / nodes;
    const double s = std::sin(theta);
    const double c = half * std::cos(theta);
    acc += (f(mid + c) + f(mid - c)) * s * s;
  }
  if (nodes % 2 == 1) acc += f(mid);
  return acc * half * half * std::numbers::pi / nodes;
}

double cut_quadrature(const Poly& p, double left, double right, int nodes) {
  return cut_integral([&p](double t) { return p(t); }, left, right, nodes);
}

double gap_quadrature(const Poly& m, std::span<const double> endpoints, double from, double to,
                      int nodes) {
  check_endpoints(endpoints);
  if (from == to) return 0.0;
  const double lo = std::min(from, to);
  const double hi = std::max(from, to);
  for (std::size_t i = 0; i + 1 < endpoints.size(); i += 2) {
    if (std::max(lo, endpoints[i]) < std::min(hi, endpoints[i + 1]))
      throw Error(ErrorCode::IntervalCrossesCut,
                  "[" + std::to_string(lo) + ", " + std::to_string(hi) + "] meets cut " +
                      std::to_string(i / 2));
  }
  const double sign = sqrt_sigma_off_cut(endpoints, 0.5 * (lo + hi)) >= 0.0 ? 1.0 : -1.0;
  auto integrand = [&](double t) { return m(t) * sqrt_abs_sigma(endpoints, t); };

  constexpr int kPanels = 6;
  constexpr double kGrading = 0.25;
  const int per_panel = std::max(8, nodes / 4);
  const QuadratureRule& rule = gauss_legendre(per_panel);
  const double umax = std::sqrt(0.5 * (hi - lo));

  // t = anchor + dir * u^2, dt = 2 u du, u in [0, umax]
  auto half_integral = [&](double anchor, double dir) {
    double acc = 0.0;
    double upper = umax;
    for (int p = 0; p < kPanels; ++p) {
      const double lower = (p == kPanels - 1) ? 0.0 : upper * kGrading;
      const double c = 0.5 * (upper + lower);
      const double h = 0.5 * (upper - lower);
      for (int k = 0; k < per_panel; ++k) {
        const double u = c + h * rule.nodes[k];
        acc += rule.weights[k] * h * 2.0 * u * integrand(anchor + dir * u * u);
      }
      upper = lower;
    }
    return acc;
  };
  const double total = half_integral(lo, 1.0) + half_integral(hi, -1.0);
  return sign * (to > from ? total : -total);
}

}  // namespace cutlab
