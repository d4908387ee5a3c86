#include "cutlab/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cutlab/laurent.hpp"

namespace cutlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

SpectralDensity::SpectralDensity(const Poly& M, std::span<const double> endpoints, int nodes)
    : M_(M), endpoints_(endpoints.begin(), endpoints.end()) {
  check_endpoints(endpoints_);
  const int K = nodes;
  for (std::size_t i = 0; i < endpoints_.size(); i += 2) {
    Cut cut;
    const double left = endpoints_[i];
    const double right = endpoints_[i + 1];
    cut.mid = 0.5 * (left + right);
    cut.half = 0.5 * (right - left);
    const double sign = (endpoints_.size() - i - 1) % 4 == 1 ? 1.0 : -1.0;
    cut.samples.resize(K);
    for (int k = 0; k < K; ++k) {
      const double theta = kPi * (k + 0.5) / K;
      const double y = cut.mid + cut.half * std::cos(theta);
      double rest = 1.0;
      for (std::size_t j = 0; j < endpoints_.size(); ++j) {
        if (j != i && j != i + 1) rest *= std::abs(y - endpoints_[j]);
      }
      const double s = std::sin(theta);
      cut.samples[k] =
          sign * M_(y) * std::sqrt(rest) * cut.half * cut.half * s * s / (2.0 * kPi);
    }
    cut.cosine.assign(K, 0.0);
    for (int n = 0; n < K; ++n) {
      double acc = 0.0;
      for (int k = 0; k < K; ++k) acc += cut.samples[k] * std::cos(n * kPi * (k + 0.5) / K);
      cut.cosine[n] = (n == 0 ? 1.0 : 2.0) * acc / K;
    }
    cuts_.push_back(std::move(cut));
  }
}

double SpectralDensity::value(double x) const noexcept {
  const int idx = cut_containing(endpoints_, x);
  if (idx < 0) return 0.0;
  return M_(x) * sqrt_sigma_cut_sign(endpoints_, x) * sqrt_abs_sigma(endpoints_, x) / (2.0 * kPi);
}

double SpectralDensity::log_potential(double x) const noexcept {
  double total = 0.0;
  for (const Cut& cut : cuts_) {
    const double xi = (x - cut.mid) / cut.half;
    const std::size_t K = cut.cosine.size();
    double acc = 0.0;
    if (std::abs(xi) <= 1.0) {
      // cos(n phi) = T_n(xi)
      double t_prev = 1.0, t_cur = xi;
      for (std::size_t n = 1; n < K; ++n) {
        acc += cut.cosine[n] * t_cur / static_cast<double>(n);
        const double t_next = 2.0 * xi * t_cur - t_prev;
        t_prev = t_cur;
        t_cur = t_next;
      }
      total += kPi * (cut.cosine[0] * std::log(0.5 * cut.half) - acc);
    } else {
      const double a = std::abs(xi);
      const double R = a + std::sqrt((a - 1.0) * (a + 1.0));
      const double r = (xi > 0 ? 1.0 : -1.0) / R;
      double rn = 1.0;
      for (std::size_t n = 1; n < K; ++n) {
        rn *= r;
        acc += cut.cosine[n] * rn / static_cast<double>(n);
        if (std::abs(rn) < 1e-18) break;
      }
      total += kPi * (cut.cosine[0] * std::log(0.5 * cut.half * R) - acc);
    }
  }
  return total;
}

double SpectralDensity::stieltjes(double x) const noexcept {
  double total = 0.0;
  for (const Cut& cut : cuts_) {
    const std::size_t K = cut.samples.size();
    double acc = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      const double y = cut.mid + cut.half * std::cos(kPi * (k + 0.5) / K);
      acc += cut.samples[k] / (x - y);
    }
    total += acc * kPi / K;
  }
  return total;
}

double SpectralDensity::cut_cdf(const Cut& cut, double x) const noexcept {
  const double left = cut.mid - cut.half;
  const double right = cut.mid + cut.half;
  if (x <= left) return 0.0;
  if (x >= right) return kPi * cut.cosine[0];
  const double theta = std::acos(std::clamp((x - cut.mid) / cut.half, -1.0, 1.0));
  // integral over theta' in [theta, pi] of g
  double acc = cut.cosine[0] * (kPi - theta);
  const double c = std::cos(theta);
  double s_prev = 0.0, s_cur = std::sin(theta);
  for (std::size_t n = 1; n < cut.cosine.size(); ++n) {
    acc -= cut.cosine[n] * s_cur / static_cast<double>(n);
    const double s_next = 2.0 * c * s_cur - s_prev;
    s_prev = s_cur;
    s_cur = s_next;
  }
  return acc;
}

double SpectralDensity::cdf(double x) const noexcept {
  double total = 0.0;
  for (const Cut& cut : cuts_) total += cut_cdf(cut, x);
  return total;
}

double SpectralDensity::quantile(double mass) const {
  double below = 0.0;
  for (std::size_t c = 0; c < cuts_.size(); ++c) {
    const Cut& cut = cuts_[c];
    const double m = kPi * cut.cosine[0];
    if (mass <= below + m || c + 1 == cuts_.size()) {
      const double target = std::clamp(mass - below, 0.0, m);
      double lo = cut.mid - cut.half;
      double hi = cut.mid + cut.half;
      for (int it = 0; it < 100 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
        const double x = 0.5 * (lo + hi);
        (cut_cdf(cut, x) < target ? lo : hi) = x;
      }
      return 0.5 * (lo + hi);
    }
    below += m;
  }
  return endpoints_.back();
}

double SpectralDensity::total_mass() const noexcept {
  double total = 0.0;
  for (const Cut& cut : cuts_) total += kPi * cut.cosine[0];
  return total;
}

std::vector<double> SpectralDensity::cut_masses() const {
  std::vector<double> masses;
  for (const Cut& cut : cuts_) masses.push_back(kPi * cut.cosine[0]);
  return masses;
}

double SpectralDensity::integrate(const std::function<double(double)>& f) const {
  double total = 0.0;
  for (const Cut& cut : cuts_) {
    const std::size_t K = cut.samples.size();
    double acc = 0.0;
    for (std::size_t k = 0; k < K; ++k)
      acc += cut.samples[k] * f(cut.mid + cut.half * std::cos(kPi * (k + 0.5) / K));
    total += acc * kPi / K;
  }
  return total;
}

double log_potential(double x, const Poly& M, std::span<const double> endpoints, int nodes) {
  return SpectralDensity(M, endpoints, nodes).log_potential(x);
}

}  // namespace cutlab
