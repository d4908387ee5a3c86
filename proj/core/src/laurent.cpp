#include "cutlab/laurent.hpp"

#include <algorithm>
#include <string>

#include "cutlab/error.hpp"

namespace cutlab {

double LaurentTail::coefficient(int exponent) const {
  if (exponent > lead_exp) return 0.0;
  if (exponent < last_exp())
    throw Error(ErrorCode::InsufficientOrder,
                "coefficient of z^" + std::to_string(exponent) + " lies below the truncation");
  return coeffs[static_cast<std::size_t>(lead_exp - exponent)];
}

LaurentTail operator*(const LaurentTail& a, const LaurentTail& b) {
  const int order = std::min(a.order(), b.order());
  LaurentTail r{a.lead_exp + b.lead_exp, std::vector<double>(static_cast<std::size_t>(order), 0.0)};
  for (int k = 0; k < order; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) acc += a.coeffs[j] * b.coeffs[k - j];
    r.coeffs[k] = acc;
  }
  return r;
}

LaurentTail to_laurent(const Poly& p, int order) {
  LaurentTail r{std::max(p.degree(), 0), std::vector<double>(static_cast<std::size_t>(order), 0.0)};
  for (int k = 0; k < order; ++k) {
    const int exp = r.lead_exp - k;
    if (exp >= 0) r.coeffs[k] = p[static_cast<std::size_t>(exp)];
  }
  return r;
}

void check_endpoints(std::span<const double> endpoints) {
  if (endpoints.empty() || endpoints.size() % 2 != 0)
    throw Error(ErrorCode::NonIncreasingEndpoints, "endpoint count must be even and positive");
  for (std::size_t i = 1; i < endpoints.size(); ++i) {
    if (!(endpoints[i] > endpoints[i - 1]))
      throw Error(ErrorCode::NonIncreasingEndpoints,
                  "endpoints must be strictly increasing (index " + std::to_string(i) + ")");
  }
}

namespace {

// prod_i (1 - x_i w)^alpha as a power series in w = 1/z.
std::vector<double> binomial_product(std::span<const double> endpoints, double alpha, int order) {
  std::vector<double> acc(static_cast<std::size_t>(order), 0.0);
  acc[0] = 1.0;
  std::vector<double> factor(static_cast<std::size_t>(order));
  std::vector<double> next(static_cast<std::size_t>(order));
  for (double x : endpoints) {
    factor[0] = 1.0;
    for (int j = 1; j < order; ++j)
      factor[j] = factor[j - 1] * (alpha - (j - 1)) / j * (-x);
    for (int k = 0; k < order; ++k) {
      double s = 0.0;
      for (int j = 0; j <= k; ++j) s += factor[j] * acc[k - j];
      next[k] = s;
    }
    acc.swap(next);
  }
  return acc;
}

}  // namespace

LaurentTail sqrt_sigma_series(std::span<const double> endpoints, int order) {
  check_endpoints(endpoints);
  if (order < 1) throw Error(ErrorCode::InsufficientOrder, "order must be at least 1");
  return {static_cast<int>(endpoints.size() / 2), binomial_product(endpoints, 0.5, order)};
}

LaurentTail inverse_sqrt_sigma_series(std::span<const double> endpoints, int order) {
  check_endpoints(endpoints);
  if (order < 1) throw Error(ErrorCode::InsufficientOrder, "order must be at least 1");
  return {-static_cast<int>(endpoints.size() / 2), binomial_product(endpoints, -0.5, order)};
}

PolynomialPart polynomial_part(const Poly& vprime, std::span<const double> endpoints, int order) {
  check_endpoints(endpoints);
  const int s = static_cast<int>(endpoints.size() / 2);
  const int deg = std::max(vprime.degree(), 0);
  const int lead = deg - s;
  // Need every exponent from `lead` down to -1.
  const int needed = std::max(lead + 2, 1);
  if (order < needed)
    throw Error(ErrorCode::InsufficientOrder,
                "order " + std::to_string(order) + " < " + std::to_string(needed));

  const std::vector<double> inv = binomial_product(endpoints, -0.5, order);
  // coefficient of z^m in V'/sqrt(sigma) = sum_k v_k inv[k - s - m]
  auto coeff = [&](int m) {
    double acc = 0.0;
    for (int k = 0; k <= deg; ++k) {
      const int idx = k - s - m;
      if (idx >= 0 && idx < order) acc += vprime[static_cast<std::size_t>(k)] * inv[idx];
    }
    return acc;
  };

  std::vector<double> m_coeffs;
  if (lead >= 0) {
    m_coeffs.resize(static_cast<std::size_t>(lead + 1));
    for (int m = 0; m <= lead; ++m) m_coeffs[m] = coeff(m);
  }
  const int last = lead - order + 1;
  LaurentTail rem{-1, {}};
  for (int m = -1; m >= last; --m) rem.coeffs.push_back(coeff(m));
  if (rem.coeffs.empty()) rem.coeffs.push_back(0.0);
  return {Poly(std::move(m_coeffs)), std::move(rem)};
}

}  // namespace cutlab
