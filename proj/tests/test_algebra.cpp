#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cutlab/density.hpp"
#include "cutlab/laurent.hpp"
#include "cutlab/poly.hpp"
#include "cutlab/quadrature.hpp"
#include "expect_error.hpp"
#include "oracles.hpp"

using namespace cutlab;
using doctest::Approx;

namespace {

std::vector<double> random_endpoints(std::mt19937& rng, int cuts) {
  std::uniform_real_distribution<double> gap(0.3, 2.0);
  std::uniform_real_distribution<double> start(-3.0, 0.0);
  std::vector<double> ep{start(rng)};
  for (int i = 1; i < 2 * cuts; ++i) ep.push_back(ep.back() + gap(rng));
  return ep;
}

Poly random_poly(std::mt19937& rng, int degree) {
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  std::vector<double> coeffs(degree + 1);
  for (auto& x : coeffs) x = c(rng);
  coeffs.back() = 0.5 + std::abs(coeffs.back());
  return Poly(coeffs);
}

}  // namespace

TEST_CASE("poly basics") {
  Poly p{1.0, -3.0, 0.0, 2.0};
  CHECK(p.degree() == 3);
  CHECK(p(2.0) == Approx(11.0));
  CHECK(p.derivative() == Poly{-3.0, 0.0, 6.0});
  CHECK(Poly{1.0, 0.0, 0.0}.degree() == 0);
  CHECK(Poly{}.degree() == -1);
  auto [q, r] = (Poly{-6.0, 11.0, -6.0, 1.0}).divide_linear(3.0);
  CHECK(r == Approx(0.0));
  CHECK(q == Poly{2.0, -3.0, 1.0});
  CHECK(Poly::linear_power(1.0, 2) == Poly{1.0, -2.0, 1.0});
  CHECK(p.shifted(1.0)(3.0) == Approx(p(2.0)));
  auto roots = real_roots(Poly{-6.0, 11.0, -6.0, 1.0});
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == Approx(1.0));
  CHECK(roots[2] == Approx(3.0));
  CHECK(real_roots(Poly{1.0, 0.0, 1.0}).empty());
}

TEST_CASE("sqrt_sigma_series examples") {
  const std::vector<double> sym{-2.0, 2.0};
  auto s = sqrt_sigma_series(sym, 5);
  CHECK(s.lead_exp == 1);
  REQUIRE(s.order() == 5);
  const double expected[] = {1.0, 0.0, -2.0, 0.0, -2.0};
  for (int k = 0; k < 5; ++k) CHECK(s.coeffs[k] == Approx(expected[k]).epsilon(1e-15));

  CHECK_ERROR_CODE(sqrt_sigma_series(std::vector<double>{0.0, 0.0}, 4),
                   ErrorCode::NonIncreasingEndpoints);
  CHECK_ERROR_CODE(sqrt_sigma_series(std::vector<double>{1.0, 0.0}, 4),
                   ErrorCode::NonIncreasingEndpoints);
  CHECK_ERROR_CODE(sqrt_sigma_series(std::vector<double>{0.0, 1.0, 2.0}, 4),
                   ErrorCode::NonIncreasingEndpoints);

  // (-b, b) and (-b2, -b1, b1, b2): every other coefficient vanishes
  auto even1 = sqrt_sigma_series(std::vector<double>{-1.7, 1.7}, 12);
  auto even2 = sqrt_sigma_series(std::vector<double>{-2.5, -0.4, 0.4, 2.5}, 12);
  for (int k = 1; k < 12; k += 2) {
    CHECK(std::abs(even1.coeffs[k]) < 1e-12 * std::pow(1.7, k));
    CHECK(std::abs(even2.coeffs[k]) < 1e-12 * std::pow(2.5, k));
  }
}

TEST_CASE("polynomial_part examples") {
  const std::vector<double> sym{-2.0, 2.0};
  auto p1 = polynomial_part(Poly{0.0, 1.0}, sym, 6);
  CHECK(p1.M.degree() == 0);
  CHECK(p1.M[0] == Approx(1.0));

  auto p3 = polynomial_part(Poly{0.0, 0.0, 0.0, 1.0}, sym, 8);
  REQUIRE(p3.M.degree() == 2);
  CHECK(p3.M[0] == Approx(2.0));
  CHECK(std::abs(p3.M[1]) < 1e-15);
  CHECK(p3.M[2] == Approx(1.0));
  CHECK(p3.remainder.lead_exp == -1);
  CHECK(p3.remainder.coefficient(-2) == Approx(6.0));

  auto p0 = polynomial_part(Poly{5.0}, std::vector<double>{-1.0, 1.0}, 4);
  CHECK(p0.M.is_zero());

  CHECK_ERROR_CODE(polynomial_part(Poly{0.0, 0.0, 0.0, 1.0}, sym, 1), ErrorCode::InsufficientOrder);
  CHECK_ERROR_CODE(to_laurent(Poly{1.0}, 2).coefficient(-5), ErrorCode::InsufficientOrder);
}

TEST_CASE("series reconstruction and branch consistency") {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> cut_count(1, 2);
  for (int trial = 0; trial < 60; ++trial) {
    const int s = cut_count(rng);
    const auto ep = random_endpoints(rng, s);
    const Poly vp = random_poly(rng, std::uniform_int_distribution<int>(s, 7)(rng));
    const int order = default_series_order(vp);

    auto part = polynomial_part(vp, ep, order);
    CHECK(part.M.degree() == vp.degree() - s);
    auto full = to_laurent(vp, order + s) * inverse_sqrt_sigma_series(ep, order + s);
    for (int ex = full.lead_exp; ex >= part.remainder.last_exp(); --ex) {
      const double lhs = (ex >= 0 ? part.M[static_cast<std::size_t>(ex)] : 0.0) +
                         (ex < 0 ? part.remainder.coefficient(ex) : 0.0);
      CHECK(std::abs(lhs - full.coefficient(ex)) < 1e-12 * std::max(1.0, std::abs(lhs)));
    }

    // sqrt(sigma)^2 against the expanded product
    Poly sigma{1.0};
    for (double x : ep) sigma = sigma * Poly{-x, 1.0};
    auto sq = sqrt_sigma_series(ep, 2 * s + 6);
    auto square = sq * sq;
    for (int ex = 2 * s; ex >= square.last_exp(); --ex) {
      const double want = ex >= 0 ? sigma[static_cast<std::size_t>(ex)] : 0.0;
      CHECK(std::abs(square.coefficient(ex) - want) < 1e-12 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("branch sign bookkeeping") {
  const std::vector<double> ep{-3.0, -1.0, 1.0, 3.0};
  CHECK(endpoints_right_of(ep, 4.0) == 0);
  CHECK(endpoints_right_of(ep, 0.0) == 2);
  CHECK(cut_containing(ep, 2.0) == 1);
  CHECK(cut_containing(ep, 0.0) == -1);
  CHECK(sqrt_sigma_off_cut(ep, 4.0) > 0.0);
  CHECK(sqrt_sigma_off_cut(ep, 0.0) < 0.0);
  CHECK(sqrt_sigma_off_cut(ep, -4.0) > 0.0);
  CHECK(sqrt_abs_sigma(ep, 0.0) == Approx(3.0));
  CHECK(sqrt_sigma_cut_sign(ep, 2.0) == 1);
  CHECK(sqrt_sigma_cut_sign(ep, -2.0) == -1);
}

TEST_CASE("cut_quadrature examples") {
  CHECK(cut_quadrature(Poly{1.0}, -2.0, 2.0) == Approx(2.0 * std::numbers::pi).epsilon(1e-14));
  for (double r : {0.3, 1.0, 7.5}) {
    CHECK(std::abs(cut_quadrature(Poly{0.0, 1.0}, -r, r)) < 1e-12);
    CHECK(std::abs(cut_quadrature(Poly{0.0, 2.0, 0.0, -1.0, 0.0, 0.5}, -r, r)) < 1e-12);
  }
  // int x^2 sqrt(4 - x^2) = 2 pi
  CHECK(cut_quadrature(Poly{0.0, 0.0, 1.0}, -2.0, 2.0) == Approx(2.0 * std::numbers::pi));
  CHECK_ERROR_CODE(cut_quadrature(Poly{1.0}, 1.5, 1.5), ErrorCode::EmptyInterval);
  CHECK_ERROR_CODE(cut_quadrature(Poly{1.0}, 2.0, 1.0), ErrorCode::EmptyInterval);

  // non-polynomial integrand against the tanh-sinh oracle
  auto f = [](double t) { return std::exp(t) / (2.5 - t); };
  const double ref = oracle::tanh_sinh(
      [&](double t) { return f(t) * std::sqrt((t + 1.0) * (1.5 - t)); }, -1.0, 1.5);
  CHECK(cut_integral(f, -1.0, 1.5) == Approx(ref).epsilon(1e-12));
}

TEST_CASE("gap_quadrature examples") {
  const std::vector<double> sym{-2.0, 2.0};
  const double closed = 3.0 * std::sqrt(5.0) / 2.0 - 2.0 * std::acosh(1.5);
  CHECK(closed == Approx(1.42925).epsilon(1e-5));
  CHECK(gap_quadrature(Poly{1.0}, sym, 2.0, 3.0) == Approx(closed).epsilon(1e-13));
  CHECK(gap_quadrature(Poly{1.0}, sym, 3.0, 2.0) == Approx(-closed).epsilon(1e-13));
  CHECK(gap_quadrature(Poly{0.0, 4.0, 1.0}, sym, 2.5, 2.5) == 0.0);
  CHECK_ERROR_CODE(gap_quadrature(Poly{1.0}, sym, 1.0, 3.0), ErrorCode::IntervalCrossesCut);

  const double far = oracle::semicircle_gap_primitive(7.0) - oracle::semicircle_gap_primitive(2.0);
  CHECK(gap_quadrature(Poly{1.0}, sym, 2.0, 7.0) == Approx(far).epsilon(1e-13));

  // interior gap of a two-cut geometry, against the oracle with the product-of-roots sign
  const std::vector<double> ep{-2.0, -0.5, 0.8, 2.2};
  const Poly m{0.3, -1.0, 1.0};
  const double ref = oracle::tanh_sinh(
      [&](double t) {
        double prod = 1.0;
        for (double e : ep) prod *= std::sqrt(std::abs(t - e));
        return -m(t) * prod;  // two endpoints to the right: i^2 = -1
      },
      -0.5, 0.8);
  CHECK(gap_quadrature(m, ep, -0.5, 0.8) == Approx(ref).epsilon(1e-12));

  // odd m on symmetric endpoints
  const std::vector<double> sym2{-3.0, -1.0, 1.0, 3.0};
  CHECK(std::abs(gap_quadrature(Poly{0.0, 1.0}, sym2, -1.0, 1.0)) < 1e-12);
}

TEST_CASE("log_potential examples") {
  const std::vector<double> sym{-2.0, 2.0};
  CHECK(log_potential(2.0, Poly{1.0}, sym) == Approx(0.5).epsilon(1e-13));
  CHECK(log_potential(0.0, Poly{1.0}, sym) == Approx(-0.5).epsilon(1e-13));
  for (double x : {-9.0, -2.5, -1.1, 0.7, 1.99, 2.01, 3.0, 40.0})
    CHECK(log_potential(x, Poly{1.0}, sym) ==
          Approx(oracle::semicircle_log_potential(x)).epsilon(1e-12));

  for (double s : {-1.3, 0.25, 4.0}) {
    const std::vector<double> moved{-2.0 + s, 2.0 + s};
    for (double x : {0.3, 2.0, 5.0})
      CHECK(log_potential(x + s, Poly{1.0}, moved) ==
            Approx(log_potential(x, Poly{1.0}, sym)).epsilon(1e-12));
  }

  // parity for an even density
  const std::vector<double> sym2{-3.0, -1.0, 1.0, 3.0};
  for (double x : {0.0, 0.5, 2.0, 3.5})
    CHECK(std::abs(log_potential(x, Poly{0.0, 1.0}, sym2) -
                   log_potential(-x, Poly{0.0, 1.0}, sym2)) < 1e-12);
}

TEST_CASE("spectral density against the tanh-sinh oracle") {
  struct Case {
    std::vector<double> M;
    std::vector<double> ep;
  };
  const Case cases[] = {
      {{1.0, 0.0, 1.0}, {-1.5, 2.0}},
      {{0.0, 1.0}, {-3.0, -1.0, 1.0, 3.0}},
      {{0.1, 1.0}, {-2.0, -0.3, 1.1, 1.7}},
  };
  for (const auto& c : cases) {
    SpectralDensity rho(Poly(c.M), c.ep);
    CHECK(rho.total_mass() == Approx(oracle::mass(c.M, c.ep)).epsilon(1e-13));
    for (double x : {-3.5, -1.0, -0.2, 0.5, 1.4, 2.5, 6.0}) {
      CHECK(rho.value(x) == Approx(oracle::density(c.M, c.ep, x)).epsilon(1e-13));
      CHECK(rho.log_potential(x) ==
            Approx(oracle::log_potential(c.M, c.ep, x)).epsilon(1e-11));
    }
    const double mid = 0.5 * (c.ep[0] + c.ep[1]);
    const double left_mass =
        oracle::tanh_sinh([&](double y) { return oracle::density(c.M, c.ep, y); }, c.ep[0], mid);
    CHECK(rho.cdf(mid) == Approx(left_mass).epsilon(1e-12));
    CHECK(rho.quantile(left_mass) == Approx(mid).epsilon(1e-10));

    // Stieltjes transform off the support
    const double x = c.ep.back() + 0.7;
    const double st = oracle::tanh_sinh_split(
        [&](double y) { return oracle::density(c.M, c.ep, y) / (x - y); }, c.ep);
    CHECK(rho.stieltjes(x) == Approx(st).epsilon(1e-12));

    const double mean = oracle::tanh_sinh_split(
        [&](double y) { return y * y * oracle::density(c.M, c.ep, y); }, c.ep);
    CHECK(rho.integrate([](double y) { return y * y; }) == Approx(mean).epsilon(1e-12));
  }
}

TEST_CASE("quadrature node doubling on the Gaussian benchmark") {
  const std::vector<double> sym{-2.0, 2.0};
  const Poly p{1.0, 0.0, -0.5, 0.0, 0.1};
  CHECK(std::abs(cut_quadrature(p, -2.0, 2.0, 64) - cut_quadrature(p, -2.0, 2.0, 128)) < 1e-9);
  CHECK(std::abs(cut_quadrature(p, -2.0, 2.0, 128) - cut_quadrature(p, -2.0, 2.0, 256)) < 1e-9);
  for (double to : {2.1, 3.0, 10.0})
    CHECK(std::abs(gap_quadrature(Poly{1.0}, sym, 2.0, to, 128) -
                   gap_quadrature(Poly{1.0}, sym, 2.0, to, 256)) < 1e-9);
  for (double x : {0.0, 1.0, 1.999, 2.0, 2.3, 50.0})
    CHECK(std::abs(log_potential(x, Poly{1.0}, sym, 128) - log_potential(x, Poly{1.0}, sym, 256)) <
          1e-9);
}
