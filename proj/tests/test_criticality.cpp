#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "cutlab/criticality.hpp"
#include "cutlab/gas.hpp"
#include "expect_error.hpp"

using namespace cutlab;
using doctest::Approx;

namespace {

const Potential kGaussian({0.0, 0.0, 0.5});

// Recorded from a verified run of the bracketed search on the benchmark potential.
constexpr double kBenchTc = 0.385832341508737;

const CriticalData& bench_critical() {
  static const CriticalData crit =
      find_critical_temperature(Potential::birth_demo(), 0.05, 5.0);
  return crit;
}

}  // namespace

TEST_CASE("second_well_point examples") {
  CHECK_ERROR_CODE(second_well_point(solve_one_cut(kGaussian, 1.0)), ErrorCode::NoSecondWell);

  auto rd = solve_one_cut(Potential::birth_demo(), 0.1);
  auto w = second_well_point(rd);
  CHECK(w.e == Approx(3.02158641162963).epsilon(1e-11));
  CHECK(w.barrier == Approx(1.94929857627844).epsilon(1e-11));
  CHECK(w.e != 3.0);
  // V_eff' changes sign there: Gamma has a minimum at e and a maximum at the barrier
  const double h = 1e-3;
  CHECK(effective_potential_gap(rd, w.e - h) > effective_potential_gap(rd, w.e));
  CHECK(effective_potential_gap(rd, w.e + h) > effective_potential_gap(rd, w.e));
  CHECK(effective_potential_gap(rd, w.barrier - h) < effective_potential_gap(rd, w.barrier));
  CHECK(effective_potential_gap(rd, w.barrier + h) < effective_potential_gap(rd, w.barrier));

  ResolventData synthetic{kGaussian, 1.0, SupportGeometry{{-1.0, 1.0}}, Poly{8.75, -6.0, 1.0}, 0.0, 0};
  auto ws = second_well_point(synthetic);
  CHECK(ws.e == Approx(3.5));
  CHECK(ws.barrier == Approx(2.5));
}

TEST_CASE("fermi_gap examples") {
  const auto vb = Potential::birth_demo();
  CHECK(fermi_gap(vb, 0.05) > 0.0);
  CHECK(fermi_gap(vb, 0.5) < 0.0);
  CHECK_ERROR_CODE(fermi_gap(vb, 0.8), ErrorCode::NegativeDensity);
  // at high T the one-cut support has swallowed the second well
  CHECK_ERROR_CODE(fermi_gap(vb, 5.0), ErrorCode::NoSecondWell);
  CHECK_ERROR_CODE(fermi_gap(kGaussian, 1.0), ErrorCode::NoSecondWell);
}

TEST_CASE("find_critical_temperature on the benchmark") {
  const auto& crit = bench_critical();
  CHECK(crit.T_c == Approx(kBenchTc).epsilon(1e-10));
  CHECK(std::abs(crit.gap_at_Tc) < 1e-10);
  CHECK(std::abs(fermi_gap(Potential::birth_demo(), crit.T_c)) < 1e-9);
  const double b = crit.one_cut.endpoints()[1];
  CHECK(b < crit.barrier);
  CHECK(crit.barrier < crit.e);
  CHECK(crit.distance == Approx(crit.e - b));
  CHECK(crit.nu == 1);
  CHECK(std::abs(crit.Q(crit.e)) > 1e-3);
  CHECK(crit.one_cut.T == crit.T_c);

  CHECK_ERROR_CODE(find_critical_temperature(kGaussian, 0.05, 5.0), ErrorCode::NoSecondWell);
  CHECK_ERROR_CODE(find_critical_temperature(Potential::birth_demo(), 0.05, 0.2),
                   ErrorCode::NotBracketed);
}

TEST_CASE("M vanishes at the birth point") {
  const auto& crit = bench_critical();
  const Poly& M = crit.one_cut.M;
  const double b = crit.one_cut.endpoints()[1];
  double mmax = 0.0;
  for (int k = 0; k <= 1000; ++k) mmax = std::max(mmax, std::abs(M(b + (crit.e + 1.0 - b) * k / 1000.0)));
  CHECK(std::abs(M(crit.e)) < 1e-8 * mmax);
}

TEST_CASE("log-gas occupancy flips across the critical temperature") {
  const auto vb = Potential::birth_demo();
  const auto& crit = bench_critical();
  GasConfig cfg;
  cfg.N = 200;
  cfg.barrier = crit.barrier;

  cfg.T = 0.95 * crit.T_c;
  auto below = solve_one_cut(vb, cfg.T);
  cfg.init = GasInit::Quantile;
  CHECK(equilibrium_positions(vb, cfg, &below).occupancy == 0);
  cfg.init = GasInit::Uniform;
  CHECK(equilibrium_positions(vb, cfg).occupancy == 0);

  cfg.T = 1.05 * crit.T_c;
  auto two = continue_two_cut(vb, crit, cfg.T);
  SolverOptions keep;
  keep.reject_negative_density = false;
  auto one = solve_one_cut(vb, cfg.T, keep);
  cfg.init = GasInit::Quantile;
  auto seeded = equilibrium_positions(vb, cfg, &two);
  auto trapped = equilibrium_positions(vb, cfg, &one);
  CHECK(seeded.occupancy >= 1);
  CHECK(trapped.occupancy == 0);
  CHECK(seeded.energy < trapped.energy);
}

TEST_CASE("classify_nu examples") {
  const Poly m1 = Poly{-3.0, 1.0} * Poly{-1.0, 1.0};
  auto c1 = classify_nu(m1, 3.0);
  CHECK(c1.nu == 1);
  CHECK(c1.zero_order == 1);
  REQUIRE(c1.Q.degree() == 1);
  CHECK(c1.Q[0] == Approx(-1.0));
  CHECK(c1.Q[1] == Approx(1.0));

  const Poly m2 = Poly::linear_power(3.0, 3) * Poly{-4.0, 1.0};
  auto c2 = classify_nu(m2, 3.0);
  CHECK(c2.nu == 2);
  CHECK(c2.zero_order == 3);
  REQUIRE(c2.Q.degree() == 1);
  CHECK(c2.Q[0] == Approx(-4.0));
  CHECK(c2.Q[1] == Approx(1.0));

  CHECK_ERROR_CODE(classify_nu(Poly{-1.0, 1.0}, 3.0), ErrorCode::NotCritical);
  CHECK_ERROR_CODE(classify_nu(Poly::linear_power(3.0, 2) * Poly{1.0, 1.0}, 3.0),
                   ErrorCode::EvenOrderZero);
}

TEST_CASE("deflation reconstructs M") {
  const auto& crit = bench_critical();
  const Poly& M = crit.one_cut.M;
  const Poly rebuilt = Poly::linear_power(crit.e, 2 * crit.nu - 1) * crit.Q;
  const double norm = M.norm();
  for (int k = 0; k <= M.degree(); ++k)
    CHECK(std::abs(rebuilt[static_cast<std::size_t>(k)] - M[static_cast<std::size_t>(k)]) < 1e-8 * norm);
}

TEST_CASE("continue_two_cut examples") {
  const auto vb = Potential::birth_demo();
  const auto& crit = bench_critical();
  const double b_c = crit.one_cut.endpoints()[1];

  auto near = continue_two_cut(vb, crit, 1.001 * crit.T_c);
  REQUIRE(near.cuts() == 2);
  const auto ep = near.endpoints();
  CHECK(ep[3] - ep[2] < 0.05 * (crit.e - b_c));
  CHECK(ep[2] < crit.e);
  CHECK(ep[3] > crit.e);
  const auto masses = cut_masses(near);
  CHECK(masses[1] > 0.0);
  CHECK(masses[0] + masses[1] == Approx(near.T).epsilon(1e-10));
  CHECK(near.M.degree() == vb.degree() - 3);
  CHECK(near.residual_norm < 1e-10);
  CHECK(validate_phase(near).valid);

  CHECK_ERROR_CODE(continue_two_cut(vb, crit, crit.T_c), ErrorCode::BelowCritical);
  CHECK_ERROR_CODE(continue_two_cut(vb, crit, 0.9 * crit.T_c), ErrorCode::BelowCritical);

  // outer cut stays close to the continued (now invalid) one-cut solution
  const double T = 1.2 * crit.T_c;
  auto far = continue_two_cut(vb, crit, T);
  SolverOptions keep;
  keep.reject_negative_density = false;
  auto one = solve_one_cut(vb, T, keep);
  CHECK(std::abs(far.endpoints()[0] - one.endpoints()[0]) < 0.05 * (crit.e - b_c));
  CHECK(std::abs(far.endpoints()[1] - one.endpoints()[1]) < 0.05 * (crit.e - b_c));
  CHECK(validate_phase(far).valid);

  // seeding from an earlier two-cut solution lands on the same branch
  auto mid = continue_two_cut(vb, crit, 1.1 * crit.T_c);
  auto reseeded = continue_two_cut(vb, crit, T, &mid);
  for (int i = 0; i < 4; ++i) CHECK(reseeded.endpoints()[i] == Approx(far.endpoints()[i]).epsilon(1e-9));
}

TEST_CASE("new cut shrinks onto e as T decreases to T_c") {
  const auto vb = Potential::birth_demo();
  const auto& crit = bench_critical();
  double previous = INFINITY;
  for (double r : {1.01, 1.001, 1.0001}) {
    auto rd = continue_two_cut(vb, crit, r * crit.T_c);
    const double dist = std::max(std::abs(rd.endpoints()[2] - crit.e), std::abs(rd.endpoints()[3] - crit.e));
    CHECK(dist < previous);
    previous = dist;
  }
  CHECK(previous < 0.01);
}

TEST_CASE("Gamma decreases with T over the bracket") {
  const auto vb = Potential::birth_demo();
  std::vector<double> values;
  for (int k = 0; k < 50; ++k) {
    const double T = 0.05 + (5.0 - 0.05) * k / 49.0;
    try {
      values.push_back(fermi_gap(vb, T));
    } catch (const Error& err) {
      CHECK((err.code() == ErrorCode::NegativeDensity || err.code() == ErrorCode::NoSecondWell));
      break;
    }
  }
  REQUIRE(values.size() >= 5);
  for (std::size_t i = 1; i < values.size(); ++i) CHECK(values[i] < values[i - 1]);

  // denser look near T_c
  double prev = fermi_gap(vb, 0.3);
  for (int k = 1; k < 50; ++k) {
    const double g = fermi_gap(vb, 0.3 + 0.2 * k / 49.0);
    CHECK(g < prev);
    prev = g;
  }
}

TEST_CASE("Fermi level is continuous across the birth") {
  const auto vb = Potential::birth_demo();
  const auto& crit = bench_critical();
  const double dT = 1e-4 * crit.T_c;
  auto two = continue_two_cut(vb, crit, crit.T_c + dT);
  SolverOptions keep;
  keep.reject_negative_density = false;
  auto one_same = solve_one_cut(vb, crit.T_c + dT, keep);
  CHECK(std::abs(chemical_potential(two) - chemical_potential(one_same)) < 1e-4);

  // the pair straddling T_c differs by the ordinary slope over 2 dT
  auto below = solve_one_cut(vb, crit.T_c - dT);
  const double slope = (chemical_potential(one_same) - chemical_potential(below)) / (2.0 * dT);
  CHECK(std::abs(chemical_potential(two) - chemical_potential(below) - 2.0 * dT * slope) < 1e-4);
}

TEST_CASE("two-cut M tends to Q at the birth point") {
  const auto vb = Potential::birth_demo();
  const auto& crit = bench_critical();
  REQUIRE(crit.nu == 1);
  double previous = INFINITY;
  for (double t : {1e-2, 1e-3, 1e-4, 1e-6}) {
    auto rd = continue_two_cut(vb, crit, crit.T_c * (1.0 + t));
    REQUIRE(rd.M.degree() == crit.Q.degree());
    const double diff = (rd.M - crit.Q).norm();
    CHECK(diff < previous);
    previous = diff;
  }
  CHECK(previous < 1e-6);
}
