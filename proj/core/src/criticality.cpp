#include "cutlab/criticality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "cutlab/error.hpp"
#include "cutlab/quadrature.hpp"

namespace cutlab {

namespace {

constexpr double kGapTol = 1e-10;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

WellPoint second_well_point(const ResolventData& rd) {
  const double b = rd.endpoints().back();
  std::vector<double> roots;
  for (double r : real_roots(rd.M))
    if (r > b) roots.push_back(r);
  if (roots.empty()) throw Error(ErrorCode::NoSecondWell, "M has no real roots beyond b");

  // sign of M on each interval between consecutive roots
  auto sign_between = [&](double lo, double hi) { return rd.M(0.5 * (lo + hi)) > 0.0 ? 1 : -1; };
  std::optional<WellPoint> best;
  double best_gap = std::numeric_limits<double>::infinity();
  double last_barrier = b;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    const double left = j == 0 ? b : roots[j - 1];
    const double right = j + 1 < roots.size() ? roots[j + 1] : roots[j] + 1.0 + std::abs(roots[j]);
    const int before = sign_between(left, roots[j]);
    const int after = sign_between(roots[j], right);
    if (before > 0 && after < 0) last_barrier = roots[j];
    if (before < 0 && after > 0) {
      const double gap = effective_potential_gap(rd, roots[j]);
      if (gap < best_gap) {
        best_gap = gap;
        best = WellPoint{roots[j], last_barrier};
      }
    }
  }
  if (!best) throw Error(ErrorCode::NoSecondWell, "no local minimum of V_eff beyond b");
  return *best;
}

double fermi_gap(const Potential& potential, double T) {
  const ResolventData rd = solve_one_cut(potential, T);
  return effective_potential_gap(rd, second_well_point(rd).e);
}

double classification_scale(const Poly& M, double e, double b) {
  return std::max(1.0, M.norm() * std::pow(std::abs(e - b), std::max(M.degree(), 0)));
}

NuClass classify_nu(const Poly& M, double e, double scale) {
  if (M.is_zero()) throw Error(ErrorCode::NotCritical, "M is identically zero");
  const double tol = 1e-6 * scale;
  int k = 0;
  Poly d = M;
  while (k <= M.degree() && std::abs(d(e)) < tol) {
    d = d.derivative();
    ++k;
  }
  if (k > M.degree()) throw Error(ErrorCode::NotCritical, "every derivative of M vanishes at e");
  if (k == 0) throw Error(ErrorCode::NotCritical, "M(e) = " + fmt(M(e)) + " is not zero");
  if (k % 2 == 0)
    throw Error(ErrorCode::EvenOrderZero, "M vanishes to even order " + std::to_string(k) + " at e");
  Poly Q = M;
  for (int j = 0; j < k; ++j) Q = Q.divide_linear(e).first;
  return {(k + 1) / 2, Q, k};
}

CriticalData find_critical_temperature(const Potential& potential, double T_lo, double T_hi) {
  if (!(T_lo > 0.0) || !(T_hi > T_lo))
    throw Error(ErrorCode::NotBracketed, "bracket must satisfy 0 < T_lo < T_hi");

  const double g_lo_value = fermi_gap(potential, T_lo);
  if (!(g_lo_value > 0.0))
    throw Error(ErrorCode::NotBracketed,
                "Gamma(T_lo) = " + fmt(g_lo_value) + " is not positive");

  // nullopt marks "beyond the birth": one-cut density turned negative or the
  // well has been swallowed by the support.
  auto indicator = [&](double T) -> std::optional<double> {
    try {
      return fermi_gap(potential, T);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::NegativeDensity || err.code() == ErrorCode::NoSecondWell)
        return std::nullopt;
      throw;
    }
  };

  double lo = T_lo, g_lo = g_lo_value;
  double hi = T_hi;
  std::optional<double> g_hi = indicator(T_hi);
  if (g_hi && *g_hi >= 0.0)
    throw Error(ErrorCode::NotBracketed, "Gamma(T_hi) = " + fmt(*g_hi) + " is not negative");

  double T_c = 0.0, g_c = 0.0;
  bool done = false;
  // Bisection until both ends carry a finite gap and the bracket is narrow.
  for (int it = 0; it < 200 && !done; ++it) {
    if (g_hi && hi - lo < 1e-3 * hi) break;
    const double mid = 0.5 * (lo + hi);
    const std::optional<double> g = indicator(mid);
    if (g && std::abs(*g) < kGapTol) {
      T_c = mid, g_c = *g, done = true;
    } else if (g && *g > 0.0) {
      lo = mid, g_lo = *g;
    } else {
      hi = mid, g_hi = g;
    }
  }
  // Illinois false position.
  int side = 0;
  for (int it = 0; it < 200 && !done; ++it) {
    double T = (lo * *g_hi - hi * g_lo) / (*g_hi - g_lo);
    if (!(T > lo && T < hi)) T = 0.5 * (lo + hi);
    const std::optional<double> g = indicator(T);
    if (!g) {
      hi = T;
      continue;  // should not happen this close to T_c; falls back to shrinking
    }
    if (std::abs(*g) < kGapTol || hi - lo < 1e-15 * hi) {
      T_c = T, g_c = *g, done = true;
      break;
    }
    if (*g > 0.0) {
      lo = T, g_lo = *g;
      if (side == 1) *g_hi *= 0.5;
      side = 1;
    } else {
      hi = T, g_hi = g;
      if (side == -1) g_lo *= 0.5;
      side = -1;
    }
  }
  if (!done || !(std::abs(g_c) < kGapTol))
    throw Error(ErrorCode::NoConvergence, "critical temperature search did not converge");

  ResolventData rd = solve_one_cut(potential, T_c);
  const WellPoint well = second_well_point(rd);
  const double b = rd.endpoints().back();
  const NuClass cls = classify_nu(rd.M, well.e, classification_scale(rd.M, well.e, b));
  const double gap = effective_potential_gap(rd, well.e);
  return CriticalData{T_c, well.e, cls.nu, cls.Q, well.barrier, well.e - b, gap, std::move(rd)};
}

namespace {

// V_eff'' at the birth point, from central differences of V_eff' = M sqrt(sigma).
double effective_curvature(const ResolventData& rd, double e) {
  const double b = rd.endpoints().back();
  const double h = 1e-4 * (e - b);
  auto slope = [&](double x) { return rd.M(x) * sqrt_sigma_off_cut(rd.endpoints(), x); };
  return (slope(e + h) - slope(e - h)) / (2.0 * h);
}

}  // namespace

ResolventData continue_two_cut(const Potential& potential, const CriticalData& crit, double T,
                               const ResolventData* seed) {
  if (!(T > crit.T_c))
    throw Error(ErrorCode::BelowCritical, "T=" + fmt(T) + " does not exceed T_c=" + fmt(crit.T_c));
  const double target = T - crit.T_c;

  std::vector<double> x;
  double t_cur = 0.0;
  ResolventData current = crit.one_cut;

  if (seed && seed->cuts() == 2 && seed->T > crit.T_c && seed->T <= T) {
    current = *seed;
    x = seed->geometry.endpoints;
    t_cur = seed->T - crit.T_c;
  } else {
    const auto ep = crit.one_cut.endpoints();
    const double a = ep[0], b = ep[1];
    const double curvature = effective_curvature(crit.one_cut, crit.e);
    const double kappa = curvature > 0.0 ? 2.0 / std::sqrt(curvature) : 1.0;
    double t0 = std::min(target, 1e-4 * crit.T_c);
    bool started = false;
    for (int attempt = 0; attempt < 8 && !started; ++attempt) {
      const double h = std::min(0.05 * (crit.e - b), kappa * std::sqrt(t0));
      const std::vector<double> init{a, b, crit.e - h, crit.e + h};
      const double Tt = t0 == target ? T : crit.T_c + t0;
      try {
        current = solve_endpoints(potential, Tt, 2, init);
        started = true;
      } catch (const Error& err) {
        if (err.code() != ErrorCode::NoConvergence && err.code() != ErrorCode::OrderingViolated &&
            err.code() != ErrorCode::NegativeDensity)
          throw;
        t0 *= 0.1;
      }
    }
    if (!started)
      throw Error(ErrorCode::NoConvergence, "could not start the two-cut branch above T_c=" + fmt(crit.T_c));
    x = current.geometry.endpoints;
    t_cur = t0;
  }

  while (t_cur < target) {
    double step = std::min(t_cur, 0.01 * (crit.T_c + t_cur));
    bool advanced = false;
    for (int attempt = 0; attempt < 12 && !advanced; ++attempt) {
      const double t_next = std::min(t_cur + step, target);
      const double Tt = t_next == target ? T : crit.T_c + t_next;
      // the new cut opens like sqrt(T - T_c); rescale its half-width as a predictor
      std::vector<double> init = x;
      const double centre = 0.5 * (x[2] + x[3]);
      const double half = 0.5 * (x[3] - x[2]) * std::sqrt(t_next / t_cur);
      if (centre - half > x[1]) {
        init[2] = centre - half;
        init[3] = centre + half;
      }
      try {
        current = solve_endpoints(potential, Tt, 2, init);
        x = current.geometry.endpoints;
        t_cur = t_next;
        advanced = true;
      } catch (const Error& err) {
        if (err.code() != ErrorCode::NoConvergence && err.code() != ErrorCode::OrderingViolated)
          throw;
        step *= 0.5;
      }
    }
    if (!advanced)
      throw Error(ErrorCode::NoConvergence, "two-cut continuation stalled at T=" + fmt(crit.T_c + t_cur));
  }
  return current;
}

}  // namespace cutlab
