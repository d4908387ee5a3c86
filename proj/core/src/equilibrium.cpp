#include "cutlab/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "cutlab/density.hpp"
#include "cutlab/error.hpp"
#include "cutlab/laurent.hpp"

namespace cutlab {

namespace {

constexpr double kDensityFloor = -1e-10;
constexpr double kMinGap = 1e-12;
constexpr int kDensityProbes = 64;

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool ordered(std::span<const double> x) {
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] - x[i - 1] > kMinGap)) return false;
  return true;
}

std::string fmt(double x) { return std::to_string(x); }

}  // namespace

Potential::Potential(std::vector<double> coeffs) : v_(std::move(coeffs)) {
  const int deg = v_.degree();
  if (deg < 2 || deg % 2 != 0)
    throw Error(ErrorCode::ValidationError,
                "potential degree must be even and >= 2 (got " + std::to_string(deg) + ")");
  if (!(v_.leading() > 0.0))
    throw Error(ErrorCode::ValidationError, "leading coefficient must be positive");
  dv_ = v_.derivative();
}

Potential Potential::birth_demo() { return Potential({0.0, 0.0, 3.0, -5.0 / 3.0, 0.25}); }

Potential Potential::shifted(double shift) const {
  const Poly p = v_.shifted(shift);
  return Potential(std::vector<double>(p.coeffs().begin(), p.coeffs().end()));
}

double Potential::global_minimum() const {
  const std::vector<double> crit = real_roots(dv_);
  double best = crit.empty() ? 0.0 : crit.front();
  for (double r : crit)
    if (v_(r) < v_(best) - 1e-14 * (1.0 + std::abs(v_(best)))) best = r;
  return best;
}

std::vector<double> asymptotic_residuals(const Potential& potential, double T,
                                         std::span<const double> endpoints, int quad_nodes) {
  check_endpoints(endpoints);
  const int s = static_cast<int>(endpoints.size() / 2);
  if (s > 2) throw Error(ErrorCode::ValidationError, "at most two cuts are supported");
  const Poly& vprime = potential.derivative();
  const int order = default_series_order(vprime);
  const PolynomialPart pp = polynomial_part(vprime, endpoints, order);
  const LaurentTail root = sqrt_sigma_series(endpoints, order);

  // coefficient of z^m in M(z) sqrt(sigma(z))
  auto m_root = [&](int m) {
    double acc = 0.0;
    for (int j = 0; j <= pp.M.degree(); ++j) {
      const int idx = j + s - m;
      if (idx >= 0 && idx < root.order()) acc += pp.M[static_cast<std::size_t>(j)] * root.coeffs[idx];
    }
    return acc;
  };

  std::vector<double> res;
  res.reserve(2 * s);
  for (int m = s - 1; m >= 0; --m) res.push_back(vprime[static_cast<std::size_t>(m)] - m_root(m));
  res.push_back(-m_root(-1) - 2.0 * T);
  if (s == 2) res.push_back(gap_quadrature(pp.M, endpoints, endpoints[1], endpoints[2], quad_nodes));
  return res;
}

ResolventData solve_endpoints(const Potential& potential, double T, int cuts,
                              std::span<const double> init, const SolverOptions& opts) {
  if (!(T > 0.0)) throw Error(ErrorCode::ValidationError, "temperature must be positive");
  if (cuts < 1 || cuts > 2 || init.size() != static_cast<std::size_t>(2 * cuts))
    throw Error(ErrorCode::ValidationError, "initial guess must hold 2 or 4 endpoints");
  check_endpoints(init);

  const int n = 2 * cuts;
  std::vector<double> x(init.begin(), init.end());
  auto residuals = [&](std::span<const double> pts) {
    return asymptotic_residuals(potential, T, pts, opts.quad_nodes);
  };
  std::vector<double> r = residuals(x);
  double norm = max_abs(r);
  const double floor_tol = 1e-3 * opts.tol;

  int iter = 0;
  for (; iter < opts.max_iter && norm > floor_tol; ++iter) {
    Eigen::MatrixXd J(n, n);
    for (int j = 0; j < n; ++j) {
      double h = 1e-7 * (1.0 + std::abs(x[j]));
      std::vector<double> xp = x;
      xp[j] += h;
      if (!ordered(xp)) {
        h = -h;
        xp[j] = x[j] + h;
      }
      const std::vector<double> rp = residuals(xp);
      for (int i = 0; i < n; ++i) J(i, j) = (rp[i] - r[i]) / h;
    }
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = -r[i];
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
    if (!lu.isInvertible())
      throw Error(ErrorCode::NoConvergence, "singular Jacobian at T=" + fmt(T));
    const Eigen::VectorXd dx = lu.solve(rhs);

    double lambda = 1.0;
    std::vector<double> trial(n);
    auto take = [&](double lam) {
      for (int i = 0; i < n; ++i) trial[i] = x[i] + lam * dx[i];
    };
    take(lambda);
    int halvings = 0;
    while (!ordered(trial)) {
      if (++halvings > 60)
        throw Error(ErrorCode::OrderingViolated, "endpoint collision at T=" + fmt(T));
      lambda *= 0.5;
      take(lambda);
    }
    std::vector<double> rt = residuals(trial);
    double nt = max_abs(rt);
    int backtracks = 0;
    while (!(nt < norm) && backtracks < 40) {
      lambda *= 0.5;
      take(lambda);
      rt = residuals(trial);
      nt = max_abs(rt);
      ++backtracks;
    }
    if (!(nt < norm)) break;  // stagnated at the rounding floor
    x = trial;
    r = std::move(rt);
    norm = nt;
  }
  if (!(norm < opts.tol))
    throw Error(ErrorCode::NoConvergence, "residual " + fmt(norm) + " after " +
                                              std::to_string(iter) + " iterations at T=" + fmt(T));

  ResolventData rd{potential, T, SupportGeometry{x},
                   polynomial_part(potential.derivative(), x, default_series_order(potential.derivative())).M,
                   norm, iter};
  for (int c = 0; c < cuts && opts.reject_negative_density; ++c) {
    const double left = x[2 * c];
    const double right = x[2 * c + 1];
    for (int k = 0; k < kDensityProbes; ++k) {
      const double t = 0.5 * (left + right) +
                       0.5 * (right - left) * std::cos(std::numbers::pi * (k + 0.5) / kDensityProbes);
      if (density(rd, t) < kDensityFloor)
        throw Error(ErrorCode::NegativeDensity,
                    "density " + fmt(density(rd, t)) + " at x=" + fmt(t) + ", T=" + fmt(T));
    }
  }
  return rd;
}

std::vector<double> default_one_cut_guess(const Potential& potential, double T) {
  const double centre = potential.global_minimum();
  const double half = std::max(0.5, 2.0 * std::sqrt(T));
  return {centre - half, centre + half};
}

ResolventData solve_one_cut(const Potential& potential, double T, const SolverOptions& opts) {
  const std::vector<double> guess = default_one_cut_guess(potential, T);
  return solve_endpoints(potential, T, 1, guess, opts);
}

double density(const ResolventData& rd, double x) {
  const auto ep = rd.endpoints();
  if (cut_containing(ep, x) < 0) return 0.0;
  return rd.M(x) * sqrt_sigma_cut_sign(ep, x) * sqrt_abs_sigma(ep, x) / (2.0 * std::numbers::pi);
}

double resolvent_value(const ResolventData& rd, double x) {
  const auto ep = rd.endpoints();
  if (cut_containing(ep, x) >= 0)
    throw Error(ErrorCode::OnSupport, "x=" + fmt(x) + " lies inside a cut");
  const double centre = 0.5 * (ep.front() + ep.back());
  const double span = 0.5 * (ep.back() - ep.front());
  // Far away the closed form cancels catastrophically; integrate rho/(x-y) instead.
  if (std::abs(x - centre) > 2.0 * span + 1.0)
    return SpectralDensity(rd.M, ep).stieltjes(x);
  return 0.5 * (rd.potential.derivative()(x) - rd.M(x) * sqrt_sigma_off_cut(ep, x));
}

double effective_potential_gap(const ResolventData& rd, double x) {
  const auto ep = rd.endpoints();
  double anchor = ep.front();
  for (double e : ep)
    if (std::abs(e - x) < std::abs(anchor - x)) anchor = e;
  return gap_quadrature(rd.M, ep, anchor, x);
}

double chemical_potential(const ResolventData& rd) {
  const SpectralDensity sd(rd.M, rd.endpoints());
  double lo = 0.0, hi = 0.0, sum = 0.0;
  bool first = true;
  for (double e : rd.endpoints()) {
    const double v = rd.potential(e) - 2.0 * sd.log_potential(e);
    lo = first ? v : std::min(lo, v);
    hi = first ? v : std::max(hi, v);
    first = false;
    sum += v;
  }
  if (hi - lo > 1e-6)
    throw Error(ErrorCode::InconsistentFermiLevels,
                "endpoint Fermi levels spread by " + fmt(hi - lo) + " at T=" + fmt(rd.T));
  return sum / static_cast<double>(rd.endpoints().size());
}

double free_energy(const ResolventData& rd) {
  const SpectralDensity sd(rd.M, rd.endpoints());
  const double potential_term = sd.integrate([&](double y) { return rd.potential(y); });
  const double log_term = sd.integrate([&](double y) { return sd.log_potential(y); });
  return potential_term - log_term;
}

std::vector<double> cut_masses(const ResolventData& rd) {
  return SpectralDensity(rd.M, rd.endpoints()).cut_masses();
}

Thermo thermodynamics(const ResolventData& rd) {
  const SpectralDensity sd(rd.M, rd.endpoints());
  Thermo th;
  th.T = rd.T;
  double lo = 0.0, hi = 0.0, sum = 0.0;
  bool first = true;
  for (double e : rd.endpoints()) {
    const double v = rd.potential(e) - 2.0 * sd.log_potential(e);
    lo = first ? v : std::min(lo, v);
    hi = first ? v : std::max(hi, v);
    first = false;
    sum += v;
  }
  th.fermi_spread = hi - lo;
  if (th.fermi_spread > 1e-6)
    throw Error(ErrorCode::InconsistentFermiLevels,
                "endpoint Fermi levels spread by " + fmt(th.fermi_spread) + " at T=" + fmt(rd.T));
  th.ell = sum / static_cast<double>(rd.endpoints().size());
  th.F = sd.integrate([&](double y) { return rd.potential(y); }) -
         sd.integrate([&](double y) { return sd.log_potential(y); });
  th.masses = sd.cut_masses();
  return th;
}

PhaseVerdict validate_phase(const ResolventData& rd) {
  const auto ep = rd.endpoints();
  for (int c = 0; c < rd.cuts(); ++c) {
    const double left = ep[2 * c];
    const double right = ep[2 * c + 1];
    for (int k = 0; k < kDensityProbes; ++k) {
      const double t = 0.5 * (left + right) +
                       0.5 * (right - left) * std::cos(std::numbers::pi * (k + 0.5) / kDensityProbes);
      const double rho = density(rd, t);
      if (rho < kDensityFloor) return {false, t, "negative density " + fmt(rho)};
    }
  }
  const Poly dM = rd.M.derivative();
  for (double r : real_roots(rd.M)) {
    if (cut_containing(ep, r) >= 0) continue;
    if (std::any_of(ep.begin(), ep.end(), [r](double e) { return e == r; })) continue;
    // V_eff' = M sqrt(sigma); a local minimum where it turns from - to +.
    if (dM(r) * sqrt_sigma_off_cut(ep, r) <= 0.0) continue;
    const double gamma = effective_potential_gap(rd, r);
    if (gamma < kDensityFloor)
      return {false, r, "effective potential below the Fermi level by " + fmt(-gamma)};
  }
  return {};
}

}  // namespace cutlab
