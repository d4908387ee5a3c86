#include "cutlab/transition.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <optional>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "cutlab/error.hpp"

namespace cutlab {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Error annotate(const Error& err, double T) {
  return Error(err.code(), std::string(err.what()) + " [sweep row T=" + fmt(T) + "]");
}

struct PolyFit {
  Eigen::VectorXd coeffs;  // in powers of (T - T_c)
  Eigen::VectorXd stderrs;
};

// Least squares in u = (T - T_c)/scale, mapped back to powers of T - T_c.
PolyFit fit_polynomial(const std::vector<double>& t, const std::vector<double>& y, int degree,
                       double scale) {
  const int n = static_cast<int>(t.size());
  const int p = degree + 1;
  Eigen::MatrixXd X(n, p);
  Eigen::VectorXd Y(n);
  double ymax = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = t[i] / scale;
    double pw = 1.0;
    for (int j = 0; j < p; ++j, pw *= u) X(i, j) = pw;
    Y[i] = y[i];
    ymax = std::max(ymax, std::abs(y[i]));
  }
  const Eigen::VectorXd c = X.colPivHouseholderQr().solve(Y);
  const double ssr = (X * c - Y).squaredNorm();
  // residual scatter, floored at the rounding level of the data
  const double floor = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, ymax);
  const double s2 = std::max(ssr / std::max(1, n - p), floor * floor);
  const Eigen::MatrixXd cov = s2 * (X.transpose() * X).inverse();
  PolyFit fit{Eigen::VectorXd(p), Eigen::VectorXd(p)};
  double sc = 1.0;
  for (int j = 0; j < p; ++j, sc *= scale) {
    fit.coeffs[j] = c[j] / sc;
    fit.stderrs[j] = std::sqrt(cov(j, j)) / sc;
  }
  return fit;
}

Estimate gap_estimate(double plus, double plus_err, double minus, double minus_err) {
  return {std::abs(plus - minus), std::hypot(plus_err, minus_err)};
}

}  // namespace

const char* to_string(Phase phase) noexcept {
  return phase == Phase::OneCut ? "one-cut" : "two-cut";
}

double Estimate::significance() const noexcept {
  return uncertainty > 0.0 ? std::abs(value) / uncertainty : std::numeric_limits<double>::infinity();
}

std::vector<SweepRow> run_sweep(const Potential& potential, std::span<const double> grid,
                                const CriticalData* crit) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw Error(ErrorCode::ValidationError, "sweep temperatures must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw Error(ErrorCode::ValidationError, "sweep grid must be strictly increasing");
    if (crit && grid[i] == crit->T_c)
      throw Error(ErrorCode::ValidationError, "sweep grid must exclude T_c itself");
  }
  const double T_c = crit ? crit->T_c : std::numeric_limits<double>::infinity();
  std::vector<double> below, above;
  for (double T : grid) (T < T_c ? below : above).push_back(T);

  auto one_cut_side = [&]() {
    std::vector<SweepRow> rows;
    std::vector<double> seed;
    for (double T : below) {
      try {
        const std::vector<double> init = seed.empty() ? default_one_cut_guess(potential, T) : seed;
        ResolventData rd = solve_endpoints(potential, T, 1, init);
        const PhaseVerdict verdict = validate_phase(rd);
        if (!verdict.valid)
          throw Error(ErrorCode::NegativeDensity,
                      "one-cut phase invalid near x=" + fmt(verdict.location) + ": " + verdict.reason);
        const Thermo th = thermodynamics(rd);
        seed = rd.geometry.endpoints;
        rows.push_back({T, Phase::OneCut, rd.geometry.endpoints, th.ell, th.F, 0.0});
      } catch (const Error& err) {
        throw annotate(err, T);
      }
    }
    return rows;
  };
  auto two_cut_side = [&]() {
    std::vector<SweepRow> rows;
    std::optional<ResolventData> prev;
    for (double T : above) {
      try {
        ResolventData rd = continue_two_cut(potential, *crit, T, prev ? &*prev : nullptr);
        const Thermo th = thermodynamics(rd);
        rows.push_back({T, Phase::TwoCut, rd.geometry.endpoints, th.ell, th.F, th.masses.back()});
        prev = std::move(rd);
      } catch (const Error& err) {
        throw annotate(err, T);
      }
    }
    return rows;
  };

  std::future<std::vector<SweepRow>> upper;
  if (!above.empty()) upper = std::async(std::launch::async, two_cut_side);
  std::vector<SweepRow> rows = one_cut_side();
  if (upper.valid()) {
    std::vector<SweepRow> up = upper.get();
    rows.insert(rows.end(), std::make_move_iterator(up.begin()), std::make_move_iterator(up.end()));
  }
  return rows;
}

TransitionReport derivative_jump(std::span<const SweepRow> rows, double T_c, double window) {
  std::vector<double> tb, lb, fb, ta, la, fa;
  for (const SweepRow& r : rows) {
    const double u = r.T - T_c;
    if (std::abs(u) > window * (1.0 + 1e-12)) continue;
    if (u < 0.0) {
      tb.push_back(u), lb.push_back(r.ell), fb.push_back(r.F);
    } else if (u > 0.0) {
      ta.push_back(u), la.push_back(r.ell), fa.push_back(r.F);
    }
  }
  if (tb.size() < 5 || ta.size() < 5)
    throw Error(ErrorCode::InsufficientData,
                "need >= 5 rows per side within the window (have " + std::to_string(tb.size()) +
                    " below, " + std::to_string(ta.size()) + " above)");

  const PolyFit ell_below = fit_polynomial(tb, lb, 2, window);
  const PolyFit ell_above = fit_polynomial(ta, la, 2, window);
  const PolyFit f_below = fit_polynomial(tb, fb, 3, window);
  const PolyFit f_above = fit_polynomial(ta, fa, 3, window);

  TransitionReport rep;
  rep.T_c = T_c;
  rep.rows_below = static_cast<int>(tb.size());
  rep.rows_above = static_cast<int>(ta.size());
  rep.cont_F = gap_estimate(f_above.coeffs[0], f_above.stderrs[0], f_below.coeffs[0], f_below.stderrs[0]);
  rep.cont_F1 = gap_estimate(ell_above.coeffs[0], ell_above.stderrs[0], ell_below.coeffs[0],
                             ell_below.stderrs[0]);
  rep.cont_F2 = gap_estimate(ell_above.coeffs[1], ell_above.stderrs[1], ell_below.coeffs[1],
                             ell_below.stderrs[1]);
  rep.jump_F3 = {2.0 * (ell_above.coeffs[2] - ell_below.coeffs[2]),
                 2.0 * std::hypot(ell_above.stderrs[2], ell_below.stderrs[2])};
  try {
    const WidthScaling ws = newcut_width_scaling(rows, T_c);
    rep.alpha = ws.alpha;
    rep.alpha_stderr = ws.std_error;
  } catch (const Error& err) {
    if (err.code() != ErrorCode::InsufficientData) throw;
  }
  return rep;
}

TransitionReport derivative_jump(std::span<const SweepRow> rows, const CriticalData& crit,
                                 double window) {
  TransitionReport rep = derivative_jump(rows, crit.T_c, window);
  rep.nu = crit.nu;
  return rep;
}

WidthScaling newcut_width_scaling(std::span<const SweepRow> rows, double T_c) {
  std::vector<double> x, y;
  for (const SweepRow& r : rows) {
    if (r.phase != Phase::TwoCut || r.endpoints.size() != 4) continue;
    const double ratio = r.T / T_c;
    if (!(ratio > 1.0 && ratio <= 1.1)) continue;
    x.push_back(std::log(r.T - T_c));
    y.push_back(std::log(r.endpoints[3] - r.endpoints[2]));
  }
  const int n = static_cast<int>(x.size());
  if (n < 4)
    throw Error(ErrorCode::InsufficientData,
                "need >= 4 two-cut rows with T/T_c in (1, 1.1], have " + std::to_string(n));
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) mx += x[i], my += y[i];
  mx /= n, my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) sxx += (x[i] - mx) * (x[i] - mx), sxy += (x[i] - mx) * (y[i] - my);
  const double slope = sxy / sxx;
  double ssr = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = y[i] - my - slope * (x[i] - mx);
    ssr += r * r;
  }
  return {slope, std::sqrt(ssr / (n - 2) / sxx), n};
}

std::vector<double> transition_grid(double T_c, double window_fraction, int per_side) {
  const double window = window_fraction * T_c;
  const double ratio = per_side > 1 ? std::pow(1.0 / 20.0, 1.0 / (per_side - 1)) : 1.0;
  std::vector<double> grid;
  double offset = window;
  for (int k = 0; k < per_side; ++k, offset *= ratio) {
    grid.push_back(T_c - offset);
    grid.push_back(T_c + offset);
  }
  std::sort(grid.begin(), grid.end());
  return grid;
}

}  // namespace cutlab
