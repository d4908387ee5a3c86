#include "cutlab/gas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "cutlab/density.hpp"
#include "cutlab/error.hpp"

namespace cutlab {

namespace {

constexpr double kCollision = 1e-12;
constexpr double kEnergySlack = 1e-12;

std::vector<double> gradient(const Potential& potential, double T, const std::vector<double>& x) {
  const std::size_t n = x.size();
  const double coupling = 2.0 * T / static_cast<double>(n);
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    double repulsion = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) repulsion += 1.0 / (x[i] - x[j]);
    g[i] = potential.derivative()(x[i]) - coupling * repulsion;
  }
  return g;
}

double min_gap(const std::vector<double>& x) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < x.size(); ++i) m = std::min(m, x[i] - x[i - 1]);
  return m;
}

}  // namespace

double gas_energy(const Potential& potential, double T, const std::vector<double>& x) {
  const std::size_t n = x.size();
  long double confinement = 0.0L, repulsion = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    confinement += potential(x[i]);
    for (std::size_t j = i + 1; j < n; ++j) repulsion += std::log(std::abs(static_cast<long double>(x[i]) - x[j]));
  }
  return static_cast<double>(confinement - (2.0L * T / static_cast<long double>(n)) * repulsion);
}

double gas_force_residual(const Potential& potential, double T, const std::vector<double>& x) {
  double m = 0.0;
  for (double g : gradient(potential, T, x)) m = std::max(m, std::abs(g));
  return m;
}

GasResult equilibrium_positions(const Potential& potential, const GasConfig& cfg,
                                const ResolventData* continuum) {
  if (cfg.N < 1 || !(cfg.tol > 0.0) || !(cfg.T > 0.0))
    throw Error(ErrorCode::ValidationError, "gas config needs N >= 1, T > 0, tol > 0");
  const int n = cfg.N;
  const double Nd = static_cast<double>(n);

  std::vector<double> x(static_cast<std::size_t>(n));
  if (cfg.init == GasInit::Quantile) {
    if (!continuum) throw Error(ErrorCode::ValidationError, "quantile initialisation needs a continuum solution");
    if (!(continuum->potential == potential) || continuum->T != cfg.T)
      throw Error(ErrorCode::MismatchedModel, "continuum solution belongs to a different model");
    const SpectralDensity sd(continuum->M, continuum->endpoints());
    for (int i = 0; i < n; ++i) x[i] = sd.quantile((i + 0.5) * cfg.T / Nd);
  } else {
    const std::vector<double> span = default_one_cut_guess(potential, cfg.T);
    for (int i = 0; i < n; ++i) x[i] = span[0] + (span[1] - span[0]) * (i + 0.5) / Nd;
  }
  if (n > 1 && min_gap(x) < kCollision)
    throw Error(ErrorCode::Collision, "initial positions collide");

  const double coupling = 2.0 * cfg.T / Nd;
  const Poly v2 = potential.derivative().derivative();
  double energy = gas_energy(potential, cfg.T, x);
  std::vector<double> g = gradient(potential, cfg.T, x);
  double residual = 0.0;
  for (double gi : g) residual = std::max(residual, std::abs(gi));
  std::vector<double> trace{energy};

  int iter = 0;
  for (; iter < cfg.max_iter && !(residual < cfg.tol); ++iter) {
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      H(i, i) = v2(x[i]);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double d = x[i] - x[j];
        const double k = coupling / (d * d);
        H(i, i) += k;
        H(i, j) = -k;
      }
    }
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = -g[i];

    // Levenberg shift until the Hessian is positive definite.
    double shift = 0.0;
    Eigen::LLT<Eigen::MatrixXd> llt(H);
    while (llt.info() != Eigen::Success) {
      shift = shift == 0.0 ? 1e-8 * (1.0 + H.diagonal().cwiseAbs().maxCoeff()) : 10.0 * shift;
      llt.compute(H + shift * Eigen::MatrixXd::Identity(n, n));
    }
    Eigen::VectorXd dx = llt.solve(rhs);

    // cap each displacement at half the nearest-neighbour distance
    double scale = 1.0;
    for (int i = 0; i < n; ++i) {
      double near = std::numeric_limits<double>::infinity();
      if (i > 0) near = std::min(near, x[i] - x[i - 1]);
      if (i + 1 < n) near = std::min(near, x[i + 1] - x[i]);
      if (std::abs(dx[i]) > 0.5 * near) scale = std::min(scale, 0.5 * near / std::abs(dx[i]));
    }
    dx *= scale;

    double alpha = 1.0;
    std::vector<double> trial(x.size());
    double e_trial = 0.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
      for (int i = 0; i < n; ++i) trial[i] = x[i] + alpha * dx[i];
      e_trial = gas_energy(potential, cfg.T, trial);
      if (e_trial <= energy + kEnergySlack) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    x.swap(trial);
    energy = e_trial;
    trace.push_back(energy);
    if (n > 1 && min_gap(x) < kCollision)
      throw Error(ErrorCode::Collision, "two eigenvalues closer than 1e-12");
    g = gradient(potential, cfg.T, x);
    residual = 0.0;
    for (double gi : g) residual = std::max(residual, std::abs(gi));
  }
  if (!(residual < cfg.tol))
    throw Error(ErrorCode::NoConvergence, "force residual " + std::to_string(residual) + " after " +
                                              std::to_string(iter) + " iterations");

  GasResult gr;
  gr.positions = std::move(x);
  gr.residual = residual;
  gr.energy = energy;
  gr.iterations = iter;
  gr.energy_trace = std::move(trace);
  gr.model.assign(potential.coeffs().begin(), potential.coeffs().end());
  gr.T = cfg.T;
  gr.occupancy = cfg.barrier ? occupancy(gr, *cfg.barrier) : 0;
  return gr;
}

int occupancy(const GasResult& gr, double barrier) {
  return static_cast<int>(std::count_if(gr.positions.begin(), gr.positions.end(),
                                        [barrier](double p) { return p > barrier; }));
}

double compare_density(const GasResult& gr, const ResolventData& rd) {
  const auto coeffs = rd.potential.coeffs();
  if (gr.T != rd.T || !std::equal(gr.model.begin(), gr.model.end(), coeffs.begin(), coeffs.end()))
    throw Error(ErrorCode::MismatchedModel, "gas result and continuum solution use different models");
  const SpectralDensity sd(rd.M, rd.endpoints());
  const double step = gr.T / static_cast<double>(gr.positions.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < gr.positions.size(); ++i) {
    const double c = sd.cdf(gr.positions[i]);
    worst = std::max({worst, std::abs(c - step * static_cast<double>(i)),
                      std::abs(c - step * static_cast<double>(i + 1))});
  }
  return worst;
}

}  // namespace cutlab
