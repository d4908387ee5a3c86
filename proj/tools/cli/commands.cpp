#include "cli/commands.hpp"

#include <cmath>
#include <iostream>
#include <optional>

#include "cutlab/criticality.hpp"
#include "cutlab/equilibrium.hpp"
#include "cutlab/error.hpp"
#include "cutlab/gas.hpp"
#include "cutlab/transition.hpp"

namespace cutlab::cli {

namespace {

std::string poly_field(const Poly& p) {
  std::string s;
  for (double c : p.coeffs()) {
    if (!s.empty()) s += ' ';
    s += format_double(c);
  }
  return s.empty() ? "0" : s;
}

std::vector<std::string> endpoint_fields(const std::vector<double>& ep) {
  std::vector<std::string> f(4);
  for (std::size_t i = 0; i < ep.size() && i < 4; ++i) f[i] = format_double(ep[i]);
  return f;
}

std::array<double, 2> bracket_or_default(const RunConfig& cfg, double T) {
  return cfg.bracket ? *cfg.bracket : std::array<double, 2>{T / 50.0, T};
}

RunOutput run_solve(const RunConfig& cfg, const Potential& v) {
  const double T = *cfg.T;
  ResolventData rd = cfg.cuts == 1 ? solve_one_cut(v, T) : [&] {
    const auto br = bracket_or_default(cfg, T);
    const CriticalData crit = find_critical_temperature(v, br[0], br[1]);
    return continue_two_cut(v, crit, T);
  }();
  const Thermo th = thermodynamics(rd);
  const PhaseVerdict verdict = validate_phase(rd);

  RunOutput out;
  out.table.header = {"T", "cuts", "x1", "x2", "x3", "x4", "ell", "F", "mass1", "mass2", "residual_norm", "M"};
  std::vector<std::string> row{format_double(T), std::to_string(rd.cuts())};
  for (auto& f : endpoint_fields(rd.geometry.endpoints)) row.push_back(f);
  row.push_back(format_double(th.ell));
  row.push_back(format_double(th.F));
  row.push_back(format_double(th.masses[0]));
  row.push_back(th.masses.size() > 1 ? format_double(th.masses[1]) : "");
  row.push_back(format_double(rd.residual_norm));
  row.push_back(poly_field(rd.M));
  out.table.rows.push_back(std::move(row));
  out.summary = {{"phase_valid", verdict.valid ? "1" : "0"}};
  if (!verdict.valid) out.summary.push_back({"phase_issue", verdict.reason});
  return out;
}

RunOutput run_critical(const RunConfig& cfg, const Potential& v) {
  const CriticalData crit = find_critical_temperature(v, (*cfg.bracket)[0], (*cfg.bracket)[1]);
  RunOutput out;
  out.table.header = {"T_c", "e", "barrier", "b", "distance", "nu", "gamma_at_T_c", "Q"};
  out.table.rows.push_back({format_double(crit.T_c), format_double(crit.e), format_double(crit.barrier),
                            format_double(crit.one_cut.endpoints().back()), format_double(crit.distance),
                            std::to_string(crit.nu), format_double(crit.gap_at_Tc), poly_field(crit.Q)});
  return out;
}

RunOutput run_sweep_mode(const RunConfig& cfg, const Potential& v) {
  const TRange r = *cfg.trange;
  std::vector<double> grid;
  for (int k = 0; k < r.n; ++k)
    grid.push_back(r.n == 1 ? r.lo : r.lo + (r.hi - r.lo) * k / (r.n - 1));

  std::optional<CriticalData> crit;
  const auto br = cfg.bracket ? *cfg.bracket : std::array<double, 2>{r.lo, r.hi};
  try {
    crit = find_critical_temperature(v, br[0], br[1]);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::NoSecondWell && err.code() != ErrorCode::NotBracketed) throw;
  }
  if (crit && crit->T_c > r.lo && crit->T_c < r.hi) {
    for (double T : transition_grid(crit->T_c, cfg.window, 12)) grid.push_back(T);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (crit) std::erase(grid, crit->T_c);

  const std::vector<SweepRow> rows = run_sweep(v, grid, crit ? &*crit : nullptr);

  RunOutput out;
  out.table.header = {"T", "phase", "x1", "x2", "x3", "x4", "ell", "F", "new_cut_mass"};
  for (const SweepRow& row : rows) {
    std::vector<std::string> f{format_double(row.T), to_string(row.phase)};
    for (auto& e : endpoint_fields(row.endpoints)) f.push_back(e);
    f.push_back(format_double(row.ell));
    f.push_back(format_double(row.F));
    f.push_back(format_double(row.new_cut_mass));
    out.table.rows.push_back(std::move(f));
  }
  if (crit) {
    out.summary = {{"T_c", format_double(crit->T_c)},
                   {"e", format_double(crit->e)},
                   {"barrier", format_double(crit->barrier)},
                   {"distance", format_double(crit->distance)},
                   {"nu", std::to_string(crit->nu)}};
    try {
      TransitionReport rep = derivative_jump(rows, *crit, cfg.window * crit->T_c);
      auto put = [&](const std::string& k, const Estimate& e) {
        out.summary.push_back({k, format_double(e.value)});
        out.summary.push_back({k + "_err", format_double(e.uncertainty)});
      };
      put("cont_F", rep.cont_F);
      put("cont_F1", rep.cont_F1);
      put("cont_F2", rep.cont_F2);
      put("jump_F3", rep.jump_F3);
      out.summary.push_back({"alpha", format_double(rep.alpha)});
      out.summary.push_back({"alpha_err", format_double(rep.alpha_stderr)});
      out.summary.push_back({"rows_below", std::to_string(rep.rows_below)});
      out.summary.push_back({"rows_above", std::to_string(rep.rows_above)});
    } catch (const Error& err) {
      if (err.code() != ErrorCode::InsufficientData) throw;
      out.summary.push_back({"report", "insufficient rows near T_c"});
    }
  }
  return out;
}

RunOutput run_gas(const RunConfig& cfg, const Potential& v) {
  const double T = *cfg.T;
  SolverOptions keep;
  keep.reject_negative_density = false;  // validate_phase decides the branch
  ResolventData rd = solve_one_cut(v, T, keep);
  std::optional<double> barrier;
  std::optional<double> predicted;
  if (!validate_phase(rd).valid) {
    const auto br = bracket_or_default(cfg, T);
    const CriticalData crit = find_critical_temperature(v, br[0], br[1]);
    rd = continue_two_cut(v, crit, T);
    barrier = crit.barrier;
    predicted = std::round(cfg.N * cut_masses(rd).back() / T);
  } else {
    try {
      barrier = second_well_point(rd).barrier;
      predicted = 0.0;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::NoSecondWell) throw;
    }
  }

  GasConfig gc;
  gc.N = cfg.N;
  gc.T = T;
  gc.tol = cfg.tol;
  gc.init = cfg.seed_occupancy ? GasInit::Quantile : GasInit::Uniform;
  gc.barrier = barrier;
  const GasResult gr = equilibrium_positions(v, gc, &rd);

  RunOutput out;
  out.table.header = {"index", "position"};
  for (std::size_t i = 0; i < gr.positions.size(); ++i)
    out.table.rows.push_back({std::to_string(i), format_double(gr.positions[i])});
  out.summary = {{"residual", format_double(gr.residual)},
                 {"energy", format_double(gr.energy)},
                 {"iterations", std::to_string(gr.iterations)},
                 {"ks_distance", format_double(compare_density(gr, rd))}};
  if (barrier) {
    out.summary.push_back({"barrier", format_double(*barrier)});
    out.summary.push_back({"occupancy", std::to_string(gr.occupancy)});
    out.summary.push_back({"predicted_occupancy", format_double(*predicted)});
  }
  return out;
}

}  // namespace

RunOutput run_mode(const RunConfig& cfg) {
  validate(cfg);
  const Potential v(cfg.potential);
  switch (cfg.mode) {
    case Mode::Solve: return run_solve(cfg, v);
    case Mode::Critical: return run_critical(cfg, v);
    case Mode::Sweep: return run_sweep_mode(cfg, v);
    case Mode::Gas: return run_gas(cfg, v);
  }
  return {};
}

int execute(const RunConfig& cfg) {
  std::cerr << "config: " << to_json(cfg) << "\n";
  const RunOutput out = run_mode(cfg);
  emit_csv(out.table, cfg.out);
  if (!out.summary.empty()) {
    if (cfg.mode == Mode::Sweep && !cfg.out.empty()) {
      emit_summary(out.summary, cfg.out + ".summary.txt");
    } else {
      for (const auto& [k, val] : out.summary) std::cerr << k << "=" << val << "\n";
    }
  }
  return 0;
}

}  // namespace cutlab::cli
