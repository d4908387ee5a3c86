#pragma once

#include <span>
#include <vector>

#include "cutlab/criticality.hpp"
#include "cutlab/equilibrium.hpp"

namespace cutlab {

enum class Phase { OneCut, TwoCut };

const char* to_string(Phase phase) noexcept;

struct SweepRow {
  double T = 0.0;
  Phase phase = Phase::OneCut;
  std::vector<double> endpoints;
  double ell = 0.0;
  double F = 0.0;
  double new_cut_mass = 0.0;
};

/// Rows below T_c use the validated one-cut branch, rows above use the two-cut
/// continuation. Each side is seeded by its previous row; the two sides are
/// independent and run concurrently. Errors are rethrown with the failing T.
std::vector<SweepRow> run_sweep(const Potential& potential, std::span<const double> grid,
                                const CriticalData* crit);

/// Value with a one-sigma uncertainty taken from least-squares residuals.
struct Estimate {
  double value = 0.0;
  double uncertainty = 0.0;
  /// |value| / uncertainty
  double significance() const noexcept;
};

struct TransitionReport {
  double T_c = 0.0;
  Estimate cont_F;   // |F_+ - F_-| at T_c
  Estimate cont_F1;  // |ell_+ - ell_-|
  Estimate cont_F2;  // |ell'_+ - ell'_-|
  Estimate jump_F3;  // ell''_+ - ell''_-
  int rows_below = 0;
  int rows_above = 0;
  int nu = 0;
  double alpha = 0.0;
  double alpha_stderr = 0.0;
};

/// Side-wise quadratic fits of ell(T) on [T_c - window, T_c) and (T_c, T_c + window],
/// plus side-wise cubic fits of F for its continuity. Needs >= 5 rows per side.
TransitionReport derivative_jump(std::span<const SweepRow> rows, double T_c, double window);
/// Same, centred on crit.T_c and carrying crit.nu into the report.
TransitionReport derivative_jump(std::span<const SweepRow> rows, const CriticalData& crit, double window);

struct WidthScaling {
  double alpha = 0.0;
  double std_error = 0.0;
  int points = 0;
};

/// Least-squares slope of ln(d - c) against ln(T - T_c) over two-cut rows with
/// T / T_c in (1, 1.1]. Needs >= 4 such rows.
WidthScaling newcut_width_scaling(std::span<const SweepRow> rows, double T_c);

/// `per_side` points on each side of T_c within `window_fraction * T_c`,
/// geometrically spaced toward T_c with the closest offset at 1/20 of the window.
std::vector<double> transition_grid(double T_c, double window_fraction = 0.08, int per_side = 12);

}  // namespace cutlab
