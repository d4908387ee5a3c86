#pragma once

#include <optional>

#include "cutlab/equilibrium.hpp"
#include "cutlab/poly.hpp"

namespace cutlab {

struct WellPoint {
  double e = 0.0;        // local minimum of V_eff beyond the support
  double barrier = 0.0;  // local maximum separating it from the support
};

/// Looks right of the outer endpoint b for roots of M where V_eff turns from
/// decreasing to increasing. Among several wells the one with smallest Gamma(e)
/// wins. Throws NoSecondWell when there is none.
WellPoint second_well_point(const ResolventData& rd);

/// Gamma(e(T)) on the one-cut branch: positive while the well sits above the
/// Fermi level. Propagates NegativeDensity and NoSecondWell.
double fermi_gap(const Potential& potential, double T);

struct NuClass {
  int nu = 0;
  Poly Q;
  int zero_order = 0;  // k = 2 nu - 1
};

/// M = (x - e)^(2 nu - 1) Q with Q(e) != 0. A derivative counts as vanishing
/// when |M^(j)(e)| < 1e-6 * scale. Throws NotCritical (k = 0) or EvenOrderZero.
NuClass classify_nu(const Poly& M, double e, double scale = 1.0);

/// Scale used by find_critical_temperature: max(1, |M| |e - b|^deg M).
double classification_scale(const Poly& M, double e, double b);

struct CriticalData {
  double T_c = 0.0;
  double e = 0.0;
  int nu = 0;
  Poly Q;
  double barrier = 0.0;
  double distance = 0.0;  // e - b(T_c)
  double gap_at_Tc = 0.0;
  ResolventData one_cut;  // solution at T_c
};

/// Bisection then Illinois false position on Gamma(T) until |Gamma| < 1e-10.
/// Above T_c the one-cut branch may also report NegativeDensity or lose its
/// well entirely; both count as the negative side once T_lo carries a well.
CriticalData find_critical_temperature(const Potential& potential, double T_lo, double T_hi);

/// Two-cut branch at T > T_c by continuation from the birth point. Steps in
/// T - T_c double until they reach 1% of T, then advance by 0.01 T. A seed on
/// the two-cut branch (T_seed in (T_c, T]) replaces the birth start.
ResolventData continue_two_cut(const Potential& potential, const CriticalData& crit, double T,
                               const ResolventData* seed = nullptr);

}  // namespace cutlab
