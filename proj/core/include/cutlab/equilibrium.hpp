#pragma once

#include <span>
#include <string>
#include <vector>

#include "cutlab/poly.hpp"
#include "cutlab/quadrature.hpp"

namespace cutlab {

/// Confining polynomial potential V(x): even degree >= 2, positive leading coefficient.
class Potential {
 public:
  /// Coefficients lowest-degree-first. Throws ValidationError when unconfined.
  explicit Potential(std::vector<double> coeffs);

  /// V(x) = x^4/4 - (5/3) x^3 + 3 x^2: wells at 0 and 3, barrier at 2.
  static Potential birth_demo();

  const Poly& poly() const noexcept { return v_; }
  const Poly& derivative() const noexcept { return dv_; }
  std::span<const double> coeffs() const noexcept { return v_.coeffs(); }
  int degree() const noexcept { return v_.degree(); }
  double operator()(double x) const noexcept { return v_(x); }

  /// V(x - shift)
  Potential shifted(double shift) const;

  /// Location of the global minimum (leftmost on ties).
  double global_minimum() const;

  friend bool operator==(const Potential& a, const Potential& b) = default;

 private:
  Poly v_;
  Poly dv_;
};

struct SupportGeometry {
  std::vector<double> endpoints;  // (a, b) or (a, b, c, d)
  int cuts() const noexcept { return static_cast<int>(endpoints.size() / 2); }
};

/// Converged large-N saddle: W(x) = (V'(x) - M(x) sqrt(sigma(x))) / 2 with total mass T.
struct ResolventData {
  Potential potential;
  double T = 0.0;
  SupportGeometry geometry;
  Poly M;
  double residual_norm = 0.0;
  int iterations = 0;

  std::span<const double> endpoints() const noexcept { return geometry.endpoints; }
  int cuts() const noexcept { return geometry.cuts(); }
};

struct Thermo {
  double T = 0.0;
  double ell = 0.0;
  double F = 0.0;
  std::vector<double> masses;
  double fermi_spread = 0.0;
};

struct SolverOptions {
  int max_iter = 60;
  double tol = 1e-10;
  int quad_nodes = kDefaultQuadratureNodes;
  /// Off only for inspecting a forced wrong-phase solution.
  bool reject_negative_density = true;
};

/// Decay, mass and (two-cut) equal-Fermi-level conditions; zero at the saddle.
std::vector<double> asymptotic_residuals(const Potential& potential, double T,
                                         std::span<const double> endpoints,
                                         int quad_nodes = kDefaultQuadratureNodes);

/// Damped Newton with a forward-difference Jacobian. The step is halved until
/// the endpoint ordering (minimum gap 1e-12) holds and the residual decreases.
ResolventData solve_endpoints(const Potential& potential, double T, int cuts,
                              std::span<const double> init, const SolverOptions& opts = {});

/// Global minimum +- max(0.5, 2 sqrt(T)).
std::vector<double> default_one_cut_guess(const Potential& potential, double T);

ResolventData solve_one_cut(const Potential& potential, double T, const SolverOptions& opts = {});

double density(const ResolventData& rd, double x);

/// W(x) off the support; OnSupport inside a cut.
double resolvent_value(const ResolventData& rd, double x);

/// Gamma(x) = V_eff(x) - Fermi level, integrated from the nearest endpoint.
double effective_potential_gap(const ResolventData& rd, double x);

/// Fermi level ell = V - 2U averaged over the endpoints. Throws
/// InconsistentFermiLevels when the per-endpoint values spread by more than 1e-6.
double chemical_potential(const ResolventData& rd);

/// F = int V dmu - double integral of ln|x - y| dmu dmu.
double free_energy(const ResolventData& rd);

Thermo thermodynamics(const ResolventData& rd);

std::vector<double> cut_masses(const ResolventData& rd);

struct PhaseVerdict {
  bool valid = true;
  double location = 0.0;  // offending point when invalid
  std::string reason;
};

/// Valid iff the density is nonnegative on the cuts and Gamma >= 0 at every
/// local minimum of V_eff off the support.
PhaseVerdict validate_phase(const ResolventData& rd);

}  // namespace cutlab
