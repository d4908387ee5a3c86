#pragma once

#include <optional>
#include <vector>

#include "cutlab/equilibrium.hpp"

namespace cutlab {

enum class GasInit { Quantile, Uniform };

struct GasConfig {
  int N = 1;
  double T = 1.0;
  int max_iter = 500;
  double tol = 1e-10;
  GasInit init = GasInit::Uniform;
  /// Positions beyond this point are counted as occupying the newborn well.
  std::optional<double> barrier;
};

struct GasResult {
  std::vector<double> positions;  // strictly increasing
  double residual = 0.0;          // max force imbalance
  double energy = 0.0;
  int occupancy = 0;
  int iterations = 0;
  std::vector<double> energy_trace;  // energy after each accepted step, starting value first
  std::vector<double> model;  // potential coefficients the run used
  double T = 0.0;
};

/// Zero-temperature log-gas: solves
///   V'(l_i) = (2T/N) sum_{j != i} 1/(l_i - l_j)
/// by damped Newton on the energy sum V(l_i) - (2T/N) sum_{i<j} ln|l_i - l_j|.
/// Quantile initialisation needs `continuum`; uniform spreads the particles over
/// the default one-cut guess. Steps are capped at half the nearest-neighbour
/// distance and accepted only if the energy does not rise by more than 1e-12.
GasResult equilibrium_positions(const Potential& potential, const GasConfig& cfg,
                                const ResolventData* continuum = nullptr);

int occupancy(const GasResult& gr, double barrier);

/// Kolmogorov distance between the empirical CDF (mass T/N per particle) and
/// the continuum CDF. Throws MismatchedModel if potential or T differ.
double compare_density(const GasResult& gr, const ResolventData& rd);

double gas_energy(const Potential& potential, double T, const std::vector<double>& positions);
double gas_force_residual(const Potential& potential, double T, const std::vector<double>& positions);

}  // namespace cutlab
