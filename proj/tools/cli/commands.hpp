#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cli/config.hpp"
#include "cli/csv.hpp"

namespace cutlab::cli {

struct RunOutput {
  CsvTable table;
  /// key=value report; written next to the CSV for sweeps, to stderr otherwise.
  std::vector<std::pair<std::string, std::string>> summary;
};

/// Column orders:
///   solve    T,cuts,x1,x2,x3,x4,ell,F,mass1,mass2,residual_norm,M
///   critical T_c,e,barrier,b,distance,nu,gamma_at_T_c,Q
///   sweep    T,phase,x1,x2,x3,x4,ell,F,new_cut_mass
///   gas      index,position
/// Polynomial columns hold space-separated coefficients, lowest degree first.
RunOutput run_mode(const RunConfig& cfg);

/// Runs and writes outputs. Returns the process exit code.
int execute(const RunConfig& cfg);

}  // namespace cutlab::cli
