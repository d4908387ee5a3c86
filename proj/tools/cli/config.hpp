#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cutlab::cli {

enum class Mode { Solve, Critical, Sweep, Gas };

std::string_view to_string(Mode mode) noexcept;

struct TRange {
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;
  friend bool operator==(const TRange&, const TRange&) = default;
};

struct RunConfig {
  std::vector<double> potential;  // lowest degree first
  Mode mode = Mode::Solve;
  std::optional<double> T;
  std::optional<std::array<double, 2>> bracket;
  std::optional<TRange> trange;
  int cuts = 1;
  int N = 200;
  double tol = 1e-10;
  double window = 0.08;  // fraction of T_c
  bool seed_occupancy = false;
  std::string out;  // empty: standard output

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Named potentials accepted wherever coefficients are.
std::optional<std::vector<double>> preset_potential(std::string_view name);

/// JSON document with keys potential, mode, T, bracket, trange, N, tol, out
/// (plus cuts, window, seed_occupancy mirroring the command-line flags).
/// Unknown keys raise ParseError; invariant violations raise ValidationError.
RunConfig parse_config_json(std::string_view text);

/// Thrown by parse_config_args for --help; carries the rendered usage text.
struct HelpRequested {
  std::string text;
};

/// Subcommand flag list as on the command line, without the program name.
/// `--config <file>` loads a JSON document instead.
RunConfig parse_config_args(const std::vector<std::string>& args);

/// Checks invariants on a filled config; throws ValidationError.
void validate(const RunConfig& cfg);

/// Canonical JSON rendering; parse_config_json(to_json(c)) == c.
std::string to_json(const RunConfig& cfg);

}  // namespace cutlab::cli
