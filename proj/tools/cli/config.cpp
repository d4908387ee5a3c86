#include "cli/config.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cutlab/equilibrium.hpp"
#include "cutlab/error.hpp"

namespace cutlab::cli {

namespace {

using nlohmann::json;

const std::vector<std::string_view> kKeys = {"potential", "mode",  "T",      "bracket",
                                             "trange",    "N",     "tol",    "out",
                                             "cuts",      "window", "seed_occupancy"};

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

Mode parse_mode(std::string_view s) {
  if (s == "solve") return Mode::Solve;
  if (s == "critical") return Mode::Critical;
  if (s == "sweep") return Mode::Sweep;
  if (s == "gas") return Mode::Gas;
  parse_fail("key 'mode': unknown mode '" + std::string(s) + "'");
}

std::vector<double> split_numbers(const std::string& text, const std::string& what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      parse_fail(what + ": '" + item + "' is not a number");
    }
  }
  return values;
}

std::vector<double> potential_from_text(const std::string& text) {
  if (auto preset = preset_potential(text)) return *preset;
  return split_numbers(text, "--potential");
}

double number_at(const json& j, const std::string& key) {
  if (!j.is_number()) parse_fail("key '" + key + "': expected a number");
  return j.get<double>();
}

int integer_at(const json& j, const std::string& key) {
  if (!j.is_number_integer()) parse_fail("key '" + key + "': expected an integer");
  return j.get<int>();
}

}  // namespace

std::string_view to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::Solve: return "solve";
    case Mode::Critical: return "critical";
    case Mode::Sweep: return "sweep";
    case Mode::Gas: return "gas";
  }
  return "solve";
}

std::optional<std::vector<double>> preset_potential(std::string_view name) {
  if (name == "birth-demo") {
    const Potential v = Potential::birth_demo();
    return std::vector<double>(v.coeffs().begin(), v.coeffs().end());
  }
  if (name == "gaussian") return std::vector<double>{0.0, 0.0, 0.5};
  return std::nullopt;
}

void validate(const RunConfig& cfg) {
  const Potential v(cfg.potential);  // throws ValidationError if unconfined
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::ValidationError, msg); };
  if (cfg.T && !(*cfg.T > 0.0)) fail("T must be positive");
  if (cfg.bracket && !((*cfg.bracket)[0] > 0.0 && (*cfg.bracket)[1] > (*cfg.bracket)[0]))
    fail("bracket must satisfy 0 < lo < hi");
  if (cfg.trange) {
    const TRange& r = *cfg.trange;
    if (!(r.lo > 0.0) || r.n < 1 || (r.n > 1 && !(r.hi > r.lo)) || (r.n == 1 && r.hi < r.lo))
      fail("trange must satisfy 0 < lo < hi and n >= 1");
  }
  if (cfg.cuts != 1 && cfg.cuts != 2) fail("cuts must be 1 or 2");
  if (cfg.N < 1) fail("N must be at least 1");
  if (!(cfg.tol > 0.0)) fail("tol must be positive");
  if (!(cfg.window > 0.0 && cfg.window < 1.0)) fail("window must lie in (0, 1)");
  switch (cfg.mode) {
    case Mode::Solve:
      if (!cfg.T) fail("mode 'solve' needs T");
      break;
    case Mode::Critical:
      if (!cfg.bracket) fail("mode 'critical' needs bracket");
      break;
    case Mode::Sweep:
      if (!cfg.trange) fail("mode 'sweep' needs trange");
      break;
    case Mode::Gas:
      if (!cfg.T) fail("mode 'gas' needs T");
      break;
  }
}

RunConfig parse_config_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    const std::size_t upto = std::min<std::size_t>(err.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    parse_fail("line " + std::to_string(line) + ": " + err.what());
  }
  if (!doc.is_object()) parse_fail("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end())
      parse_fail("unknown key '" + key + "'");
  }

  RunConfig cfg;
  if (!doc.contains("potential")) parse_fail("missing key 'potential'");
  const json& pot = doc["potential"];
  if (pot.is_string()) {
    auto preset = preset_potential(pot.get<std::string>());
    if (!preset) parse_fail("key 'potential': unknown preset '" + pot.get<std::string>() + "'");
    cfg.potential = *preset;
  } else if (pot.is_array()) {
    for (const json& c : pot) cfg.potential.push_back(number_at(c, "potential"));
  } else {
    parse_fail("key 'potential': expected an array of coefficients or a preset name");
  }
  if (!doc.contains("mode") || !doc["mode"].is_string()) parse_fail("key 'mode': expected a string");
  cfg.mode = parse_mode(doc["mode"].get<std::string>());
  if (doc.contains("T")) cfg.T = number_at(doc["T"], "T");
  if (doc.contains("bracket")) {
    const json& b = doc["bracket"];
    if (!b.is_array() || b.size() != 2) parse_fail("key 'bracket': expected [lo, hi]");
    cfg.bracket = std::array<double, 2>{number_at(b[0], "bracket"), number_at(b[1], "bracket")};
  }
  if (doc.contains("trange")) {
    const json& r = doc["trange"];
    if (!r.is_array() || r.size() != 3) parse_fail("key 'trange': expected [lo, hi, n]");
    cfg.trange = TRange{number_at(r[0], "trange"), number_at(r[1], "trange"), integer_at(r[2], "trange")};
  }
  if (doc.contains("N")) cfg.N = integer_at(doc["N"], "N");
  if (doc.contains("tol")) cfg.tol = number_at(doc["tol"], "tol");
  if (doc.contains("cuts")) cfg.cuts = integer_at(doc["cuts"], "cuts");
  if (doc.contains("window")) cfg.window = number_at(doc["window"], "window");
  if (doc.contains("seed_occupancy")) {
    if (!doc["seed_occupancy"].is_boolean()) parse_fail("key 'seed_occupancy': expected a boolean");
    cfg.seed_occupancy = doc["seed_occupancy"].get<bool>();
  }
  if (doc.contains("out")) {
    if (!doc["out"].is_string()) parse_fail("key 'out': expected a string");
    cfg.out = doc["out"].get<std::string>();
  }
  validate(cfg);
  return cfg;
}

RunConfig parse_config_args(const std::vector<std::string>& args) {
  CLI::App app{"Equilibrium measures and the birth of a cut in one-matrix models", "cutlab"};
  app.require_subcommand(0, 1);

  std::string config_path;
  std::string out;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out, "Output CSV path (default: standard output)");

  std::string potential;
  double temp = 0.0;
  int cuts = 1;
  std::string bracket;
  std::string trange;
  double window = 0.08;
  int n = 200;
  double tol = 1e-10;
  bool seed = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--potential", potential, "Coefficients lowest degree first, or a preset name")
        ->required();
    sub->add_option("--out", out, "Output CSV path");
    sub->add_option("--tol", tol, "Convergence tolerance (gas force residual)");
  };
  CLI::App* solve = app.add_subcommand("solve", "Equilibrium measure at one temperature");
  add_common(solve);
  solve->add_option("--temp", temp, "Temperature (total spectral mass)")->required();
  solve->add_option("--cuts", cuts, "Number of cuts (1 or 2)");
  solve->add_option("--bracket", bracket, "lo,hi bracket for T_c when --cuts 2");

  CLI::App* critical = app.add_subcommand("critical", "Locate the birth-of-a-cut temperature");
  add_common(critical);
  critical->add_option("--bracket", bracket, "lo,hi temperatures around T_c")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "Thermodynamics across a temperature range");
  add_common(sweep);
  sweep->add_option("--trange", trange, "lo,hi,n")->required();
  sweep->add_option("--window", window, "Fit window as a fraction of T_c");
  sweep->add_option("--bracket", bracket, "lo,hi bracket for T_c (default: the trange ends)");

  CLI::App* gas = app.add_subcommand("gas", "Finite-N log-gas equilibrium");
  add_common(gas);
  gas->add_option("--temp", temp, "Temperature")->required();
  gas->add_option("--n", n, "Number of eigenvalues");
  gas->add_flag("--seed-occupancy", seed, "Start from continuum quantiles (fills the new cut)");
  gas->add_option("--bracket", bracket, "lo,hi bracket for T_c");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& err) {
    parse_fail(err.what());
  }

  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw Error(ErrorCode::IoError, "cannot read config file '" + config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    RunConfig cfg = parse_config_json(buf.str());
    if (!out.empty()) cfg.out = out;
    return cfg;
  }

  RunConfig cfg;
  const auto subs = app.get_subcommands();
  if (subs.empty()) parse_fail("expected a subcommand (solve, critical, sweep, gas) or --config");
  const std::string name = subs.front()->get_name();
  cfg.mode = parse_mode(name);
  cfg.potential = potential_from_text(potential);
  cfg.out = out;
  cfg.tol = tol;
  if (cfg.mode == Mode::Solve || cfg.mode == Mode::Gas) cfg.T = temp;
  cfg.cuts = cuts;
  cfg.N = n;
  cfg.window = window;
  cfg.seed_occupancy = seed;
  if (!bracket.empty()) {
    const auto v = split_numbers(bracket, "--bracket");
    if (v.size() != 2) parse_fail("--bracket expects lo,hi");
    cfg.bracket = std::array<double, 2>{v[0], v[1]};
  }
  if (!trange.empty()) {
    const auto v = split_numbers(trange, "--trange");
    if (v.size() != 3 || v[2] != std::floor(v[2])) parse_fail("--trange expects lo,hi,n");
    cfg.trange = TRange{v[0], v[1], static_cast<int>(v[2])};
  }
  validate(cfg);
  return cfg;
}

std::string to_json(const RunConfig& cfg) {
  json doc;
  doc["potential"] = cfg.potential;
  doc["mode"] = std::string(to_string(cfg.mode));
  if (cfg.T) doc["T"] = *cfg.T;
  if (cfg.bracket) doc["bracket"] = {(*cfg.bracket)[0], (*cfg.bracket)[1]};
  if (cfg.trange) doc["trange"] = {cfg.trange->lo, cfg.trange->hi, cfg.trange->n};
  doc["cuts"] = cfg.cuts;
  doc["N"] = cfg.N;
  doc["tol"] = cfg.tol;
  doc["window"] = cfg.window;
  doc["seed_occupancy"] = cfg.seed_occupancy;
  doc["out"] = cfg.out;
  return doc.dump();
}

}  // namespace cutlab::cli
