#include "oising/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "oising/liouvillian.hpp"
#include "oising/noise.hpp"

namespace oising {

namespace {

/// Validation failure tied to a key, so the parser can report its line.
class KeyedError : public ConfigError {
 public:
  KeyedError(std::string key, const std::string& msg) : ConfigError(msg), key_(std::move(key)) {}
  [[nodiscard]] const std::string& key() const { return key_; }

 private:
  std::string key_;
};

void require(bool ok, const char* key, const std::string& msg) {
  if (!ok) throw KeyedError(key, msg);
}

constexpr std::array<std::pair<Scenario, std::string_view>, 6> kScenarios{{
    {Scenario::noise, "noise"},
    {Scenario::fig3, "fig3"},
    {Scenario::fig4, "fig4"},
    {Scenario::fig5, "fig5"},
    {Scenario::fig6, "fig6"},
    {Scenario::custom, "custom"},
}};

constexpr std::array<std::pair<SolverKind, std::string_view>, 4> kSolvers{{
    {SolverKind::markovian, "markovian"},
    {SolverKind::mcwf, "mcwf"},
    {SolverKind::tcl, "tcl"},
    {SolverKind::spectral, "spectral"},
}};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(out)) {
    throw ConfigError(std::string(key) + ": expected a finite number, got '" + std::string(v) + "'");
  }
  return out;
}

template <typename Int>
Int to_integer(std::string_view key, std::string_view v) {
  Int out{};
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw ConfigError(std::string(key) + ": expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError(std::string(key) + ": expected true or false");
}

std::vector<double> to_list(std::string_view key, std::string_view v) {
  std::vector<double> out;
  if (trim(v).empty()) return out;
  std::size_t pos = 0;
  while (pos <= v.size()) {
    const auto comma = v.find(',', pos);
    const auto item = trim(v.substr(pos, comma == std::string_view::npos ? v.npos : comma - pos));
    out.push_back(to_double(key, item));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

SolverKind natural_solver(Scenario s) {
  switch (s) {
    case Scenario::fig3:
    case Scenario::fig5:
      return SolverKind::tcl;
    case Scenario::fig4:
      return SolverKind::mcwf;
    case Scenario::fig6:
      return SolverKind::spectral;
    default:
      return SolverKind::markovian;
  }
}

}  // namespace

std::string_view to_string(Scenario s) {
  for (const auto& [v, name] : kScenarios) {
    if (v == s) return name;
  }
  return "custom";
}

std::string_view to_string(SolverKind s) {
  for (const auto& [v, name] : kSolvers) {
    if (v == s) return name;
  }
  return "markovian";
}

Scenario parse_scenario(std::string_view s) {
  for (const auto& [v, name] : kScenarios) {
    if (name == s) return v;
  }
  throw ConfigError("scenario: unknown value '" + std::string(s) + "'");
}

SolverKind parse_solver(std::string_view s) {
  for (const auto& [v, name] : kSolvers) {
    if (name == s) return v;
  }
  throw ConfigError("solver: unknown value '" + std::string(s) + "'");
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void set_config_value(RunConfig& c, std::string_view key, std::string_view raw) {
  const auto v = trim(raw);
  if (key == "scenario") {
    c.scenario = parse_scenario(v);
  } else if (key == "solver") {
    c.solver = parse_solver(v);
  } else if (key == "n_qubits") {
    c.model.n_qubits = to_integer<int>(key, v);
  } else if (key == "epsilon") {
    c.model.epsilon = to_double(key, v);
  } else if (key == "lambda") {
    c.model.lambda = to_double(key, v);
  } else if (key == "gamma") {
    c.model.gamma = to_double(key, v);
  } else if (key == "f0") {
    c.model.f0 = to_double(key, v);
  } else if (key == "t_max") {
    c.model.t_max = to_double(key, v);
  } else if (key == "alpha") {
    c.alpha = to_double(key, v);
  } else if (key == "trajectories") {
    c.trajectories = to_integer<std::size_t>(key, v);
  } else if (key == "seed") {
    c.seed = to_integer<std::uint64_t>(key, v);
  } else if (key == "output_dir") {
    c.output_dir = std::string(v);
  } else if (key == "dt") {
    c.dt = to_double(key, v);
  } else if (key == "sample_stride") {
    c.sample_stride = to_integer<int>(key, v);
  } else if (key == "initial_state") {
    c.initial_state = std::string(v);
  } else if (key == "samples") {
    c.samples = to_integer<std::size_t>(key, v);
  } else if (key == "realizations") {
    c.realizations = to_integer<std::size_t>(key, v);
  } else if (key == "lambda_grid") {
    c.lambda_grid = to_list(key, v);
  } else if (key == "t_ref") {
    c.t_ref = to_double(key, v);
  } else if (key == "tau_max") {
    c.tau_max = to_double(key, v);
  } else if (key == "dtau") {
    c.dtau = to_double(key, v);
  } else if (key == "refine") {
    c.refine = to_integer<int>(key, v);
  } else if (key == "allow_strong_noise") {
    c.allow_strong_noise = to_bool(key, v);
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'");
  }
}

bool is_sweepable(std::string_view key) {
  static constexpr std::array<std::string_view, 10> keys{
      "n_qubits", "epsilon", "lambda", "gamma", "f0", "t_max", "alpha", "trajectories", "seed", "refine"};
  for (const auto k : keys) {
    if (k == key) return true;
  }
  return false;
}

void RunConfig::validate() const {
  try {
    model.validate();
  } catch (const ConfigError& e) {
    throw KeyedError("n_qubits", e.what());
  }
  require(std::abs(alpha) <= noise::kMaxAlpha, "alpha", "alpha must satisfy |alpha| <= 2");
  require(dt >= 0.0, "dt", "dt must be >= 0");
  const double ratio = model.t_max / step();
  require(std::abs(ratio - std::round(ratio)) <= 1e-9 * std::max(1.0, ratio), "dt",
          "t_max must be an integer multiple of dt");
  require(sample_stride >= 1, "sample_stride", "sample_stride must be >= 1");
  require(initial_state == "unpolarized" || initial_state == "polarized" || initial_state == "ground",
          "initial_state", "initial_state must be unpolarized, polarized or ground");
  require(samples >= 64 && samples % 2 == 0, "samples", "samples must be even and >= 64");
  require(realizations >= 2, "realizations", "realizations must be >= 2");
  require(t_ref >= 0.0, "t_ref", "t_ref must be >= 0");
  require(tau_max > 0.0 && dtau > 0.0 && dtau < tau_max, "dtau", "need 0 < dtau < tau_max");
  require(refine >= 1, "refine", "refine must be >= 1");
  if (solver == SolverKind::spectral) {
    require(model.n_qubits <= kMaxLiouvillianQubits, "solver",
            "spectral solver is capped at N <= " + std::to_string(kMaxLiouvillianQubits));
  }
  if (solver == SolverKind::mcwf) require(trajectories >= 2, "trajectories", "mcwf needs >= 2 trajectories");
  if (solver == SolverKind::tcl) {
    require(std::abs(step() - 1.0 / model.f0) <= 1e-12 / model.f0, "dt", "tcl requires dt = 1/f0");
  }
  if (scenario == Scenario::fig6) {
    require(solver == SolverKind::spectral, "solver", "fig6 requires the spectral solver");
    require(model.n_qubits <= 5, "n_qubits", "fig6 requires N <= 5");
  }
  if (scenario == Scenario::fig4) require(solver == SolverKind::mcwf, "solver", "fig4 requires mcwf");
  if (scenario == Scenario::fig3 || scenario == Scenario::fig5) {
    require(solver == SolverKind::tcl, "solver", "fig3 and fig5 require the tcl solver");
  }
}

RunConfig parse_config(std::string_view text) {
  RunConfig c;
  std::map<std::string, std::size_t, std::less<>> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) throw ConfigError(where + "expected key=value");
    const std::string key(trim(line.substr(0, eq)));
    if (lines.count(key)) throw ConfigError(where + "duplicate key '" + key + "'");
    try {
      set_config_value(c, key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
    lines[key] = line_no;
  }
  if (!lines.count("solver")) c.solver = natural_solver(c.scenario);
  try {
    c.validate();
  } catch (const KeyedError& e) {
    auto it = lines.find(e.key());
    if (it == lines.end() && e.key() == "solver") it = lines.find("scenario");
    if (it == lines.end() && e.key() == "n_qubits") it = lines.find("scenario");
    const std::string where = it == lines.end() ? "" : "line " + std::to_string(it->second) + ": ";
    throw ConfigError(where + e.what());
  }
  return c;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "scenario=" << to_string(c.scenario) << '\n'
      << "solver=" << to_string(c.solver) << '\n'
      << "n_qubits=" << c.model.n_qubits << '\n'
      << "epsilon=" << format_double(c.model.epsilon) << '\n'
      << "lambda=" << format_double(c.model.lambda) << '\n'
      << "gamma=" << format_double(c.model.gamma) << '\n'
      << "f0=" << format_double(c.model.f0) << '\n'
      << "t_max=" << format_double(c.model.t_max) << '\n'
      << "alpha=" << format_double(c.alpha) << '\n'
      << "trajectories=" << c.trajectories << '\n'
      << "seed=" << c.seed << '\n'
      << "output_dir=" << c.output_dir << '\n'
      << "dt=" << format_double(c.dt) << '\n'
      << "sample_stride=" << c.sample_stride << '\n'
      << "initial_state=" << c.initial_state << '\n'
      << "samples=" << c.samples << '\n'
      << "realizations=" << c.realizations << '\n'
      << "lambda_grid=";
  for (std::size_t i = 0; i < c.lambda_grid.size(); ++i) {
    out << (i ? "," : "") << format_double(c.lambda_grid[i]);
  }
  out << '\n'
      << "t_ref=" << format_double(c.t_ref) << '\n'
      << "tau_max=" << format_double(c.tau_max) << '\n'
      << "dtau=" << format_double(c.dtau) << '\n'
      << "refine=" << c.refine << '\n'
      << "allow_strong_noise=" << (c.allow_strong_noise ? "true" : "false") << '\n';
  return out.str();
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return serialize_config(a) == serialize_config(b);
}

}  // namespace oising
