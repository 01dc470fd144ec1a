// sim: command-line front end for the oising library.
//
//   sim noise     [--alpha A ...] [--samples N] [--seed S] [--realizations R]
//   sim simulate  --solver {markovian|mcwf|tcl|spectral} [model flags]
//   sim spectrum  --n N --lambda-grid 0,10,100
//   sim scenario  {noise|fig3|fig4|fig5|fig6|custom}
//   sim sweep     --key lambda --values 0,10,20
//   sim circuit   --input circuit.csv --gamma-si G --f0-si F
//
// Every subcommand accepts --config FILE plus one flag per config key
// (--n-qubits or --n_qubits, ...). Flags override the file.
// Exit codes: 0 ok, 2 configuration error, 3 numeric failure.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oising/circuit.hpp"
#include "oising/config.hpp"
#include "oising/scenario.hpp"

namespace {

using namespace oising;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  std::istringstream in(serialize_config(RunConfig{}));
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) keys.push_back(line.substr(0, eq));
  }
  return keys;
}

std::string dashed(std::string key) {
  for (char& ch : key) {
    if (ch == '_') ch = '-';
  }
  return key;
}

/// Config file plus per-key overrides attached to one subcommand.
struct ConfigFlags {
  std::string file;
  std::map<std::string, std::string> values;

  void attach(CLI::App* app, const std::vector<std::string>& skip = {}) {
    app->add_option("--config", file, "key=value configuration file")->check(CLI::ExistingFile);
    for (const auto& key : config_keys()) {
      if (std::find(skip.begin(), skip.end(), key) != skip.end()) continue;
      std::string names = "--" + dashed(key);
      if (dashed(key) != key) names += ",--" + key;
      app->add_option_function<std::string>(
          names, [this, key](const std::string& v) { values[key] = v; }, "config key " + key);
    }
  }

  /// Overridden lines are dropped from the file and the overrides appended,
  /// so parse_config still sees each key once and can pick a scenario's
  /// natural solver.
  [[nodiscard]] RunConfig load(const std::map<std::string, std::string>& forced = {}) const {
    std::map<std::string, std::string> overrides = values;
    for (const auto& [k, v] : forced) overrides[k] = v;
    std::string merged;
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw ConfigError("cannot read config file " + file);
      std::string line;
      while (std::getline(in, line)) {
        const auto body = line.substr(0, line.find('#'));
        const auto eq = body.find('=');
        std::string key = eq == std::string::npos ? std::string{} : body.substr(0, eq);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t\r") + 1);
        merged += overrides.count(key) ? std::string{} : line;
        merged += '\n';
      }
    }
    for (const auto& [k, v] : overrides) merged += k + "=" + v + "\n";
    return parse_config(merged);
  }
};

void report(const ScenarioResult& r) {
  std::cout << "wrote " << r.manifest.files.size() << " files to " << r.dir.string() << '\n';
  for (const auto& [name, hash] : r.manifest.files) std::cout << "  " << name << "  " << hash << '\n';
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    RunConfig probe;
    set_config_value(probe, "alpha", item);  // reuse the strict number parser
    out.push_back(probe.alpha);
  }
  return out;
}

int run_circuit(const std::string& input, double gamma_si, double f0_si, double t_max) {
  std::ifstream in(input);
  if (!in) throw ConfigError("cannot read circuit file " + input);
  const auto rows = circuit::read_circuit_csv(in);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto model = circuit::circuit_to_model(rows[i]);
    for (const auto& w : model.warnings) std::cerr << "warning: row " << i + 1 << ": " << w << '\n';
    const auto p = circuit::to_model_params(rows[i], gamma_si, f0_si, t_max);
    if (rows.size() > 1) std::cout << "# row " << i + 1 << '\n';
    std::cout << "n_qubits=" << p.n_qubits << "\nepsilon=" << format_double(p.epsilon)
              << "\nlambda=" << format_double(p.lambda) << "\ngamma=" << format_double(p.gamma)
              << "\nf0=" << format_double(p.f0) << "\nt_max=" << format_double(p.t_max) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Open Ising-chain dynamics under classical noise"};
  app.require_subcommand(1);

  ConfigFlags noise_flags, sim_flags, spec_flags, scen_flags, sweep_flags;

  auto* noise_cmd = app.add_subcommand("noise", "generate noise, PSD and correlation tables");
  std::vector<double> alphas;
  noise_cmd->add_option("--alpha", alphas, "spectral exponent(s); default 0, 1 and -1");
  noise_flags.attach(noise_cmd, {"alpha"});

  auto* sim_cmd = app.add_subcommand("simulate", "run one solver on the configured model");
  sim_flags.attach(sim_cmd);

  auto* spec_cmd = app.add_subcommand("spectrum", "Liouvillian spectrum over a lambda grid");
  std::optional<int> spec_n;
  spec_cmd->add_option("--n", spec_n, "qubit count");
  spec_flags.attach(spec_cmd);

  auto* scen_cmd = app.add_subcommand("scenario", "run a named scenario");
  std::string scen_name;
  scen_cmd->add_option("name", scen_name, "noise, fig3, fig4, fig5, fig6 or custom")->required();
  scen_flags.attach(scen_cmd, {"scenario"});

  auto* sweep_cmd = app.add_subcommand("sweep", "scalar summaries over one numeric key");
  std::string sweep_key;
  std::string sweep_values;
  sweep_cmd->add_option("--key", sweep_key, "config key to vary")->required();
  sweep_cmd->add_option("--values", sweep_values, "comma-separated values")->required();
  sweep_flags.attach(sweep_cmd);

  auto* circ_cmd = app.add_subcommand("circuit", "map circuit parameters to reduced-unit model keys");
  std::string circ_input;
  double gamma_si = 0.0;
  double f0_si = 0.0;
  double circ_t_max = 10.0;
  circ_cmd->add_option("--input", circ_input, "CSV with header c_g,c_j,c_c,e_j,n_qubits")->required();
  circ_cmd->add_option("--gamma-si", gamma_si, "noise rate Gamma in 1/s")->required();
  circ_cmd->add_option("--f0-si", f0_si, "sampling frequency in Hz")->required();
  circ_cmd->add_option("--t-max", circ_t_max, "horizon in units of 1/Gamma");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*noise_cmd) {
      const auto c = noise_flags.load({{"scenario", "noise"}});
      report(run_noise(c, alphas.empty() ? std::vector<double>{0.0, 1.0, -1.0} : alphas));
    } else if (*sim_cmd) {
      report(run_scenario(sim_flags.load({{"scenario", "custom"}})));
    } else if (*spec_cmd) {
      std::map<std::string, std::string> forced{{"scenario", "custom"}, {"solver", "spectral"}};
      if (spec_n) forced["n_qubits"] = std::to_string(*spec_n);
      report(run_scenario(spec_flags.load(forced)));
    } else if (*scen_cmd) {
      report(run_scenario(scen_flags.load({{"scenario", scen_name}})));
    } else if (*sweep_cmd) {
      const auto c = sweep_flags.load();
      if (!is_sweepable(sweep_key)) throw ConfigError("key '" + sweep_key + "' is not sweepable");
      report(run_sweep(c, sweep_key, parse_list(sweep_values)));
    } else if (*circ_cmd) {
      return run_circuit(circ_input, gamma_si, f0_si, circ_t_max);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return 0;
}
