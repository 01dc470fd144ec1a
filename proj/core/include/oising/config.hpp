#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "oising/types.hpp"

namespace oising {

enum class Scenario { noise, fig3, fig4, fig5, fig6, custom };
enum class SolverKind { markovian, mcwf, tcl, spectral };

[[nodiscard]] std::string_view to_string(Scenario s);
[[nodiscard]] std::string_view to_string(SolverKind s);
[[nodiscard]] Scenario parse_scenario(std::string_view s);
[[nodiscard]] SolverKind parse_solver(std::string_view s);

/// Every knob of a run. Flat so that it maps one-to-one onto key=value text.
struct RunConfig {
  Scenario scenario = Scenario::custom;
  SolverKind solver = SolverKind::markovian;
  ModelParams model;
  double alpha = 0.0;
  std::size_t trajectories = 200;
  std::uint64_t seed = 1;
  std::string output_dir = "out";
  /// 0 selects 1/f0.
  double dt = 0.0;
  int sample_stride = 10;
  std::string initial_state = "unpolarized";
  std::size_t samples = 16384;
  std::size_t realizations = 200;
  std::vector<double> lambda_grid;
  double t_ref = 0.0;  // 0 selects t_max / 2
  double tau_max = 100.0;
  double dtau = 0.01;
  int refine = 1;
  bool allow_strong_noise = false;

  [[nodiscard]] double step() const { return dt > 0.0 ? dt : 1.0 / model.f0; }
  [[nodiscard]] double reference_time() const { return t_ref > 0.0 ? t_ref : model.t_max / 2; }
  /// Cross-field checks; throws ConfigError.
  void validate() const;
};

/// Parses key=value lines ('#' starts a comment). Unknown keys, malformed
/// values and incompatible combinations throw ConfigError naming the line.
/// A scenario without an explicit solver picks its natural one.
[[nodiscard]] RunConfig parse_config(std::string_view text);

/// Canonical text; parse_config(serialize_config(c)) == c.
[[nodiscard]] std::string serialize_config(const RunConfig& config);

/// Sets one key from its textual value, as parse_config would.
void set_config_value(RunConfig& config, std::string_view key, std::string_view value);

/// Keys accepted by sweep(): numeric fields only.
[[nodiscard]] bool is_sweepable(std::string_view key);

/// Shortest decimal that round-trips to the same double.
[[nodiscard]] std::string format_double(double v);

[[nodiscard]] bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace oising
