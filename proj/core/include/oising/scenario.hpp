#pragma once

#include <filesystem>
#include <limits>
#include <string_view>
#include <vector>

#include "oising/config.hpp"
#include "oising/csv.hpp"
#include "oising/noise.hpp"

namespace oising {

struct ScenarioResult {
  std::filesystem::path dir;
  RunManifest manifest;
};

/// Runs the configured scenario, writes its CSV files into output_dir and the
/// manifest last. On failure every file written so far is removed.
ScenarioResult run_scenario(const RunConfig& config);

/// Noise generation and statistics for the given exponents only.
ScenarioResult run_noise(const RunConfig& config, const std::vector<double>& alphas);

struct NoiseAnalysis {
  double alpha = 0.0;
  double slope = 0.0;
  double nyquist_psd = 0.0;
  noise::PsdEstimate psd;
  noise::CorrelationKernel auto_kernel;
  noise::CorrelationKernel cross_kernel;
  noise::NoiseSequence first_realization;
};

/// PSD and correlations of config.realizations two-qubit realizations of
/// length config.samples. Realization r uses white seeds derived from
/// (config.seed, r), so different alphas share their white input.
[[nodiscard]] NoiseAnalysis analyze_noise(const RunConfig& config, double alpha, std::size_t max_lag);

/// Scalar summary of one run without file output.
struct PointSummary {
  double m_ms = std::numeric_limits<double>::quiet_NaN();
  double tau_g = std::numeric_limits<double>::quiet_NaN();
  bool tau_censored = false;
  double gamma_1 = std::numeric_limits<double>::quiet_NaN();
};

[[nodiscard]] PointSummary summarize_point(const RunConfig& config);

/// One summary per value, computed in parallel and returned in input order.
/// Unless the key is `seed`, point i runs with seed derive_seed(seed, i).
[[nodiscard]] std::vector<PointSummary> sweep(const RunConfig& config, std::string_view key,
                                              const std::vector<double>& values);

/// sweep() plus sweep.csv and a manifest.
ScenarioResult run_sweep(const RunConfig& config, std::string_view key, const std::vector<double>& values);

[[nodiscard]] std::string noise_label(double alpha);

}  // namespace oising
