#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oising/algebra.hpp"
#include "oising/markovian.hpp"
#include "oising/types.hpp"

namespace oising {

enum class JumpDirection { raising, lowering };

struct JumpEvent {
  double time = 0.0;
  int qubit = 0;  // 1-based
  JumpDirection direction = JumpDirection::lowering;
};

struct TrajectoryRecord {
  std::uint64_t seed = 0;
  std::vector<JumpEvent> jumps;
  std::vector<double> times;
  std::vector<double> m;
  /// Per-sample <sigma^z_k>, row-major [sample][k]; empty unless requested.
  std::vector<double> sigma_z;
  double m_ms = 0.0;

  [[nodiscard]] std::size_t count(JumpDirection dir, double t_lo = 0.0,
                                  double t_hi = std::numeric_limits<double>::infinity()) const;
};

struct TrajectoryOptions {
  bool store_sigma_z = false;
  double norm_tolerance = 1e-8;
};

/// One quantum-jump trajectory. The anti-Hermitian part of H_eff is
/// -i (N Gamma / 2) I, so jump times are a Poisson process of rate N Gamma
/// with a uniform channel; sigma^x_k is applied at each jump. Coherent
/// segments are propagated exactly in the eigenbasis of H_s.
[[nodiscard]] TrajectoryRecord run_trajectory(const StateVector& psi0, const ModelParams& params,
                                              const EvolutionGrid& grid, std::uint64_t seed,
                                              const TrajectoryOptions& options = {});

/// `count` trajectories with seeds derive_seed(master_seed, i), scheduled on
/// the worker pool and returned in index order.
[[nodiscard]] std::vector<TrajectoryRecord> run_ensemble(const StateVector& psi0,
                                                         const ModelParams& params,
                                                         const EvolutionGrid& grid,
                                                         std::uint64_t master_seed, std::size_t count,
                                                         const TrajectoryOptions& options = {});

struct Histogram {
  double lo = -1.0;
  double hi = 1.0;
  std::vector<std::size_t> counts;
};

struct EnsembleSummary {
  std::vector<double> times;
  std::vector<double> mean;
  std::vector<double> std_error;
  double m_ms_mean = 0.0;
  double m_ms_std = 0.0;
  Histogram m_ms_histogram;
};

[[nodiscard]] EnsembleSummary ensemble_average(const std::vector<TrajectoryRecord>& records,
                                               int bins = 21);

enum class RegressionMethod { automatic, spectral, ode };

struct CorrelationOptions {
  double settling_time = 3.0;
  /// Step for ODE propagation (ode method only).
  double dt = 1e-3;
  RegressionMethod method = RegressionMethod::automatic;
};

struct CorrelationTable {
  std::vector<double> tau;
  std::vector<double> c_a;
  std::vector<double> c_c;
  /// Largest |Im| seen, a diagnostic only.
  double max_imag = 0.0;
};

/// Regression-theorem correlations C_a(tau) = N^-1 sum_k <sz_k(t+tau) sz_k(t)>
/// and C_c averaged over k != k', with t = t_ref and rho(t_ref) reached from
/// rho0 under the Lindblad generator. tau_grid must be uniform from 0.
[[nodiscard]] CorrelationTable two_time_correlation(const DensityMatrix& rho0, const ModelParams& params,
                                                    double t_ref, const std::vector<double>& tau_grid,
                                                    const CorrelationOptions& options = {});

struct SpinPsd {
  std::vector<double> omega;
  std::vector<double> s;
  double max_imag = 0.0;
};

/// Discrete Fourier transform of C_a on tau >= 0 with C_a(-tau) = C_a(tau)^*,
/// on angular frequencies 2 pi j / (2 n dtau). Output sorted by omega.
[[nodiscard]] SpinPsd spin_psd(const std::vector<double>& tau, const std::vector<Complex>& c_a);
[[nodiscard]] SpinPsd spin_psd(const std::vector<double>& tau, const std::vector<double>& c_a);

struct Peak {
  double omega = 0.0;
  double height = 0.0;
  double prominence = 0.0;
};

/// Local maxima with prominence at least min_relative times the global maximum.
[[nodiscard]] std::vector<Peak> find_peaks(const SpinPsd& psd, double min_relative = 0.01);

/// Full width at half maximum of the peak nearest omega_center.
[[nodiscard]] double peak_fwhm(const SpinPsd& psd, double omega_center = 0.0);

}  // namespace oising
