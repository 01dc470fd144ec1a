#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "oising/types.hpp"

namespace oising::noise {

inline constexpr double kMaxAlpha = 2.0;

/// Sampled real Gaussian field. Length 2*n_max, sampling period dt = 1/f0.
struct NoiseSequence {
  std::vector<double> samples;
  double dt = 0.0;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  /// max |Im| / max |Re| of the inverse transform that produced the samples.
  double imag_residue = 0.0;

  [[nodiscard]] std::size_t n_max() const { return samples.size() / 2; }
};

/// One realization per entry; each realization holds one sequence per qubit.
using NoiseEnsemble = std::vector<std::vector<NoiseSequence>>;

/// Stationary correlation kappa(j dt), stored one-sided for j = 0, 1, ...
/// Estimated kernels also carry per-lag standard errors.
struct CorrelationKernel {
  std::vector<double> kappa;
  std::vector<double> std_error;
  double dt = 0.0;
  double alpha = 0.0;

  [[nodiscard]] std::size_t size() const { return kappa.size(); }
};

/// Two-sided density on f in (0, f0/2]; white noise gives S = 1.
struct PsdEstimate {
  std::vector<double> freqs;
  std::vector<double> values;
  double df = 0.0;

  /// Two-sided integral sum S df over [-f0/2, f0/2] (the DC bin is removed
  /// by the per-segment mean subtraction).
  [[nodiscard]] double integrated_power() const;
};

/// i.i.d. N(0, f0) samples, i.e. <h_n h_m> dt = delta_nm.
[[nodiscard]] NoiseSequence generate_white(std::size_t n_samples, std::uint64_t seed,
                                           double f0 = 500.0);

/// 1/f^alpha shaping by DFT filtering. Frequency bin j in 1..n_max is scaled
/// by (n_max/j)^{alpha/2}, the upper half is rebuilt by Hermitian symmetry and
/// the DC bin is zeroed. The Nyquist bin is left untouched. alpha == 0 returns
/// the input unchanged.
[[nodiscard]] NoiseSequence shape_spectrum(const NoiseSequence& white, double alpha);

/// Ensemble- and time-averaged estimate of <eta_k(t+tau) eta_k'(t)> for
/// lags 0..max_lag (0-based qubit indices).
[[nodiscard]] CorrelationKernel estimate_correlation(const NoiseEnsemble& ensemble, std::size_t k,
                                                     std::size_t k_prime, std::size_t max_lag);

/// Segment-averaged periodogram: `segments` boxcar windows with 50% overlap,
/// each mean-subtracted.
[[nodiscard]] PsdEstimate estimate_psd(const NoiseSequence& seq, std::size_t segments = 8);

/// Infinite-ensemble limit of the correlation estimator for noise produced by
/// generate_white + shape_spectrum at length 2*n_max.
[[nodiscard]] CorrelationKernel analytic_kernel(double alpha, std::size_t n_max, double f0);

/// Element-wise average of PSD estimates on a common grid.
[[nodiscard]] PsdEstimate average_psd(std::span<const PsdEstimate> estimates);

/// Least-squares slope of log S against log f over [f_lo, f_hi].
[[nodiscard]] double fit_log_slope(const PsdEstimate& psd, double f_lo, double f_hi);

}  // namespace oising::noise
