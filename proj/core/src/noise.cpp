#include "oising/noise.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fft.hpp"

namespace oising::noise {

double PsdEstimate::integrated_power() const {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < values.size(); ++j) sum += 2.0 * values[j];
  sum += values.back();  // Nyquist bin appears once in the two-sided sum
  return sum * df;
}

NoiseSequence generate_white(std::size_t n_samples, std::uint64_t seed, double f0) {
  if (n_samples < 2 || n_samples % 2 != 0) {
    throw ConfigError("white noise length must be even and >= 2");
  }
  if (!(f0 > 0.0)) throw ConfigError("f0 must be > 0");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> gauss(0.0, std::sqrt(f0));
  NoiseSequence out;
  out.samples.resize(n_samples);
  for (double& s : out.samples) s = gauss(rng);
  out.dt = 1.0 / f0;
  out.alpha = 0.0;
  out.seed = seed;
  return out;
}

NoiseSequence shape_spectrum(const NoiseSequence& white, double alpha) {
  if (white.alpha != 0.0) throw ConfigError("shape_spectrum expects white input");
  if (!(std::abs(alpha) <= kMaxAlpha)) throw ConfigError("|alpha| must be <= 2");
  if (white.samples.size() < 2 || white.samples.size() % 2 != 0) {
    throw ConfigError("noise length must be even and >= 2");
  }
  if (alpha == 0.0) return white;

  const std::size_t len = white.samples.size();
  const std::size_t n_max = len / 2;
  // Forward transform with the 1/(2 n_max) prefactor.
  auto spectrum = detail::fft_forward_real(white.samples);
  const double norm = 1.0 / static_cast<double>(len);
  for (auto& c : spectrum) c *= norm;

  spectrum[0] = 0.0;
  for (std::size_t j = 1; j < n_max; ++j) {
    spectrum[j] *= std::pow(static_cast<double>(n_max) / static_cast<double>(j), alpha / 2.0);
  }
  // j == n_max: factor 1
  for (std::size_t j = n_max + 1; j < len; ++j) spectrum[j] = std::conj(spectrum[len - j]);

  const auto shaped = detail::fft_backward(spectrum);
  NoiseSequence out;
  out.samples.resize(len);
  double max_re = 0.0;
  double max_im = 0.0;
  for (std::size_t n = 0; n < len; ++n) {
    out.samples[n] = shaped[n].real();
    max_re = std::max(max_re, std::abs(shaped[n].real()));
    max_im = std::max(max_im, std::abs(shaped[n].imag()));
  }
  out.imag_residue = max_re > 0.0 ? max_im / max_re : 0.0;
  if (out.imag_residue > 1e-10) {
    throw NumericError("shaped noise has a non-negligible imaginary part");
  }
  out.dt = white.dt;
  out.alpha = alpha;
  out.seed = white.seed;
  return out;
}

CorrelationKernel estimate_correlation(const NoiseEnsemble& ensemble, std::size_t k,
                                       std::size_t k_prime, std::size_t max_lag) {
  if (ensemble.size() < 2) throw ConfigError("correlation estimate needs >= 2 realizations");
  const auto& first = ensemble.front();
  if (k >= first.size() || k_prime >= first.size()) throw ConfigError("qubit index out of range");
  const std::size_t len = first[k].samples.size();
  if (max_lag >= len) throw ConfigError("max_lag must be shorter than the sequences");
  const double dt = first[k].dt;

  const std::size_t lags = max_lag + 1;
  std::vector<double> sum(lags, 0.0);
  std::vector<double> sum_sq(lags, 0.0);
  for (const auto& realization : ensemble) {
    if (realization.size() != first.size()) throw ConfigError("realizations differ in qubit count");
    const auto& x = realization[k].samples;
    const auto& y = realization[k_prime].samples;
    if (x.size() != len || y.size() != len) throw ConfigError("mismatched sequence lengths");
    // Zero-padded FFT cross-correlation r_j = sum_n x[n+j] y[n].
    std::vector<Complex> xp(2 * len), yp(2 * len);
    std::copy(x.begin(), x.end(), xp.begin());
    std::copy(y.begin(), y.end(), yp.begin());
    auto fx = detail::fft_forward(xp);
    const auto fy = detail::fft_forward(yp);
    for (std::size_t i = 0; i < fx.size(); ++i) fx[i] *= std::conj(fy[i]);
    const auto r = detail::fft_backward(fx);
    for (std::size_t j = 0; j < lags; ++j) {
      const double c = r[j].real() / static_cast<double>(2 * len) / static_cast<double>(len - j);
      sum[j] += c;
      sum_sq[j] += c * c;
    }
  }
  const auto count = static_cast<double>(ensemble.size());
  CorrelationKernel out;
  out.dt = dt;
  out.alpha = first[k].alpha;
  out.kappa.resize(lags);
  out.std_error.resize(lags);
  for (std::size_t j = 0; j < lags; ++j) {
    const double mean = sum[j] / count;
    const double var = std::max(0.0, (sum_sq[j] - count * mean * mean) / (count - 1.0));
    out.kappa[j] = mean;
    out.std_error[j] = std::sqrt(var / count);
  }
  return out;
}

PsdEstimate estimate_psd(const NoiseSequence& seq, std::size_t segments) {
  const std::size_t len = seq.samples.size();
  if (len < 64) throw ConfigError("PSD estimate needs >= 64 samples");
  if (segments < 1) throw ConfigError("segments must be >= 1");
  std::size_t seg_len = segments == 1 ? len : (2 * len) / (segments + 1);
  seg_len -= seg_len % 2;
  if (seg_len < 16) throw ConfigError("too many segments for the sequence length");
  const std::size_t step = segments == 1 ? 0 : seg_len / 2;
  const std::size_t bins = seg_len / 2;

  PsdEstimate out;
  out.df = 1.0 / (static_cast<double>(seg_len) * seq.dt);
  out.freqs.resize(bins);
  out.values.assign(bins, 0.0);
  for (std::size_t j = 1; j <= bins; ++j) out.freqs[j - 1] = static_cast<double>(j) * out.df;

  std::vector<double> buf(seg_len);
  for (std::size_t s = 0; s < segments; ++s) {
    const std::size_t start = s * step;
    double mean = 0.0;
    for (std::size_t i = 0; i < seg_len; ++i) {
      buf[i] = seq.samples[start + i];
      mean += buf[i];
    }
    mean /= static_cast<double>(seg_len);
    for (double& v : buf) v -= mean;
    const auto spec = detail::fft_forward_real(buf);
    for (std::size_t j = 1; j <= bins; ++j) {
      out.values[j - 1] += std::norm(spec[j]) * seq.dt / static_cast<double>(seg_len);
    }
  }
  for (double& v : out.values) v /= static_cast<double>(segments);
  return out;
}

CorrelationKernel analytic_kernel(double alpha, std::size_t n_max, double f0) {
  if (n_max < 1) throw ConfigError("n_max must be >= 1");
  if (!(std::abs(alpha) <= kMaxAlpha)) throw ConfigError("|alpha| must be <= 2");
  if (!(f0 > 0.0)) throw ConfigError("f0 must be > 0");
  const std::size_t len = 2 * n_max;
  CorrelationKernel out;
  out.dt = 1.0 / f0;
  out.alpha = alpha;
  out.kappa.assign(len, 0.0);
  if (alpha == 0.0) {
    out.kappa[0] = f0;
    return out;
  }
  // kappa_j = f0/(2 n_max) sum_k F_k^2 cos(pi j k / n_max)
  std::vector<Complex> weights(len);
  weights[0] = 0.0;
  for (std::size_t j = 1; j <= n_max; ++j) {
    const double w = std::pow(static_cast<double>(n_max) / static_cast<double>(j), alpha);
    weights[j] = w;
    if (j < n_max) weights[len - j] = w;
  }
  const auto transformed = detail::fft_forward(weights);
  const double scale = f0 / static_cast<double>(len);
  for (std::size_t j = 0; j < len; ++j) out.kappa[j] = transformed[j].real() * scale;
  return out;
}

PsdEstimate average_psd(std::span<const PsdEstimate> estimates) {
  if (estimates.empty()) throw ConfigError("average_psd: no estimates");
  PsdEstimate out = estimates.front();
  for (std::size_t i = 1; i < estimates.size(); ++i) {
    if (estimates[i].values.size() != out.values.size()) {
      throw ConfigError("average_psd: grids differ");
    }
    for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] += estimates[i].values[j];
  }
  for (double& v : out.values) v /= static_cast<double>(estimates.size());
  return out;
}

double fit_log_slope(const PsdEstimate& psd, double f_lo, double f_hi) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (std::size_t j = 0; j < psd.freqs.size(); ++j) {
    const double f = psd.freqs[j];
    if (f < f_lo || f > f_hi || !(psd.values[j] > 0.0)) continue;
    const double x = std::log(f);
    const double y = std::log(psd.values[j]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) throw ConfigError("fit_log_slope: fewer than two points in range");
  const auto dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

}  // namespace oising::noise
