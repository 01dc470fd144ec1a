#include "oising/mcwf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "fft.hpp"
#include "oising/liouvillian.hpp"
#include "oising/parallel.hpp"

namespace oising {

std::size_t TrajectoryRecord::count(JumpDirection dir, double t_lo, double t_hi) const {
  return static_cast<std::size_t>(std::count_if(jumps.begin(), jumps.end(), [&](const JumpEvent& j) {
    return j.direction == dir && j.time >= t_lo && j.time <= t_hi;
  }));
}

namespace {

/// Shared per-parameter data: eigenbasis of H_s, rotated flip operators and
/// the sigma^z pattern of every basis state.
class TrajectoryEngine {
 public:
  explicit TrajectoryEngine(const ModelParams& params)
      : params_(params), spec_(eigendecompose(build_ising_hamiltonian(params))) {
    x_eigen_.reserve(static_cast<std::size_t>(params.n_qubits));
    for (int k = 1; k <= params.n_qubits; ++k) {
      x_eigen_.push_back(spec_.to_eigenbasis(build_pauli(k, Axis::x, params)));
    }
  }

  TrajectoryRecord run(const StateVector& psi0, const EvolutionGrid& grid, std::uint64_t seed,
                       const TrajectoryOptions& options) const {
    const int n = params_.n_qubits;
    const Eigen::Index dim = spec_.dim();
    if (psi0.size() != dim) throw ConfigError("initial state dimension does not match n_qubits");
    if (std::abs(psi0.norm() - 1.0) > 1e-10) throw ConfigError("initial state is not normalized");

    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    std::mt19937_64 rng(seq);
    const double rate = n * params_.gamma;
    std::exponential_distribution<double> wait(rate > 0.0 ? rate : 1.0);
    std::uniform_int_distribution<int> channel(1, n);
    auto next_wait = [&] {
      return rate > 0.0 ? wait(rng) : std::numeric_limits<double>::infinity();
    };

    TrajectoryRecord rec;
    rec.seed = seed;
    CVector anchor = spec_.vectors.adjoint() * psi0;
    double anchor_t = 0.0;
    CVector c(dim);
    StateVector psi(dim);
    auto propagate = [&](double t) {
      for (Eigen::Index a = 0; a < dim; ++a) {
        const double phase = -spec_.omegas(a) * (t - anchor_t);
        c(a) = anchor(a) * Complex(std::cos(phase), std::sin(phase));
      }
      const double drift = std::abs(c.norm() - 1.0);
      if (drift > options.norm_tolerance) {
        std::ostringstream msg;
        msg << "mcwf: norm drift " << drift << " at t=" << t;
        throw NumericError(msg.str());
      }
      psi.noalias() = spec_.vectors * c;
    };
    auto sigma_z = [&](int k) {
      double s = 0.0;
      for (Eigen::Index u = 0; u < dim; ++u) s += spin_z(static_cast<std::size_t>(u), k, n) * std::norm(psi(u));
      return s;
    };

    double next_jump = next_wait();
    const std::size_t steps = grid.steps();
    const auto stride = static_cast<std::size_t>(grid.sample_stride);
    for (std::size_t step = 0; step <= steps; ++step) {
      if (step % stride != 0 && step != steps) continue;
      const double ts = grid.time(step);
      while (next_jump <= ts) {
        propagate(next_jump);
        const int k = channel(rng);
        const double before = sigma_z(k);
        anchor.noalias() = x_eigen_[static_cast<std::size_t>(k - 1)] * c;
        anchor.normalize();
        anchor_t = next_jump;
        // sigma^x_k flips <sigma^z_k>, so the change is -2 * before.
        const double change = -2.0 * before;
        rec.jumps.push_back({next_jump, k, change > 0.0 ? JumpDirection::raising : JumpDirection::lowering});
        next_jump += next_wait();
      }
      propagate(ts);
      double m = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double s = sigma_z(k);
        m += s;
        if (options.store_sigma_z) rec.sigma_z.push_back(s);
      }
      rec.times.push_back(ts);
      rec.m.push_back(m / n);
    }
    rec.m_ms = rec.m.back();
    return rec;
  }

 private:
  ModelParams params_;
  SpectralDecomposition spec_;
  std::vector<CMatrix> x_eigen_;
};

}  // namespace

TrajectoryRecord run_trajectory(const StateVector& psi0, const ModelParams& params,
                                const EvolutionGrid& grid, std::uint64_t seed,
                                const TrajectoryOptions& options) {
  params.validate();
  grid.validate();
  return TrajectoryEngine(params).run(psi0, grid, seed, options);
}

std::vector<TrajectoryRecord> run_ensemble(const StateVector& psi0, const ModelParams& params,
                                           const EvolutionGrid& grid, std::uint64_t master_seed,
                                           std::size_t count, const TrajectoryOptions& options) {
  params.validate();
  grid.validate();
  const TrajectoryEngine engine(params);
  std::vector<TrajectoryRecord> out(count);
  parallel_for(count, [&](std::size_t i) {
    out[i] = engine.run(psi0, grid, derive_seed(master_seed, i), options);
  });
  return out;
}

EnsembleSummary ensemble_average(const std::vector<TrajectoryRecord>& records, int bins) {
  if (records.size() < 2) throw ConfigError("ensemble_average needs >= 2 records");
  if (bins < 1) throw ConfigError("histogram needs >= 1 bin");
  const auto& times = records.front().times;
  for (const auto& r : records) {
    if (r.times != times) throw ConfigError("ensemble_average: trajectories use different grids");
  }
  const auto count = static_cast<double>(records.size());
  EnsembleSummary out;
  out.times = times;
  out.mean.assign(times.size(), 0.0);
  out.std_error.assign(times.size(), 0.0);
  for (std::size_t i = 0; i < times.size(); ++i) {
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& r : records) {
      sum += r.m[i];
      sum_sq += r.m[i] * r.m[i];
    }
    const double mean = sum / count;
    const double var = std::max(0.0, (sum_sq - count * mean * mean) / (count - 1.0));
    out.mean[i] = mean;
    out.std_error[i] = std::sqrt(var / count);
  }
  double sum = 0.0, sum_sq = 0.0;
  out.m_ms_histogram.counts.assign(static_cast<std::size_t>(bins), 0);
  for (const auto& r : records) {
    sum += r.m_ms;
    sum_sq += r.m_ms * r.m_ms;
    const double pos = (r.m_ms - out.m_ms_histogram.lo) / (out.m_ms_histogram.hi - out.m_ms_histogram.lo);
    const auto bin = std::clamp(static_cast<int>(std::floor(pos * bins)), 0, bins - 1);
    ++out.m_ms_histogram.counts[static_cast<std::size_t>(bin)];
  }
  out.m_ms_mean = sum / count;
  out.m_ms_std = std::sqrt(std::max(0.0, (sum_sq - count * out.m_ms_mean * out.m_ms_mean) / (count - 1.0)));
  return out;
}

namespace {

double uniform_step(const std::vector<double>& tau, const char* what) {
  if (tau.size() < 2 || tau.front() != 0.0) {
    throw ConfigError(std::string(what) + ": tau grid must start at 0 with >= 2 points");
  }
  const double step = tau[1] - tau[0];
  if (!(step > 0.0)) throw ConfigError(std::string(what) + ": tau grid must ascend");
  for (std::size_t i = 1; i < tau.size(); ++i) {
    if (std::abs(tau[i] - static_cast<double>(i) * step) > 1e-9 * std::max(1.0, tau[i])) {
      throw ConfigError(std::string(what) + ": tau grid is not uniform");
    }
  }
  return step;
}

CMatrix rk4_lindblad(CMatrix x, const LindbladGenerator& gen, double t, double dt_max) {
  if (t <= 0.0) return x;
  const auto steps = static_cast<std::size_t>(std::ceil(t / dt_max - 1e-9));
  const double h = t / static_cast<double>(steps);
  CMatrix k1, k2, k3, k4;
  for (std::size_t n = 0; n < steps; ++n) {
    gen.apply(x, k1);
    gen.apply(x + (h / 2) * k1, k2);
    gen.apply(x + (h / 2) * k2, k3);
    gen.apply(x + h * k3, k4);
    x += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

}  // namespace

CorrelationTable two_time_correlation(const DensityMatrix& rho0, const ModelParams& params, double t_ref,
                                      const std::vector<double>& tau_grid,
                                      const CorrelationOptions& options) {
  params.validate();
  const double dtau = uniform_step(tau_grid, "two_time_correlation");
  if (t_ref < 0.0) throw ConfigError("t_ref must be >= 0");
  if (t_ref < options.settling_time) {
    std::ostringstream msg;
    msg << "correlation reference time " << t_ref << " is below the settling time "
        << options.settling_time;
    warn(msg.str());
  }
  const int n = params.n_qubits;
  const Eigen::Index d = static_cast<Eigen::Index>(params.dim());
  std::vector<RVector> z(static_cast<std::size_t>(n), RVector(d));
  for (int k = 1; k <= n; ++k) {
    for (Eigen::Index u = 0; u < d; ++u) z[static_cast<std::size_t>(k - 1)](u) = spin_z(static_cast<std::size_t>(u), k, n);
  }

  RegressionMethod method = options.method;
  if (method == RegressionMethod::automatic) {
    method = n <= 5 ? RegressionMethod::spectral : RegressionMethod::ode;
  }
  const std::size_t count = tau_grid.size();
  std::vector<Complex> total(count, 0.0), diag(count, 0.0);

  if (method == RegressionMethod::spectral) {
    const auto spec = liouvillian_spectrum(build_liouvillian(params));
    const CMatrix rho = propagate_spectral(rho0.matrix(), spec, t_ref);
    const Eigen::Index modes = spec.gammas.size();
    // a_k = D vec(Z_k rho); l_k(mu) = Tr[Z_k R_mu] for right eigenvector R_mu.
    CMatrix a(modes, n), l(n, modes);
    for (int k = 0; k < n; ++k) {
      const CMatrix xi = z[static_cast<std::size_t>(k)].asDiagonal() * rho;
      a.col(k) = spec.d_matrix * vectorize(xi);
      for (Eigen::Index mu = 0; mu < modes; ++mu) {
        Complex s = 0.0;
        for (Eigen::Index u = 0; u < d; ++u) s += z[static_cast<std::size_t>(k)](u) * spec.d_inverse(u * d + u, mu);
        l(k, mu) = s;
      }
    }
    CVector w_total(modes), w_diag(modes);
    for (Eigen::Index mu = 0; mu < modes; ++mu) {
      w_total(mu) = l.col(mu).sum() * a.row(mu).sum();
      Complex s = 0.0;
      for (int k = 0; k < n; ++k) s += l(k, mu) * a(mu, k);
      w_diag(mu) = s;
    }
    const CVector lambda = spec.eigenvalues();
    parallel_for(count, [&](std::size_t i) {
      Complex t_sum = 0.0, d_sum = 0.0;
      for (Eigen::Index mu = 0; mu < modes; ++mu) {
        const Complex e = std::exp(-lambda(mu) * tau_grid[i]);
        t_sum += w_total(mu) * e;
        d_sum += w_diag(mu) * e;
      }
      total[i] = t_sum;
      diag[i] = d_sum;
    });
  } else {
    const LindbladGenerator gen(params);
    const CMatrix rho = rk4_lindblad(rho0.matrix(), gen, t_ref, options.dt);
    // One propagation per k; contributions are reduced in k order afterwards.
    std::vector<std::vector<Complex>> per_total(static_cast<std::size_t>(n)), per_diag(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t k) {
      per_total[k].assign(count, 0.0);
      per_diag[k].assign(count, 0.0);
      CMatrix x = z[k].asDiagonal() * rho;
      for (std::size_t i = 0; i < count; ++i) {
        if (i > 0) x = rk4_lindblad(std::move(x), gen, dtau, options.dt);
        for (std::size_t kp = 0; kp < z.size(); ++kp) {
          const Complex c = (z[kp].cast<Complex>().array() * x.diagonal().array()).sum();
          per_total[k][i] += c;
          if (kp == k) per_diag[k][i] = c;
        }
      }
    });
    for (std::size_t k = 0; k < per_total.size(); ++k) {
      for (std::size_t i = 0; i < count; ++i) {
        total[i] += per_total[k][i];
        diag[i] += per_diag[k][i];
      }
    }
  }

  CorrelationTable out;
  out.tau = tau_grid;
  out.c_a.resize(count);
  out.c_c.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Complex ca = diag[i] / static_cast<double>(n);
    const Complex cc = n > 1 ? (total[i] - diag[i]) / static_cast<double>(n * (n - 1)) : Complex{};
    out.c_a[i] = ca.real();
    out.c_c[i] = cc.real();
    out.max_imag = std::max({out.max_imag, std::abs(ca.imag()), std::abs(cc.imag())});
  }
  return out;
}

SpinPsd spin_psd(const std::vector<double>& tau, const std::vector<Complex>& c_a) {
  const double dtau = uniform_step(tau, "spin_psd");
  if (c_a.size() != tau.size()) throw ConfigError("spin_psd: length mismatch");
  const std::size_t n = tau.size();
  const std::size_t len = 2 * n;
  std::vector<Complex> full(len, 0.0);
  full[0] = c_a[0];
  for (std::size_t j = 1; j < n; ++j) {
    full[j] = c_a[j];
    full[len - j] = std::conj(c_a[j]);
  }
  const auto spec = detail::fft_forward(full);
  SpinPsd out;
  out.omega.resize(len);
  out.s.resize(len);
  const double d_omega = 2.0 * std::numbers::pi / (static_cast<double>(len) * dtau);
  // Bins n+1 .. len-1 are negative frequencies; emit in ascending omega.
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t src = (i + n + 1) % len;
    const auto signed_bin = static_cast<double>(src) - (src > n ? static_cast<double>(len) : 0.0);
    out.omega[i] = signed_bin * d_omega;
    out.s[i] = spec[src].real() * dtau;
    out.max_imag = std::max(out.max_imag, std::abs(spec[src].imag()) * dtau);
  }
  return out;
}

SpinPsd spin_psd(const std::vector<double>& tau, const std::vector<double>& c_a) {
  return spin_psd(tau, std::vector<Complex>(c_a.begin(), c_a.end()));
}

std::vector<Peak> find_peaks(const SpinPsd& psd, double min_relative) {
  const auto& s = psd.s;
  std::vector<Peak> out;
  if (s.size() < 3) return out;
  const double global = *std::max_element(s.begin(), s.end());
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (!(s[i] > s[i - 1] && s[i] >= s[i + 1])) continue;
    double left_min = s[i];
    for (std::size_t j = i; j-- > 0;) {
      if (s[j] > s[i]) break;
      left_min = std::min(left_min, s[j]);
    }
    double right_min = s[i];
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s[j] > s[i]) break;
      right_min = std::min(right_min, s[j]);
    }
    const double prominence = s[i] - std::max(left_min, right_min);
    if (prominence >= min_relative * global) out.push_back({psd.omega[i], s[i], prominence});
  }
  return out;
}

double peak_fwhm(const SpinPsd& psd, double omega_center) {
  const auto& s = psd.s;
  const auto& w = psd.omega;
  if (s.size() < 3) throw ConfigError("peak_fwhm: spectrum too short");
  std::size_t best = 0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (std::abs(w[i] - omega_center) < std::abs(w[best] - omega_center)) best = i;
  }
  // Climb to the local maximum.
  while (best + 1 < s.size() && s[best + 1] > s[best]) ++best;
  while (best > 0 && s[best - 1] > s[best]) --best;
  const double half = s[best] / 2.0;
  std::size_t lo = best;
  while (lo > 0 && s[lo] > half) --lo;
  std::size_t hi = best;
  while (hi + 1 < s.size() && s[hi] > half) ++hi;
  if (s[lo] > half || s[hi] > half) throw NumericError("peak_fwhm: half maximum not reached");
  auto cross = [&](std::size_t a, std::size_t b) {
    return w[a] + (half - s[a]) * (w[b] - w[a]) / (s[b] - s[a]);
  };
  return cross(hi - 1, hi) - cross(lo, lo + 1);
}

}  // namespace oising
