#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oising/markovian.hpp"
#include "oising/mcwf.hpp"
#include "support.hpp"

namespace oising {
namespace {

ModelParams model(int n, double lambda, double gamma = 1.0) {
  ModelParams p;
  p.n_qubits = n;
  p.lambda = lambda;
  p.gamma = gamma;
  return p;
}

EvolutionGrid grid(double dt, double t_max, int stride) {
  EvolutionGrid g;
  g.dt = dt;
  g.t_max = t_max;
  g.sample_stride = stride;
  return g;
}

TEST(Trajectory, DeterministicBySeed) {
  const auto p = model(3, 10.0);
  const auto psi = preset_state("unpolarized", p);
  const auto g = grid(1e-2, 5.0, 10);
  const auto a = run_trajectory(psi, p, g, 99);
  const auto b = run_trajectory(psi, p, g, 99);
  EXPECT_EQ(a.m, b.m);
  ASSERT_EQ(a.jumps.size(), b.jumps.size());
  for (std::size_t i = 0; i < a.jumps.size(); ++i) EXPECT_EQ(a.jumps[i].time, b.jumps[i].time);
}

TEST(Trajectory, JumpCountIsPoisson) {
  const auto p = model(2, 5.0, 0.5);
  const auto g = grid(1e-2, 10.0, 100);
  const auto records = run_ensemble(preset_state("polarized", p), p, g, 7, 400);
  double total = 0.0;
  for (const auto& r : records) total += static_cast<double>(r.jumps.size());
  const double expected = p.n_qubits * p.gamma * g.t_max;  // per trajectory
  const double mean = total / 400.0;
  EXPECT_NEAR(mean, expected, 4.0 * std::sqrt(expected / 400.0));
  for (const auto& r : records) {
    for (std::size_t i = 1; i < r.jumps.size(); ++i) EXPECT_LE(r.jumps[i - 1].time, r.jumps[i].time);
    for (const auto& j : r.jumps) {
      EXPECT_GE(j.qubit, 1);
      EXPECT_LE(j.qubit, 2);
    }
  }
}

TEST(Trajectory, NoiselessLimitIsUnitary) {
  auto p = model(3, 30.0, 1e-12);
  const auto psi0 = preset_state("unpolarized", p);
  const auto g = grid(1e-3, 1.0, 100);
  const auto rec = run_trajectory(psi0, p, g, 1);
  EXPECT_TRUE(rec.jumps.empty());
  const CMatrix h = testing::kron_hamiltonian(p);
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    const CMatrix u = (CMatrix(-kI * rec.times[i] * h)).exp();
    const CVector psi = u * psi0;
    const CMatrix rho = psi * psi.adjoint();
    EXPECT_NEAR(rec.m[i], testing::kron_magnetization(rho, 3), 1e-10);
  }
}

TEST(Trajectory, RejectsBadState) {
  const auto p = model(2, 0.0);
  const auto g = grid(1e-2, 1.0, 10);
  EXPECT_THROW((void)run_trajectory(StateVector::Zero(4), p, g, 1), ConfigError);
  EXPECT_THROW((void)run_trajectory(StateVector::Ones(8) / std::sqrt(8.0), p, g, 1), ConfigError);
}

TEST(Trajectory, JumpDirectionFollowsSpinFlip) {
  // lambda = 0 and all spins up: the first jump on any qubit lowers it.
  const auto p = model(2, 0.0, 2.0);
  const auto rec = run_trajectory(preset_state("polarized", p), p, grid(1e-2, 5.0, 1), 3);
  ASSERT_FALSE(rec.jumps.empty());
  EXPECT_EQ(rec.jumps.front().direction, JumpDirection::lowering);
  EXPECT_EQ(rec.count(JumpDirection::raising) + rec.count(JumpDirection::lowering), rec.jumps.size());
}

TEST(Ensemble, AverageMatchesDensityMatrix) {
  const auto p = model(2, 10.0);
  const auto psi0 = preset_state("polarized", p);
  const auto g = grid(1e-3, 2.0, 100);
  const auto records = run_ensemble(psi0, p, g, 11, 2000);
  const auto summary = ensemble_average(records);
  const auto exact = evolve_markovian(DensityMatrix::pure(psi0), p, g);
  ASSERT_EQ(summary.times.size(), exact.t.size());
  for (std::size_t i = 0; i < exact.t.size(); ++i) {
    EXPECT_NEAR(summary.mean[i], exact.m[i], 4.5 * summary.std_error[i] + 1e-12) << exact.t[i];
  }
  std::size_t hist_total = 0;
  for (auto c : summary.m_ms_histogram.counts) hist_total += c;
  EXPECT_EQ(hist_total, 2000u);
}

TEST(Ensemble, IndependentOfThreadCount) {
  const auto p = model(2, 10.0);
  const auto psi0 = preset_state("unpolarized", p);
  const auto g = grid(1e-2, 2.0, 10);
  setenv("SIM_THREADS", "1", 1);
  const auto a = run_ensemble(psi0, p, g, 5, 16);
  setenv("SIM_THREADS", "3", 1);
  const auto b = run_ensemble(psi0, p, g, 5, 16);
  unsetenv("SIM_THREADS");
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].m, b[i].m);
}

TEST(Correlation, StartsAtOneAndMethodsAgree) {
  const auto p = model(3, 20.0);
  const auto rho0 = DensityMatrix::pure(preset_state("unpolarized", p));
  std::vector<double> tau(201);
  for (std::size_t i = 0; i < tau.size(); ++i) tau[i] = 0.01 * static_cast<double>(i);
  CorrelationOptions spectral;
  spectral.method = RegressionMethod::spectral;
  CorrelationOptions ode = spectral;
  ode.method = RegressionMethod::ode;
  const auto a = two_time_correlation(rho0, p, 3.0, tau, spectral);
  const auto b = two_time_correlation(rho0, p, 3.0, tau, ode);
  EXPECT_NEAR(a.c_a[0], 1.0, 1e-10);
  for (std::size_t i = 0; i < tau.size(); ++i) {
    EXPECT_NEAR(a.c_a[i], b.c_a[i], 1e-7) << tau[i];
    EXPECT_NEAR(a.c_c[i], b.c_c[i], 1e-7) << tau[i];
    EXPECT_LE(std::abs(a.c_a[i]), 1.0 + 1e-9);
  }
  // <sz(t+tau) sz(t)> itself is complex; only its real part is tabulated
  EXPECT_GT(a.max_imag, 0.0);
}

TEST(Correlation, UncoupledSingleSpinIsExponential) {
  // sigma^z decays at 2 Gamma and commutes with H when lambda = 0.
  const auto p = model(1, 0.0, 0.5);
  std::vector<double> tau(101);
  for (std::size_t i = 0; i < tau.size(); ++i) tau[i] = 0.05 * static_cast<double>(i);
  const auto c = two_time_correlation(DensityMatrix::maximally_mixed(1), p, 3.0, tau);
  for (std::size_t i = 0; i < tau.size(); ++i) EXPECT_NEAR(c.c_a[i], std::exp(-2.0 * p.gamma * tau[i]), 1e-10);
}

TEST(SpinPsd, LorentzianWidth) {
  const double g = 1.0;
  std::vector<double> tau(8192), c(8192);
  for (std::size_t i = 0; i < tau.size(); ++i) {
    tau[i] = 0.01 * static_cast<double>(i);
    c[i] = std::exp(-g * tau[i]);
  }
  const auto psd = spin_psd(tau, c);
  for (std::size_t i = 1; i < psd.omega.size(); ++i) EXPECT_LT(psd.omega[i - 1], psd.omega[i]);
  EXPECT_LT(psd.max_imag, 1e-9);
  // S(omega) = 2 g / (g^2 + omega^2), FWHM 2 g
  EXPECT_NEAR(peak_fwhm(psd), 2.0 * g, 0.02);
  const auto peaks = find_peaks(psd);
  ASSERT_EQ(peaks.size(), 1u);
  EXPECT_NEAR(peaks[0].omega, 0.0, 1e-12);
  EXPECT_NEAR(peaks[0].height, 2.0 / g, 0.02);
}

TEST(SpinPsd, FindsSidePeaks) {
  std::vector<double> tau(4096);
  std::vector<Complex> c(4096);
  for (std::size_t i = 0; i < tau.size(); ++i) {
    tau[i] = 0.01 * static_cast<double>(i);
    c[i] = std::exp(-0.2 * tau[i]) * (0.5 + 0.5 * std::cos(20.0 * tau[i]));
  }
  const auto peaks = find_peaks(spin_psd(tau, c), 0.05);
  ASSERT_EQ(peaks.size(), 3u);
  EXPECT_NEAR(peaks[0].omega, -20.0, 0.2);
  EXPECT_NEAR(peaks[1].omega, 0.0, 1e-12);
  EXPECT_NEAR(peaks[2].omega, 20.0, 0.2);
}

TEST(SpinPsd, Errors) {
  EXPECT_THROW((void)spin_psd(std::vector<double>{0.0, 0.1, 0.3}, std::vector<double>{1, 1, 1}), ConfigError);
  EXPECT_THROW((void)spin_psd(std::vector<double>{0.0, 0.1}, std::vector<double>{1}), ConfigError);
}

}  // namespace
}  // namespace oising
