#include <gtest/gtest.h>

#include <cmath>

#include "oising/markovian.hpp"
#include "oising/nonmarkovian.hpp"
#include "oising/parallel.hpp"
#include "support.hpp"

namespace oising {
namespace {

ModelParams model(int n, double lambda, double t_max = 2.0) {
  ModelParams p;
  p.n_qubits = n;
  p.lambda = lambda;
  p.t_max = t_max;
  return p;
}

EvolutionGrid grid_for(const ModelParams& p, int stride = 50) {
  EvolutionGrid g;
  g.dt = 1.0 / p.f0;
  g.t_max = p.t_max;
  g.sample_stride = stride;
  return g;
}

noise::CorrelationKernel exponential_kernel(double dt, std::size_t len) {
  noise::CorrelationKernel k;
  k.dt = dt;
  for (std::size_t j = 0; j < len; ++j) k.kappa.push_back(std::exp(-static_cast<double>(j) * dt));
  return k;
}

TEST(Quadrature, WhiteKernelIsOne) {
  const auto k = noise::analytic_kernel(0.0, 1000, 500.0);
  RVector omegas(3);
  omegas << -5.0, 0.5, 20.0;
  KernelQuadrature q(k, omegas);
  for (int n = 0; n < 400; ++n) {
    EXPECT_LT((q.value() - CMatrix::Ones(3, 3)).cwiseAbs().maxCoeff(), 1e-12) << n;
    EXPECT_NEAR(q.enhancement(), 1.0, 1e-12);
    q.advance();
  }
  EXPECT_NEAR(q.time(), 400 * k.dt, 1e-12);
}

TEST(Quadrature, ExponentialKernelClosedForm) {
  // K(t) = 2 int_0^t exp(-s) exp(-i s) ds for omega_a - omega_b = 1
  const double dt = 1e-3;
  const auto k = exponential_kernel(dt, 4000);
  RVector omegas(2);
  omegas << 0.0, 1.0;
  KernelQuadrature q(k, omegas);
  for (int n = 1; n <= 3000; ++n) {
    q.advance();
    if (n % 500 != 0) continue;
    const double t = n * dt;
    const Complex z(1.0, 1.0);
    const Complex expected = 2.0 * (1.0 - std::exp(-z * t)) / z;
    EXPECT_LT(std::abs(q.value()(1, 0) - expected), 1e-6) << t;
    EXPECT_LT(std::abs(q.value()(0, 1) - std::conj(expected)), 1e-6) << t;
    EXPECT_NEAR(q.value()(0, 0).real(), 2.0 * (1.0 - std::exp(-t)), 1e-6);
    EXPECT_NEAR(q.enhancement(), 2.0 * (1.0 - std::exp(-t)), 1e-6);
  }
}

TEST(Quadrature, HermitianAndMatchesEnhancementFactor) {
  const auto p = model(3, 20.0);
  const auto spec = eigendecompose(build_ising_hamiltonian(p));
  const auto k = tcl_kernel(1.0, p);
  const auto km = build_kernel_matrix(k, spec, 0.5);
  EXPECT_LT((km.entries - km.entries.adjoint()).cwiseAbs().maxCoeff(), 1e-9 * km.entries.cwiseAbs().maxCoeff());
  const auto big_k = enhancement_factor(k, 0.5);
  EXPECT_NEAR(km.entries(2, 2).real(), big_k.back(), 1e-9 * big_k.back());
  EXPECT_NEAR(effective_rate(k, 0.5, 2.0), 2.0 * big_k.back(), 1e-9 * big_k.back());
  EXPECT_THROW((void)build_kernel_matrix(k, spec, 0.5005), ConfigError);
  EXPECT_THROW((void)enhancement_factor(k, 100.0), ConfigError);
}

TEST(MemoryOperator, HermitianForHermitianKernel) {
  const auto p = model(3, 20.0);
  const auto spec = eigendecompose(build_ising_hamiltonian(p));
  const auto x = rotated_sigma_x(spec, p);
  ASSERT_EQ(x.size(), 3u);
  const auto mem = build_memory_operator(build_kernel_matrix(tcl_kernel(-1.0, p), spec, 1.0), x);
  for (const auto& b : mem.b_k) EXPECT_LT((b - b.adjoint()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(TclRhs, WhiteNoiseIsLindblad) {
  const auto p = model(3, 30.0);
  const auto spec = eigendecompose(build_ising_hamiltonian(p));
  const auto x = rotated_sigma_x(spec, p);
  const auto mem = build_memory_operator(build_kernel_matrix(tcl_kernel(0.0, p), spec, 0.2), x);
  const CMatrix rho = testing::random_density(8, 4);
  const CMatrix got = tcl_rhs(spec.to_eigenbasis(rho), spec, x, mem, p);
  const CMatrix expected = spec.to_eigenbasis(lindblad_rhs(rho, p));
  EXPECT_LT((got - expected).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(TclRhs, TracelessForColoredKernels) {
  const auto p = model(3, 30.0);
  const auto spec = eigendecompose(build_ising_hamiltonian(p));
  const auto x = rotated_sigma_x(spec, p);
  for (double alpha : {1.0, -1.0}) {
    const auto mem = build_memory_operator(build_kernel_matrix(tcl_kernel(alpha, p), spec, 0.3), x);
    const CMatrix out = tcl_rhs(spec.to_eigenbasis(testing::random_density(8, 5)), spec, x, mem, p);
    EXPECT_LT(std::abs(out.trace()), 1e-9 * out.cwiseAbs().maxCoeff()) << alpha;
  }
}

TEST(TclEvolve, WhiteNoiseReproducesMarkovian) {
  for (int n = 2; n <= 4; ++n) {
    const auto p = model(n, 10.0);
    const auto g = grid_for(p);
    const auto rho0 = DensityMatrix::pure(preset_state("unpolarized", p));
    const auto tcl = evolve_nonmarkovian(rho0, p, 0.0, g);
    const auto lind = evolve_markovian(rho0, p, g);
    ASSERT_EQ(tcl.t.size(), lind.t.size());
    for (std::size_t i = 0; i < tcl.t.size(); ++i) {
      EXPECT_NEAR(tcl.m[i], lind.m[i], 1e-5) << n << " " << tcl.t[i];
      EXPECT_NEAR(tcl.gamma_eff[i], p.gamma, 1e-12);
    }
  }
}

// Exact average over noise realizations of the stochastic Hamiltonian
// -eps Z + sqrt(Gamma) eta(t) X for one spin starting polarized.
std::vector<double> monte_carlo_m(double alpha, const ModelParams& p, std::size_t realizations,
                                  std::size_t stride, std::vector<double>& se) {
  const noise::CorrelationKernel k = tcl_kernel(alpha, p);
  const std::size_t len = 2 * (k.size() / 2);
  const std::size_t steps = static_cast<std::size_t>(std::llround(p.t_max * p.f0));
  const double dt = 1.0 / p.f0;
  const std::size_t samples = steps / stride + 1;
  std::vector<double> sum(samples, 0.0), sum_sq(samples, 0.0);
  for (std::size_t r = 0; r < realizations; ++r) {
    const auto eta = noise::shape_spectrum(noise::generate_white(len, derive_seed(77, r), p.f0), alpha);
    Complex up = 1.0, down = 0.0;
    for (std::size_t n = 0; n <= steps; ++n) {
      if (n % stride == 0) {
        const double m = std::norm(up) - std::norm(down);
        sum[n / stride] += m;
        sum_sq[n / stride] += m * m;
      }
      if (n == steps) break;
      // H = a_z Z + a_x X, exp(-i H dt) = cos(r dt) - i sin(r dt) H / r
      const double az = -p.epsilon;
      const double ax = std::sqrt(p.gamma) * eta.samples[n];
      const double rr = std::hypot(az, ax);
      const Complex c = std::cos(rr * dt);
      const Complex s = Complex(0.0, -std::sin(rr * dt) / rr);
      const Complex nu = c * up + s * (az * up + ax * down);
      const Complex nd = c * down + s * (ax * up - az * down);
      up = nu;
      down = nd;
    }
  }
  std::vector<double> mean(samples);
  se.assign(samples, 0.0);
  const auto cnt = static_cast<double>(realizations);
  for (std::size_t i = 0; i < samples; ++i) {
    mean[i] = sum[i] / cnt;
    se[i] = std::sqrt(std::max(0.0, sum_sq[i] / cnt - mean[i] * mean[i]) / (cnt - 1));
  }
  return mean;
}

TEST(TclEvolve, AgreesWithStochasticHamiltonian) {
  auto p = model(1, 0.0, 1.0);
  const auto g = grid_for(p, 50);
  const auto rho0 = DensityMatrix::pure(preset_state("polarized", p));
  for (double alpha : {0.0, -1.0}) {
    std::vector<double> se;
    const auto mc = monte_carlo_m(alpha, p, 400, 50, se);
    const auto tcl = evolve_nonmarkovian(rho0, p, alpha, g);
    ASSERT_EQ(mc.size(), tcl.m.size());
    for (std::size_t i = 0; i < mc.size(); ++i) {
      // second-order truncation error is O((Gamma/eps)^2)
      EXPECT_NEAR(tcl.m[i], mc[i], 4.0 * se[i] + 0.01) << alpha << " t=" << tcl.t[i];
    }
  }
}

TEST(TclEvolve, GuardsAndOptions) {
  auto p = model(2, 10.0, 1.0);
  const auto rho0 = DensityMatrix::pure(preset_state("unpolarized", p));
  auto g = grid_for(p);
  auto strong = p;
  strong.epsilon = 1.0;
  EXPECT_THROW((void)evolve_nonmarkovian(rho0, strong, 0.0, g), ConfigError);
  TclOptions force;
  force.allow_strong_noise = true;
  EXPECT_NO_THROW((void)evolve_nonmarkovian(rho0, strong, 0.0, g, force));
  auto bad = g;
  bad.dt = 1e-3;
  EXPECT_THROW((void)evolve_nonmarkovian(rho0, p, 0.0, bad), ConfigError);
  TclOptions zero;
  zero.refine = 0;
  EXPECT_THROW((void)evolve_nonmarkovian(rho0, p, 0.0, g, zero), ConfigError);
  EXPECT_THROW((void)evolve_nonmarkovian(DensityMatrix::maximally_mixed(3), p, 0.0, g), ConfigError);
}

TEST(TclEvolve, RefinementConverges) {
  const auto p = model(3, 10.0);
  const auto g = grid_for(p);
  const auto rho0 = DensityMatrix::pure(preset_state("unpolarized", p));
  TclOptions one, two;
  two.refine = 2;
  const auto a = evolve_nonmarkovian(rho0, p, -1.0, g, one);
  const auto b = evolve_nonmarkovian(rho0, p, -1.0, g, two);
  ASSERT_EQ(a.t.size(), b.t.size());
  for (std::size_t i = 0; i < a.t.size(); ++i) {
    EXPECT_NEAR(a.t[i], b.t[i], 1e-12);
    EXPECT_NEAR(a.m[i], b.m[i], 1e-4) << a.t[i];
  }
}

TEST(EffectiveRate, NoiseColorOrdering) {
  const auto p = model(1, 0.0, 2.0);
  const double white = effective_rate(tcl_kernel(0.0, p), 1.0);
  const double pink = effective_rate(tcl_kernel(1.0, p), 1.0);
  const double blue = effective_rate(tcl_kernel(-1.0, p), 1.0);
  EXPECT_NEAR(white, 1.0, 1e-12);
  EXPECT_GT(pink, white);
  EXPECT_GT(blue, 0.0);
  EXPECT_LT(blue, white);
}

}  // namespace
}  // namespace oising
