#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oising/liouvillian.hpp"
#include "oising/markovian.hpp"
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

bool by_rate(const Complex& a, const Complex& b) {
  if (std::abs(a.real() - b.real()) > 1e-7) return a.real() < b.real();
  return a.imag() < b.imag();
}

TEST(Vectorize, RowMajorRoundTrip) {
  const CMatrix a = testing::random_matrix(4, 1);
  const CVector v = vectorize(a);
  EXPECT_EQ(v(1 * 4 + 2), a(1, 2));
  EXPECT_EQ(unvectorize(v), a);
  EXPECT_THROW((void)unvectorize(CVector::Zero(5)), ConfigError);
}

TEST(Superoperator, IsMinusTheGenerator) {
  for (int n = 1; n <= 3; ++n) {
    const auto p = model(n, 20.0, 0.8);
    const auto m = build_liouvillian(p);
    EXPECT_EQ(m.dim(), Eigen::Index{1} << (2 * n));
    const CMatrix rho = testing::random_matrix(Eigen::Index{1} << n, 4 + n);
    const CVector got = m.m * vectorize(rho);
    EXPECT_LT((got + vectorize(lindblad_rhs(rho, p))).cwiseAbs().maxCoeff(), 1e-11) << n;
  }
}

TEST(Superoperator, QubitCap) {
  EXPECT_THROW((void)build_liouvillian(model(kMaxLiouvillianQubits + 1, 0.0)), ConfigError);
}

TEST(Spectrum, SingleSpinClosedForm) {
  const auto p = model(1, 0.0, 1.5);
  const auto spec = liouvillian_spectrum(build_liouvillian(p));
  const double beta = std::sqrt(4.0 * p.epsilon * p.epsilon - p.gamma * p.gamma);
  ASSERT_EQ(spec.gammas.size(), 4);
  EXPECT_NEAR(spec.gammas(0), 0.0, 1e-10);
  EXPECT_NEAR(spec.gammas(1), p.gamma, 1e-10);
  EXPECT_NEAR(spec.gammas(2), p.gamma, 1e-10);
  EXPECT_NEAR(spec.gammas(3), 2.0 * p.gamma, 1e-10);
  EXPECT_NEAR(std::abs(spec.betas(1)), beta, 1e-10);
  EXPECT_NEAR(spec.betas(1), -spec.betas(2), 1e-10);
  EXPECT_NEAR(spec.betas(3), 0.0, 1e-10);
}

TEST(Spectrum, UncoupledIsSumOfSingleSpinModes) {
  // Each spin contributes one of {0, Gamma +- i beta, 2 Gamma}.
  const int n = 3;
  const auto p = model(n, 0.0, 0.7);
  const double beta = std::sqrt(4.0 * p.epsilon * p.epsilon - p.gamma * p.gamma);
  const std::vector<Complex> single{0.0, {p.gamma, beta}, {p.gamma, -beta}, 2.0 * p.gamma};
  std::vector<Complex> oracle{0.0};
  for (int k = 0; k < n; ++k) {
    std::vector<Complex> next;
    for (const auto& a : oracle) {
      for (const auto& b : single) next.push_back(a + b);
    }
    oracle = next;
  }
  const auto spec = liouvillian_spectrum(build_liouvillian(p));
  const CVector ev = spec.eigenvalues();
  std::vector<Complex> got(ev.data(), ev.data() + ev.size());
  // eigenvalue of M is gamma - i beta; compare as gamma + i beta' with beta' = -beta
  for (auto& g : got) g = {g.real(), -g.imag()};
  std::sort(got.begin(), got.end(), by_rate);
  std::sort(oracle.begin(), oracle.end(), by_rate);
  ASSERT_EQ(got.size(), oracle.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_LT(std::abs(got[i] - oracle[i]), 1e-8) << i;
  EXPECT_NEAR(spec.gammas(spec.gammas.size() - 1), 2.0 * n * p.gamma, 1e-9);
  EXPECT_NEAR(spec.gammas(0), 0.0, 1e-10);
}

TEST(Spectrum, SortedAndNonNegative) {
  const auto spec = liouvillian_spectrum(build_liouvillian(model(3, 50.0)));
  for (Eigen::Index i = 0; i < spec.gammas.size(); ++i) {
    EXPECT_GT(spec.gammas(i), -1e-9);
    if (i > 0) EXPECT_LE(spec.gammas(i - 1), spec.gammas(i) + 1e-9);
  }
  EXPECT_GT(spec.gammas(1), 1e-6);  // unique stationary mode
  EXPECT_FALSE(spec.ill_conditioned);
}

TEST(Spectrum, StationaryStateIsMaximallyMixed) {
  const auto spec = liouvillian_spectrum(build_liouvillian(model(3, 30.0)));
  const CMatrix rho = stationary_state(spec);
  EXPECT_LT((rho - CMatrix::Identity(8, 8) / 8.0).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Spectrum, PropagationMatchesDenseExponential) {
  const auto p = model(3, 40.0);
  const auto spec = liouvillian_spectrum(build_liouvillian(p));
  const CMatrix rho0 = testing::random_density(8, 3);
  for (double t : {0.0, 0.1, 1.0, 4.0}) {
    const CMatrix expected = testing::kron_propagate(p, rho0, t);
    EXPECT_LT((propagate_spectral(rho0, spec, t) - expected).cwiseAbs().maxCoeff(), 1e-9) << t;
  }
}

TEST(Scan, RowsAndInitialStateMap) {
  auto p = model(2, 0.0);
  p.t_max = 5.0;
  // the map is evaluated at the last lambda, here uncoupled: m = +-exp(-2 t)
  const auto scan = metastability_scan(p, {10.0, 0.0}, 4, {0.0, 1.0}, {0.0});
  ASSERT_EQ(scan.rows.size(), 2u);
  EXPECT_EQ(scan.rows[0].gammas.size(), 4u);
  EXPECT_NEAR(scan.rows[1].gammas[0], 0.0, 1e-10);
  ASSERT_EQ(scan.initial_state_map.size(), 2u);
  EXPECT_NEAR(scan.initial_state_map[0].m_ms, std::exp(-10.0), 1e-10);
  EXPECT_NEAR(scan.initial_state_map[1].m_ms, -std::exp(-10.0), 1e-10);
  EXPECT_THROW((void)metastability_scan(model(6, 0.0), {0.0}), ConfigError);
}

}  // namespace
}  // namespace oising
