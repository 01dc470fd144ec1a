#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oising/algebra.hpp"
#include "support.hpp"

namespace oising {
namespace {

ModelParams model(int n, double lambda = 0.0) {
  ModelParams p;
  p.n_qubits = n;
  p.lambda = lambda;
  return p;
}

TEST(Pauli, MatchesKroneckerConstruction) {
  for (int n = 1; n <= 4; ++n) {
    for (int k = 1; k <= n; ++k) {
      for (auto [axis, c] : {std::pair{Axis::x, 'x'}, {Axis::y, 'y'}, {Axis::z, 'z'}}) {
        const auto got = build_pauli(k, axis, model(n));
        EXPECT_LT((got - testing::kron_pauli(c, k, n)).cwiseAbs().maxCoeff(), 1e-15);
      }
    }
  }
}

TEST(Pauli, SquaresToIdentityAndAnticommutes) {
  const auto p = model(3);
  for (int k = 1; k <= 3; ++k) {
    const auto x = build_pauli(k, Axis::x, p);
    const auto y = build_pauli(k, Axis::y, p);
    const auto z = build_pauli(k, Axis::z, p);
    const CMatrix id = CMatrix::Identity(8, 8);
    EXPECT_LT((x * x - id).norm(), 1e-14);
    EXPECT_LT((y * y - id).norm(), 1e-14);
    EXPECT_LT((x * y + y * x).norm(), 1e-14);
    EXPECT_LT((x * y - kI * z).norm(), 1e-14);
  }
  // different slots commute
  EXPECT_LT((build_pauli(1, Axis::x, p) * build_pauli(2, Axis::z, p) -
             build_pauli(2, Axis::z, p) * build_pauli(1, Axis::x, p))
                .norm(),
            1e-14);
}

TEST(Pauli, RejectsBadSlot) {
  EXPECT_THROW((void)build_pauli(0, Axis::x, model(2)), ConfigError);
  EXPECT_THROW((void)build_pauli(3, Axis::x, model(2)), ConfigError);
}

TEST(Hamiltonian, MatchesKroneckerOracle) {
  for (int n = 1; n <= 5; ++n) {
    const auto p = model(n, 37.0);
    EXPECT_LT((build_ising_hamiltonian(p) - testing::kron_hamiltonian(p)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Hamiltonian, TwoQubitMatrix) {
  // -eps (Z1 + Z2) + (lambda/2) X1 X2 with eps = 10, lambda = 4
  const auto h = build_ising_hamiltonian(model(2, 4.0));
  EXPECT_DOUBLE_EQ(h(0, 0).real(), -20.0);
  EXPECT_DOUBLE_EQ(h(3, 3).real(), 20.0);
  EXPECT_DOUBLE_EQ(h(1, 1).real(), 0.0);
  EXPECT_DOUBLE_EQ(h(0, 3).real(), 2.0);
  EXPECT_DOUBLE_EQ(h(1, 2).real(), 2.0);
  EXPECT_DOUBLE_EQ(h(0, 1).real(), 0.0);
}

TEST(Hamiltonian, MatrixFreeTermsMatchDense) {
  const auto p = model(4, 23.0);
  const auto terms = IsingTerms::from(p);
  const auto h = build_ising_hamiltonian(p);
  const CMatrix a = testing::random_matrix(16, 3);
  CMatrix out;
  terms.apply_left(a, out);
  EXPECT_LT((out - h * a).cwiseAbs().maxCoeff(), 1e-12);
  terms.apply_right(a, out);
  EXPECT_LT((out - a * h).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Eigendecompose, ReconstructsAndSorts) {
  const auto h = build_ising_hamiltonian(model(4, 100.0));
  const auto spec = eigendecompose(h);
  for (Eigen::Index i = 1; i < spec.dim(); ++i) EXPECT_LE(spec.omegas(i - 1), spec.omegas(i) + 1e-10);
  const CMatrix rebuilt = spec.vectors * spec.omegas.cast<Complex>().asDiagonal() * spec.vectors.adjoint();
  EXPECT_LT((rebuilt - h).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((spec.vectors.adjoint() * spec.vectors - CMatrix::Identity(16, 16)).cwiseAbs().maxCoeff(), 1e-12);
  const CMatrix a = testing::random_matrix(16, 9);
  EXPECT_LT((spec.from_eigenbasis(spec.to_eigenbasis(a)) - a).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Eigendecompose, DeterministicPhaseConvention) {
  const auto spec = eigendecompose(build_ising_hamiltonian(model(3, 10.0)));
  for (Eigen::Index c = 0; c < spec.dim(); ++c) {
    for (Eigen::Index r = 0; r < spec.dim(); ++r) {
      const Complex v = spec.vectors(r, c);
      if (std::abs(v) > 1e-12) {
        EXPECT_GT(v.real(), 0.0);
        EXPECT_NEAR(v.imag(), 0.0, 1e-12);
        break;
      }
    }
  }
}

TEST(Eigendecompose, RejectsNonHermitian) {
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 1) = 1.0;
  EXPECT_THROW((void)eigendecompose(a), ConfigError);
}

TEST(Eigendecompose, UncoupledGroundStateIsAllUp) {
  const auto spec = eigendecompose(build_ising_hamiltonian(model(3)));
  EXPECT_NEAR(spec.omegas(0), -30.0, 1e-12);
  EXPECT_NEAR(std::abs(spec.ground_state()(0)), 1.0, 1e-12);
}

TEST(ProductState, NormalizedAndFactorized) {
  const auto p = model(3);
  const auto psi = preset_state("unpolarized", p);
  EXPECT_NEAR(psi.norm(), 1.0, 1e-14);
  // every spin (|up> - |down>)/sqrt 2: <sigma^x_k> = -1
  for (int k = 1; k <= 3; ++k) {
    const Complex x = psi.dot(build_pauli(k, Axis::x, p) * psi);
    EXPECT_NEAR(x.real(), -1.0, 1e-14);
  }
  const auto up = preset_state("polarized", p);
  EXPECT_NEAR(std::abs(up(0)), 1.0, 1e-15);
  EXPECT_THROW((void)preset_state("sideways", p), ConfigError);
}

TEST(ProductState, PerQubitAmplitudes) {
  const auto p = model(2);
  const std::vector<SpinState> spins{{0.0, 0.0}, {1.0, 0.0}};
  const auto psi = build_product_state(spins, p);
  // qubit 1 up, qubit 2 down -> index 0b01
  EXPECT_NEAR(std::abs(psi(1)), 1.0, 1e-15);
  EXPECT_THROW((void)build_product_state(std::vector<SpinState>{{0.0, 0.0}}, p), ConfigError);
  EXPECT_THROW((void)build_product_state(SpinState{1.5, 0.0}, p), ConfigError);
}

TEST(DensityMatrix, ValidatesInvariants) {
  EXPECT_NO_THROW((void)DensityMatrix::from_matrix(testing::random_density(4, 1)));
  CMatrix bad = testing::random_density(4, 2);
  bad(0, 0) += 0.1;
  EXPECT_THROW((void)DensityMatrix::from_matrix(bad), ConfigError);
  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW((void)DensityMatrix::from_matrix(neg), ConfigError);
  CMatrix nonherm = testing::random_density(2, 3);
  nonherm(0, 1) += 0.1;
  EXPECT_THROW((void)DensityMatrix::from_matrix(nonherm), ConfigError);
  const auto mixed = DensityMatrix::maximally_mixed(3);
  EXPECT_NEAR(mixed.matrix()(5, 5).real(), 0.125, 1e-15);
}

TEST(ModelParams, ValidationGuards) {
  ModelParams p;
  EXPECT_NO_THROW(p.validate());
  p.n_qubits = 0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = ModelParams{};
  p.epsilon = 0.0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = ModelParams{};
  p.lambda = -1.0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = ModelParams{};
  p.lambda = 2000.0;  // 2 pi f0 must exceed lambda
  EXPECT_THROW(p.validate(), ConfigError);
}

TEST(Helpers, QubitsForDim) {
  EXPECT_EQ(qubits_for_dim(8), 3);
  EXPECT_THROW((void)qubits_for_dim(6), ConfigError);
  EXPECT_DOUBLE_EQ(spin_z(0b10, 1, 2), -1.0);
  EXPECT_DOUBLE_EQ(spin_z(0b10, 2, 2), 1.0);
}

}  // namespace
}  // namespace oising
