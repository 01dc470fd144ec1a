#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "oising/types.hpp"

namespace oising {

enum class Axis { x, y, z, minus };

/// Single-spin operator on slot k (1-based) tensored with identities:
/// I (x) ... (x) sigma_axis (x) ... (x) I in the spin product basis.
[[nodiscard]] DenseOperator build_pauli(int k, Axis axis, const ModelParams& params);

/// H_s = -epsilon sum_k sigma^z_k + (lambda/N) sum_{k<k'} sigma^x_k sigma^x_k'.
[[nodiscard]] DenseOperator build_ising_hamiltonian(const ModelParams& params);

/// Matrix-free form of the Ising Hamiltonian: a diagonal plus bit-flip pairs.
/// (H rho)_{ij} = diagonal_i rho_ij + coupling * sum_m rho_{i^m, j}.
struct IsingTerms {
  RVector diagonal;
  double coupling = 0.0;
  std::vector<std::size_t> pair_masks;

  [[nodiscard]] static IsingTerms from(const ModelParams& params);
  /// out = H * in
  void apply_left(const CMatrix& in, CMatrix& out) const;
  /// out = in * H
  void apply_right(const CMatrix& in, CMatrix& out) const;
};

/// Eigenpairs of a Hermitian operator. Columns of `vectors` are the
/// eigenstates |alpha>, sorted by ascending eigenvalue.
struct SpectralDecomposition {
  RVector omegas;
  CMatrix vectors;

  [[nodiscard]] Eigen::Index dim() const { return omegas.size(); }
  [[nodiscard]] CVector ground_state() const { return vectors.col(0); }
  /// V^dagger A V
  [[nodiscard]] CMatrix to_eigenbasis(const CMatrix& a) const;
  /// V A V^dagger
  [[nodiscard]] CMatrix from_eigenbasis(const CMatrix& a) const;
};

/// Rejects input whose Hermiticity defect exceeds 1e-10. Each eigenvector has
/// its first non-negligible component rotated real-positive; degenerate
/// eigenvalues are ordered lexicographically by the real parts of their vectors.
[[nodiscard]] SpectralDecomposition eigendecompose(const DenseOperator& h);

/// Per-qubit state sqrt(1-A^2)|up> + A e^{i phi}|down>.
struct SpinState {
  double amplitude = 0.0;
  double phase = 0.0;
};

[[nodiscard]] StateVector build_product_state(std::span<const SpinState> spins,
                                              const ModelParams& params);
/// Same single-spin state on every qubit.
[[nodiscard]] StateVector build_product_state(SpinState spin, const ModelParams& params);

/// "unpolarized" (every spin in (|up> - |down>)/sqrt 2), "polarized" (all up)
/// or "ground" (lowest eigenstate of H_s).
[[nodiscard]] StateVector preset_state(std::string_view name, const ModelParams& params);

/// Density matrix with validated invariants: Hermitian and unit trace within
/// 1e-10, smallest eigenvalue >= -1e-8.
class DensityMatrix {
 public:
  [[nodiscard]] static DensityMatrix from_matrix(CMatrix m);
  [[nodiscard]] static DensityMatrix pure(const StateVector& psi);
  [[nodiscard]] static DensityMatrix maximally_mixed(int n_qubits);

  [[nodiscard]] const CMatrix& matrix() const { return m_; }
  [[nodiscard]] Eigen::Index dim() const { return m_.rows(); }

 private:
  explicit DensityMatrix(CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

[[nodiscard]] double hermiticity_error(const CMatrix& m);

/// Smallest eigenvalue of a Hermitian matrix (lower triangle referenced).
[[nodiscard]] double min_eigenvalue(const CMatrix& m);

/// Number of qubits for a 2^N dimension; throws ConfigError otherwise.
[[nodiscard]] int qubits_for_dim(Eigen::Index dim);

}  // namespace oising
