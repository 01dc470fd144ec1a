#pragma once

#include <vector>

#include "oising/algebra.hpp"
#include "oising/types.hpp"

namespace oising {

inline constexpr int kMaxLiouvillianQubits = 6;

/// Dense M = -L acting on row-major vectorized rho: mu = u1 * 2^N + u2.
struct Superoperator {
  CMatrix m;
  int n_qubits = 0;

  [[nodiscard]] Eigen::Index dim() const { return m.rows(); }
};

[[nodiscard]] CVector vectorize(const CMatrix& rho);
[[nodiscard]] CMatrix unvectorize(const CVector& v);

/// Throws ConfigError for N above kMaxLiouvillianQubits. At the cap a memory
/// estimate is emitted as a warning.
[[nodiscard]] Superoperator build_liouvillian(const ModelParams& params);

/// Eigenmodes of M sorted by (gamma, beta) ascending, where the eigenvalue of
/// M is gamma - i beta. Columns of d_inverse are right eigenvectors; d_matrix
/// is its inverse, so M = d_inverse * diag * d_matrix.
struct LiouvillianSpectrum {
  RVector gammas;
  RVector betas;
  CMatrix d_matrix;
  CMatrix d_inverse;
  int n_qubits = 0;
  double condition_number = 0.0;
  bool ill_conditioned = false;

  [[nodiscard]] CVector eigenvalues() const;
};

[[nodiscard]] LiouvillianSpectrum liouvillian_spectrum(const Superoperator& m);

/// The gamma_0 mode as a density matrix. Throws NumericError when more than one
/// mode has |eigenvalue| below the degeneracy tolerance.
[[nodiscard]] CMatrix stationary_state(const LiouvillianSpectrum& spec);

/// d_inverse exp(-E t) d_matrix vec(rho0), reshaped.
[[nodiscard]] CMatrix propagate_spectral(const CMatrix& rho0, const LiouvillianSpectrum& spec, double t);

struct MetastabilityRow {
  double lambda = 0.0;
  std::vector<double> gammas;  // lowest modes
  std::vector<double> betas;
};

struct InitialStateValue {
  double amplitude = 0.0;
  double phase = 0.0;
  double m_ms = 0.0;
};

struct MetastabilityScan {
  std::vector<MetastabilityRow> rows;
  /// Filled when an (A, phi) grid is requested; evaluated at the last lambda.
  std::vector<InitialStateValue> initial_state_map;
};

/// Lowest `modes` rates per lambda (N <= 5), plus m(t_max) from spectral
/// propagation for every (A, phi) product state in the given grids.
[[nodiscard]] MetastabilityScan metastability_scan(const ModelParams& params,
                                                   const std::vector<double>& lambda_grid,
                                                   int modes = 8,
                                                   const std::vector<double>& amplitudes = {},
                                                   const std::vector<double>& phases = {});

}  // namespace oising
