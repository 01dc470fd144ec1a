#pragma once

#include <map>
#include <string>
#include <vector>

#include "oising/algebra.hpp"
#include "oising/types.hpp"

namespace oising {

/// A sampled scalar observable with the run parameters that produced it.
struct ObservableSeries {
  std::vector<double> times;
  std::vector<double> values;
  std::string name;
  std::map<std::string, std::string> meta;

  /// Throws ConfigError unless times ascend and lengths match.
  void validate() const;
};

/// m = N^-1 sum_k <sigma^z_k>.
[[nodiscard]] double magnetization(const CMatrix& rho);

/// Value at the grid point nearest t_max.
[[nodiscard]] double metastable_value(const ObservableSeries& series, double t_max);

/// <alpha=0| rho |alpha=0> with rho in the product basis.
[[nodiscard]] double ground_state_weight(const CMatrix& rho, const SpectralDecomposition& spec);

struct Lifetime {
  double tau = 0.0;
  /// No 1/e crossing inside the series; tau is then the last sample time.
  bool censored = false;
};

/// First time w(t) falls to 1/e, linearly interpolated between samples.
[[nodiscard]] Lifetime ground_state_lifetime(const ObservableSeries& w);

struct Entropy {
  double value = 0.0;
  /// Total magnitude of eigenvalues below -1e-8 that were clamped to zero.
  double clamped_weight = 0.0;
  double min_eigenvalue = 0.0;
};

/// -Tr(rho ln rho) from the eigenvalues of a Hermitian rho. Clamped weight
/// above 1e-6 raises a warning.
[[nodiscard]] Entropy entropy_details(const CMatrix& rho);
[[nodiscard]] double von_neumann_entropy(const CMatrix& rho);

/// Throws NumericError when |m| > 1, w outside [0, 1] or S outside
/// [0, N ln 2], each with slack tol.
void check_observable_bounds(double m, double w, double s, int n_qubits, double t, double tol = 1e-6);

}  // namespace oising
