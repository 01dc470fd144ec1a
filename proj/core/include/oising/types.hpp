#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace oising {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Dense complex operator on the 2^N-dimensional spin space.
using DenseOperator = CMatrix;
/// Pure state amplitudes in the product (spin up/down) basis.
using StateVector = CVector;

inline constexpr Complex kI{0.0, 1.0};

/// Invalid input: bad parameters, malformed configuration, contract violations
/// by the caller. The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical contract failed at run time (trace drift, norm drift,
/// ill-conditioned decomposition). The CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Physical knobs of the open Ising model in reduced units (hbar = 1,
/// frequencies in units of the noise intensity, times in its inverse).
struct ModelParams {
  int n_qubits = 1;
  double epsilon = 10.0;
  double lambda = 0.0;
  double gamma = 1.0;
  double f0 = 500.0;
  double t_max = 10.0;

  /// Throws ConfigError when an invariant is broken.
  void validate() const;

  [[nodiscard]] std::size_t dim() const { return std::size_t{1} << n_qubits; }
};

inline constexpr int kMaxQubits = 12;

/// Bit mask of qubit k (1-based) in a product-basis index. Qubit 1 is the
/// most significant bit; a set bit means spin down.
[[nodiscard]] inline std::size_t qubit_mask(int k, int n_qubits) {
  return std::size_t{1} << (n_qubits - k);
}

/// <sigma^z_k> eigenvalue (+1 or -1) of basis state `index`.
[[nodiscard]] inline double spin_z(std::size_t index, int k, int n_qubits) {
  return (index & qubit_mask(k, n_qubits)) ? -1.0 : 1.0;
}

/// Diagnostic sink for non-fatal warnings. Defaults to stderr.
using WarningHandler = void (*)(const std::string&);
void set_warning_handler(WarningHandler handler);
void warn(const std::string& message);

}  // namespace oising
