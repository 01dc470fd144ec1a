#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "oising/types.hpp"

namespace oising::circuit {

/// SI constants used for the circuit mapping.
struct Constants {
  static constexpr double cooper_pair_charge = 3.204353e-19;  // 2e, coulomb
  static constexpr double hbar = 1.054572e-34;                // J s
};

/// Charge-qubit array: identical gate, junction and coupling capacitances.
struct CircuitParams {
  double c_g = 0.0;  // farad
  double c_j = 0.0;  // farad
  double c_c = 0.0;  // farad; zero means decoupled boxes
  double e_j = 0.0;  // joule
  int n_qubits = 1;

  /// Throws ConfigError for non-positive c_g/c_j/e_j, negative c_c or N < 1.
  void validate() const;
  [[nodiscard]] double c_sigma() const { return c_g + c_j + c_c; }
};

/// Model frequencies in rad/s and the charging energy in joules.
struct CircuitModel {
  double epsilon = 0.0;
  double lambda = 0.0;
  double e_c = 0.0;
  double coupling_energy_v = 0.0;  // V; infinite when c_c == 0
  std::vector<std::string> warnings;
};

/// epsilon = E_J / 2hbar, E_C = (2e)^2 / 2C_sigma, lambda = E_C^2 / (2 hbar V).
/// lambda is also evaluated as E_C C_c / (2 hbar (C_g + C_j)); the two must
/// agree to 1e-12 relative or a NumericError is raised.
[[nodiscard]] CircuitModel circuit_to_model(const CircuitParams& c);

/// Gate-charge fluctuation delta N_{g,k}(t), one row per qubit.
struct GateNoiseTrace {
  std::vector<std::vector<double>> delta_n_g;
  double dt = 0.0;  // seconds
};

struct EtaResult {
  std::vector<std::vector<double>> eta;
  double gamma = 0.0;  // s^-1
};

/// Maps gate-charge noise to the dimensionless fields eta_k with
/// hbar sqrt(Gamma/2) eta_k = (E_C/2)[dN_k + (E_C/(N V)) sum_k' dN_k'].
/// Gamma is fixed by requiring the pooled PSD of eta to equal 1 at the
/// Nyquist frequency. `large_n` drops the collective term.
[[nodiscard]] EtaResult gate_noise_to_eta(const GateNoiseTrace& trace, const CircuitParams& c,
                                          bool large_n = false);

/// Reads rows "c_g,c_j,c_c,e_j,n_qubits" (header required).
[[nodiscard]] std::vector<CircuitParams> read_circuit_csv(std::istream& in);

/// Reduced-unit model parameters: frequencies divided by gamma_si,
/// f0 = f0_si / gamma_si.
[[nodiscard]] ModelParams to_model_params(const CircuitParams& c, double gamma_si, double f0_si,
                                          double t_max);

}  // namespace oising::circuit
