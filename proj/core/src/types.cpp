#include "oising/types.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <numbers>

namespace oising {

void ModelParams::validate() const {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw ConfigError("n_qubits must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                      std::to_string(n_qubits));
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(epsilon) || !finite(lambda) || !finite(gamma) || !finite(f0) || !finite(t_max)) {
    throw ConfigError("model parameters must be finite");
  }
  if (epsilon <= 0.0) throw ConfigError("epsilon must be > 0");
  if (lambda < 0.0) throw ConfigError("lambda must be >= 0");
  if (gamma < 0.0) throw ConfigError("gamma must be >= 0");
  if (t_max <= 0.0) throw ConfigError("t_max must be > 0");
  // The Nyquist frequency pi*f0 must exceed both system frequencies.
  if (!(std::numbers::pi * f0 > epsilon) || !(std::numbers::pi * f0 > lambda)) {
    throw ConfigError("sampling frequency too low: need pi*f0 > epsilon and pi*f0 > lambda");
  }
}

namespace {
void default_handler(const std::string& message) { std::cerr << "warning: " << message << '\n'; }
std::atomic<WarningHandler> g_handler{&default_handler};
}  // namespace

void set_warning_handler(WarningHandler handler) {
  g_handler.store(handler ? handler : &default_handler);
}

void warn(const std::string& message) { g_handler.load()(message); }

}  // namespace oising
