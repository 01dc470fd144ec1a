#include "oising/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>

#include "fft.hpp"

namespace oising::circuit {

void CircuitParams::validate() const {
  if (!(c_g > 0.0) || !(c_j > 0.0)) throw ConfigError("capacitances c_g and c_j must be > 0");
  if (!(c_c >= 0.0)) throw ConfigError("coupling capacitance c_c must be >= 0");
  if (!(e_j > 0.0)) throw ConfigError("Josephson energy e_j must be > 0");
  if (n_qubits < 1) throw ConfigError("n_qubits must be >= 1");
}

CircuitModel circuit_to_model(const CircuitParams& c) {
  c.validate();
  constexpr double q = Constants::cooper_pair_charge;
  constexpr double hbar = Constants::hbar;

  CircuitModel out;
  const double c_sigma = c.c_sigma();
  out.e_c = q * q / (2.0 * c_sigma);
  out.epsilon = c.e_j / (2.0 * hbar);

  // Closed form: lambda = E_C C_c / (2 hbar (C_g + C_j)).
  const double lambda_closed = out.e_c / (2.0 * hbar) * c.c_c / (c.c_g + c.c_j);
  if (c.c_c == 0.0) {
    out.coupling_energy_v = std::numeric_limits<double>::infinity();
    out.lambda = 0.0;
  } else {
    out.coupling_energy_v = q * q / (2.0 * c.c_c) * (1.0 - c.c_c / c_sigma);
    out.lambda = out.e_c * out.e_c / (2.0 * hbar * out.coupling_energy_v);
  }
  const double scale = std::max(std::abs(out.lambda), std::abs(lambda_closed));
  if (scale > 0.0 && std::abs(out.lambda - lambda_closed) > 1e-12 * scale) {
    throw NumericError("coupling-strength formulas disagree");
  }

  if (!(c.e_j < out.e_c)) {
    out.warnings.push_back("E_J is not small compared to E_C; two-state charge picture is doubtful");
  } else if (c.e_j > 0.1 * out.e_c) {
    out.warnings.push_back("E_J / E_C = " + std::to_string(c.e_j / out.e_c) +
                           " is not << 1");
  }
  return out;
}

EtaResult gate_noise_to_eta(const GateNoiseTrace& trace, const CircuitParams& c, bool large_n) {
  const auto model = circuit_to_model(c);
  const std::size_t n = trace.delta_n_g.size();
  if (n == 0) throw ConfigError("gate noise trace has no qubits");
  if (static_cast<int>(n) != c.n_qubits) throw ConfigError("trace qubit count != n_qubits");
  if (!(trace.dt > 0.0)) throw ConfigError("trace dt must be > 0");
  const std::size_t len = trace.delta_n_g.front().size();
  if (len < 2) throw ConfigError("gate noise trace too short");
  for (const auto& row : trace.delta_n_g) {
    if (row.size() != len) throw ConfigError("all qubit traces must share one length");
  }

  // E_C / V = C_c / (C_g + C_j); zero when uncoupled.
  const double ec_over_v = c.c_c == 0.0 ? 0.0 : model.e_c / model.coupling_energy_v;
  const double prefactor = model.e_c / (2.0 * Constants::hbar);

  std::vector<std::vector<double>> u(n, std::vector<double>(len));
  for (std::size_t t = 0; t < len; ++t) {
    double collective = 0.0;
    if (!large_n) {
      for (std::size_t k = 0; k < n; ++k) collective += trace.delta_n_g[k][t];
      collective *= ec_over_v / static_cast<double>(n);
    }
    for (std::size_t k = 0; k < n; ++k) u[k][t] = prefactor * (trace.delta_n_g[k][t] + collective);
  }

  // Pooled PSD near Nyquist (top 5% of the band), two-sided, white = var*dt.
  const std::size_t len_even = len - (len % 2);
  const std::size_t nyq = len_even / 2;
  const std::size_t lo = std::max<std::size_t>(1, nyq - std::max<std::size_t>(1, nyq / 20));
  double acc = 0.0;
  std::size_t count = 0;
  for (const auto& row : u) {
    std::vector<double> seg(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(len_even));
    const auto spec = detail::fft_forward_real(seg);
    for (std::size_t j = lo; j <= nyq; ++j) {
      acc += std::norm(spec[j]) * trace.dt / static_cast<double>(len_even);
      ++count;
    }
  }
  const double s_nyquist = acc / static_cast<double>(count);
  if (!(s_nyquist > 0.0)) throw NumericError("gate noise has zero variance; Gamma undefined");

  EtaResult out;
  out.gamma = 2.0 * s_nyquist;
  const double inv = 1.0 / std::sqrt(out.gamma / 2.0);
  out.eta = std::move(u);
  for (auto& row : out.eta) {
    for (double& v : row) v *= inv;
  }
  return out;
}

std::vector<CircuitParams> read_circuit_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<CircuitParams> rows;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(trim(f));
    if (!header_seen) {
      const std::vector<std::string> expected{"c_g", "c_j", "c_c", "e_j", "n_qubits"};
      if (fields != expected) {
        throw ConfigError("line " + std::to_string(line_no) +
                          ": expected header c_g,c_j,c_c,e_j,n_qubits");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 5) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 5 fields");
    }
    try {
      CircuitParams p;
      p.c_g = std::stod(fields[0]);
      p.c_j = std::stod(fields[1]);
      p.c_c = std::stod(fields[2]);
      p.e_j = std::stod(fields[3]);
      p.n_qubits = std::stoi(fields[4]);
      p.validate();
      rows.push_back(p);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const std::exception&) {
      throw ConfigError("line " + std::to_string(line_no) + ": malformed number");
    }
  }
  if (!header_seen) throw ConfigError("circuit CSV is empty");
  return rows;
}

ModelParams to_model_params(const CircuitParams& c, double gamma_si, double f0_si, double t_max) {
  if (!(gamma_si > 0.0)) throw ConfigError("gamma must be > 0");
  const auto model = circuit_to_model(c);
  ModelParams p;
  p.n_qubits = c.n_qubits;
  p.epsilon = model.epsilon / gamma_si;
  p.lambda = model.lambda / gamma_si;
  p.gamma = 1.0;
  p.f0 = f0_si / gamma_si;
  p.t_max = t_max;
  p.validate();
  return p;
}

}  // namespace oising::circuit
