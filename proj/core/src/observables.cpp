#include "oising/observables.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace oising {

void ObservableSeries::validate() const {
  if (times.size() != values.size()) throw ConfigError("series '" + name + "': length mismatch");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw ConfigError("series '" + name + "': times not ascending");
  }
}

double magnetization(const CMatrix& rho) {
  const int n = qubits_for_dim(rho.rows());
  double sum = 0.0;
  double imag = 0.0;
  for (Eigen::Index u = 0; u < rho.rows(); ++u) {
    double sz = 0.0;
    for (int k = 1; k <= n; ++k) sz += spin_z(static_cast<std::size_t>(u), k, n);
    sum += sz * rho(u, u).real();
    imag += sz * rho(u, u).imag();
  }
  if (std::abs(imag) > 1e-10 * n) warn("magnetization: imaginary residue " + std::to_string(imag / n));
  return sum / n;
}

double metastable_value(const ObservableSeries& series, double t_max) {
  series.validate();
  if (series.times.empty()) throw ConfigError("metastable_value: empty series");
  const double last = series.times.back();
  const double step = series.times.size() > 1 ? last - series.times[series.times.size() - 2] : 0.0;
  if (last < t_max - 0.5 * step - 1e-12 * std::max(1.0, t_max)) {
    throw ConfigError("metastable_value: series ends before t_max");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < series.times.size(); ++i) {
    if (std::abs(series.times[i] - t_max) < std::abs(series.times[best] - t_max)) best = i;
  }
  return series.values[best];
}

double ground_state_weight(const CMatrix& rho, const SpectralDecomposition& spec) {
  if (rho.rows() != spec.dim()) throw ConfigError("ground_state_weight: basis dimension mismatch");
  const CVector g = spec.vectors.col(0);
  return (g.adjoint() * rho * g)(0, 0).real();
}

Lifetime ground_state_lifetime(const ObservableSeries& w) {
  w.validate();
  if (w.times.empty()) throw ConfigError("ground_state_lifetime: empty series");
  const double target = std::exp(-1.0);
  for (std::size_t i = 1; i < w.values.size(); ++i) {
    const double a = w.values[i - 1];
    const double b = w.values[i];
    if (a > target && b <= target) {
      const double frac = (a - target) / (a - b);
      return {w.times[i - 1] + frac * (w.times[i] - w.times[i - 1]), false};
    }
  }
  return {w.times.back(), true};
}

Entropy entropy_details(const CMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho, Eigen::EigenvaluesOnly);
  const RVector& evals = solver.eigenvalues();
  Entropy out;
  out.min_eigenvalue = evals.size() ? evals(0) : 0.0;
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    const double p = evals(i);
    if (p < -1e-8) {
      out.clamped_weight += -p;
      continue;
    }
    if (p > 0.0) out.value -= p * std::log(p);
  }
  if (out.clamped_weight > 1e-6) {
    std::ostringstream msg;
    msg << "entropy: clamped negative weight " << out.clamped_weight << " exceeds 1e-6";
    warn(msg.str());
  }
  return out;
}

double von_neumann_entropy(const CMatrix& rho) { return entropy_details(rho).value; }

void check_observable_bounds(double m, double w, double s, int n_qubits, double t, double tol) {
  const double s_max = n_qubits * std::numbers::ln2;
  auto fail = [t](const std::string& what) {
    std::ostringstream msg;
    msg << what << " out of bounds at t=" << t;
    throw NumericError(msg.str());
  };
  if (!(std::abs(m) <= 1.0 + tol)) fail("magnetization");
  if (!(w >= -tol && w <= 1.0 + tol)) fail("ground-state weight");
  if (!(s >= -tol && s <= s_max + tol)) fail("entropy");
}

}  // namespace oising
