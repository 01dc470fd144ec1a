#include "oising/nonmarkovian.hpp"

#include <cmath>
#include <sstream>

#include "sampling.hpp"

namespace oising {

namespace {

std::size_t grid_index(double t, double dt, const char* what) {
  if (t < 0.0) throw ConfigError(std::string(what) + ": t must be >= 0");
  const double r = t / dt;
  const double idx = std::round(r);
  if (std::abs(r - idx) > 1e-9 * std::max(1.0, r)) {
    throw ConfigError(std::string(what) + ": t is not on the noise grid");
  }
  return static_cast<std::size_t>(idx);
}

}  // namespace

KernelQuadrature::KernelQuadrature(const noise::CorrelationKernel& kernel, const RVector& omegas)
    : kappa_(kernel.kappa), dt_(kernel.dt) {
  if (!(dt_ > 0.0)) throw ConfigError("kernel dt must be > 0");
  if (kappa_.empty()) throw ConfigError("correlation kernel is empty");
  const Eigen::Index d = omegas.size();
  delta_omega_.resize(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) delta_omega_(a, b) = omegas(a) - omegas(b);
  }
  value_ = CMatrix::Constant(d, d, Complex(kappa_[0] * dt_, 0.0));
  enhancement_ = kappa_[0] * dt_;
}

void KernelQuadrature::accumulate(std::size_t lag) {
  if (lag >= kappa_.size()) throw ConfigError("correlation kernel shorter than the evolution horizon");
  const double c = dt_ * kappa_[lag];
  if (c == 0.0) return;
  const double s = static_cast<double>(lag) * dt_;
  const Eigen::Index d = value_.rows();
  for (Eigen::Index b = 0; b < d; ++b) {
    for (Eigen::Index a = 0; a < d; ++a) {
      const double phase = -delta_omega_(a, b) * s;
      value_(a, b) += c * Complex(std::cos(phase), std::sin(phase));
    }
  }
  enhancement_ += c;
}

void KernelQuadrature::advance() {
  // Lag 0 already carries its full weight.
  if (panel_ > 0) accumulate(panel_);
  accumulate(panel_ + 1);
  ++panel_;
}

KernelMatrix build_kernel_matrix(const noise::CorrelationKernel& kernel,
                                 const SpectralDecomposition& spec, double t) {
  const std::size_t steps = grid_index(t, kernel.dt, "build_kernel_matrix");
  KernelQuadrature q(kernel, spec.omegas);
  for (std::size_t n = 0; n < steps; ++n) q.advance();
  return {t, q.value()};
}

std::vector<CMatrix> rotated_sigma_x(const SpectralDecomposition& spec, const ModelParams& params) {
  std::vector<CMatrix> out;
  for (int k = 1; k <= params.n_qubits; ++k) {
    out.push_back(spec.to_eigenbasis(build_pauli(k, Axis::x, params)));
  }
  return out;
}

MemoryOperator build_memory_operator(const KernelMatrix& k, const std::vector<CMatrix>& x_eigen) {
  MemoryOperator out;
  out.t = k.t;
  for (const auto& x : x_eigen) {
    if (x.rows() != k.entries.rows()) throw ConfigError("memory operator: basis mismatch");
    out.b_k.push_back(x.cwiseProduct(k.entries));
  }
  return out;
}

namespace {

/// Dissipative part -(Gamma/2) [P rho + rho P^dag - (Y + Y^dag)] with
/// P = sum X_k B_k and Y = sum X_k rho B_k.
class TclDissipator {
 public:
  TclDissipator(const std::vector<CMatrix>& x_eigen, double gamma)
      : x_(x_eigen), gamma_(gamma), d_(x_eigen.front().rows()) {
    stacked_.resize(d_ * static_cast<Eigen::Index>(x_.size()), d_);
    for (std::size_t k = 0; k < x_.size(); ++k) {
      stacked_.middleRows(static_cast<Eigen::Index>(k) * d_, d_) = x_[k];
    }
  }

  struct Coefficients {
    std::vector<CMatrix> b;
    CMatrix p;
  };

  [[nodiscard]] Coefficients coefficients(const CMatrix& kernel) const {
    Coefficients c;
    c.p = CMatrix::Zero(d_, d_);
    for (const auto& x : x_) {
      c.b.push_back(x.cwiseProduct(kernel));
      c.p.noalias() += x * c.b.back();
    }
    return c;
  }

  void apply(const CMatrix& rho, const Coefficients& c, CMatrix& out) {
    xr_.noalias() = stacked_ * rho;
    y_.setZero(d_, d_);
    for (std::size_t k = 0; k < x_.size(); ++k) {
      y_.noalias() += xr_.middleRows(static_cast<Eigen::Index>(k) * d_, d_) * c.b[k];
    }
    pr_.noalias() = c.p * rho;
    out = pr_ + pr_.adjoint() - y_ - y_.adjoint();
    out *= -gamma_ / 2;
  }

 private:
  const std::vector<CMatrix>& x_;
  double gamma_;
  Eigen::Index d_;
  CMatrix stacked_;
  CMatrix xr_, y_, pr_;
};

}  // namespace

CMatrix tcl_rhs(const CMatrix& rho, const SpectralDecomposition& spec,
                const std::vector<CMatrix>& x_eigen, const MemoryOperator& memory,
                const ModelParams& params) {
  const Eigen::Index d = spec.dim();
  if (rho.rows() != d || memory.b_k.size() != x_eigen.size() ||
      static_cast<int>(x_eigen.size()) != params.n_qubits) {
    throw ConfigError("tcl_rhs: basis mismatch");
  }
  CMatrix out(d, d);
  for (Eigen::Index b = 0; b < d; ++b) {
    for (Eigen::Index a = 0; a < d; ++a) {
      out(a, b) = -kI * (spec.omegas(a) - spec.omegas(b)) * rho(a, b);
    }
  }
  for (std::size_t k = 0; k < x_eigen.size(); ++k) {
    const CMatrix& x = x_eigen[k];
    const CMatrix& bk = memory.b_k[k];
    const CMatrix inner = bk * rho - rho * bk;
    out -= (params.gamma / 2) * (x * inner - inner * x);
  }
  return out;
}

noise::CorrelationKernel tcl_kernel(double alpha, const ModelParams& params) {
  params.validate();
  const auto n_max = 2 * static_cast<std::size_t>(std::llround(params.t_max * params.f0));
  return noise::analytic_kernel(alpha, std::max<std::size_t>(n_max, 2), params.f0);
}

EvolutionSeries evolve_nonmarkovian(const DensityMatrix& rho0, const ModelParams& params,
                                    const noise::CorrelationKernel& kernel, const EvolutionGrid& grid,
                                    const TclOptions& options) {
  params.validate();
  grid.validate();
  if (params.epsilon < 2.0 * params.gamma && !options.allow_strong_noise) {
    throw ConfigError("tcl: epsilon/Gamma < 2 is outside the weak-noise regime (override to force)");
  }
  if (std::abs(grid.dt - kernel.dt) > 1e-12 * kernel.dt) {
    throw ConfigError("tcl: grid dt must equal the noise sampling period 1/f0");
  }
  if (rho0.dim() != static_cast<Eigen::Index>(params.dim())) {
    throw ConfigError("initial state dimension does not match n_qubits");
  }
  const auto spec = eigendecompose(build_ising_hamiltonian(params));
  const auto x_eigen = rotated_sigma_x(spec, params);
  TclDissipator diss(x_eigen, params.gamma);
  if (options.refine < 1) throw ConfigError("refine must be >= 1");
  KernelQuadrature quad(kernel, spec.omegas);
  const auto refine = static_cast<std::size_t>(options.refine);
  const double h = grid.dt / static_cast<double>(refine);
  const std::size_t steps = grid.steps() * refine;
  const std::size_t stride = static_cast<std::size_t>(grid.sample_stride) * refine;
  const Eigen::Index d = spec.dim();

  CMatrix half_phase(d, d);
  for (Eigen::Index b = 0; b < d; ++b) {
    for (Eigen::Index a = 0; a < d; ++a) {
      const double phase = -(spec.omegas(a) - spec.omegas(b)) * h / 2;
      half_phase(a, b) = Complex(std::cos(phase), std::sin(phase));
    }
  }

  // Kernel between noise grid points by linear interpolation.
  CMatrix k_lo = quad.value();
  double enh_lo = quad.enhancement();
  auto kernel_at = [&](double frac) -> CMatrix {
    if (options.approximate_phases) {
      const double e = (1.0 - frac) * enh_lo + frac * quad.enhancement();
      return CMatrix::Constant(d, d, Complex(e, 0.0));
    }
    if (frac == 0.0) return k_lo;
    if (frac == 1.0) return quad.value();
    return (1.0 - frac) * k_lo + frac * quad.value();
  };
  auto enhancement_now = [&](std::size_t n) {
    const double frac = static_cast<double>(n % refine) / static_cast<double>(refine);
    return n % refine == 0 ? quad.enhancement() : (1.0 - frac) * enh_lo + frac * quad.enhancement();
  };

  EvolutionSeries out;
  bool negativity_logged = false;
  auto sample = [&](double t, std::size_t n, const CMatrix& rho_eig) {
    detail::record_sample(out, t, spec.from_eigenbasis(rho_eig), spec, options.evolution,
                          params.n_qubits);
    out.gamma_eff.push_back(params.gamma * enhancement_now(n));
    if (options.evolution.spectral_diagnostics && out.min_eig.back() < -1e-7 && !negativity_logged) {
      std::ostringstream msg;
      msg << "tcl: rho lost positivity (min eigenvalue " << out.min_eig.back() << " at t=" << t << ")";
      warn(msg.str());
      negativity_logged = true;
    }
  };

  CMatrix rho = spec.to_eigenbasis(rho0.matrix());
  auto c_now = diss.coefficients(kernel_at(0.0));
  sample(0.0, 0, rho);
  CMatrix k1, k2, k3, k4, stage, base;
  for (std::size_t n = 1; n <= steps; ++n) {
    const std::size_t r = (n - 1) % refine;
    if (r == 0) {
      k_lo = quad.value();
      enh_lo = quad.enhancement();
      quad.advance();
    }
    const double inv = 1.0 / static_cast<double>(refine);
    const auto c_mid = diss.coefficients(kernel_at((static_cast<double>(r) + 0.5) * inv));
    auto c_next = diss.coefficients(kernel_at(static_cast<double>(r + 1) * inv));

    diss.apply(rho, c_now, k1);
    k1 = k1.cwiseProduct(half_phase);
    base = rho.cwiseProduct(half_phase);
    stage = base + (h / 2) * k1;
    diss.apply(stage, c_mid, k2);
    stage = base + (h / 2) * k2;
    diss.apply(stage, c_mid, k3);
    stage = (base + h * k3).cwiseProduct(half_phase);
    diss.apply(stage, c_next, k4);
    rho = (base + (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3)).cwiseProduct(half_phase) + (h / 6) * k4;
    c_now = std::move(c_next);

    const double t = static_cast<double>(n) * h;
    const double drift = std::abs(rho.trace() - 1.0);
    if (drift > options.evolution.trace_tolerance) {
      std::ostringstream msg;
      msg << "tcl: trace drift " << drift << " at t=" << t << "; reduce dt";
      throw NumericError(msg.str());
    }
    if (n % stride == 0 || n == steps) sample(t, n, rho);
  }
  return out;
}

EvolutionSeries evolve_nonmarkovian(const DensityMatrix& rho0, const ModelParams& params, double alpha,
                                    const EvolutionGrid& grid, const TclOptions& options) {
  return evolve_nonmarkovian(rho0, params, tcl_kernel(alpha, params), grid, options);
}

std::vector<double> enhancement_factor(const noise::CorrelationKernel& kernel, double t_max) {
  const std::size_t steps = grid_index(t_max, kernel.dt, "enhancement_factor");
  if (kernel.kappa.empty() || steps >= kernel.kappa.size()) {
    throw ConfigError("correlation kernel shorter than the requested horizon");
  }
  std::vector<double> out(steps + 1);
  double acc = kernel.kappa[0] * kernel.dt;
  out[0] = acc;
  for (std::size_t j = 1; j <= steps; ++j) {
    acc += kernel.dt * (j > 1 ? kernel.kappa[j - 1] : 0.0) + kernel.dt * kernel.kappa[j];
    out[j] = acc;
  }
  return out;
}

double effective_rate(const noise::CorrelationKernel& kernel, double t, double gamma) {
  return gamma * enhancement_factor(kernel, t).back();
}

}  // namespace oising
