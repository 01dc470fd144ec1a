#pragma once

#include <vector>

#include "oising/algebra.hpp"
#include "oising/markovian.hpp"
#include "oising/noise.hpp"
#include "oising/types.hpp"

namespace oising {

/// Memory integrals on the eigenbasis of H_s,
///   K^{ab}(t) = 2 int_0^t kappa(s) exp(-i (omega_a - omega_b) s) ds,
/// where a delta at s = 0 counts with half weight, so white noise gives K = 1
/// and the dissipator reduces to the Lindblad one. The same matrix serves
/// every qubit (i.i.d. noise).
struct KernelMatrix {
  double t = 0.0;
  CMatrix entries;
};

/// B_k(t) = X_k o K(t) (element-wise), X_k = sigma^x_k in the eigenbasis.
struct MemoryOperator {
  double t = 0.0;
  std::vector<CMatrix> b_k;
};

/// Running trapezoidal quadrature of the kernel integrals on the noise grid.
/// K(0) is the lag-0 weight kappa_0 dt, the limit t -> 0+.
class KernelQuadrature {
 public:
  KernelQuadrature(const noise::CorrelationKernel& kernel, const RVector& omegas);

  /// Advances the running integrals by one noise step.
  void advance();
  [[nodiscard]] double time() const { return static_cast<double>(panel_) * dt_; }
  [[nodiscard]] double step() const { return dt_; }
  [[nodiscard]] const CMatrix& value() const { return value_; }
  /// Diagonal value K^{aa}(t), the enhancement factor.
  [[nodiscard]] double enhancement() const { return enhancement_; }

 private:
  void accumulate(std::size_t lag);

  std::vector<double> kappa_;
  double dt_;
  std::size_t panel_ = 0;
  RMatrix delta_omega_;
  CMatrix value_;
  double enhancement_ = 0.0;
};

/// Kernel matrix at time t (must be a grid point of kernel.dt).
[[nodiscard]] KernelMatrix build_kernel_matrix(const noise::CorrelationKernel& kernel,
                                               const SpectralDecomposition& spec, double t);

[[nodiscard]] MemoryOperator build_memory_operator(const KernelMatrix& k,
                                                   const std::vector<CMatrix>& x_eigen);

/// sigma^x_k rotated to the eigenbasis, k = 1..N.
[[nodiscard]] std::vector<CMatrix> rotated_sigma_x(const SpectralDecomposition& spec,
                                                   const ModelParams& params);

/// -i[diag(omega), rho] - (Gamma/2) sum_k [X_k, [B_k, rho]] for Hermitian rho
/// in the eigenbasis.
[[nodiscard]] CMatrix tcl_rhs(const CMatrix& rho, const SpectralDecomposition& spec,
                              const std::vector<CMatrix>& x_eigen, const MemoryOperator& memory,
                              const ModelParams& params);

struct TclOptions {
  EvolutionOptions evolution;
  /// ODE sub-steps per noise step; the kernel is interpolated linearly between grid points.
  int refine = 1;
  /// Replace every phase factor by 1, i.e. Lindblad with rate Gamma K(t).
  bool approximate_phases = false;
  /// Allow epsilon / Gamma < 2, where the second-order equation is unreliable.
  bool allow_strong_noise = false;
};

/// Analytic ensemble kernel for 1/f^alpha noise. The record spans 4 t_max, so
/// K(t) on [0, t_max] never sees the periodic image of the record.
[[nodiscard]] noise::CorrelationKernel tcl_kernel(double alpha, const ModelParams& params);

/// Integrating-factor RK4 in the eigenbasis: the coherent phases are exact and
/// the memory term is stepped with the kernel at t, t + dt/2 and t + dt.
/// Positivity is logged, not enforced. Throws NumericError when the trace
/// drifts by more than options.evolution.trace_tolerance.
[[nodiscard]] EvolutionSeries evolve_nonmarkovian(const DensityMatrix& rho0, const ModelParams& params,
                                                  const noise::CorrelationKernel& kernel,
                                                  const EvolutionGrid& grid,
                                                  const TclOptions& options = {});

/// Convenience overload building the analytic kernel for alpha.
[[nodiscard]] EvolutionSeries evolve_nonmarkovian(const DensityMatrix& rho0, const ModelParams& params,
                                                  double alpha, const EvolutionGrid& grid,
                                                  const TclOptions& options = {});

/// Gamma * K(t) with K(t) the diagonal memory integral.
[[nodiscard]] double effective_rate(const noise::CorrelationKernel& kernel, double t, double gamma = 1.0);

/// K(t) on every noise grid point up to t_max.
[[nodiscard]] std::vector<double> enhancement_factor(const noise::CorrelationKernel& kernel, double t_max);

}  // namespace oising
