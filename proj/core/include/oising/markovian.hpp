#pragma once

#include <vector>

#include "oising/algebra.hpp"
#include "oising/observables.hpp"
#include "oising/types.hpp"

namespace oising {

/// Fixed time grid shared by all solvers: steps of dt up to t_max, one
/// recorded sample every sample_stride steps (plus t = 0).
struct EvolutionGrid {
  double dt = 2e-3;
  double t_max = 10.0;
  int sample_stride = 10;

  void validate() const;
  [[nodiscard]] std::size_t steps() const;
  [[nodiscard]] double time(std::size_t step) const { return static_cast<double>(step) * dt; }
};

struct EvolutionOptions {
  bool store_states = false;
  /// Eigenvalues of every sample for S and min_eig. Costs one Hermitian
  /// eigensolve per sample.
  bool spectral_diagnostics = true;
  bool check_bounds = true;
  double trace_tolerance = 1e-6;
};

/// Sampled trajectory of a density-matrix solver. States, when stored, are in
/// the product basis.
struct EvolutionSeries {
  std::vector<double> t;
  std::vector<double> m;
  std::vector<double> w;
  std::vector<double> entropy;
  std::vector<double> trace_err;
  std::vector<double> min_eig;
  std::vector<double> herm_err;
  std::vector<double> gamma_eff;
  std::vector<CMatrix> states;

  [[nodiscard]] ObservableSeries series(const std::vector<double>& values, std::string name) const;
};

/// Lindblad generator L(rho) = -i[H, rho] + Gamma sum_k (X_k rho X_k - rho),
/// applied matrix-free. Works on any square matrix of the right size.
class LindbladGenerator {
 public:
  explicit LindbladGenerator(const ModelParams& params);
  /// `hermitian` lets the commutator reuse H rho for rho H. Not thread-safe:
  /// the generator keeps scratch buffers.
  void apply(const CMatrix& rho, CMatrix& out, bool hermitian = false) const;
  [[nodiscard]] const ModelParams& params() const { return params_; }

 private:
  void apply_h(const CMatrix& in, CMatrix& out) const;

  ModelParams params_;
  IsingTerms terms_;
  std::vector<std::size_t> flip_masks_;
  mutable CMatrix left_, right_, adj_, sx_;
  mutable std::vector<Complex> col_;
};

[[nodiscard]] CMatrix lindblad_rhs(const CMatrix& rho, const ModelParams& params);

/// Fixed-step RK4 from rho0. rho is re-symmetrized after every step; its
/// trace is never renormalized. Throws NumericError when the trace drifts by
/// more than options.trace_tolerance or a sample leaves the physical bounds.
[[nodiscard]] EvolutionSeries evolve_markovian(const DensityMatrix& rho0, const ModelParams& params,
                                               const EvolutionGrid& grid,
                                               const EvolutionOptions& options = {});

/// Single-spin factorized expectation values.
struct MeanFieldState {
  double x = 0.0;
  double y = 0.0;
  double m = 0.0;

  [[nodiscard]] double norm() const;
};

struct MeanFieldSeries {
  std::vector<double> t;
  std::vector<MeanFieldState> states;
};

[[nodiscard]] MeanFieldState mean_field_rhs(const MeanFieldState& s, const ModelParams& params);
[[nodiscard]] MeanFieldSeries mean_field_evolve(const MeanFieldState& s0, const ModelParams& params,
                                                const EvolutionGrid& grid);
/// The trivial fixed point. Also scans a grid over the Bloch ball and warns
/// if any other point has a vanishing residual.
[[nodiscard]] MeanFieldState mean_field_fixed_point(const ModelParams& params);

}  // namespace oising
