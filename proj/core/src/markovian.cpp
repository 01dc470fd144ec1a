#include "oising/markovian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sampling.hpp"

namespace oising {

void EvolutionGrid::validate() const {
  if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
  if (!(t_max > 0.0)) throw ConfigError("t_max must be > 0");
  if (sample_stride < 1) throw ConfigError("sample_stride must be >= 1");
  const double ratio = t_max / dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
    throw ConfigError("t_max must be an integer multiple of dt");
  }
}

std::size_t EvolutionGrid::steps() const {
  return static_cast<std::size_t>(std::llround(t_max / dt));
}

ObservableSeries EvolutionSeries::series(const std::vector<double>& values, std::string name) const {
  ObservableSeries s;
  s.times = t;
  s.values = values;
  s.name = std::move(name);
  return s;
}

namespace detail {

void record_sample(EvolutionSeries& out, double t, const CMatrix& rho,
                   const SpectralDecomposition& spec, const EvolutionOptions& options, int n_qubits) {
  out.t.push_back(t);
  out.m.push_back(magnetization(rho));
  out.w.push_back(ground_state_weight(rho, spec));
  out.trace_err.push_back(std::abs(rho.trace() - 1.0));
  out.herm_err.push_back(hermiticity_error(rho));
  if (options.spectral_diagnostics) {
    const auto e = entropy_details(rho);
    out.entropy.push_back(e.value);
    out.min_eig.push_back(e.min_eigenvalue);
  }
  if (options.store_states) out.states.push_back(rho);
  if (options.check_bounds) {
    check_observable_bounds(out.m.back(), out.w.back(),
                            options.spectral_diagnostics ? out.entropy.back() : 0.0, n_qubits, t);
  }
}

}  // namespace detail

namespace {

/// dst[i] += scale * src[i ^ b] for a single-bit mask b, as contiguous block swaps.
void add_flipped(Complex* dst, const Complex* src, std::size_t n, std::size_t b, double scale = 1.0) {
  for (std::size_t i0 = 0; i0 < n; i0 += 2 * b) {
    Complex* lo = dst + i0;
    Complex* hi = dst + i0 + b;
    const Complex* slo = src + i0;
    const Complex* shi = src + i0 + b;
    for (std::size_t i = 0; i < b; ++i) {
      lo[i] += scale * shi[i];
      hi[i] += scale * slo[i];
    }
  }
}

}  // namespace

LindbladGenerator::LindbladGenerator(const ModelParams& params)
    : params_(params), terms_(IsingTerms::from(params)) {
  for (int k = 1; k <= params.n_qubits; ++k) flip_masks_.push_back(qubit_mask(k, params.n_qubits));
}

void LindbladGenerator::apply_h(const CMatrix& in, CMatrix& out) const {
  // H = D + (lambda/N) (S_x^2 - N) / 2 with S_x = sum_k sigma^x_k.
  const auto dim = static_cast<std::size_t>(in.rows());
  out.resize(in.rows(), in.cols());
  sx_.resize(in.rows(), in.cols());
  const double c = terms_.coupling;
  const double n = params_.n_qubits;
  for (Eigen::Index j = 0; j < in.cols(); ++j) {
    const Complex* src = in.col(j).data();
    Complex* dst = out.col(j).data();
    for (std::size_t i = 0; i < dim; ++i) {
      dst[i] = (terms_.diagonal(static_cast<Eigen::Index>(i)) - 0.5 * c * n) * src[i];
    }
    if (c == 0.0) continue;
    Complex* once = sx_.col(j).data();
    std::fill(once, once + dim, Complex{});
    for (const std::size_t b : flip_masks_) add_flipped(once, src, dim, b);
    col_.assign(dim, Complex{});
    for (const std::size_t b : flip_masks_) add_flipped(col_.data(), once, dim, b);
    for (std::size_t i = 0; i < dim; ++i) dst[i] += 0.5 * c * col_[i];
  }
}

void LindbladGenerator::apply(const CMatrix& rho, CMatrix& out, bool hermitian) const {
  const auto dim = static_cast<Eigen::Index>(params_.dim());
  if (rho.rows() != dim || rho.cols() != dim) {
    throw ConfigError("lindblad_rhs: matrix dimension does not match n_qubits");
  }
  const auto udim = static_cast<std::size_t>(dim);
  // -i (H rho - rho H), using rho H = (H rho^dag)^dag.
  apply_h(rho, left_);
  if (hermitian) {
    out = -kI * (left_ - left_.adjoint());
  } else {
    adj_ = rho.adjoint();
    apply_h(adj_, right_);
    out = -kI * (left_ - right_.adjoint());
  }
  const double g = params_.gamma;
  if (g == 0.0) return;
  out -= (g * params_.n_qubits) * rho;
  for (std::size_t j = 0; j < udim; ++j) {
    Complex* dst = out.data() + j * udim;
    for (const std::size_t b : flip_masks_) {
      add_flipped(dst, rho.data() + (j ^ b) * udim, udim, b, g);
    }
  }
}

CMatrix lindblad_rhs(const CMatrix& rho, const ModelParams& params) {
  CMatrix out;
  LindbladGenerator(params).apply(rho, out);
  return out;
}

EvolutionSeries evolve_markovian(const DensityMatrix& rho0, const ModelParams& params,
                                 const EvolutionGrid& grid, const EvolutionOptions& options) {
  grid.validate();
  params.validate();
  if (rho0.dim() != static_cast<Eigen::Index>(params.dim())) {
    throw ConfigError("initial state dimension does not match n_qubits");
  }
  const LindbladGenerator gen(params);
  const auto spec = eigendecompose(build_ising_hamiltonian(params));
  const double h = grid.dt;
  const std::size_t steps = grid.steps();

  EvolutionSeries out;
  CMatrix rho = rho0.matrix();
  CMatrix k1, k2, k3, k4, tmp;
  detail::record_sample(out, 0.0, rho, spec, options, params.n_qubits);
  for (std::size_t n = 1; n <= steps; ++n) {
    gen.apply(rho, k1, true);
    tmp = rho + (h / 2) * k1;
    gen.apply(tmp, k2, true);
    tmp = rho + (h / 2) * k2;
    gen.apply(tmp, k3, true);
    tmp = rho + h * k3;
    gen.apply(tmp, k4, true);
    rho += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    tmp = 0.5 * (rho + rho.adjoint());
    rho = tmp;

    const double drift = std::abs(rho.trace() - 1.0);
    const double t = grid.time(n);
    if (drift > options.trace_tolerance) {
      std::ostringstream msg;
      msg << "markovian: trace drift " << drift << " at t=" << t << "; reduce dt (now " << h << ")";
      throw NumericError(msg.str());
    }
    if (n % static_cast<std::size_t>(grid.sample_stride) == 0 || n == steps) {
      detail::record_sample(out, t, rho, spec, options, params.n_qubits);
      if (options.spectral_diagnostics && out.min_eig.back() < -1e-7) {
        std::ostringstream msg;
        msg << "markovian: min eigenvalue " << out.min_eig.back() << " at t=" << t
            << " signals integration error; reduce dt";
        throw NumericError(msg.str());
      }
    }
  }
  return out;
}

double MeanFieldState::norm() const { return std::sqrt(x * x + y * y + m * m); }

MeanFieldState mean_field_rhs(const MeanFieldState& s, const ModelParams& p) {
  return {2.0 * p.epsilon * s.y,
          -2.0 * p.gamma * s.y - 2.0 * p.epsilon * s.x - 2.0 * p.lambda * s.x * s.m,
          -2.0 * p.gamma * s.m + 2.0 * p.lambda * s.x * s.y};
}

MeanFieldSeries mean_field_evolve(const MeanFieldState& s0, const ModelParams& params,
                                  const EvolutionGrid& grid) {
  grid.validate();
  auto axpy = [](const MeanFieldState& a, double h, const MeanFieldState& b) {
    return MeanFieldState{a.x + h * b.x, a.y + h * b.y, a.m + h * b.m};
  };
  const double h = grid.dt;
  const std::size_t steps = grid.steps();
  MeanFieldSeries out;
  MeanFieldState s = s0;
  out.t.push_back(0.0);
  out.states.push_back(s);
  for (std::size_t n = 1; n <= steps; ++n) {
    const auto k1 = mean_field_rhs(s, params);
    const auto k2 = mean_field_rhs(axpy(s, h / 2, k1), params);
    const auto k3 = mean_field_rhs(axpy(s, h / 2, k2), params);
    const auto k4 = mean_field_rhs(axpy(s, h, k3), params);
    s.x += h / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
    s.y += h / 6 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y);
    s.m += h / 6 * (k1.m + 2 * k2.m + 2 * k3.m + k4.m);
    if (n % static_cast<std::size_t>(grid.sample_stride) == 0 || n == steps) {
      out.t.push_back(grid.time(n));
      out.states.push_back(s);
    }
  }
  return out;
}

MeanFieldState mean_field_fixed_point(const ModelParams& params) {
  if (!(params.gamma > 0.0)) throw ConfigError("mean-field fixed point requires gamma > 0");
  const MeanFieldState origin{};
  constexpr int kGrid = 10;
  const double step = 1.0 / kGrid;
  for (int i = -kGrid; i <= kGrid; ++i) {
    for (int j = -kGrid; j <= kGrid; ++j) {
      for (int l = -kGrid; l <= kGrid; ++l) {
        const MeanFieldState s{i * step, j * step, l * step};
        if ((i == 0 && j == 0 && l == 0) || s.norm() > 1.0) continue;
        if (mean_field_rhs(s, params).norm() == 0.0) {
          warn("mean-field: additional fixed point found on the Bloch-ball grid");
        }
      }
    }
  }
  return origin;
}

}  // namespace oising
