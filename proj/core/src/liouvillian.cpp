#include "oising/liouvillian.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "oising/observables.hpp"
#include "oising/parallel.hpp"

namespace oising {

CVector vectorize(const CMatrix& rho) {
  const Eigen::Index d = rho.rows();
  CVector v(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) v(i * d + j) = rho(i, j);
  }
  return v;
}

CMatrix unvectorize(const CVector& v) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (d * d != v.size()) throw ConfigError("unvectorize: length is not a square");
  CMatrix rho(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) rho(i, j) = v(i * d + j);
  }
  return rho;
}

Superoperator build_liouvillian(const ModelParams& params) {
  params.validate();
  const int n = params.n_qubits;
  if (n > kMaxLiouvillianQubits) {
    throw ConfigError("dense Liouvillian is capped at N <= " + std::to_string(kMaxLiouvillianQubits));
  }
  const auto d = static_cast<Eigen::Index>(params.dim());
  const Eigen::Index dd = d * d;
  if (n == kMaxLiouvillianQubits) {
    const double mb = static_cast<double>(dd) * static_cast<double>(dd) * 16.0 / 1e6;
    std::ostringstream msg;
    msg << "Liouvillian at N=" << n << " needs " << mb << " MB per dense copy";
    warn(msg.str());
  }
  const auto terms = IsingTerms::from(params);
  Superoperator out;
  out.n_qubits = n;
  out.m = CMatrix::Zero(dd, dd);
  const Complex ic = kI * terms.coupling;
  const double loss = params.gamma * n;
  parallel_for(static_cast<std::size_t>(d), [&](std::size_t uu1) {
    const auto u1 = static_cast<Eigen::Index>(uu1);
    for (Eigen::Index u2 = 0; u2 < d; ++u2) {
      const Eigen::Index row = u1 * d + u2;
      out.m(row, row) += Complex(loss, terms.diagonal(u1) - terms.diagonal(u2));
      for (const std::size_t mask : terms.pair_masks) {
        const auto m = static_cast<Eigen::Index>(mask);
        out.m(row, (u1 ^ m) * d + u2) += ic;
        out.m(row, u1 * d + (u2 ^ m)) -= ic;
      }
      for (int k = 1; k <= n; ++k) {
        const auto b = static_cast<Eigen::Index>(qubit_mask(k, n));
        out.m(row, (u1 ^ b) * d + (u2 ^ b)) -= params.gamma;
      }
    }
  });
  return out;
}

CVector LiouvillianSpectrum::eigenvalues() const {
  CVector e(gammas.size());
  for (Eigen::Index i = 0; i < gammas.size(); ++i) e(i) = Complex(gammas(i), -betas(i));
  return e;
}

LiouvillianSpectrum liouvillian_spectrum(const Superoperator& m) {
  const Eigen::Index n = m.dim();
  CMatrix a = m.m;
  CVector w(n);
  CMatrix vr(n, n);
  lapack_complex_double dummy{};
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', 'V', static_cast<lapack_int>(n),
      reinterpret_cast<lapack_complex_double*>(a.data()), static_cast<lapack_int>(n),
      reinterpret_cast<lapack_complex_double*>(w.data()), &dummy, 1,
      reinterpret_cast<lapack_complex_double*>(vr.data()), static_cast<lapack_int>(n));
  if (info != 0) throw NumericError("zgeev failed with info=" + std::to_string(info));

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    const double gx = w(x).real(), gy = w(y).real();
    if (gx != gy) return gx < gy;
    return -w(x).imag() < -w(y).imag();
  });

  LiouvillianSpectrum out;
  out.n_qubits = m.n_qubits;
  out.gammas.resize(n);
  out.betas.resize(n);
  out.d_inverse.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index src = order[static_cast<std::size_t>(i)];
    out.gammas(i) = w(src).real();
    out.betas(i) = -w(src).imag();
    out.d_inverse.col(i) = vr.col(src);
  }
  Eigen::PartialPivLU<CMatrix> lu(out.d_inverse);
  out.d_matrix = lu.inverse();
  auto norm1 = [](const CMatrix& x) { return x.cwiseAbs().colwise().sum().maxCoeff(); };
  out.condition_number = norm1(out.d_inverse) * norm1(out.d_matrix);
  if (!std::isfinite(out.condition_number) || out.condition_number > 1e12) {
    out.ill_conditioned = true;
    std::ostringstream msg;
    msg << "Liouvillian eigenvectors nearly defective (condition " << out.condition_number << ")";
    warn(msg.str());
  }
  return out;
}

CMatrix stationary_state(const LiouvillianSpectrum& spec) {
  const Eigen::Index n = spec.gammas.size();
  if (n == 0) throw ConfigError("stationary_state: empty spectrum");
  const double scale = std::max(1.0, spec.eigenvalues().cwiseAbs().maxCoeff());
  const double tol = 1e-10 * scale;
  Eigen::Index zero_modes = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(Complex(spec.gammas(i), spec.betas(i))) < tol) ++zero_modes;
  }
  if (zero_modes != 1) {
    throw NumericError("stationary subspace has dimension " + std::to_string(zero_modes));
  }
  CMatrix rho = unvectorize(spec.d_inverse.col(0));
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-14) throw NumericError("stationary mode is traceless");
  rho /= tr.real();
  return rho;
}

CMatrix propagate_spectral(const CMatrix& rho0, const LiouvillianSpectrum& spec, double t) {
  if (t < 0.0) throw ConfigError("propagate_spectral: t must be >= 0");
  if (rho0.rows() * rho0.rows() != spec.gammas.size()) {
    throw ConfigError("propagate_spectral: dimension mismatch");
  }
  if (spec.ill_conditioned) warn("propagate_spectral: ill-conditioned eigenvector matrix");
  CVector coeff = spec.d_matrix * vectorize(rho0);
  for (Eigen::Index i = 0; i < coeff.size(); ++i) {
    coeff(i) *= std::exp(-Complex(spec.gammas(i), -spec.betas(i)) * t);
  }
  return unvectorize(spec.d_inverse * coeff);
}

MetastabilityScan metastability_scan(const ModelParams& params, const std::vector<double>& lambda_grid,
                                     int modes, const std::vector<double>& amplitudes,
                                     const std::vector<double>& phases) {
  if (params.n_qubits > 5) throw ConfigError("metastability_scan requires N <= 5");
  if (modes < 1) throw ConfigError("modes must be >= 1");
  MetastabilityScan out;
  out.rows.resize(lambda_grid.size());
  LiouvillianSpectrum last;
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    ModelParams p = params;
    p.lambda = lambda_grid[i];
    auto spec = liouvillian_spectrum(build_liouvillian(p));
    auto& row = out.rows[i];
    row.lambda = p.lambda;
    const auto count = std::min<Eigen::Index>(modes, spec.gammas.size());
    for (Eigen::Index mu = 0; mu < count; ++mu) {
      row.gammas.push_back(spec.gammas(mu));
      row.betas.push_back(spec.betas(mu));
    }
    if (i + 1 == lambda_grid.size()) last = std::move(spec);
  }
  if (!lambda_grid.empty() && !amplitudes.empty() && !phases.empty()) {
    ModelParams p = params;
    p.lambda = lambda_grid.back();
    for (const double a : amplitudes) {
      for (const double phi : phases) {
        const auto psi = build_product_state(SpinState{a, phi}, p);
        const CMatrix rho = propagate_spectral(psi * psi.adjoint(), last, p.t_max);
        out.initial_state_map.push_back({a, phi, magnetization(rho)});
      }
    }
  }
  return out;
}

}  // namespace oising
