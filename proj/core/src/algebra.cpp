#include "oising/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace oising {

namespace {

Eigen::Matrix2cd single_spin(Axis axis) {
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
  switch (axis) {
    case Axis::x:
      s(0, 1) = 1.0;
      s(1, 0) = 1.0;
      break;
    case Axis::y:
      s(0, 1) = -kI;
      s(1, 0) = kI;
      break;
    case Axis::z:
      s(0, 0) = 1.0;
      s(1, 1) = -1.0;
      break;
    case Axis::minus:
      // |down><up|
      s(1, 0) = 1.0;
      break;
  }
  return s;
}

}  // namespace

DenseOperator build_pauli(int k, Axis axis, const ModelParams& params) {
  const int n = params.n_qubits;
  if (n < 1 || n > kMaxQubits) throw ConfigError("n_qubits out of range");
  if (k < 1 || k > n) {
    throw ConfigError("qubit index " + std::to_string(k) + " out of range [1, " +
                      std::to_string(n) + "]");
  }
  const auto s = single_spin(axis);
  const std::size_t dim = params.dim();
  const std::size_t mask = qubit_mask(k, n);
  DenseOperator op = DenseOperator::Zero(static_cast<Eigen::Index>(dim),
                                         static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    const int bc = (col & mask) ? 1 : 0;
    for (int br = 0; br < 2; ++br) {
      const Complex v = s(br, bc);
      if (v == Complex{}) continue;
      const std::size_t row = br ? (col | mask) : (col & ~mask);
      op(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = v;
    }
  }
  return op;
}

IsingTerms IsingTerms::from(const ModelParams& params) {
  params.validate();
  const int n = params.n_qubits;
  const std::size_t dim = params.dim();
  IsingTerms terms;
  terms.diagonal.resize(static_cast<Eigen::Index>(dim));
  for (std::size_t u = 0; u < dim; ++u) {
    double sz = 0.0;
    for (int k = 1; k <= n; ++k) sz += spin_z(u, k, n);
    terms.diagonal(static_cast<Eigen::Index>(u)) = -params.epsilon * sz;
  }
  terms.coupling = params.lambda / n;
  if (params.lambda != 0.0) {
    for (int k = 1; k <= n; ++k) {
      for (int kp = k + 1; kp <= n; ++kp) {
        terms.pair_masks.push_back(qubit_mask(k, n) | qubit_mask(kp, n));
      }
    }
  }
  return terms;
}

void IsingTerms::apply_left(const CMatrix& in, CMatrix& out) const {
  const Eigen::Index dim = in.rows();
  out.resize(dim, in.cols());
  for (Eigen::Index j = 0; j < in.cols(); ++j) {
    const Complex* src = in.col(j).data();
    Complex* dst = out.col(j).data();
    for (Eigen::Index i = 0; i < dim; ++i) dst[i] = diagonal(i) * src[i];
    for (const std::size_t m : pair_masks) {
      for (Eigen::Index i = 0; i < dim; ++i) {
        dst[i] += coupling * src[static_cast<std::size_t>(i) ^ m];
      }
    }
  }
}

void IsingTerms::apply_right(const CMatrix& in, CMatrix& out) const {
  const Eigen::Index dim = in.cols();
  out.resize(in.rows(), dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    out.col(j) = in.col(j) * diagonal(j);
    for (const std::size_t m : pair_masks) {
      out.col(j) += coupling * in.col(static_cast<Eigen::Index>(static_cast<std::size_t>(j) ^ m));
    }
  }
}

DenseOperator build_ising_hamiltonian(const ModelParams& params) {
  const auto terms = IsingTerms::from(params);
  const auto dim = static_cast<Eigen::Index>(params.dim());
  DenseOperator h = DenseOperator::Zero(dim, dim);
  for (Eigen::Index u = 0; u < dim; ++u) {
    h(u, u) = terms.diagonal(u);
    for (const std::size_t m : terms.pair_masks) {
      h(static_cast<Eigen::Index>(static_cast<std::size_t>(u) ^ m), u) += terms.coupling;
    }
  }
  return h;
}

double hermiticity_error(const CMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

int qubits_for_dim(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim || n < 1) {
    throw ConfigError("dimension " + std::to_string(dim) + " is not 2^N");
  }
  return n;
}

CMatrix SpectralDecomposition::to_eigenbasis(const CMatrix& a) const {
  return vectors.adjoint() * a * vectors;
}

CMatrix SpectralDecomposition::from_eigenbasis(const CMatrix& a) const {
  return vectors * a * vectors.adjoint();
}

SpectralDecomposition eigendecompose(const DenseOperator& h) {
  if (h.rows() != h.cols() || h.rows() == 0) throw ConfigError("eigendecompose: matrix not square");
  if (hermiticity_error(h) > 1e-10) throw ConfigError("eigendecompose: matrix is not Hermitian");
  const Eigen::Index dim = h.rows();

  SpectralDecomposition out;
  if (h.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(h.real());
    if (solver.info() != Eigen::Success) throw NumericError("eigendecompose: solver failed");
    out.omegas = solver.eigenvalues();
    out.vectors = solver.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    if (solver.info() != Eigen::Success) throw NumericError("eigendecompose: solver failed");
    out.omegas = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
  }

  // Fix the phase: first non-negligible entry real-positive.
  for (Eigen::Index c = 0; c < dim; ++c) {
    auto col = out.vectors.col(c);
    for (Eigen::Index r = 0; r < dim; ++r) {
      if (std::abs(col(r)) > 1e-12) {
        col *= std::conj(col(r)) / std::abs(col(r));
        break;
      }
    }
  }

  const double scale = std::max(1.0, out.omegas.cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double wa = out.omegas(a);
    const double wb = out.omegas(b);
    if (std::abs(wa - wb) > 1e-12 * scale) return wa < wb;
    for (Eigen::Index r = 0; r < dim; ++r) {
      const double ra = out.vectors(r, a).real();
      const double rb = out.vectors(r, b).real();
      if (std::abs(ra - rb) > 1e-12) return ra < rb;
    }
    return false;
  });
  SpectralDecomposition sorted;
  sorted.omegas.resize(dim);
  sorted.vectors.resize(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    sorted.omegas(i) = out.omegas(order[static_cast<std::size_t>(i)]);
    sorted.vectors.col(i) = out.vectors.col(order[static_cast<std::size_t>(i)]);
  }
  return sorted;
}

StateVector build_product_state(std::span<const SpinState> spins, const ModelParams& params) {
  const int n = params.n_qubits;
  if (static_cast<int>(spins.size()) != n) {
    throw ConfigError("product state needs one spin per qubit");
  }
  for (const auto& s : spins) {
    if (!(s.amplitude >= 0.0 && s.amplitude <= 1.0)) {
      throw ConfigError("spin amplitude must lie in [0, 1]");
    }
    if (!(s.phase >= 0.0 && s.phase < 2.0 * std::numbers::pi)) {
      throw ConfigError("spin phase must lie in [0, 2pi)");
    }
  }
  const std::size_t dim = params.dim();
  StateVector psi(static_cast<Eigen::Index>(dim));
  for (std::size_t u = 0; u < dim; ++u) {
    Complex amp{1.0, 0.0};
    for (int k = 1; k <= n; ++k) {
      const auto& s = spins[static_cast<std::size_t>(k - 1)];
      if (u & qubit_mask(k, n)) {
        amp *= s.amplitude * std::polar(1.0, s.phase);
      } else {
        amp *= std::sqrt(1.0 - s.amplitude * s.amplitude);
      }
    }
    psi(static_cast<Eigen::Index>(u)) = amp;
  }
  psi /= psi.norm();
  return psi;
}

StateVector build_product_state(SpinState spin, const ModelParams& params) {
  const std::vector<SpinState> spins(static_cast<std::size_t>(params.n_qubits), spin);
  return build_product_state(spins, params);
}

StateVector preset_state(std::string_view name, const ModelParams& params) {
  if (name == "unpolarized") {
    return build_product_state(SpinState{1.0 / std::numbers::sqrt2, std::numbers::pi}, params);
  }
  if (name == "polarized") return build_product_state(SpinState{0.0, 0.0}, params);
  if (name == "ground") {
    return eigendecompose(build_ising_hamiltonian(params)).ground_state();
  }
  throw ConfigError("unknown initial state preset '" + std::string(name) + "'");
}

DensityMatrix DensityMatrix::from_matrix(CMatrix m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw ConfigError("density matrix must be square");
  (void)qubits_for_dim(m.rows());
  if (!m.allFinite()) throw ConfigError("density matrix has non-finite entries");
  if (hermiticity_error(m) > 1e-10) throw ConfigError("density matrix is not Hermitian");
  if (std::abs(m.trace() - Complex{1.0}) > 1e-10) throw ConfigError("density matrix trace != 1");
  if (min_eigenvalue(m) < -1e-8) throw ConfigError("density matrix is not positive semidefinite");
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw ConfigError("state vector is not normalized");
  return from_matrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) throw ConfigError("n_qubits out of range");
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

}  // namespace oising
