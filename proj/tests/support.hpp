#pragma once

// Helpers shared by the unit and acceptance tests: random states and an
// independent dense construction of the Lindblad generator built from
// Kronecker products (column-stacking convention), used as an oracle.

#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "oising/algebra.hpp"
#include "oising/types.hpp"

namespace oising::testing {

inline CMatrix random_density(Eigen::Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CMatrix a(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  CMatrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

inline CMatrix random_matrix(Eigen::Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CMatrix a(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  return a;
}

/// Single-qubit Pauli matrices in the (up, down) basis, sigma^z up = +up.
inline CMatrix pauli(char which) {
  CMatrix p = CMatrix::Zero(2, 2);
  switch (which) {
    case 'x':
      p(0, 1) = p(1, 0) = 1.0;
      break;
    case 'y':
      p(0, 1) = Complex(0, -1);
      p(1, 0) = Complex(0, 1);
      break;
    case 'z':
      p(0, 0) = 1.0;
      p(1, 1) = -1.0;
      break;
    default:
      p = CMatrix::Identity(2, 2);
  }
  return p;
}

/// sigma on qubit k (1-based, qubit 1 leftmost factor) via Kronecker products.
inline CMatrix kron_pauli(char which, int k, int n) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (int j = 1; j <= n; ++j) {
    const CMatrix f = j == k ? pauli(which) : CMatrix::Identity(2, 2);
    CMatrix next = Eigen::kroneckerProduct(out, f).eval();
    out = next;
  }
  return out;
}

inline CMatrix kron_hamiltonian(const ModelParams& p) {
  const Eigen::Index d = Eigen::Index{1} << p.n_qubits;
  CMatrix h = CMatrix::Zero(d, d);
  for (int k = 1; k <= p.n_qubits; ++k) h -= p.epsilon * kron_pauli('z', k, p.n_qubits);
  for (int k = 1; k <= p.n_qubits; ++k) {
    for (int l = k + 1; l <= p.n_qubits; ++l) {
      h += (p.lambda / p.n_qubits) * kron_pauli('x', k, p.n_qubits) * kron_pauli('x', l, p.n_qubits);
    }
  }
  return h;
}

/// Generator on column-stacked vec(rho): vec(A X B) = (B^T kron A) vec(X).
inline CMatrix kron_lindblad(const ModelParams& p) {
  const CMatrix h = kron_hamiltonian(p);
  const Eigen::Index d = h.rows();
  const CMatrix id = CMatrix::Identity(d, d);
  CMatrix l = -kI * (Eigen::kroneckerProduct(id, h).eval() - Eigen::kroneckerProduct(h.transpose(), id).eval());
  for (int k = 1; k <= p.n_qubits; ++k) {
    const CMatrix x = kron_pauli('x', k, p.n_qubits);
    l += p.gamma * (Eigen::kroneckerProduct(x.transpose(), x).eval() - CMatrix::Identity(d * d, d * d));
  }
  return l;
}

inline CVector col_vec(const CMatrix& m) { return Eigen::Map<const CVector>(m.data(), m.size()); }

inline CMatrix col_unvec(const CVector& v, Eigen::Index d) { return Eigen::Map<const CMatrix>(v.data(), d, d); }

/// exp(L t) rho via the dense matrix exponential.
inline CMatrix kron_propagate(const ModelParams& p, const CMatrix& rho0, double t) {
  const CMatrix l = kron_lindblad(p);
  const CMatrix e = (l * t).exp();
  return col_unvec(e * col_vec(rho0), rho0.rows());
}

inline double kron_magnetization(const CMatrix& rho, int n) {
  double m = 0.0;
  for (int k = 1; k <= n; ++k) m += (kron_pauli('z', k, n) * rho).trace().real();
  return m / n;
}

}  // namespace oising::testing
