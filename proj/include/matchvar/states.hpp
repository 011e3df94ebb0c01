#pragma once

#include <cmath>

#include "matchvar/dense.hpp"
#include "matchvar/pauli_sum.hpp"

namespace matchvar {

/// |0...0> as a state vector (qubit 1 = most significant index bit).
inline Vector computational_zero(std::uint32_t n) {
  Vector v = Vector::Zero(std::uint64_t(1) << n);
  v[0] = 1.0;
  return v;
}

/// |0><0|^{otimes n} = prod_i (I + Z_i)/2 expanded over all Z subsets.
inline PauliSumOperator computational_zero_density(std::uint32_t n) {
  PauliSumOperator rho(n);
  double w = std::ldexp(1.0, -int(n));
  std::uint64_t total = std::uint64_t(1) << n;
  for (std::uint64_t zset = 0; zset < total; ++zset)
    rho.terms[PauliKey{0, zset}] = w;
  return rho;
}

/// The 4-qubit magic unit (|0000> + |0011> + |1100> + e^{i tau}|1111>)/2.
inline Vector magic_unit(double tau) {
  Vector v = Vector::Zero(16);
  v[0b0000] = 0.5;
  v[0b0011] = 0.5;
  v[0b1100] = 0.5;
  v[0b1111] = 0.5 * std::exp(Complex(0, tau));
  return v;
}

/// |Psi(tau)> = magic_unit(tau)^{otimes n/4}; requires n = 0 mod 4.
inline Vector magic_state(std::uint32_t n, double tau) {
  if (n == 0 || n % 4 != 0)
    throw std::invalid_argument("magic state needs n = 0 mod 4, got n=" + std::to_string(n));
  Vector unit = magic_unit(tau);
  Vector v = unit;
  for (std::uint32_t copies = 1; copies < n / 4; ++copies) {
    Vector next(v.size() * 16);
    for (Eigen::Index i = 0; i < v.size(); ++i)
      next.segment(i * 16, 16) = v[i] * unit;
    v = std::move(next);
  }
  return v;
}

/// alpha|0...0> + beta|1 0...0>.
inline Vector superposition_state(std::uint32_t n, double alpha, double beta) {
  if (std::abs(alpha * alpha + beta * beta - 1.0) > 1e-12)
    throw std::invalid_argument("superposition state needs alpha^2 + beta^2 = 1");
  Vector v = Vector::Zero(std::uint64_t(1) << n);
  v[0] = alpha;
  v[std::uint64_t(1) << (n - 1)] = beta;  // qubit 1 is the most significant bit
  return v;
}

/// Sparse density operator of the superposition state. The cross term is
/// {X_1, |0><0|} = X_1 prod_{i>=2}(I + Z_i)/2.
inline PauliSumOperator superposition_density(std::uint32_t n, double alpha, double beta) {
  if (std::abs(alpha * alpha + beta * beta - 1.0) > 1e-12)
    throw std::invalid_argument("superposition state needs alpha^2 + beta^2 = 1");
  PauliSumOperator rho(n);
  double w = std::ldexp(1.0, -int(n));
  std::uint64_t total = std::uint64_t(1) << n;
  for (std::uint64_t zset = 0; zset < total; ++zset) {
    // alpha^2 |0><0| + beta^2 X_1|0><0|X_1: the Z_1 terms flip sign in the
    // second piece, everything else adds.
    double diag = (zset & 1) ? (alpha * alpha - beta * beta) : 1.0;
    if (std::abs(diag) >= kPruneTolerance) rho.terms[PauliKey{0, zset}] = diag * w;
  }
  double cross = 2.0 * alpha * beta * w;  // (2/d) X_1 (I + sum Z_i + ...)
  if (std::abs(cross) >= kPruneTolerance) {
    for (std::uint64_t zrest = 0; zrest < total; ++zrest) {
      if (zrest & 1) continue;  // Z subsets over qubits 2..n only
      rho.terms[PauliKey{1, zrest}] = cross;
    }
  }
  return rho;
}

/// |psi><psi| as a sparse Pauli sum (via the dense transform; n <= 8).
inline PauliSumOperator density_from_vector(const Vector& psi, std::uint32_t n) {
  Matrix rho = psi * psi.adjoint();
  return pauli_sum_from_dense(rho, n);
}

/// Magic-state density as a sparse operator for any valid n: the 4-qubit
/// block is transformed once and tensored.
inline PauliSumOperator magic_density(std::uint32_t n, double tau) {
  if (n == 0 || n % 4 != 0)
    throw std::invalid_argument("magic state needs n = 0 mod 4, got n=" + std::to_string(n));
  Vector unit = magic_unit(tau);
  PauliSumOperator block = pauli_sum_from_dense(unit * unit.adjoint(), 4);
  PauliSumOperator rho = block;
  for (std::uint32_t copies = 1; copies < n / 4; ++copies) rho = pauli_sum_kron(rho, block);
  return rho;
}

}  // namespace matchvar
