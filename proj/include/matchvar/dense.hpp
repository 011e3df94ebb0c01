#pragma once

#include <Eigen/Dense>

#include "matchvar/pauli.hpp"

namespace matchvar {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline void require_dense(std::uint32_t n, const char* what) {
  if (int(n) > dense_qubit_limit())
    throw DimensionError(std::string(what) + ": n=" + std::to_string(n) +
                         " exceeds dense limit " + std::to_string(dense_qubit_limit()));
}

/// Exact 2^n x 2^n matrix of a scaled Pauli string. A Pauli acts on basis
/// states as a bit-flip permutation with a diagonal sign, so the matrix has
/// one entry per column.
inline Matrix to_dense(const PauliTerm& t) {
  require_dense(t.n, "PauliTerm::to_dense");
  const std::uint64_t d = std::uint64_t(1) << t.n;
  const std::uint64_t xi = index_space_mask(t.x_mask, t.n);
  const std::uint64_t zi = index_space_mask(t.z_mask, t.n);
  const int base = (t.phase + std::popcount(t.x_mask & t.z_mask)) & 3;
  static constexpr Complex units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Matrix m = Matrix::Zero(d, d);
  for (std::uint64_t c = 0; c < d; ++c) {
    int p = (base + 2 * std::popcount(zi & c)) & 3;
    m(c ^ xi, c) = units[p];
  }
  return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace matchvar
