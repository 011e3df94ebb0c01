#pragma once

#include <cmath>
#include <unordered_map>
#include <vector>

#include "matchvar/dense.hpp"
#include "matchvar/pauli.hpp"

namespace matchvar {

inline constexpr double kPruneTolerance = 1e-14;

struct PauliKey {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  friend bool operator==(const PauliKey&, const PauliKey&) = default;
};

struct PauliKeyHash {
  std::size_t operator()(const PauliKey& k) const noexcept {
    std::uint64_t h = k.x * 0x9e3779b97f4a7c15ULL;
    h ^= k.z + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return std::size_t(h);
  }
};

/// Sparse operator: map from unsigned Pauli strings to complex coefficients.
/// Phases of inserted terms are folded into the coefficients, so every stored
/// key is an unsigned (Hermitian) Pauli string. The operator is Hermitian
/// exactly when all coefficients are real.
struct PauliSumOperator {
  std::uint32_t n = 0;
  std::unordered_map<PauliKey, Complex, PauliKeyHash> terms;

  PauliSumOperator() = default;
  explicit PauliSumOperator(std::uint32_t n) : n(n) {}

  static PauliSumOperator zero(std::uint32_t n) { return PauliSumOperator(n); }

  static PauliSumOperator from_term(const PauliTerm& t, Complex coeff = 1.0) {
    PauliSumOperator op(t.n);
    op.add(t, coeff);
    return op;
  }

  std::size_t size() const { return terms.size(); }

  void add(const PauliTerm& t, Complex coeff = 1.0) {
    if (n == 0) n = t.n;
    if (t.n != n) throw DimensionError("PauliSumOperator: term qubit count mismatch");
    PauliKey key{t.x_mask, t.z_mask};
    Complex& c = terms[key];
    c += coeff * t.coefficient();
    if (std::abs(c) < kPruneTolerance) terms.erase(key);
  }

  void add(const PauliSumOperator& other, Complex scale = 1.0) {
    if (other.terms.empty()) return;
    if (n == 0) n = other.n;
    if (other.n != n) throw DimensionError("PauliSumOperator: operand qubit count mismatch");
    for (const auto& [key, c] : other.terms) {
      Complex& mine = terms[key];
      mine += scale * c;
      if (std::abs(mine) < kPruneTolerance) terms.erase(key);
    }
  }

  PauliSumOperator scaled(Complex s) const {
    PauliSumOperator out(n);
    for (const auto& [key, c] : terms)
      if (std::abs(s * c) >= kPruneTolerance) out.terms.emplace(key, s * c);
    return out;
  }

  PauliSumOperator adjoint() const {
    PauliSumOperator out(n);
    for (const auto& [key, c] : terms) out.terms.emplace(key, std::conj(c));
    return out;
  }

  Complex coefficient(const PauliKey& key) const {
    auto it = terms.find(key);
    return it == terms.end() ? Complex(0) : it->second;
  }

  Complex coefficient(const PauliTerm& t) const {
    return coefficient(PauliKey{t.x_mask, t.z_mask}) * t.coefficient();
  }

  double dim() const { return std::ldexp(1.0, int(n)); }

  Complex trace() const { return dim() * coefficient(PauliKey{0, 0}); }

  /// Tr[(this) * t] for a single scaled Pauli string t.
  Complex trace_with(const PauliTerm& t) const {
    // Tr[sigma sigma'] = d only when the unsigned parts match.
    Complex c = coefficient(PauliKey{t.x_mask, t.z_mask});
    if (c == Complex(0)) return 0.0;
    PauliTerm self{n, t.x_mask, t.z_mask, 0};
    PauliTerm prod = multiply(self, t);  // proportional to identity
    return dim() * c * prod.coefficient();
  }

  /// Tr[M† M], exact in the coefficients.
  double hs_norm_sq() const {
    double s = 0;
    for (const auto& [key, c] : terms) s += std::norm(c);
    return dim() * s;
  }

  /// Frobenius distance of M from M†; zero iff Hermitian.
  double hermiticity_residual() const {
    double s = 0;
    for (const auto& [key, c] : terms) s += c.imag() * c.imag();
    return std::sqrt(dim() * s) * 2.0;
  }

  bool is_hermitian(double tol = 1e-10) const { return hermiticity_residual() <= tol; }

  void prune(double tol = kPruneTolerance) {
    for (auto it = terms.begin(); it != terms.end();)
      it = std::abs(it->second) < tol ? terms.erase(it) : std::next(it);
  }

  PauliSumOperator operator*(const PauliSumOperator& rhs) const {
    if (n != rhs.n) throw DimensionError("PauliSumOperator product: qubit count mismatch");
    PauliSumOperator out(n);
    for (const auto& [ka, ca] : terms) {
      PauliTerm a{n, ka.x, ka.z, 0};
      for (const auto& [kb, cb] : rhs.terms) {
        PauliTerm b{n, kb.x, kb.z, 0};
        PauliTerm p = multiply(a, b);
        out.add(p, ca * cb);
      }
    }
    return out;
  }

  PauliSumOperator operator+(const PauliSumOperator& rhs) const {
    PauliSumOperator out = *this;
    out.add(rhs);
    return out;
  }

  PauliSumOperator operator-(const PauliSumOperator& rhs) const {
    PauliSumOperator out = *this;
    out.add(rhs, -1.0);
    return out;
  }

  Matrix to_dense() const {
    require_dense(n, "PauliSumOperator::to_dense");
    const std::uint64_t d = std::uint64_t(1) << n;
    Matrix m = Matrix::Zero(d, d);
    static constexpr Complex units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (const auto& [key, coeff] : terms) {
      const std::uint64_t xi = index_space_mask(key.x, n);
      const std::uint64_t zi = index_space_mask(key.z, n);
      const int base = std::popcount(key.x & key.z) & 3;
      for (std::uint64_t c = 0; c < d; ++c) {
        int p = (base + 2 * std::popcount(zi & c)) & 3;
        m(c ^ xi, c) += coeff * units[p];
      }
    }
    return m;
  }

  /// <psi| M |psi> for a state vector indexed with qubit 1 as the most
  /// significant bit.
  Complex expectation(const Vector& psi) const {
    if (psi.size() != Eigen::Index(std::uint64_t(1) << n))
      throw DimensionError("expectation: state dimension mismatch");
    static constexpr Complex units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    Complex total = 0;
    const std::uint64_t d = std::uint64_t(1) << n;
    for (const auto& [key, coeff] : terms) {
      const std::uint64_t xi = index_space_mask(key.x, n);
      const std::uint64_t zi = index_space_mask(key.z, n);
      const int base = std::popcount(key.x & key.z) & 3;
      Complex acc = 0;
      for (std::uint64_t c = 0; c < d; ++c) {
        int p = (base + 2 * std::popcount(zi & c)) & 3;
        acc += std::conj(psi[c ^ xi]) * units[p] * psi[c];
      }
      total += coeff * acc;
    }
    return total;
  }

  std::vector<std::pair<PauliTerm, Complex>> sorted_terms() const {
    std::vector<std::pair<PauliTerm, Complex>> out;
    out.reserve(terms.size());
    for (const auto& [key, c] : terms) out.emplace_back(PauliTerm{n, key.x, key.z, 0}, c);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return unsigned_less(a.first, b.first); });
    return out;
  }
};

namespace detail {

// Recursive Pauli transform: peel off qubit 1 (the most significant index
// bit), split M into the four single-qubit components, recurse. O(n 4^n).
inline void pauli_transform_rec(const Matrix& m, std::uint32_t total_n, std::uint32_t level,
                                std::uint64_t x, std::uint64_t z, double tol,
                                PauliSumOperator& out) {
  if (level == total_n) {
    Complex c = m(0, 0);
    if (std::abs(c) >= tol) out.terms[PauliKey{x, z}] = c;
    return;
  }
  const Eigen::Index h = m.rows() / 2;
  Matrix a = m.topLeftCorner(h, h), b = m.topRightCorner(h, h);
  Matrix c = m.bottomLeftCorner(h, h), dd = m.bottomRightCorner(h, h);
  const std::uint64_t bit = std::uint64_t(1) << level;
  const Complex I(0, 1);
  pauli_transform_rec((a + dd) / 2, total_n, level + 1, x, z, tol, out);
  pauli_transform_rec((b + c) / 2, total_n, level + 1, x | bit, z, tol, out);
  pauli_transform_rec(I * (b - c) / 2, total_n, level + 1, x | bit, z | bit, tol, out);
  pauli_transform_rec((a - dd) / 2, total_n, level + 1, x, z | bit, tol, out);
}

}  // namespace detail

/// Extracts the sparse Pauli expansion of a dense matrix (n <= 8 by default;
/// this is independent of the dense-matrix qubit limit).
inline PauliSumOperator pauli_sum_from_dense(const Matrix& m, std::uint32_t n,
                                             double tol = kPruneTolerance) {
  if (n > 8 && int(n) > dense_qubit_limit())
    throw DimensionError("pauli_sum_from_dense: n too large");
  if (m.rows() != Eigen::Index(std::uint64_t(1) << n) || m.rows() != m.cols())
    throw DimensionError("pauli_sum_from_dense: matrix is not 2^n x 2^n");
  PauliSumOperator out(n);
  detail::pauli_transform_rec(m, n, 0, 0, 0, tol, out);
  return out;
}

/// Tensor product; `a` occupies qubits 1..a.n, `b` the remaining ones.
inline PauliSumOperator pauli_sum_kron(const PauliSumOperator& a, const PauliSumOperator& b) {
  PauliSumOperator out(a.n + b.n);
  for (const auto& [ka, ca] : a.terms)
    for (const auto& [kb, cb] : b.terms) {
      PauliKey key{ka.x | (kb.x << a.n), ka.z | (kb.z << a.n)};
      out.terms[key] = ca * cb;
    }
  return out;
}

}  // namespace matchvar
