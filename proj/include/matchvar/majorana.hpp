#pragma once

#include <cmath>
#include <vector>

#include "matchvar/pauli.hpp"
#include "matchvar/pauli_sum.hpp"

namespace matchvar {

/// An ordered product c_{v1}...c_{vk} of distinct Majorana operators,
/// stored as a bitmask over {1,...,2n} (bit mu-1 set iff c_mu appears).
struct MajoranaMonomial {
  std::uint32_t n = 0;
  std::uint64_t subset = 0;

  MajoranaMonomial() = default;
  MajoranaMonomial(std::uint32_t n, std::uint64_t subset) : n(n), subset(subset) {
    if (n > 32) throw std::invalid_argument("MajoranaMonomial: n > 32 unsupported");
    if (subset >> (2 * n)) throw std::out_of_range("MajoranaMonomial: index exceeds 2n");
  }

  static MajoranaMonomial from_indices(std::uint32_t n, const std::vector<std::uint32_t>& idx) {
    std::uint64_t s = 0;
    for (std::uint32_t mu : idx) {
      if (mu < 1 || mu > 2 * n) throw std::out_of_range("Majorana index out of range");
      std::uint64_t bit = std::uint64_t(1) << (mu - 1);
      if (s & bit) throw std::invalid_argument("repeated Majorana index");
      s |= bit;
    }
    return MajoranaMonomial(n, s);
  }

  int degree() const { return std::popcount(subset); }

  /// pi(s) = sum of the 1-based indices in the subset.
  int index_sum() const {
    int s = 0;
    for (std::uint64_t rest = subset; rest;) {
      int b = std::countr_zero(rest);
      s += b + 1;
      rest &= rest - 1;
    }
    return s;
  }

  MajoranaMonomial complement() const {
    std::uint64_t full = (std::uint64_t(1) << (2 * n)) - 1;
    return MajoranaMonomial(n, full & ~subset);
  }

  std::vector<std::uint32_t> indices() const {
    std::vector<std::uint32_t> out;
    for (std::uint64_t rest = subset; rest;) {
      out.push_back(std::uint32_t(std::countr_zero(rest)) + 1);
      rest &= rest - 1;
    }
    return out;
  }

  friend bool operator==(const MajoranaMonomial&, const MajoranaMonomial&) = default;

  /// Text form "{1,4,5}"; "{}" for the empty product.
  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (std::uint32_t mu : indices()) {
      if (!first) out += ',';
      out += std::to_string(mu);
      first = false;
    }
    return out + "}";
  }
};

/// i^phase times a canonical (sorted) monomial.
struct ScaledMonomial {
  MajoranaMonomial monomial;
  std::uint8_t phase = 0;  // power of i, mod 4
};

/// Jordan-Wigner image of c_mu: odd mu=2i-1 carries X at site i, even mu=2i
/// carries Y, both behind a Z string on sites 1..i-1.
inline PauliTerm majorana(std::uint32_t n, std::uint32_t mu) {
  if (mu < 1 || mu > 2 * n) throw std::out_of_range("majorana: index must lie in 1..2n");
  std::uint32_t site = (mu + 1) / 2;  // 1-based qubit
  PauliTerm t = PauliTerm::identity(n);
  t.z_mask = (std::uint64_t(1) << (site - 1)) - 1;  // Z on qubits 1..site-1
  std::uint64_t bit = std::uint64_t(1) << (site - 1);
  t.x_mask |= bit;
  if (mu % 2 == 0) t.z_mask |= bit;  // Y on the site
  return t;
}

/// The ordered product c_{v1}...c_{vk} as a single scaled Pauli string.
inline PauliTerm monomial_to_pauli(const MajoranaMonomial& m) {
  PauliTerm acc = PauliTerm::identity(m.n);
  for (std::uint32_t mu : m.indices()) acc = multiply(acc, majorana(m.n, mu));
  return acc;
}

/// Inverse of monomial_to_pauli on unsigned strings: the unique (m, phase)
/// with p = i^phase * monomial_to_pauli(m). Solved per qubit from the JW
/// structure: the letter at site i is X^a Y^b Z^t with a = c_{2i-1} present,
/// b = c_{2i} present, t = parity of higher Majorana indices in the subset.
inline ScaledMonomial pauli_to_monomial(const PauliTerm& p) {
  std::uint64_t subset = 0;
  int higher = 0;  // parity of indices above 2i, filled from the top site down
  for (std::uint32_t i = p.n; i >= 1; --i) {
    int x = int((p.x_mask >> (i - 1)) & 1);
    int z = int((p.z_mask >> (i - 1)) & 1);
    int b = z ^ (higher & 1);
    int a = x ^ b;
    if (a) subset |= std::uint64_t(1) << (2 * i - 2);
    if (b) subset |= std::uint64_t(1) << (2 * i - 1);
    higher += a + b;
  }
  MajoranaMonomial m(p.n, subset);
  PauliTerm prod = monomial_to_pauli(m);
  if (prod.x_mask != p.x_mask || prod.z_mask != p.z_mask)
    throw std::logic_error("pauli_to_monomial: JW back-solve failed");
  return ScaledMonomial{m, std::uint8_t((p.phase - prod.phase + 4) & 3)};
}

/// Hermitian orthonormal basis element B_m = i^{floor(k/2)} c^s / sqrt(d).
inline PauliSumOperator hermitian_basis_element(const MajoranaMonomial& m) {
  PauliTerm prod = monomial_to_pauli(m);
  int k = m.degree();
  PauliTerm scaled = prod.with_phase(prod.phase + k / 2);
  double inv_sqrt_d = 1.0 / std::sqrt(std::ldexp(1.0, int(m.n)));
  return PauliSumOperator::from_term(scaled, inv_sqrt_d);
}

/// Phase factor of the basis element on its unsigned Pauli string:
/// B_m = units[phase] * sigma / sqrt(d). Always returns a +1/-1 phase slot.
inline int hermitian_basis_phase(const MajoranaMonomial& m) {
  PauliTerm prod = monomial_to_pauli(m);
  return (prod.phase + m.degree() / 2) & 3;
}

/// The fermionic parity operator P = Z^{otimes n} = (-i)^n c_1...c_{2n}.
inline PauliTerm parity_operator(std::uint32_t n) {
  PauliTerm t = PauliTerm::identity(n);
  t.z_mask = (std::uint64_t(1) << n) - 1;
  return t;
}

}  // namespace matchvar
