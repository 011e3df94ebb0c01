#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>

namespace matchvar {

using Complex = std::complex<double>;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Dense-matrix conversions are refused above this qubit count. Overridable
/// at runtime (the CLI wires it to BP_DENSE_LIMIT).
inline int& dense_qubit_limit() {
  static int limit = [] {
    if (const char* env = std::getenv("BP_DENSE_LIMIT")) {
      int v = std::atoi(env);
      if (v > 0) return v;
    }
    return 10;
  }();
  return limit;
}

/// A scaled n-qubit Pauli string i^phase * P(x_mask, z_mask).
///
/// Per qubit the unsigned letter is P(x,z) = i^{xz} X^x Z^z, so (1,0)=X,
/// (0,1)=Z, (1,1)=Y. Bit q-1 of each mask belongs to qubit q, and qubit 1
/// is the leftmost factor in tensor notation ("XYZ" has X on qubit 1).
/// Coefficients beyond powers of i live in PauliSumOperator.
struct PauliTerm {
  std::uint32_t n = 0;
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;
  std::uint8_t phase = 0;  // power of i, mod 4

  static PauliTerm identity(std::uint32_t n) { return PauliTerm{n, 0, 0, 0}; }

  static PauliTerm single(std::uint32_t n, std::uint32_t qubit, char letter) {
    if (qubit < 1 || qubit > n) throw std::out_of_range("qubit index out of range");
    std::uint64_t bit = std::uint64_t(1) << (qubit - 1);
    switch (letter) {
      case 'I': return PauliTerm{n, 0, 0, 0};
      case 'X': return PauliTerm{n, bit, 0, 0};
      case 'Y': return PauliTerm{n, bit, bit, 0};
      case 'Z': return PauliTerm{n, 0, bit, 0};
      default: throw std::invalid_argument("Pauli letter must be one of IXYZ");
    }
  }

  bool is_identity() const { return x_mask == 0 && z_mask == 0 && phase == 0; }

  Complex coefficient() const {
    static constexpr Complex units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return units[phase & 3];
  }

  PauliTerm unsigned_part() const { return PauliTerm{n, x_mask, z_mask, 0}; }

  PauliTerm adjoint() const {
    return PauliTerm{n, x_mask, z_mask, std::uint8_t((4 - phase) & 3)};
  }

  PauliTerm with_phase(int p) const {
    return PauliTerm{n, x_mask, z_mask, std::uint8_t(((p % 4) + 4) & 3)};
  }

  /// Number of qubits acted on non-trivially.
  int weight() const { return std::popcount(x_mask | z_mask); }

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;

  std::string to_string() const;
  static PauliTerm parse(const std::string& text);
};

inline void require_same_n(const PauliTerm& a, const PauliTerm& b) {
  if (a.n != b.n)
    throw DimensionError("PauliTerm qubit counts differ: " + std::to_string(a.n) +
                         " vs " + std::to_string(b.n));
}

/// Exact product a*b. The unsigned part is the XOR of the masks; the phase
/// accumulates the per-qubit i^{xz} bookkeeping of the P(x,z) convention.
inline PauliTerm multiply(const PauliTerm& a, const PauliTerm& b) {
  require_same_n(a, b);
  std::uint64_t x = a.x_mask ^ b.x_mask;
  std::uint64_t z = a.z_mask ^ b.z_mask;
  int g = a.phase + b.phase;
  g += std::popcount(a.x_mask & a.z_mask);
  g += std::popcount(b.x_mask & b.z_mask);
  g += 2 * std::popcount(a.z_mask & b.x_mask);
  g -= std::popcount(x & z);
  return PauliTerm{a.n, x, z, std::uint8_t(((g % 4) + 4) & 3)};
}

/// Symplectic test: ab == ba iff the masks overlap an even number of times.
inline bool commutes(const PauliTerm& a, const PauliTerm& b) {
  require_same_n(a, b);
  int s = std::popcount(a.x_mask & b.z_mask) + std::popcount(a.z_mask & b.x_mask);
  return (s & 1) == 0;
}

/// (1/2)[a,b], which is exactly ab when a and b anticommute, and absent when
/// they commute.
inline std::optional<PauliTerm> half_commutator(const PauliTerm& a, const PauliTerm& b) {
  if (commutes(a, b)) return std::nullopt;
  return multiply(a, b);
}

inline std::string PauliTerm::to_string() const {
  static const char* prefix[4] = {"", "i", "-", "-i"};
  std::string out = prefix[phase & 3];
  for (std::uint32_t q = 0; q < n; ++q) {
    bool x = (x_mask >> q) & 1;
    bool z = (z_mask >> q) & 1;
    out += x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
  }
  return out;
}

/// Parses "[+|-|+i|-i|i]<IXYZ...>", leftmost letter = qubit 1, e.g. "-iZXI".
inline PauliTerm PauliTerm::parse(const std::string& text) {
  std::size_t pos = 0;
  int phase = 0;
  bool neg = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    neg = text[pos] == '-';
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase = 1;
    ++pos;
  }
  if (neg) phase += 2;
  if (pos == text.size()) throw std::invalid_argument("empty Pauli string: '" + text + "'");
  PauliTerm t;
  t.n = std::uint32_t(text.size() - pos);
  if (t.n > 64) throw std::invalid_argument("Pauli string longer than 64 qubits");
  t.phase = std::uint8_t(phase & 3);
  for (std::uint32_t q = 0; q < t.n; ++q) {
    std::uint64_t bit = std::uint64_t(1) << q;
    switch (text[pos + q]) {
      case 'I': break;
      case 'X': t.x_mask |= bit; break;
      case 'Y': t.x_mask |= bit; t.z_mask |= bit; break;
      case 'Z': t.z_mask |= bit; break;
      default:
        throw std::invalid_argument("invalid Pauli letter '" +
                                    std::string(1, text[pos + q]) + "' in '" + text + "'");
    }
  }
  return t;
}

/// Ordering on the text form; used wherever deterministic output matters.
inline bool unsigned_less(const PauliTerm& a, const PauliTerm& b) {
  for (std::uint32_t q = 0; q < a.n; ++q) {
    // I < X < Y < Z, matching lexicographic order of the letters
    auto rank = [q](const PauliTerm& t) {
      bool x = (t.x_mask >> q) & 1, z = (t.z_mask >> q) & 1;
      return x ? (z ? 2 : 1) : (z ? 3 : 0);
    };
    int ra = rank(a), rb = rank(b);
    if (ra != rb) return ra < rb;
  }
  return false;
}

/// Reverses the low n bits; maps qubit-numbered masks (bit q-1 = qubit q)
/// into state-index space where qubit 1 is the most significant bit.
inline std::uint64_t index_space_mask(std::uint64_t mask, std::uint32_t n) {
  std::uint64_t out = 0;
  for (std::uint32_t q = 0; q < n; ++q)
    if ((mask >> q) & 1) out |= std::uint64_t(1) << (n - 1 - q);
  return out;
}

}  // namespace matchvar
