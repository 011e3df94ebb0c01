#pragma once

#include <map>
#include <vector>

#include "matchvar/majorana.hpp"
#include "matchvar/pauli_sum.hpp"

namespace matchvar {

inline constexpr double kCoherenceImagTolerance = 1e-10;

enum class Parity { Even, Odd };

inline Parity flip(Parity p) { return p == Parity::Even ? Parity::Odd : Parity::Even; }

/// Coefficients of an operator over the Hermitian orthonormal monomial basis
/// {B_m}. Each Pauli term maps to exactly one monomial, so the map stays as
/// sparse as the input.
struct ModuleDecomposition {
  std::uint32_t n = 0;
  std::unordered_map<std::uint64_t, Complex> coef;  // monomial subset -> Tr[B_m M]

  Complex coefficient(std::uint64_t subset) const {
    auto it = coef.find(subset);
    return it == coef.end() ? Complex(0) : it->second;
  }

  /// Squared norm of the degree-kappa block.
  double kappa_norm_sq(int kappa) const {
    double s = 0;
    for (const auto& [subset, c] : coef)
      if (std::popcount(subset) == kappa) s += std::norm(c);
    return s;
  }

  /// Reassembles the degree-kappa component as a sparse operator.
  PauliSumOperator component(int kappa) const {
    PauliSumOperator out(n);
    for (const auto& [subset, c] : coef) {
      if (std::popcount(subset) != kappa) continue;
      out.add(hermitian_basis_element(MajoranaMonomial(n, subset)).scaled(c));
    }
    return out;
  }

  PauliSumOperator reconstruct() const {
    PauliSumOperator out(n);
    for (const auto& [subset, c] : coef)
      out.add(hermitian_basis_element(MajoranaMonomial(n, subset)).scaled(c));
    return out;
  }
};

/// Projects M onto the monomial basis: coef[m] = Tr[B_m M].
inline ModuleDecomposition decompose(const PauliSumOperator& M) {
  ModuleDecomposition out;
  out.n = M.n;
  const double sqrt_d = std::sqrt(M.dim());
  static constexpr Complex units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto& [key, c] : M.terms) {
    ScaledMonomial sm = pauli_to_monomial(PauliTerm{M.n, key.x, key.z, 0});
    // B_m = units[p] * sigma / sqrt(d)  =>  Tr[B_m M] = units[p] * c * sqrt(d)
    int p = hermitian_basis_phase(sm.monomial);
    out.coef[sm.monomial.subset] = units[p] * c * sqrt_d;
  }
  return out;
}

inline void require_kappa(std::uint32_t n, int kappa, int upper) {
  if (kappa < 0 || kappa > upper)
    throw std::out_of_range("kappa=" + std::to_string(kappa) + " outside 0.." +
                            std::to_string(upper));
}

/// P_kappa(M) = <M_kappa, M_kappa> = sum over degree-kappa monomials of
/// |Tr[B_m M]|^2.
inline double kappa_purity(const PauliSumOperator& M, int kappa) {
  require_kappa(M.n, kappa, 2 * int(M.n));
  const double d = M.dim();
  double s = 0;
  for (const auto& [key, c] : M.terms) {
    int deg = pauli_to_monomial(PauliTerm{M.n, key.x, key.z, 0}).monomial.degree();
    if (deg == kappa) s += std::norm(c);
  }
  return d * s;
}

struct CoherenceValue {
  double value = 0;
  double residual_imag = 0;
};

/// C_kappa(M) = i^{kappa mod 2} Tr[P M_kappa^dag M_{2n-kappa}]. Returns the
/// real part together with the discarded imaginary residue; the Hermitian
/// theory guarantees the latter vanishes.
inline CoherenceValue kappa_coherence_full(const PauliSumOperator& M, int kappa) {
  require_kappa(M.n, kappa, 2 * int(M.n));
  const std::uint32_t n = M.n;
  const PauliTerm P = parity_operator(n);
  const double d = M.dim();
  Complex acc = 0;
  // Pair each degree-kappa term sigma with the unique partner sigma' such
  // that P sigma sigma' is proportional to the identity.
  for (const auto& [key, c] : M.terms) {
    PauliTerm sigma{n, key.x, key.z, 0};
    if (pauli_to_monomial(sigma).monomial.degree() != kappa) continue;
    PauliKey partner{key.x ^ P.x_mask, key.z ^ P.z_mask};
    Complex cp = M.coefficient(partner);
    if (cp == Complex(0)) continue;
    PauliTerm prod = multiply(multiply(P, sigma), PauliTerm{n, partner.x, partner.z, 0});
    acc += std::conj(c) * cp * prod.coefficient() * d;
  }
  static constexpr Complex units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Complex val = units[kappa & 1] * acc;
  return CoherenceValue{val.real(), std::abs(val.imag())};
}

inline double kappa_coherence(const PauliSumOperator& M, int kappa) {
  return kappa_coherence_full(M, kappa).value;
}

/// Per-kappa purities and coherences of an operator.
struct PuritySpectrum {
  std::vector<double> purities;    // index kappa = 0..2n
  std::vector<double> coherences;  // index kappa = 0..2n
  double residual_imag = 0;
};

inline PuritySpectrum purity_spectrum(const PauliSumOperator& M) {
  const int top = 2 * int(M.n);
  PuritySpectrum out;
  out.purities.assign(top + 1, 0.0);
  out.coherences.assign(top + 1, 0.0);
  ModuleDecomposition dec = decompose(M);
  for (const auto& [subset, c] : dec.coef)
    out.purities[std::popcount(subset)] += std::norm(c);
  for (int kappa = 0; kappa <= top; ++kappa) {
    CoherenceValue cv = kappa_coherence_full(M, kappa);
    out.coherences[kappa] = cv.value;
    out.residual_imag = std::max(out.residual_imag, cv.residual_imag);
  }
  return out;
}

/// T_kappa(M) = M_kappa - M_{2n-kappa}; identically zero at kappa = n.
inline PauliSumOperator apply_T(const PauliSumOperator& M, int kappa) {
  require_kappa(M.n, kappa, int(M.n));
  ModuleDecomposition dec = decompose(M);
  return dec.component(kappa) - dec.component(2 * int(M.n) - kappa);
}

namespace detail {

// B^p_{kappa,s} = (B_{kappa,s} + sign * B_{2n-kappa,sbar}) / sqrt(2) with
// sign = (-1)^{lambda_p + pi(s) + kappa/2 + n}; valid for even kappa.
inline int sector_sign(const MajoranaMonomial& s, Parity p, std::uint32_t n) {
  int k = s.degree();
  int e = (p == Parity::Odd ? 1 : 0) + s.index_sum() + k / 2 + int(n);
  return (e % 2 == 0) ? 1 : -1;
}

// Representative subsets of degree kappa whose sector elements can overlap M:
// one per pair {s, sbar}. At kappa = n the pair lies inside one degree, so the
// representative is fixed to the half containing index 1.
inline std::vector<std::uint64_t> sector_representatives(const ModuleDecomposition& dec,
                                                         int kappa) {
  const std::uint32_t n = dec.n;
  const std::uint64_t full = (std::uint64_t(1) << (2 * n)) - 1;
  std::vector<std::uint64_t> reps;
  std::unordered_map<std::uint64_t, bool> seen;
  for (const auto& [subset, unused] : dec.coef) {
    int deg = std::popcount(subset);
    std::uint64_t rep;
    if (kappa == int(n)) {
      if (deg != kappa) continue;
      rep = (subset & 1) ? subset : (full & ~subset);
    } else if (deg == kappa) {
      rep = subset;
    } else if (deg == 2 * int(n) - kappa) {
      rep = full & ~subset;
    } else {
      continue;
    }
    if (seen.emplace(rep, true).second) reps.push_back(rep);
  }
  return reps;
}

}  // namespace detail

/// Projections of M onto the definite-parity sector bases of
/// B_kappa + B_{2n-kappa} (kappa even, kappa <= n). Returns (even, odd).
inline std::pair<PauliSumOperator, PauliSumOperator> parity_sector_decompose(
    const PauliSumOperator& M, int kappa) {
  require_kappa(M.n, kappa, int(M.n));
  if (kappa % 2 != 0) throw std::invalid_argument("parity sectors need even kappa");
  const std::uint32_t n = M.n;
  ModuleDecomposition dec = decompose(M);
  PauliSumOperator even(n), odd(n);
  const std::uint64_t full = (std::uint64_t(1) << (2 * n)) - 1;
  for (std::uint64_t rep : detail::sector_representatives(dec, kappa)) {
    MajoranaMonomial s(n, rep), sbar(n, full & ~rep);
    Complex ms = dec.coefficient(s.subset);
    Complex msbar = dec.coefficient(sbar.subset);
    for (Parity p : {Parity::Even, Parity::Odd}) {
      double sign = detail::sector_sign(s, p, n);
      Complex beta = (ms + sign * msbar) / std::sqrt(2.0);
      if (std::abs(beta) < kPruneTolerance) continue;
      // beta * B^p_{kappa,s} expanded back into Pauli terms
      PauliSumOperator element = hermitian_basis_element(s).scaled(1.0 / std::sqrt(2.0));
      element.add(hermitian_basis_element(sbar).scaled(sign / std::sqrt(2.0)));
      (p == Parity::Even ? even : odd).add(element.scaled(beta));
    }
  }
  return {std::move(even), std::move(odd)};
}

/// Generalized (kappa,p)-purity: squared norm of the sector projection.
inline double sector_purity(const PauliSumOperator& M, int kappa, Parity p) {
  require_kappa(M.n, kappa, int(M.n));
  if (kappa % 2 != 0) throw std::invalid_argument("parity sectors need even kappa");
  const std::uint32_t n = M.n;
  ModuleDecomposition dec = decompose(M);
  const std::uint64_t full = (std::uint64_t(1) << (2 * n)) - 1;
  double total = 0;
  for (std::uint64_t rep : detail::sector_representatives(dec, kappa)) {
    MajoranaMonomial s(n, rep);
    Complex ms = dec.coefficient(rep);
    Complex msbar = dec.coefficient(full & ~rep);
    double sign = detail::sector_sign(s, p, n);
    total += std::norm((ms + sign * msbar) / std::sqrt(2.0));
  }
  return total;
}

/// Generalized (kappa,p)-coherence C_{kappa,p}(M) = Tr[T_kappa(M_{kappa,p}) M_{kappa,pbar}];
/// identically zero at kappa = n since T_n vanishes.
inline double sector_coherence(const PauliSumOperator& M, int kappa, Parity p) {
  require_kappa(M.n, kappa, int(M.n));
  if (kappa % 2 != 0) throw std::invalid_argument("parity sectors need even kappa");
  auto [even, odd] = parity_sector_decompose(M, kappa);
  const PauliSumOperator& mine = (p == Parity::Even) ? even : odd;
  const PauliSumOperator& other = (p == Parity::Even) ? odd : even;
  PauliSumOperator t = apply_T(mine, kappa);
  // Tr[A B] = d * sum_sigma a_sigma b_sigma over the shared unsigned strings.
  Complex acc = 0;
  for (const auto& [key, a] : t.terms) acc += a * other.coefficient(key);
  return (M.dim() * acc).real();
}

}  // namespace matchvar
