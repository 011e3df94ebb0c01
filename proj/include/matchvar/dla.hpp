#pragma once

#include <algorithm>
#include <deque>
#include <set>
#include <vector>

#include "matchvar/dense.hpp"
#include "matchvar/majorana.hpp"
#include "matchvar/pauli.hpp"
#include "matchvar/pauli_sum.hpp"

namespace matchvar {

inline constexpr int kDefaultScanLimit = 8;  // 4^n Pauli strings enumerated

struct GeneratorSet {
  std::uint32_t n = 0;
  std::vector<PauliTerm> generators;  // unsigned, phase 0

  GeneratorSet() = default;
  GeneratorSet(std::uint32_t n, std::vector<PauliTerm> gens) : n(n), generators(std::move(gens)) {
    for (auto& g : generators) {
      if (g.n != n) throw DimensionError("GeneratorSet: mixed qubit counts");
      g.phase = 0;
    }
  }

  static GeneratorSet parse_lines(const std::vector<std::string>& lines);
};

/// {Z_i} and {X_i X_{i+1}}: the matchgate generators.
inline GeneratorSet matchgate_generators(std::uint32_t n) {
  std::vector<PauliTerm> gens;
  for (std::uint32_t i = 1; i <= n; ++i) gens.push_back(PauliTerm::single(n, i, 'Z'));
  for (std::uint32_t i = 1; i + 1 <= n; ++i) {
    PauliTerm t = multiply(PauliTerm::single(n, i, 'X'), PauliTerm::single(n, i + 1, 'X'));
    gens.push_back(t);
  }
  return GeneratorSet(n, std::move(gens));
}

inline GeneratorSet GeneratorSet::parse_lines(const std::vector<std::string>& lines) {
  std::vector<PauliTerm> gens;
  std::uint32_t n = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string text = lines[i];
    text.erase(std::remove_if(text.begin(), text.end(), [](char c) { return std::isspace(c); }),
               text.end());
    if (text.empty() || text[0] == '#') continue;
    PauliTerm t;
    try {
      t = PauliTerm::parse(text);
    } catch (const std::exception& e) {
      throw std::invalid_argument("line " + std::to_string(i + 1) + ": " + e.what());
    }
    if (n == 0) n = t.n;
    if (t.n != n)
      throw std::invalid_argument("line " + std::to_string(i + 1) +
                                  ": qubit count differs from previous generators");
    gens.push_back(t.unsigned_part());
  }
  if (n == 0) throw std::invalid_argument("no generators found");
  return GeneratorSet(n, std::move(gens));
}

struct ClosureBudgetError : std::runtime_error {
  std::size_t partial_size;
  explicit ClosureBudgetError(std::size_t size)
      : std::runtime_error("Lie closure exceeded the dimension budget (reached " +
                           std::to_string(size) + " elements)"),
        partial_size(size) {}
};

/// Pauli-string basis of the Lie closure of i*G: iterate half-commutators
/// until no new unsigned strings appear. Deterministic (sorted) output.
inline std::vector<PauliTerm> lie_closure(const GeneratorSet& g, std::size_t max_dim = 4096) {
  if (max_dim < g.generators.size())
    throw std::invalid_argument("lie_closure: max_dim below the generator count");
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  std::vector<PauliTerm> basis;
  std::deque<PauliTerm> work;
  auto push = [&](const PauliTerm& t) {
    if (t.x_mask == 0 && t.z_mask == 0) return;  // identity never appears
    if (seen.emplace(t.x_mask, t.z_mask).second) {
      basis.push_back(t.unsigned_part());
      work.push_back(t.unsigned_part());
      if (basis.size() > max_dim) throw ClosureBudgetError(basis.size());
    }
  };
  for (const auto& gen : g.generators) push(gen);
  while (!work.empty()) {
    PauliTerm a = work.front();
    work.pop_front();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      PauliTerm b = basis[i];
      if (auto hc = half_commutator(a, b)) push(hc->unsigned_part());
    }
  }
  std::sort(basis.begin(), basis.end(), unsigned_less);
  return basis;
}

inline void require_scan(std::uint32_t n, const char* what) {
  if (int(n) > kDefaultScanLimit)
    throw DimensionError(std::string(what) + ": n=" + std::to_string(n) +
                         " exceeds the 4^n scan limit (n <= 8)");
}

/// All unsigned Pauli strings commuting with every generator, by exhaustive
/// scan of the 4^n candidates.
inline std::vector<PauliTerm> linear_symmetries(const GeneratorSet& g) {
  require_scan(g.n, "linear_symmetries");
  std::vector<PauliTerm> out;
  const std::uint64_t mask = (std::uint64_t(1) << g.n) - 1;
  const std::uint64_t total = std::uint64_t(1) << (2 * g.n);
  for (std::uint64_t code = 0; code < total; ++code) {
    PauliTerm cand{g.n, code & mask, (code >> g.n) & mask, 0};
    bool ok = true;
    for (const auto& gen : g.generators)
      if (!commutes(cand, gen)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(cand);
  }
  std::sort(out.begin(), out.end(), unsigned_less);
  return out;
}

/// Vertices are the 4^n unsigned Pauli strings; S1 ~ S2 when some generator
/// half-commutes S1 into S2. Components are found by breadth-first traversal
/// and ordered by their lexicographically smallest member.
struct CommutatorGraph {
  std::uint32_t n = 0;
  std::vector<int> component_of;               // indexed by x | (z << n)
  std::vector<std::vector<PauliTerm>> components;  // each sorted

  int component_index(const PauliTerm& t) const {
    return component_of[t.x_mask | (t.z_mask << n)];
  }
};

inline CommutatorGraph commutator_graph(const GeneratorSet& g) {
  require_scan(g.n, "commutator_graph");
  CommutatorGraph graph;
  graph.n = g.n;
  const std::uint32_t n = g.n;
  const std::uint64_t mask = (std::uint64_t(1) << n) - 1;
  const std::uint64_t total = std::uint64_t(1) << (2 * n);
  graph.component_of.assign(total, -1);
  for (std::uint64_t start = 0; start < total; ++start) {
    if (graph.component_of[start] >= 0) continue;
    int id = int(graph.components.size());
    std::vector<PauliTerm> members;
    std::deque<std::uint64_t> work{start};
    graph.component_of[start] = id;
    while (!work.empty()) {
      std::uint64_t code = work.front();
      work.pop_front();
      PauliTerm t{n, code & mask, (code >> n) & mask, 0};
      members.push_back(t);
      for (const auto& gen : g.generators) {
        auto hc = half_commutator(t, gen);
        if (!hc) continue;
        std::uint64_t nb = hc->x_mask | (hc->z_mask << n);
        if (graph.component_of[nb] < 0) {
          graph.component_of[nb] = id;
          work.push_back(nb);
        }
      }
    }
    std::sort(members.begin(), members.end(), unsigned_less);
    graph.components.push_back(std::move(members));
  }
  // Order components by smallest member; remap ids accordingly.
  std::vector<int> order(graph.components.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = int(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return unsigned_less(graph.components[a].front(), graph.components[b].front());
  });
  std::vector<int> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = int(i);
  std::vector<std::vector<PauliTerm>> sorted;
  sorted.reserve(order.size());
  for (int idx : order) sorted.push_back(std::move(graph.components[idx]));
  graph.components = std::move(sorted);
  for (auto& id : graph.component_of) id = rank[id];
  return graph;
}

/// A quadratic symmetry sum_t weight * (left_t x right_t) on H x H, with
/// unsigned Pauli factors and complex weights.
struct QuadraticSymmetry {
  std::string label;
  std::uint32_t n = 0;
  std::vector<std::tuple<PauliTerm, PauliTerm, Complex>> terms;

  Matrix to_dense() const {
    require_dense(2 * n, "QuadraticSymmetry::to_dense");
    const std::uint64_t d = std::uint64_t(1) << n;
    Matrix m = Matrix::Zero(d * d, d * d);
    for (const auto& [left, right, w] : terms)
      m += w * kron(matchvar::to_dense(left), matchvar::to_dense(right));
    return m;
  }
};

/// Hilbert-Schmidt inner product Tr[A† B] of two symbolic quadratic
/// symmetries; factors contract as Tr[sigma sigma'] = d delta.
inline Complex quadratic_inner(const QuadraticSymmetry& a, const QuadraticSymmetry& b) {
  const double d = std::ldexp(1.0, int(a.n));
  Complex acc = 0;
  for (const auto& [la, ra, wa] : a.terms)
    for (const auto& [lb, rb, wb] : b.terms)
      if (la.x_mask == lb.x_mask && la.z_mask == lb.z_mask && ra.x_mask == rb.x_mask &&
          ra.z_mask == rb.z_mask)
        acc += std::conj(wa) * wb;
  return acc * d * d;
}

namespace detail {

inline void merge_term(std::vector<std::tuple<PauliTerm, PauliTerm, Complex>>& terms,
                       const PauliTerm& l, const PauliTerm& r, Complex w) {
  for (auto& [tl, tr, tw] : terms) {
    if (tl.x_mask == l.x_mask && tl.z_mask == l.z_mask && tr.x_mask == r.x_mask &&
        tr.z_mask == r.z_mask) {
      tw += w;
      return;
    }
  }
  terms.emplace_back(l.unsigned_part(), r.unsigned_part(), w);
}

inline void drop_zero_terms(QuadraticSymmetry& q) {
  std::erase_if(q.terms, [](const auto& t) { return std::abs(std::get<2>(t)) < 1e-13; });
}

}  // namespace detail

/// Raw commutant basis Q_kappa^j = sum_{S in C_kappa} S x (L_j S) for every
/// component kappa and linear symmetry L_j, followed by a Hermitian
/// completion: non-Hermitian members are split into (Q+Q†)/2 and i(Q-Q†)/2,
/// then the whole set is Gram-Schmidt orthonormalized.
inline std::vector<QuadraticSymmetry> quadratic_symmetry_basis(const GeneratorSet& g) {
  std::vector<PauliTerm> symmetries = linear_symmetries(g);
  CommutatorGraph graph = commutator_graph(g);
  std::vector<QuadraticSymmetry> raw;
  for (std::size_t k = 0; k < graph.components.size(); ++k) {
    for (std::size_t j = 0; j < symmetries.size(); ++j) {
      QuadraticSymmetry q;
      q.n = g.n;
      q.label = "Q[" + std::to_string(k) + "," + std::to_string(j) + "]";
      for (const PauliTerm& s : graph.components[k]) {
        PauliTerm ls = multiply(symmetries[j], s);
        q.terms.emplace_back(s, ls.unsigned_part(), ls.coefficient());
      }
      raw.push_back(std::move(q));
    }
  }
  // Hermitian completion
  std::vector<QuadraticSymmetry> herm;
  for (const auto& q : raw) {
    bool hermitian = true;
    for (const auto& [l, r, w] : q.terms)
      if (std::abs(w.imag()) > 1e-13) hermitian = false;
    if (hermitian) {
      herm.push_back(q);
      continue;
    }
    QuadraticSymmetry re = q, im = q;
    re.label = q.label + "+";
    im.label = q.label + "-";
    for (auto& [l, r, w] : re.terms) w = Complex(w.real(), 0);
    for (auto& [l, r, w] : im.terms) w = Complex(-w.imag(), 0);
    detail::drop_zero_terms(re);
    detail::drop_zero_terms(im);
    if (!re.terms.empty()) herm.push_back(std::move(re));
    if (!im.terms.empty()) herm.push_back(std::move(im));
  }
  // Gram-Schmidt over the symbolic representation
  std::vector<QuadraticSymmetry> ortho;
  for (auto& q : herm) {
    for (const auto& prev : ortho) {
      Complex overlap = quadratic_inner(prev, q);
      if (std::abs(overlap) < 1e-13) continue;
      for (const auto& [l, r, w] : prev.terms) detail::merge_term(q.terms, l, r, -overlap * w);
    }
    detail::drop_zero_terms(q);
    if (q.terms.empty()) continue;
    double norm = std::sqrt(quadratic_inner(q, q).real());
    if (norm < 1e-10) continue;
    for (auto& [l, r, w] : q.terms) w /= norm;
    ortho.push_back(std::move(q));
  }
  return ortho;
}

enum class QBasisFlavor { Standard, Parity };

namespace detail {

// c^s as (unsigned Pauli, coefficient) for direct use in tensor factors.
inline std::pair<PauliTerm, Complex> monomial_factor(const MajoranaMonomial& m) {
  PauliTerm p = monomial_to_pauli(m);
  return {p.unsigned_part(), p.coefficient()};
}

inline void all_subsets_of_degree(std::uint32_t n, int kappa,
                                  std::vector<std::uint64_t>& out) {
  out.clear();
  const std::uint64_t total = std::uint64_t(1) << (2 * n);
  if (kappa == 0) {
    out.push_back(0);
    return;
  }
  // Gosper's hack over 2n-bit words
  std::uint64_t v = (std::uint64_t(1) << kappa) - 1;
  while (v < total) {
    out.push_back(v);
    std::uint64_t c = v & -v, r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
  }
}

}  // namespace detail

/// Closed-form Hermitian orthonormal commutant bases for the matchgate DLA.
///
/// Standard flavor: Q_kappa^0 = N_kappa sum_s c^s x c^s and
/// Q_kappa^1 = N_kappa (-i)^n i^{kappa mod 2} sum_s (-1)^{pi(s)} c^s x c^sbar,
/// kappa = 0..2n, N_kappa = 1/(d sqrt(C(2n,kappa))).
///
/// Parity flavor: for even kappa <= n the four combinations
/// Q^{lg} = M_kappa sum_s (c^s + (-1)^l P c^s) x (c^s + (-1)^g P c^s) with
/// M_kappa = N_kappa / 2^{1 + delta_{kappa,n}/2} (the two vanishing mixed
/// combinations at kappa = n are dropped); odd kappa keep the standard pairs.
inline std::vector<QuadraticSymmetry> matchgate_Q_basis(std::uint32_t n, QBasisFlavor flavor) {
  std::vector<QuadraticSymmetry> out;
  const double d = std::ldexp(1.0, int(n));
  static constexpr Complex units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const std::uint64_t full = (std::uint64_t(1) << (2 * n)) - 1;
  std::vector<std::uint64_t> subsets;

  auto binom = [](int a, int b) {
    double r = 1;
    for (int i = 0; i < b; ++i) r = r * double(a - i) / double(i + 1);
    return r;
  };

  auto standard_pair = [&](int kappa, std::vector<QuadraticSymmetry>& dst) {
    const double norm = 1.0 / (d * std::sqrt(binom(2 * int(n), kappa)));
    QuadraticSymmetry q0, q1;
    q0.n = q1.n = n;
    q0.label = "Q" + std::to_string(kappa) + "^0";
    q1.label = "Q" + std::to_string(kappa) + "^1";
    detail::all_subsets_of_degree(n, kappa, subsets);
    for (std::uint64_t s : subsets) {
      MajoranaMonomial m(n, s), mbar(n, full & ~s);
      auto [ps, cs] = detail::monomial_factor(m);
      auto [pbar, cbar] = detail::monomial_factor(mbar);
      q0.terms.emplace_back(ps, ps, norm * cs * cs);
      int sign = (m.index_sum() % 2 == 0) ? 1 : -1;
      Complex w = norm * units[(3 * int(n) + (kappa & 1)) & 3] * double(sign) * cs * cbar;
      q1.terms.emplace_back(ps, pbar, w);
    }
    dst.push_back(std::move(q0));
    dst.push_back(std::move(q1));
  };

  if (flavor == QBasisFlavor::Standard) {
    for (int kappa = 0; kappa <= 2 * int(n); ++kappa) standard_pair(kappa, out);
    return out;
  }

  // Parity flavor
  const PauliTerm P = parity_operator(n);
  for (int kappa = 0; kappa <= int(n); ++kappa) {
    if (kappa % 2 == 1) {
      standard_pair(kappa, out);
      if (kappa != int(n)) standard_pair(2 * int(n) - kappa, out);
      continue;
    }
    const bool middle = (kappa == int(n));
    const double norm =
        1.0 / (d * std::sqrt(binom(2 * int(n), kappa)) * 2.0 * (middle ? std::sqrt(2.0) : 1.0));
    detail::all_subsets_of_degree(n, kappa, subsets);
    for (int lambda = 0; lambda <= 1; ++lambda) {
      for (int gamma = 0; gamma <= 1; ++gamma) {
        if (middle && lambda != gamma) continue;  // Q_n^{+-} = Q_n^{-+} = 0
        QuadraticSymmetry q;
        q.n = n;
        q.label = "Q" + std::to_string(kappa) + "^" + (lambda ? "-" : "+") + (gamma ? "-" : "+");
        for (std::uint64_t s : subsets) {
          MajoranaMonomial m(n, s);
          auto [ps, cs] = detail::monomial_factor(m);
          PauliTerm pcs = multiply(P, monomial_to_pauli(m));
          PauliTerm pcs_unsigned = pcs.unsigned_part();
          Complex pc = pcs.coefficient();
          double ls = lambda ? -1.0 : 1.0;
          double gs = gamma ? -1.0 : 1.0;
          detail::merge_term(q.terms, ps, ps, norm * cs * cs);
          detail::merge_term(q.terms, ps, pcs_unsigned, norm * cs * gs * pc);
          detail::merge_term(q.terms, pcs_unsigned, ps, norm * ls * pc * cs);
          detail::merge_term(q.terms, pcs_unsigned, pcs_unsigned, norm * ls * gs * pc * pc);
        }
        detail::drop_zero_terms(q);
        out.push_back(std::move(q));
      }
    }
  }
  return out;
}

/// [H x I + I x H, Q] residual norm, densified; zero for true symmetries.
inline double quadratic_commutator_residual(const QuadraticSymmetry& q, const PauliTerm& h) {
  Matrix hd = to_dense(h);
  Matrix big = kron(hd, Matrix::Identity(hd.rows(), hd.cols())) +
               kron(Matrix::Identity(hd.rows(), hd.cols()), hd);
  Matrix qd = q.to_dense();
  return max_abs(big * qd - qd * big);
}

}  // namespace matchvar
