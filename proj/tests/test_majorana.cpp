#include "matchvar/majorana.hpp"

#include "matchvar/dense.hpp"
#include "test_util.hpp"

using namespace matchvar;

namespace {
long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}
}  // namespace

TEST_CASE("Jordan-Wigner strings") {
  CHECK(majorana(2, 1).to_string() == "XI");
  CHECK(majorana(2, 2).to_string() == "YI");
  CHECK(majorana(2, 3).to_string() == "ZX");
  CHECK(majorana(2, 4).to_string() == "ZY");
  CHECK(majorana(3, 5).to_string() == "ZZX");
  CHECK(majorana(3, 6).to_string() == "ZZY");
  CHECK_THROWS_AS(majorana(2, 5), std::out_of_range);
  CHECK_THROWS_AS(majorana(2, 0), std::out_of_range);
}

TEST_CASE("Majoranas anticommute, {c_mu, c_nu} = 2 delta_mu_nu") {
  for (std::uint32_t n = 1; n <= 4; ++n) {
    for (std::uint32_t mu = 1; mu <= 2 * n; ++mu) {
      Matrix cmu = to_dense(majorana(n, mu));
      for (std::uint32_t nu = mu; nu <= 2 * n; ++nu) {
        Matrix cnu = to_dense(majorana(n, nu));
        Matrix anti = cmu * cnu + cnu * cmu;
        if (mu == nu) {
          CHECK(max_abs(anti - 2.0 * Matrix::Identity(anti.rows(), anti.cols())) == 0.0);
        } else {
          CHECK(max_abs(anti) == 0.0);
        }
      }
    }
  }
}

TEST_CASE("monomial products") {
  // c1 c2 = iZ at n=1
  PauliTerm p = monomial_to_pauli(MajoranaMonomial::from_indices(1, {1, 2}));
  CHECK(p.to_string() == "iZ");

  // empty product is the identity
  CHECK(monomial_to_pauli(MajoranaMonomial(3, 0)) == PauliTerm::identity(3));

  // {1,2,3} at n=2, checked densely against the JW factors
  MajoranaMonomial m = MajoranaMonomial::from_indices(2, {1, 2, 3});
  Matrix lhs = to_dense(monomial_to_pauli(m));
  Matrix rhs = to_dense(majorana(2, 1)) * to_dense(majorana(2, 2)) * to_dense(majorana(2, 3));
  CHECK(max_abs(lhs - rhs) == 0.0);
  CHECK(monomial_to_pauli(m).unsigned_part() == PauliTerm::parse("IX"));
}

TEST_CASE("trace orthogonality over all monomial pairs at n<=3") {
  // Tr[c^s c^s'] = (-1)^{floor(k/2)} d delta_{ss'}
  for (std::uint32_t n = 1; n <= 3; ++n) {
    double d = std::ldexp(1.0, int(n));
    std::uint64_t total = std::uint64_t(1) << (2 * n);
    for (std::uint64_t s = 0; s < total; ++s) {
      Matrix cs = to_dense(monomial_to_pauli(MajoranaMonomial(n, s)));
      for (std::uint64_t t = s; t < total; ++t) {
        Matrix ct = to_dense(monomial_to_pauli(MajoranaMonomial(n, t)));
        Complex tr = (cs * ct).trace();
        if (s == t) {
          int k = std::popcount(s);
          double expected = ((k / 2) % 2 == 0) ? d : -d;
          CHECK(std::abs(tr - Complex(expected, 0)) < 1e-12);
        } else {
          CHECK(std::abs(tr) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("pauli_to_monomial inverts monomial_to_pauli") {
  for (std::uint32_t n = 1; n <= 3; ++n) {
    std::uint64_t total = std::uint64_t(1) << (2 * n);
    std::vector<long long> degree_counts(2 * n + 1, 0);
    for (std::uint64_t s = 0; s < total; ++s) {
      MajoranaMonomial m(n, s);
      ScaledMonomial back = pauli_to_monomial(monomial_to_pauli(m));
      CHECK(back.monomial == m);
      CHECK(back.phase == 0);
    }
    // and the inverse direction partitions the 4^n unsigned Paulis
    std::uint64_t mask = (std::uint64_t(1) << n) - 1;
    for (std::uint64_t code = 0; code < total; ++code) {
      PauliTerm p{n, code & mask, (code >> n) & mask, 0};
      ScaledMonomial sm = pauli_to_monomial(p);
      ++degree_counts[sm.monomial.degree()];
      PauliTerm rebuilt = monomial_to_pauli(sm.monomial).with_phase(
          monomial_to_pauli(sm.monomial).phase + sm.phase);
      CHECK(rebuilt == p);
    }
    for (std::uint32_t k = 0; k <= 2 * n; ++k) CHECK(degree_counts[k] == binom(2 * n, k));
  }
}

TEST_CASE("known monomial images") {
  // Z_1 = -i c1 c2, i.e. "ZI" has monomial {1,2} with phase 3
  ScaledMonomial sm = pauli_to_monomial(PauliTerm::parse("ZI"));
  CHECK(sm.monomial == MajoranaMonomial::from_indices(2, {1, 2}));
  CHECK(sm.phase == 3);

  // X_2 lies in B_3 (main text: O = X_j is in B_{2j-1})
  CHECK(pauli_to_monomial(PauliTerm::parse("IX")).monomial ==
        MajoranaMonomial::from_indices(2, {1, 2, 3}));

  ScaledMonomial ident = pauli_to_monomial(PauliTerm::identity(4));
  CHECK(ident.monomial.degree() == 0);
  CHECK(ident.phase == 0);
}

TEST_CASE("parity operator") {
  CHECK(parity_operator(1).to_string() == "Z");
  CHECK(parity_operator(2).to_string() == "ZZ");
  CHECK(parity_operator(3).to_string() == "ZZZ");

  // P = (-i)^n c_1...c_{2n}, checked densely at n=3
  std::uint32_t n = 3;
  PauliTerm full = monomial_to_pauli(MajoranaMonomial(n, (std::uint64_t(1) << (2 * n)) - 1));
  Matrix lhs = to_dense(full.with_phase(full.phase + 3 * int(n)));  // (-i)^n = i^{3n}
  CHECK(max_abs(lhs - to_dense(parity_operator(n))) == 0.0);
}

TEST_CASE("multiplication by parity flips degree to 2n-kappa") {
  SplitMix64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    std::uint32_t n = 1 + (rng.next() % 4);
    std::uint64_t subset = rng.next() & ((std::uint64_t(1) << (2 * n)) - 1);
    MajoranaMonomial m(n, subset);
    PauliTerm prod = multiply(parity_operator(n), monomial_to_pauli(m));
    CHECK(pauli_to_monomial(prod).monomial.degree() == 2 * int(n) - m.degree());
  }
}

TEST_CASE("hermitian basis elements") {
  // {} at n=2 -> I/2
  PauliSumOperator b0 = hermitian_basis_element(MajoranaMonomial(2, 0));
  CHECK(b0.size() == 1);
  CHECK(std::abs(b0.coefficient(PauliTerm::identity(2)) - Complex(0.5, 0)) < 1e-15);

  // {1} at n=1 -> X/sqrt(2)
  PauliSumOperator b1 = hermitian_basis_element(MajoranaMonomial::from_indices(1, {1}));
  CHECK(std::abs(b1.coefficient(PauliTerm::parse("X")) - Complex(1 / std::sqrt(2.0), 0)) < 1e-15);

  // {1,2} at n=1: i^{floor(2/2)} c1 c2 / sqrt(2) = i (iZ) / sqrt(2) = -Z/sqrt(2).
  // Derived densely below; Hermitian and unit-norm either way.
  MajoranaMonomial m12 = MajoranaMonomial::from_indices(1, {1, 2});
  PauliSumOperator b2 = hermitian_basis_element(m12);
  Matrix direct = Complex(0, 1) * to_dense(majorana(1, 1)) * to_dense(majorana(1, 2)) /
                  std::sqrt(2.0);
  CHECK(max_abs(b2.to_dense() - direct) < 1e-15);
  CHECK(std::abs(b2.coefficient(PauliTerm::parse("Z")) - Complex(-1 / std::sqrt(2.0), 0)) <
        1e-15);

  // Hermiticity and orthonormality across all monomials at n=2
  std::uint32_t n = 2;
  std::uint64_t total = std::uint64_t(1) << (2 * n);
  std::vector<Matrix> basis;
  for (std::uint64_t s = 0; s < total; ++s)
    basis.push_back(hermitian_basis_element(MajoranaMonomial(n, s)).to_dense());
  for (std::uint64_t s = 0; s < total; ++s) {
    CHECK(max_abs(basis[s] - basis[s].adjoint().eval()) < 1e-14);
    for (std::uint64_t t = s; t < total; ++t) {
      Complex tr = (basis[s] * basis[t]).trace();
      CHECK(std::abs(tr - (s == t ? Complex(1, 0) : Complex(0, 0))) < 1e-13);
    }
  }
}
