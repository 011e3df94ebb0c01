#include "matchvar/modules.hpp"

#include "matchvar/states.hpp"
#include "test_util.hpp"

using namespace matchvar;
using testutil::random_hermitian_sum;

TEST_CASE("decompose maps each Pauli term to one monomial") {
  // Z_1 at n=2: single entry at kappa=2, monomial {1,2}
  PauliSumOperator z1 = PauliSumOperator::from_term(PauliTerm::parse("ZI"));
  ModuleDecomposition dec = decompose(z1);
  REQUIRE(dec.coef.size() == 1);
  auto it = dec.coef.begin();
  CHECK(MajoranaMonomial(2, it->first) == MajoranaMonomial::from_indices(2, {1, 2}));
  CHECK(std::abs(std::abs(it->second) - 2.0) < 1e-14);  // |Tr[B_m Z1]| = sqrt(d)

  // identity at any n: single entry at kappa=0
  PauliSumOperator ident = PauliSumOperator::from_term(PauliTerm::identity(3));
  ModuleDecomposition di = decompose(ident);
  REQUIRE(di.coef.size() == 1);
  CHECK(di.coef.begin()->first == 0);
}

TEST_CASE("decompose of the two-qubit all-zeros projector") {
  PauliSumOperator rho = computational_zero_density(2);
  ModuleDecomposition dec = decompose(rho);
  REQUIRE(dec.coef.size() == 4);
  for (std::uint64_t subset : {0x0ULL, 0x3ULL, 0xCULL, 0xFULL})
    CHECK(std::abs(std::abs(dec.coefficient(subset)) - 0.5) < 1e-14);
}

TEST_CASE("kappa purities") {
  // |0..0><0..0| has P_2 = n/2^n
  for (std::uint32_t n : {1u, 3u}) {
    PauliSumOperator rho = computational_zero_density(n);
    CHECK(kappa_purity(rho, 2) == Catch::Approx(double(n) / std::ldexp(1.0, int(n))).margin(1e-14));
  }

  PauliSumOperator ident = PauliSumOperator::from_term(PauliTerm::identity(2), 1.0);
  for (int k = 1; k <= 4; ++k) CHECK(kappa_purity(ident, k) == 0.0);

  // |+><+| at n=1: rho_1 = X/2, P_1 = 1/2
  PauliSumOperator plus(1);
  plus.add(PauliTerm::identity(1), 0.5);
  plus.add(PauliTerm::parse("X"), 0.5);
  CHECK(kappa_purity(plus, 1) == Catch::Approx(0.5).margin(1e-14));

  CHECK_THROWS_AS(kappa_purity(plus, 3), std::out_of_range);
}

TEST_CASE("kappa coherences") {
  // Gaussian |0..0>: C_kappa = P_kappa for even kappa (P|psi> = |psi>)
  for (std::uint32_t n : {2u, 3u}) {
    PauliSumOperator rho = computational_zero_density(n);
    for (int k = 0; k <= 2 * int(n); k += 2)
      CHECK(kappa_coherence(rho, k) == Catch::Approx(kappa_purity(rho, k)).margin(1e-12));
  }

  // traceless operator in a single module away from its parity partner
  PauliSumOperator z1 = PauliSumOperator::from_term(PauliTerm::parse("ZII"));
  for (int k = 0; k <= 6; ++k) CHECK(kappa_coherence(z1, k) == Catch::Approx(0.0).margin(1e-14));

  // |+><+| at n=1, kappa=1: i Tr[Z (X/2)(X/2)] = 0
  PauliSumOperator plus(1);
  plus.add(PauliTerm::identity(1), 0.5);
  plus.add(PauliTerm::parse("X"), 0.5);
  CHECK(kappa_coherence(plus, 1) == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("reconstruction and completeness on random operators") {
  SplitMix64 rng(31);
  for (std::uint32_t n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 4; ++trial) {
      PauliSumOperator M = random_hermitian_sum(rng, n);
      ModuleDecomposition dec = decompose(M);
      Matrix rebuilt = dec.reconstruct().to_dense();
      CHECK(max_abs(rebuilt - M.to_dense()) < 1e-10);

      double total = 0;
      for (int k = 0; k <= 2 * int(n); ++k) total += kappa_purity(M, k);
      CHECK(total == Catch::Approx(M.hs_norm_sq()).margin(1e-10));
    }
  }
  // one larger reconstruction, n=6
  PauliSumOperator M6 = random_hermitian_sum(rng, 6);
  CHECK(max_abs(decompose(M6).reconstruct().to_dense() - M6.to_dense()) < 1e-10);
}

TEST_CASE("purity of a pure state sums to one in the orthonormal basis") {
  // With Tr[B_i B_j] = delta_ij the monogamy identity reads
  // sum_kappa P_kappa(rho) = Tr[rho^2].
  PauliSumOperator rho = computational_zero_density(3);
  double total = 0;
  for (int k = 0; k <= 6; ++k) total += kappa_purity(rho, k);
  CHECK(total == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("parity sector basics") {
  // (I+P)/sqrt(2d) at kappa=0 is fully even
  std::uint32_t n = 2;
  double sqrt2d = std::sqrt(2.0 * 4.0);
  PauliSumOperator M(n);
  M.add(PauliTerm::identity(n), 1.0 / sqrt2d);
  M.add(parity_operator(n), 1.0 / sqrt2d);
  auto [even0, odd0] = parity_sector_decompose(M, 0);
  CHECK(sector_purity(M, 0, Parity::Even) == Catch::Approx(1.0).margin(1e-12));
  CHECK(sector_purity(M, 0, Parity::Odd) == Catch::Approx(0.0).margin(1e-12));
  CHECK(odd0.size() == 0);
  CHECK(max_abs(even0.to_dense() - M.to_dense()) < 1e-12);

  // Z_1 at n=2, kappa=2: equal split between even and odd sectors
  PauliSumOperator z1 = PauliSumOperator::from_term(PauliTerm::parse("ZI"));
  CHECK(sector_purity(z1, 2, Parity::Even) == Catch::Approx(2.0).margin(1e-12));
  CHECK(sector_purity(z1, 2, Parity::Odd) == Catch::Approx(2.0).margin(1e-12));
  auto [even2, odd2] = parity_sector_decompose(z1, 2);
  CHECK(max_abs((even2 + odd2).to_dense() - z1.to_dense()) < 1e-12);

  // parity-even state: all odd-sector components vanish
  PauliSumOperator rho = computational_zero_density(2);
  for (int k = 0; k <= 2; k += 2) {
    CHECK(sector_purity(rho, k, Parity::Odd) == Catch::Approx(0.0).margin(1e-12));
    CHECK(sector_coherence(rho, k, Parity::Even) == Catch::Approx(0.0).margin(1e-12));
  }

  CHECK_THROWS_AS(parity_sector_decompose(z1, 1), std::invalid_argument);
}

TEST_CASE("sector purities complete the module purities") {
  SplitMix64 rng(32);
  for (std::uint32_t n = 2; n <= 4; ++n) {
    PauliSumOperator M = random_hermitian_sum(rng, n);
    for (int k = 0; k <= int(n); k += 2) {
      double lhs = sector_purity(M, k, Parity::Even) + sector_purity(M, k, Parity::Odd);
      double rhs = kappa_purity(M, k);
      if (k != int(n)) rhs += kappa_purity(M, 2 * int(n) - k);
      CHECK(lhs == Catch::Approx(rhs).margin(1e-10));
    }
  }
}

TEST_CASE("sector reconstruction splits B_kappa + B_{2n-kappa}") {
  SplitMix64 rng(33);
  for (std::uint32_t n = 2; n <= 3; ++n) {
    PauliSumOperator M = random_hermitian_sum(rng, n);
    for (int k = 0; k <= int(n); k += 2) {
      auto [even, odd] = parity_sector_decompose(M, k);
      ModuleDecomposition dec = decompose(M);
      PauliSumOperator expect = dec.component(k);
      if (k != int(n)) expect.add(dec.component(2 * int(n) - k));
      CHECK(max_abs((even + odd).to_dense() - expect.to_dense()) < 1e-10);
    }
  }
}

TEST_CASE("parity sector basis is orthonormal (dense Gram, n<=3)") {
  for (std::uint32_t n : {2u, 3u}) {
    const std::uint64_t full = (std::uint64_t(1) << (2 * n)) - 1;
    std::vector<Matrix> elements;
    for (int k = 0; k <= int(n); k += 2) {
      for (std::uint64_t s = 0; s <= full; ++s) {
        if (std::popcount(s) != k) continue;
        if (k == int(n) && !(s & 1)) continue;
        MajoranaMonomial ms(n, s), msbar(n, full & ~s);
        for (Parity p : {Parity::Even, Parity::Odd}) {
          double sign = detail::sector_sign(ms, p, n);
          PauliSumOperator e = hermitian_basis_element(ms).scaled(1.0 / std::sqrt(2.0));
          e.add(hermitian_basis_element(msbar).scaled(sign / std::sqrt(2.0)));
          elements.push_back(e.to_dense());
        }
      }
    }
    for (std::size_t i = 0; i < elements.size(); ++i) {
      CHECK(max_abs(elements[i] - elements[i].adjoint().eval()) < 1e-12);
      for (std::size_t j = i; j < elements.size(); ++j) {
        Complex tr = (elements[i].adjoint() * elements[j]).trace();
        CHECK(std::abs(tr - (i == j ? Complex(1, 0) : Complex(0, 0))) < 1e-12);
      }
    }
  }
}

TEST_CASE("T map") {
  std::uint32_t n = 2;
  // T_n annihilates everything
  SplitMix64 rng(34);
  PauliSumOperator M = random_hermitian_sum(rng, n);
  CHECK(apply_T(M, int(n)).hs_norm_sq() < 1e-20);

  // T_kappa(B^e) = B^o
  const std::uint64_t full = 0xF;
  for (std::uint64_t s : {0x0ULL}) {
    MajoranaMonomial ms(n, s), msbar(n, full & ~s);
    double se = detail::sector_sign(ms, Parity::Even, n);
    double so = detail::sector_sign(ms, Parity::Odd, n);
    PauliSumOperator be = hermitian_basis_element(ms).scaled(1.0 / std::sqrt(2.0));
    be.add(hermitian_basis_element(msbar).scaled(se / std::sqrt(2.0)));
    PauliSumOperator bo = hermitian_basis_element(ms).scaled(1.0 / std::sqrt(2.0));
    bo.add(hermitian_basis_element(msbar).scaled(so / std::sqrt(2.0)));
    CHECK(max_abs(apply_T(be, 0).to_dense() - bo.to_dense()) < 1e-12);
    CHECK(max_abs(apply_T(bo, 0).to_dense() - be.to_dense()) < 1e-12);
  }

  // T_0(I/sqrt(d)) = (I - sign * P)/sqrt(d) style arithmetic, dense check
  PauliSumOperator unit(n);
  unit.add(PauliTerm::identity(n), 0.5);  // I/sqrt(d) at n=2
  ModuleDecomposition dec = decompose(unit);
  Matrix lhs = apply_T(unit, 0).to_dense();
  Matrix rhs = dec.component(0).to_dense() - dec.component(4).to_dense();
  CHECK(max_abs(lhs - rhs) == 0.0);
  CHECK(max_abs(lhs - unit.to_dense()) < 1e-12);  // no B_4 part here

  CHECK_THROWS_AS(apply_T(M, 3), std::out_of_range);
}
