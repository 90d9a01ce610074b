#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bsurf/lattice.hpp"
#include "oracles.hpp"

using namespace bsurf;

TEST_CASE("family gram determinant is 2d") {
  for (std::int64_t d = 1; d <= 50; ++d) {
    GramLattice l = build_family_gram(d);
    CHECK(gram_determinant(l) == 2 * d);
    CHECK(gram_determinant(l) == oracles::cofactor_determinant(l.gram));
  }
}

TEST_CASE("family gram signature and hyperbolic sublattice") {
  for (std::int64_t d : {1, 2, 3, 5, 10, 50}) {
    GramLattice l = build_family_gram(d);
    LatticeReport rep = lattice_report(l);
    CHECK(rep.rank == 3);
    CHECK(rep.positive == 1);
    CHECK(rep.negative == 2);
    CHECK(rep.even);
    // First two basis vectors span a hyperbolic pair: squares 0, pairing 1.
    CHECK(l.gram[0][0] == 0);
    CHECK(l.gram[1][1] == 0);
    CHECK(l.gram[0][1] == 1);
  }
}

TEST_CASE("hyperbolic plane report") {
  GramLattice u({{0, 1}, {1, 0}}, "U");
  LatticeReport rep = lattice_report(u);
  CHECK(rep.rank == 2);
  CHECK(rep.determinant == -1);
  CHECK(rep.even);
  CHECK(rep.positive == 1);
  CHECK(rep.negative == 1);
  CHECK(gram_determinant(u) == oracles::cofactor_determinant(u.gram));
}

TEST_CASE("kummer lattice invariants") {
  GramLattice k = build_kummer_lattice();
  LatticeReport rep = lattice_report(k);
  CHECK(rep.rank == 16);
  CHECK(rep.determinant == 64);  // (-1)^16 * 2^6
  CHECK(rep.even);
  CHECK(rep.positive == 0);
  CHECK(rep.negative == 16);

  // Index of the (-2)-span inside the glued lattice: det ratio 2^16/2^6
  // is the square of the index, so the index is 2^5.
  BigInt ratio = big_pow(BigInt(2), 16) / rep.determinant;
  CHECK(ratio == big_pow(BigInt(2), 10));
}

TEST_CASE("the sixteen base classes survive in the kummer lattice") {
  // In scaled coordinates the class e_i is 2 * unit vector; it must lie in
  // the glued lattice with square -2 and pairwise pairing 0.
  BigMatrix basis = kummer_scaled_basis();
  GramLattice k = build_kummer_lattice();

  // Gram consistency: gram[i][j] = -(b_i . b_j)/2.
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      BigInt dot = 0;
      for (int t = 0; t < 16; ++t) dot += basis[i][t] * basis[j][t];
      CHECK(BigInt(k.gram[i][j]) == -dot / 2);
    }

  // Membership: solve 2 e_i = sum x_j b_j with integral x by back
  // substitution in the upper-triangular Hermite basis.
  std::vector<std::size_t> pivot(16);
  for (std::size_t i = 0; i < 16; ++i) {
    std::size_t c = 0;
    while (c < 16 && basis[i][c] == 0) ++c;
    pivot[i] = c;
  }
  for (int i = 0; i < 16; ++i) {
    std::vector<BigInt> v(16, 0);
    v[i] = 2;
    for (std::size_t row = 0; row < 16; ++row) {
      std::size_t c = pivot[row];
      REQUIRE(v[c] % basis[row][c] == 0);
      BigInt q = v[c] / basis[row][c];
      for (int t = 0; t < 16; ++t) v[t] -= q * basis[row][t];
    }
    for (int t = 0; t < 16; ++t) CHECK(v[t] == 0);
    // Pairings in scaled coordinates: -(2e_i . 2e_j)/2 = -2 delta_ij.
    for (int j = 0; j < 16; ++j) {
      std::int64_t dot = i == j ? 4 : 0;
      CHECK(-dot / 2 == (i == j ? -2 : 0));
    }
  }
}

TEST_CASE("lambda_prod is the orthogonal sum with a hyperbolic plane") {
  GramLattice l = build_lambda_prod();
  LatticeReport rep = lattice_report(l);
  CHECK(rep.rank == 18);
  CHECK(rep.determinant == -64);  // det(Kummer) * det(U)
  CHECK(rep.even);
  CHECK(rep.positive == 1);
  CHECK(rep.negative == 17);
  // Cross pairings between the two summands vanish.
  for (int i = 0; i < 16; ++i) {
    CHECK(l.gram[i][16] == 0);
    CHECK(l.gram[i][17] == 0);
  }
  CHECK(l.gram[16][17] == 1);
  CHECK(l.gram[16][16] == 0);
  CHECK(l.gram[17][17] == 0);
}

TEST_CASE("degenerate and odd lattices are reported") {
  GramLattice zero({{0, 0}, {0, 0}}, "zero");
  LatticeReport rep = lattice_report(zero);
  CHECK(rep.degenerate);
  CHECK(rep.zero == 2);

  GramLattice odd({{1, 0}, {0, -3}}, "odd");
  LatticeReport orep = lattice_report(odd);
  CHECK(!orep.even);
  CHECK(orep.positive == 1);
  CHECK(orep.negative == 1);

  CHECK_THROWS_AS(GramLattice({{0, 1}, {2, 0}}, "asym"), PreconditionError);
}

TEST_CASE("gram determinant matches the cofactor oracle up to rank 6") {
  // Assorted small symmetric matrices, including indefinite and degenerate.
  std::vector<std::vector<std::vector<std::int64_t>>> cases = {
      {{2}},
      {{0, 1}, {1, 0}},
      {{2, 1}, {1, 2}},
      {{-2, 1, 0}, {1, -2, 1}, {0, 1, -2}},
      {{0, 1, 1}, {1, 0, 7}, {1, 7, 0}},
      {{2, 0, 0, 1}, {0, 2, 1, 0}, {0, 1, 2, 0}, {1, 0, 0, 2}},
      {{1, 2, 3, 4, 5},
       {2, 1, 2, 3, 4},
       {3, 2, 1, 2, 3},
       {4, 3, 2, 1, 2},
       {5, 4, 3, 2, 1}},
      {{2, 1, 0, 0, 0, 1},
       {1, 2, 1, 0, 0, 0},
       {0, 1, 2, 1, 0, 0},
       {0, 0, 1, 2, 1, 0},
       {0, 0, 0, 1, 2, 1},
       {1, 0, 0, 0, 1, 2}},
  };
  for (const auto& g : cases) {
    GramLattice l(g, "case");
    CHECK(gram_determinant(l) == oracles::cofactor_determinant(g));
  }
}
