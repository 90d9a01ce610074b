#include "bsurf/lattice.hpp"

#include <algorithm>

#include "bsurf/errors.hpp"
#include "bsurf/intlinalg.hpp"

namespace bsurf {

GramLattice::GramLattice(std::vector<std::vector<std::int64_t>> gram_, std::string label_)
    : gram(std::move(gram_)), label(std::move(label_)) {
  const std::size_t r = gram.size();
  for (const auto& row : gram)
    if (row.size() != r) throw PreconditionError("GramLattice: matrix not square");
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (gram[i][j] != gram[j][i]) throw PreconditionError("GramLattice: matrix not symmetric");
}

BigInt gram_determinant(const GramLattice& l) {
  BigMatrix m(l.gram.size());
  for (std::size_t i = 0; i < l.gram.size(); ++i)
    m[i].assign(l.gram[i].begin(), l.gram[i].end());
  return integer_determinant(std::move(m));
}

GramLattice build_family_gram(std::int64_t d) {
  if (d < 1) throw PreconditionError("build_family_gram: d must be positive");
  return GramLattice({{0, 1, 1}, {1, 0, d}, {1, d, 0}}, "family(d=" + std::to_string(d) + ")");
}

BigMatrix kummer_scaled_basis() {
  // Work in a scaled copy of Z^16: the integer vector u stands for
  // (1/2) sum u_i e_i, where the e_i are the sixteen (-2)-classes indexed by
  // F_2^4.  Pairings come out as -(u . v)/2.
  const int n = 16;
  BigMatrix gens;
  for (int i = 0; i < n; ++i) {
    std::vector<BigInt> row(n, 0);
    row[i] = 2;  // the class e_i itself
    gens.push_back(std::move(row));
  }
  // Half-sums over the Reed-Muller code RM(1,4): supports of affine-linear
  // functionals a.x + c on F_2^4.
  for (int a = 0; a < 16; ++a) {
    for (int c = 0; c < 2; ++c) {
      std::vector<BigInt> row(n, 0);
      int size = 0;
      for (int x = 0; x < 16; ++x) {
        int v = (__builtin_popcount(a & x) + c) & 1;
        if (v) {
          row[x] = 1;
          ++size;
        }
      }
      if (size == 0) continue;
      gens.push_back(std::move(row));
    }
  }
  BigMatrix basis = hermite_normal_form(std::move(gens));
  if (basis.size() != 16) throw TheoremFalsified("kummer lattice basis has wrong rank");
  return basis;
}

GramLattice build_kummer_lattice() {
  const int n = 16;
  BigMatrix basis = kummer_scaled_basis();
  std::vector<std::vector<std::int64_t>> gram(n, std::vector<std::int64_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      BigInt dot = 0;
      for (int k = 0; k < n; ++k) dot += basis[i][k] * basis[j][k];
      if (dot % 2 != 0)
        throw TheoremFalsified("kummer lattice glue produced a half-integral pairing");
      gram[i][j] = static_cast<std::int64_t>(-dot / 2);
    }
  GramLattice out(std::move(gram), "kummer");

  LatticeReport rep = lattice_report(out);
  if (!rep.even || rep.negative != 16 || rep.positive != 0 || rep.determinant != 64)
    throw TheoremFalsified("kummer lattice self-check failed: expected even negative-definite "
                           "rank 16 of determinant 64");
  return out;
}

GramLattice build_lambda_prod() {
  GramLattice k = build_kummer_lattice();
  const int n = 18;
  std::vector<std::vector<std::int64_t>> gram(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) gram[i][j] = k.gram[i][j];
  gram[16][17] = gram[17][16] = 1;  // hyperbolic plane <e, e'>
  return GramLattice(std::move(gram), "lambda-prod");
}

LatticeReport lattice_report(const GramLattice& l) {
  LatticeReport rep{l.rank(), gram_determinant(l), true, 0, 0, 0, false};
  for (std::int64_t i = 0; i < l.rank(); ++i)
    if (l.gram[i][i] % 2 != 0) rep.even = false;
  rep.degenerate = rep.determinant == 0;

  // Inertia by symmetric congruence diagonalization over Q.
  const std::size_t n = l.gram.size();
  std::vector<std::vector<BigRational>> m(n, std::vector<BigRational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = l.gram[i][j];

  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      // Pull in a nonzero diagonal via a symmetric row/column move.
      std::size_t pivot = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (m[i][i] != 0) {
          pivot = i;
          break;
        }
      if (pivot < n) {
        std::swap(m[k], m[pivot]);
        for (std::size_t i = 0; i < n; ++i) std::swap(m[i][k], m[i][pivot]);
      } else {
        // All remaining diagonal entries vanish; find an off-diagonal pair.
        std::size_t a = n, b = n;
        for (std::size_t i = k; i < n && a == n; ++i)
          for (std::size_t j = i + 1; j < n; ++j)
            if (m[i][j] != 0) {
              a = i;
              b = j;
              break;
            }
        if (a == n) {
          rep.zero += static_cast<std::int64_t>(n - k);
          break;
        }
        if (a != k) {
          std::swap(m[k], m[a]);
          for (std::size_t i = 0; i < n; ++i) std::swap(m[i][k], m[i][a]);
        }
        // Row/column addition turns the hyperbolic pair into a diagonal entry.
        for (std::size_t j = 0; j < n; ++j) m[k][j] += m[b][j];
        for (std::size_t i = 0; i < n; ++i) m[i][k] += m[i][b];
      }
    }
    if (m[k][k] == 0) continue;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      BigRational f = m[i][k] / m[k][k];
      for (std::size_t j = 0; j < n; ++j) m[i][j] -= f * m[k][j];
      for (std::size_t j = 0; j < n; ++j) m[j][i] -= f * m[j][k];
    }
    if (m[k][k] > 0)
      ++rep.positive;
    else
      ++rep.negative;
  }
  if (rep.positive + rep.negative + rep.zero != rep.rank) {
    // Zeros appear when the loop ran off the diagonal without breaking.
    rep.zero = rep.rank - rep.positive - rep.negative;
  }
  return rep;
}

}  // namespace bsurf
