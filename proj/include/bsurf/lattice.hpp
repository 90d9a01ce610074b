#ifndef BSURF_LATTICE_HPP
#define BSURF_LATTICE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bsurf/bigint.hpp"
#include "bsurf/intlinalg.hpp"

namespace bsurf {

/// Integer lattice given by a symmetric Gram matrix.
struct GramLattice {
  GramLattice(std::vector<std::vector<std::int64_t>> gram, std::string label);

  std::int64_t rank() const { return static_cast<std::int64_t>(gram.size()); }

  std::vector<std::vector<std::int64_t>> gram;
  std::string label;
};

/// Exact determinant of the Gram matrix.
BigInt gram_determinant(const GramLattice& l);

/// Rank-3 Gram (0 1 1 / 1 0 d / 1 d 0) of the product abelian surface family;
/// determinant 2d, signature (1,2).
GramLattice build_family_gram(std::int64_t d);

/// Rank-16 saturation of the sixteen orthogonal (-2)-classes indexed by F_2^4,
/// glued by half-sums over the first-order Reed-Muller code RM(1,4):
/// even, negative definite, determinant 2^6.
GramLattice build_kummer_lattice();

/// Basis of the rank-16 lattice in scaled coordinates: the integer vector u
/// stands for (1/2) sum u_i e_i over the sixteen (-2)-classes e_i, so the
/// class e_i itself is twice a unit vector and pairings are -(u.v)/2.
BigMatrix kummer_scaled_basis();

/// Orthogonal sum of the rank-16 lattice with a hyperbolic plane: rank 18,
/// |det| = 64.
GramLattice build_lambda_prod();

struct LatticeReport {
  std::int64_t rank;
  BigInt determinant;
  bool even;
  std::int64_t positive, negative, zero;  // inertia signature
  bool degenerate;
};

LatticeReport lattice_report(const GramLattice& l);

}  // namespace bsurf

#endif
