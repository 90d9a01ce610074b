#ifndef BSURF_INTLINALG_HPP
#define BSURF_INTLINALG_HPP

#include <cstddef>
#include <vector>

#include "bsurf/bigint.hpp"

namespace bsurf {

// Exact integer linear algebra on small dense matrices.  Everything here
// works on BigInt entries; the matrices this library meets are tiny, so
// clarity wins over asymptotics.

using BigMatrix = std::vector<std::vector<BigInt>>;

/// Row Hermite normal form of the lattice spanned by the rows.  Zero rows are
/// dropped; the result has one row per pivot column, pivots positive, entries
/// above a pivot reduced into [0, pivot).
BigMatrix hermite_normal_form(BigMatrix m);

/// Diagonal of the Smith normal form, including any zeros, d_1 | d_2 | ...
std::vector<BigInt> smith_invariants(BigMatrix m);

/// Basis of {x in Z^cols : m x = 0}; the kernel of an integer matrix is
/// saturated, so this is also the saturation of any spanning set of it.
BigMatrix integer_kernel_basis(const BigMatrix& m, std::size_t cols);

/// Invariant factors (1s dropped) of sup/sub for two lattices in Z^dim given
/// by spanning rows, where sub ⊆ sup and the quotient is finite.  Throws
/// PreconditionError if sub is not contained in sup or the quotient is
/// infinite.
std::vector<BigInt> lattice_quotient_invariants(const BigMatrix& sup, const BigMatrix& sub,
                                                std::size_t dim);

/// Determinant by fraction-free (Bareiss) elimination.
BigInt integer_determinant(BigMatrix m);

}  // namespace bsurf

#endif
