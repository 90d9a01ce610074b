#ifndef BSURF_INSTANCES_HPP
#define BSURF_INSTANCES_HPP

#include <random>

#include "bsurf/torsionhom.hpp"

namespace bsurf {

struct EquivariantInstance {
  PairAction action;
  IsogenyData iso;
};

/// Draws an action equivariant for the canonical degree-d isogeny: target
/// generators come from structured families (diagonal, unipotent-like,
/// nonsplit-style, or generic), source generators are solved from the
/// intertwining relation, and incompatible draws are rejected.
EquivariantInstance random_equivariant_instance(std::mt19937_64& rng, std::int64_t n,
                                                std::int64_t d, bool twisted);

/// Random invertible 2x2 matrix over Z/nZ.
Mat2 random_invertible(std::mt19937_64& rng, Modulus mod);

/// Random subgroup of GL2(Z/nZ) from one to three random generators.
MatrixGroup random_subgroup(std::mt19937_64& rng, Modulus mod, int max_generators = 3);

}  // namespace bsurf

#endif
