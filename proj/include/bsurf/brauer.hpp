#ifndef BSURF_BRAUER_HPP
#define BSURF_BRAUER_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bsurf/intlinalg.hpp"
#include "bsurf/modring.hpp"
#include "bsurf/torsionhom.hpp"

namespace bsurf {

enum class SurfaceKind { AbelianTorsor, KummerK3 };

/// Input data for one bound computation: the torsion level n, the cyclic
/// isogeny degree d, the torsor period, whether the isogeny lives only over
/// a quadratic extension, and the product-splitting field degree.
struct SurfaceScenario {
  SurfaceScenario(Modulus n, std::int64_t d, std::int64_t period, bool twist_nontrivial,
                  std::int64_t base_change_degree, SurfaceKind kind);

  Modulus n;
  std::int64_t d;
  std::int64_t period;
  bool twist_nontrivial;
  std::int64_t base_change_degree;  // [L:k] in {1,...,12}
  SurfaceKind kind;
};

/// Degree budget for the field extension that trivializes the torsor:
/// gcd(period, n^inf)^4, capped at 2^4 for Kummer K3 scenarios; equals 1
/// when gcd(period, n) = 1.
BigInt field_degree_budget(const SurfaceScenario& sc);

/// The division-field shrinking constant: gcd(d, n) for a trivial twist,
/// gcd(2 d^2, n) otherwise.
std::int64_t c_constant(const SurfaceScenario& sc);

struct BoundFactor {
  std::string label;
  BigInt value;
};

struct BoundCertificate {
  BigInt bound;
  std::vector<BoundFactor> factors;
  bool embedding_exact;  // the Brauer quotient embeds isomorphically
  std::string note;
};

/// Upper bound for the n-torsion of the transcendental Brauer quotient,
/// composed from the equivariant Hom/End divisibilities:
///   trivial twist : gcd(d,n) * n1 * n2^2
///   twisted       : gcd(2,n)^4 * gcd(d,n)^2 * ratio(end_twist / end_k)
/// The twisted form needs the End structure over the quadratic extension.
BoundCertificate brauer_n_torsion_bound(const SurfaceScenario& sc, const EndStructure& end_k,
                                        const std::optional<EndStructure>& end_twist = {});

/// Finite group acting on Z^r by invertible integer matrices.
class IntegerActionGroup {
 public:
  IntegerActionGroup(std::int64_t rank, std::vector<BigMatrix> generators,
                     std::int64_t closure_cap = 100000);

  std::int64_t rank() const { return rank_; }
  const std::vector<BigMatrix>& generators() const { return gens_; }
  const std::vector<BigMatrix>& closure() const;
  std::int64_t order() const { return static_cast<std::int64_t>(closure().size()); }

 private:
  std::int64_t rank_;
  std::vector<BigMatrix> gens_;
  std::int64_t cap_;
  mutable std::vector<BigMatrix> closure_;
  mutable bool closed_ = false;
};

/// #H^1(G, Z^r) via ((Z^r/|G|)^G) / ((Z^r)^G / |G|); divides |G|^r.
BigInt h1_integer_action(const IntegerActionGroup& g);

/// M(r) = |GL_r(F_3)|^r, a universal multiple of the algebraic Brauer
/// quotient order for free geometric Picard group of rank r.
BigInt algebraic_brauer_constant(std::int64_t r);

/// Cardinality from exponent on a K3: e^(22 - rank).
BigInt k3_card_from_exponent(const BigInt& e, std::int64_t rank);

/// (8d)^3: division-field input n/gcd(d,n) <= 8 cubed over the rank-3
/// geometric Brauer group.
BigInt over_q_bound(std::int64_t d);

/// Exponent-bound skeleton ell^(B(ell, 24 r ell^{4v}) + v_ell(2 d^2)) for a
/// caller-supplied division-field bound function B.
BigInt ell_primary_budget(std::int64_t ell, std::int64_t r, std::int64_t v, std::int64_t d,
                          const std::function<std::int64_t(std::int64_t, const BigInt&)>& B);

}  // namespace bsurf

#endif
