#ifndef BSURF_TORSIONHOM_HPP
#define BSURF_TORSIONHOM_HPP

#include <optional>
#include <string>
#include <vector>

#include "bsurf/gl2.hpp"
#include "bsurf/modring.hpp"

namespace bsurf {

/// One Galois generator acting on a pair of torsion modules: matrices of the
/// two representations and the quadratic-character value recording how the
/// geometric isogeny transforms under this generator.
struct ActionPair {
  Mat2 m;        // action on the source torsion
  Mat2 m_prime;  // action on the target torsion
  int chi;       // +1 or -1
};

/// Generator presentation of a Galois action on Hom(E_n, E'_n); fixed points
/// of the generators are fixed points of the whole group.
class PairAction {
 public:
  PairAction(Modulus mod, std::vector<ActionPair> pairs);

  Modulus modulus() const { return mod_; }
  const std::vector<ActionPair>& pairs() const { return pairs_; }
  bool twist_nontrivial() const { return twist_nontrivial_; }

  /// Matrices generating the image of the index-2 kernel of chi under the
  /// target representation (Schreier generators); the full generator list
  /// when the twist is trivial.
  std::vector<Mat2> chi_kernel_subaction() const;

 private:
  Modulus mod_;
  std::vector<ActionPair> pairs_;
  bool twist_nontrivial_;
};

/// A degree-d cyclic isogeny on n-torsion: its matrix, the dual matrix, and
/// the validated identities phi_dual * phi = phi * phi_dual = d*I with cyclic
/// kernel on the n-torsion.
class IsogenyData {
 public:
  IsogenyData(std::int64_t degree, const Mat2& phi, const Mat2& phi_dual);

  /// Synthesized isogeny matrix in the basis where phi = diag(d, 1) and
  /// phi_dual = diag(1, d).
  static IsogenyData canonical(Modulus mod, std::int64_t degree);

  std::int64_t degree() const { return degree_; }
  const Mat2& phi() const { return phi_; }
  const Mat2& phi_dual() const { return phi_dual_; }
  Modulus modulus() const { return phi_.mod; }

 private:
  std::int64_t degree_;
  Mat2 phi_, phi_dual_;
};

struct FixedHomModule {
  std::vector<Mat2> basis;  // additive generators of the fixed module
  AbelianShape shape;
};

/// {F : M'_sigma F = F M_sigma for all generators}: the Galois-equivariant
/// homomorphisms between the two torsion modules.
FixedHomModule invariant_homs(const PairAction& action);

struct GeometricFixed {
  AbelianShape shape;
  std::optional<Mat2> generator;  // absent for the trivial group
};

/// Fixed part of the geometric line Z*phi / n: all of <phi> for a trivial
/// twist, the subgroup of order gcd(2, n) otherwise.
GeometricFixed geometric_hom_fixed(const IsogenyData& iso, bool twist_nontrivial);

/// Validates M'_sigma phi = chi_sigma phi M_sigma for every generator; throws
/// PreconditionError naming the offending generator index.
void require_equivariant(const PairAction& action, const IsogenyData& iso);

/// Shape of invariant_homs modulo the fixed geometric line.
AbelianShape transcendental_quotient(const PairAction& action, const IsogenyData& iso);

/// f factors through [n'] o g iff f o g_dual o [n / gcd(d n', n)] = 0.
/// Requires the hypothesis n' * gcd(d, n) = gcd(d n', n).
bool factorization_criterion(const Mat2& f, const IsogenyData& g, std::int64_t nprime);

struct ExactnessCertificate {
  bool ok = false;
  std::int64_t m = 0;  // gcd(d, n)
  BigInt left_order, middle_order, h_order;
  std::string failure;  // empty when ok
};

/// Certifies exactness of
///   0 -> Hom(phi(E_m), E'_m) -> Hom(E_n, E'_n) -> H -> 0
/// with the maps (- o phi o [n/m]) and (- o phi_dual), where
/// H = {f in End(E'_n) : f o phi o [n/m] = 0}; checks the order product.
/// Exhaustive over M2(Z/n); guarded to n <= 16.
ExactnessCertificate hom_to_end_sequence(const PairAction& action, const IsogenyData& iso);

/// Invariant structure End_k(E_n) ~ Z/n x Z/n1 x (Z/n2)^2 with n2 | n1 | n.
struct EndStructure {
  std::int64_t n, n1, n2;

  /// Order of End_k(E_n) / scalars = n1 * n2^2.
  BigInt quotient_order() const { return BigInt(n1) * n2 * n2; }
};

/// Largest divisor k of n with the reduced image scalar.  Certified equal to
/// the n2 invariant.
std::int64_t largest_scalar_divisor(const MatrixGroup& image);

/// Largest divisor k of n such that the reduced image lies inside Z I + Z A
/// for a single matrix A, i.e. the non-scalar parts (a-d, b, c) of the
/// generators span a cyclic submodule of (Z/k)^3.  Certified equal to the n1
/// invariant.
std::int64_t largest_enveloped_divisor(const MatrixGroup& image);

/// Largest divisor k of n with the reduced image abelian.  An enveloped image
/// is abelian, so this is >= largest_enveloped_divisor; it can be strictly
/// larger when the image is scalar mod a prime but carries two independent
/// depth directions (e.g. <(1 0 / 4 3), (3 0 / 0 1)> mod 8, where End has
/// invariant factors (2, 2, 4, 8) although the whole image is abelian).
std::int64_t largest_abelian_divisor(const MatrixGroup& image);

/// Computes the commutant of the image, checks the (n, n1, n2, n2) shape, and
/// certifies the divisor-scan recharacterizations n2 = largest scalar divisor
/// and n1 = largest single-matrix-enveloped divisor.  A mismatch is a
/// TheoremFalsified error.
EndStructure end_invariants(const MatrixGroup& image);

/// F_ell-dimension of End_k(E_{ell^s}) / (End_k(E_{ell^{s-1}}) o [ell]):
/// 4 when the image is scalar, 2 when it is non-scalar but enveloped by a
/// single matrix at full level, 1 otherwise (in particular whenever the
/// image is non-abelian).
int rank_jump(const MatrixGroup& image, std::int64_t ell, std::int64_t s);

struct DivisibilityCertificate {
  bool ok = false;
  BigInt hom_order;
  std::int64_t hom_exponent = 1;
  BigInt end_order;  // trivial twist: order of End quotient; twisted: of the End ratio
  std::int64_t end_exponent = 1;
  BigInt order_bound;            // RHS of the cardinality divisibility
  std::int64_t exponent_bound = 1;  // RHS of the exponent divisibility
  std::int64_t kernel_order = 1;    // trivial twist only: order of the cyclic kernel
  std::string failure;
};

/// Trivial twist: #HomQ | gcd(d,n) * #EndQ and e(HomQ) | gcd(d,n) * e(EndQ),
/// plus cyclicity of the kernel of (- o phi_dual) on quotients with order
/// dividing gcd(d,n).  Failure raises TheoremFalsified.
DivisibilityCertificate divisibility_check_rational(const PairAction& action,
                                                    const IsogenyData& iso);

/// Nontrivial twist: #HomQ | gcd(2,n)^4 gcd(d,n)^2 * #R and
/// e(HomQ) | gcd(2,n) gcd(d,n)^2 * e(R), where R is the quotient of the
/// chi-kernel commutant by the full commutant.  Failure raises
/// TheoremFalsified.
DivisibilityCertificate divisibility_check_twisted(const PairAction& action,
                                                   const IsogenyData& iso);

}  // namespace bsurf

#endif
