#ifndef BSURF_GL2_HPP
#define BSURF_GL2_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bsurf/modring.hpp"

namespace bsurf {

inline constexpr std::int64_t kDefaultClosureCap = 1000000;

/// 2x2 matrix over Z/nZ, row-major entries (a b / c d).
struct Mat2 {
  Mat2(Modulus m, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
      : mod(m), e{m.reduce(a), m.reduce(b), m.reduce(c), m.reduce(d)} {}

  static Mat2 identity(Modulus m) { return Mat2(m, 1, 0, 0, 1); }
  static Mat2 scalar(Modulus m, std::int64_t v) { return Mat2(m, v, 0, 0, v); }
  static Mat2 zero(Modulus m) { return Mat2(m, 0, 0, 0, 0); }

  Modulus mod;
  std::array<std::int64_t, 4> e;

  std::int64_t a() const { return e[0]; }
  std::int64_t b() const { return e[1]; }
  std::int64_t c() const { return e[2]; }
  std::int64_t d() const { return e[3]; }

  Mat2 mul(const Mat2& o) const;
  Mat2 add(const Mat2& o) const;
  Mat2 sub(const Mat2& o) const;
  Mat2 scale(std::int64_t k) const;
  Mat2 pow(std::int64_t k) const;

  std::int64_t det() const { return mod.sub(mod.mul(e[0], e[3]), mod.mul(e[1], e[2])); }
  std::int64_t trace() const { return mod.add(e[0], e[3]); }
  bool invertible() const { return mod.is_unit(det()); }
  Mat2 inverse() const;

  bool is_zero() const { return e[0] == 0 && e[1] == 0 && e[2] == 0 && e[3] == 0; }
  bool is_scalar() const { return e[1] == 0 && e[2] == 0 && e[0] == e[3]; }
  bool is_identity() const { return e[0] == 1 && e[1] == 0 && e[2] == 0 && e[3] == 1; }

  /// Reduce entries into Z/mZ for a divisor m of the modulus.
  Mat2 reduced(Modulus m) const { return Mat2(m, e[0], e[1], e[2], e[3]); }

  /// Multiplicative order in GL2; PreconditionError if not invertible or the
  /// order exceeds the cap.
  std::int64_t order(std::int64_t cap = kDefaultClosureCap) const;

  std::vector<std::int64_t> flat() const { return {e[0], e[1], e[2], e[3]}; }

  bool operator==(const Mat2& o) const { return e == o.e && mod == o.mod; }
  bool operator<(const Mat2& o) const { return e < o.e; }

  std::string str() const;
};

/// Finitely generated subgroup of GL2(Z/nZ); the element list is computed
/// lazily and cached, in a deterministic sorted order.
class MatrixGroup {
 public:
  MatrixGroup(Modulus mod, std::vector<Mat2> generators,
              std::int64_t closure_cap = kDefaultClosureCap);

  Modulus modulus() const { return mod_; }
  const std::vector<Mat2>& generators() const { return gens_; }
  std::int64_t closure_cap() const { return cap_; }

  /// Full element list, sorted by entry tuple.  Throws PreconditionError with
  /// the partial count when the cap is exceeded.
  const std::vector<Mat2>& closure() const;

  std::int64_t order() const { return static_cast<std::int64_t>(closure().size()); }

  /// Generators pairwise commute (hence the whole group is abelian).
  bool is_abelian() const;

  /// Every element is a scalar matrix, i.e. the image mod scalars is trivial.
  bool scalar_image_trivial() const;

  bool contains(const Mat2& m) const;

  MatrixGroup reduced(Modulus m) const;

 private:
  Modulus mod_;
  std::vector<Mat2> gens_;
  std::int64_t cap_;
  mutable std::vector<Mat2> closure_;
  mutable bool closed_ = false;
};

/// |GL2(Z/nZ)| by the multiplicative formula over prime powers.
BigInt ambient_gl2_order(Modulus mod);

/// [GL2(Z/nZ) : H].
BigInt subgroup_index(const MatrixGroup& h);

/// Depth of scalarity: the maximal mu < s with A congruent to a scalar
/// matrix mod ell^mu, computed as min(v(alpha-delta), v(beta), v(gamma)).
/// A must be non-scalar over the modulus ell^s.
std::int64_t mu_depth(const Mat2& a, std::int64_t ell, std::int64_t s);

struct CommutantResult {
  std::vector<Mat2> generators;  // additive generators of {M : AM = MA}
  AbelianShape shape;
  std::optional<std::int64_t> mu;  // empty for scalar A
};

/// Structured commutant of A in M2(Z/ell^s): generated by I, the depth-mu
/// lift A' with ell^mu A' - A scalar, and the ell^{s-mu} block.
CommutantResult commutant(const Mat2& a, std::int64_t ell, std::int64_t s);

enum class NormalFormKind { SplitCartan, NonsplitCartan, BorelAbelian };

std::string to_string(NormalFormKind k);

/// Conjugacy normal form of an abelian subgroup mod ell^{s'}: the subgroup,
/// conjugated by `conjugator`, lands inside the tagged group.
struct NormalFormTag {
  NormalFormKind kind;
  std::int64_t ell;
  std::int64_t level;    // ell^{s'} with s' = ceil(s/2)
  std::int64_t t;        // nonsplit: 0 <= t <= s'-1; borel: 1 <= t <= s'
  std::int64_t epsilon;  // nonsplit only: fixed lift with epsilon*ell^t a non-square
  Mat2 conjugator;       // invertible over Z/ell^{s'}
};

/// Verbatim membership test for the tagged group (m over Z/level):
///   split     : diag(x, y), x and y units
///   nonsplit  : (x  eps*ell^t*y / y  x), x^2 - eps*ell^t*y^2 a unit
///   borel     : (x  y / 0  x + ell^t*y), x a unit
bool normal_form_contains(const NormalFormTag& tag, const Mat2& m);

/// Normal form of an abelian subgroup of GL2(Z/ell^s), ell an odd prime.
NormalFormTag classify_abelian(const MatrixGroup& h, std::int64_t ell, std::int64_t s);

struct AbelianEnumeration {
  std::int64_t ell = 0, s = 0;
  std::int64_t total_subgroups = 0;  // all abelian subgroups, before conjugacy
  std::int64_t class_count = 0;      // conjugacy classes
  std::int64_t max_order = 0;
  std::map<std::string, std::int64_t> tag_histogram;  // per normal-form kind
  std::vector<MatrixGroup> representatives;           // canonical order
};

/// Exhaustive enumeration of the abelian subgroups of GL2(Z/ell^s) up to
/// conjugacy.  Supported for ell^s in {3, 5, 7, 9}; asserts the order bound
/// max |H| <= ell^{3s}.
AbelianEnumeration enumerate_abelian(std::int64_t ell, std::int64_t s, int threads = 1);

/// Element of Z[sqrt(d)]: a + b*sqrt(d).
struct QuadInt {
  std::int64_t a = 0, b = 0;
  bool operator==(const QuadInt&) const = default;
};

/// 2x2 matrix over Z[sqrt(d)], exact arithmetic, d a positive non-square.
struct RealQuadMatrix {
  RealQuadMatrix(std::int64_t d, std::array<QuadInt, 4> entries);

  std::int64_t d;
  std::array<QuadInt, 4> e;

  RealQuadMatrix mul(const RealQuadMatrix& o) const;
  QuadInt trace() const;
  QuadInt det() const;
  bool is_identity() const;
  bool is_minus_identity() const;

  bool operator==(const RealQuadMatrix&) const = default;
  bool operator<(const RealQuadMatrix& o) const { return key() < o.key(); }

 private:
  std::array<std::int64_t, 8> key() const;
};

struct FiniteRealGroupType {
  bool dihedral;       // false: cyclic of order `order`; true: dihedral
  std::int64_t order;  // cyclic: 1,2,3,4,6; dihedral: 4,6,8,12
  bool contains_minus_identity;
};

/// Classify the finite subgroup of GL2(R) generated by matrices with
/// rational trace and determinant.  Rejects irrational trace/det inputs and
/// groups that fail the finiteness cap.
FiniteRealGroupType classify_finite_real(const std::vector<RealQuadMatrix>& generators);

}  // namespace bsurf

#endif
