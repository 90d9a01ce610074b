#include "bsurf/torsionhom.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "bsurf/intlinalg.hpp"

namespace bsurf {

namespace {

std::vector<Mat2> basis_matrices(Modulus mod) {
  return {Mat2(mod, 1, 0, 0, 0), Mat2(mod, 0, 1, 0, 0), Mat2(mod, 0, 0, 1, 0),
          Mat2(mod, 0, 0, 0, 1)};
}

// Lattice in Z^4 spanned by the lifts of the given matrices together with
// n Z^4; the mod-n span of the matrices as a sublattice description.
BigMatrix matrix_lattice(Modulus mod, const std::vector<Mat2>& mats) {
  BigMatrix rows;
  for (const auto& m : mats) {
    std::vector<BigInt> r;
    for (auto v : m.flat()) r.emplace_back(v);
    rows.push_back(std::move(r));
  }
  for (int j = 0; j < 4; ++j) {
    std::vector<BigInt> r(4, 0);
    r[j] = mod.value();
    rows.push_back(std::move(r));
  }
  return rows;
}

AbelianShape quotient_shape(Modulus mod, const std::vector<Mat2>& sup_gens,
                            const std::vector<Mat2>& sub_gens) {
  std::vector<BigInt> inv;
  try {
    inv = lattice_quotient_invariants(matrix_lattice(mod, sup_gens),
                                      matrix_lattice(mod, sub_gens), 4);
  } catch (const PreconditionError& e) {
    throw TheoremFalsified(std::string("quotient structure violated: ") + e.what());
  }
  std::vector<std::int64_t> factors;
  for (const auto& d : inv) factors.push_back(static_cast<std::int64_t>(d));
  return AbelianShape(std::move(factors));
}

AbelianShape span_shape(Modulus mod, const std::vector<Mat2>& mats) {
  std::vector<std::vector<std::int64_t>> vecs;
  vecs.reserve(mats.size());
  for (const auto& m : mats) vecs.push_back(m.flat());
  return subgroup_shape(mod, vecs, 4);
}

// Fixed matrices of the conditions {A_i F = F B_i}: kernel of the stacked
// linear maps F -> A_i F - F B_i on the 4 coordinates of F.
std::vector<Mat2> stacked_commuting_basis(Modulus mod,
                                          const std::vector<std::pair<Mat2, Mat2>>& conditions) {
  if (conditions.empty()) return basis_matrices(mod);
  ModMatrix stack(mod, 4 * conditions.size(), 4);
  auto bas = basis_matrices(mod);
  for (std::size_t ci = 0; ci < conditions.size(); ++ci) {
    for (std::size_t b = 0; b < 4; ++b) {
      Mat2 image = conditions[ci].first.mul(bas[b]).sub(bas[b].mul(conditions[ci].second));
      auto flat = image.flat();
      for (std::size_t r = 0; r < 4; ++r) stack.set(4 * ci + r, b, flat[r]);
    }
  }
  std::vector<Mat2> out;
  for (const auto& v : kernel(stack)) out.push_back(Mat2(mod, v[0], v[1], v[2], v[3]));
  return out;
}

std::int64_t gcd_mul_mod(std::int64_t a, std::int64_t b, std::int64_t n) {
  // gcd(a*b, n) without overflow: reduce the product mod n first.
  __int128 p = static_cast<__int128>(a % n) * (b % n);
  std::int64_t r = static_cast<std::int64_t>(p % n);
  if (r < 0) r += n;
  return std::gcd(r, n);
}

}  // namespace

PairAction::PairAction(Modulus mod, std::vector<ActionPair> pairs)
    : mod_(mod), pairs_(std::move(pairs)), twist_nontrivial_(false) {
  for (const auto& p : pairs_) {
    if (!(p.m.mod == mod_) || !(p.m_prime.mod == mod_))
      throw PreconditionError("PairAction: generator modulus mismatch");
    if (!p.m.invertible() || !p.m_prime.invertible())
      throw PreconditionError("PairAction: generators must be invertible");
    if (p.chi != 1 && p.chi != -1) throw PreconditionError("PairAction: chi must be +1 or -1");
    if (p.chi == -1) twist_nontrivial_ = true;
  }
}

std::vector<Mat2> PairAction::chi_kernel_subaction() const {
  if (!twist_nontrivial_) {
    std::vector<Mat2> out;
    for (const auto& p : pairs_) out.push_back(p.m_prime);
    return out;
  }
  // Schreier generators of the kernel of chi with transversal {1, s0}, where
  // s0 is the first generator with chi = -1.
  std::size_t s0 = 0;
  while (pairs_[s0].chi != -1) ++s0;
  const Mat2& m0 = pairs_[s0].m_prime;
  Mat2 m0i = m0.inverse();
  std::vector<Mat2> out;
  for (const auto& p : pairs_) {
    if (p.chi == 1) {
      out.push_back(p.m_prime);
      out.push_back(m0.mul(p.m_prime).mul(m0i));
    } else {
      out.push_back(p.m_prime.mul(m0i));
      out.push_back(m0.mul(p.m_prime));
    }
  }
  return out;
}

IsogenyData::IsogenyData(std::int64_t degree, const Mat2& phi, const Mat2& phi_dual)
    : degree_(degree), phi_(phi), phi_dual_(phi_dual) {
  if (degree < 1) throw PreconditionError("IsogenyData: degree must be positive");
  if (!(phi_.mod == phi_dual_.mod)) throw PreconditionError("IsogenyData: modulus mismatch");
  Modulus mod = phi_.mod;
  Mat2 dI = Mat2::scalar(mod, degree % mod.value());
  if (!(phi_dual_.mul(phi_) == dI) || !(phi_.mul(phi_dual_) == dI))
    throw PreconditionError("IsogenyData: dual identity phi_dual*phi = deg*I fails");
  // Cyclic kernel on the n-torsion.
  ModMatrix m(mod, 2, 2);
  m.set(0, 0, phi_.a());
  m.set(0, 1, phi_.b());
  m.set(1, 0, phi_.c());
  m.set(1, 1, phi_.d());
  AbelianShape ker = subgroup_shape(mod, kernel(m), 2);
  if (ker.factors().size() > 1)
    throw PreconditionError("IsogenyData: kernel on n-torsion is not cyclic");
}

IsogenyData IsogenyData::canonical(Modulus mod, std::int64_t degree) {
  return IsogenyData(degree, Mat2(mod, degree % mod.value(), 0, 0, 1),
                     Mat2(mod, 1, 0, 0, degree % mod.value()));
}

FixedHomModule invariant_homs(const PairAction& action) {
  std::vector<std::pair<Mat2, Mat2>> conditions;
  for (const auto& p : action.pairs()) conditions.emplace_back(p.m_prime, p.m);
  FixedHomModule out{stacked_commuting_basis(action.modulus(), conditions), AbelianShape()};
  out.shape = span_shape(action.modulus(), out.basis);
  return out;
}

GeometricFixed geometric_hom_fixed(const IsogenyData& iso, bool twist_nontrivial) {
  Modulus mod = iso.modulus();
  std::int64_t n = mod.value();
  if (!twist_nontrivial) {
    GeometricFixed out{n > 1 ? AbelianShape({n}) : AbelianShape(), {}};
    if (n > 1) out.generator = iso.phi();
    // A cyclic isogeny matrix has unit content, so its additive order is n.
    if (span_shape(mod, {iso.phi()}) != out.shape)
      throw TheoremFalsified("cyclic isogeny matrix has additive order < n");
    return out;
  }
  std::int64_t g = std::gcd<std::int64_t>(2, n);
  GeometricFixed out{g > 1 ? AbelianShape({g}) : AbelianShape(), {}};
  if (g > 1) out.generator = iso.phi().scale(n / g);
  return out;
}

void require_equivariant(const PairAction& action, const IsogenyData& iso) {
  if (!(action.modulus() == iso.modulus()))
    throw PreconditionError("action and isogeny moduli differ");
  const auto& pairs = action.pairs();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    Mat2 lhs = pairs[i].m_prime.mul(iso.phi());
    Mat2 rhs = iso.phi().mul(pairs[i].m).scale(pairs[i].chi == -1 ? iso.modulus().value() - 1 : 1);
    if (!(lhs == rhs))
      throw PreconditionError("isogeny is not equivariant for generator #" + std::to_string(i));
  }
}

AbelianShape transcendental_quotient(const PairAction& action, const IsogenyData& iso) {
  require_equivariant(action, iso);
  FixedHomModule fix = invariant_homs(action);
  GeometricFixed geo = geometric_hom_fixed(iso, action.twist_nontrivial());
  std::vector<Mat2> sub;
  if (geo.generator) sub.push_back(*geo.generator);
  return quotient_shape(action.modulus(), fix.basis, sub);
}

bool factorization_criterion(const Mat2& f, const IsogenyData& g, std::int64_t nprime) {
  if (nprime < 1) throw PreconditionError("factorization_criterion: n' must be positive");
  Modulus mod = g.modulus();
  std::int64_t n = mod.value();
  std::int64_t m = std::gcd(g.degree() % n, n);
  std::int64_t gdn = gcd_mul_mod(g.degree(), nprime, n);
  if (static_cast<__int128>(nprime) * m != gdn)
    throw PreconditionError("factorization_criterion: hypothesis n' gcd(d,n) = gcd(d n', n) fails");
  return f.mul(g.phi_dual()).scale(n / gdn).is_zero();
}

ExactnessCertificate hom_to_end_sequence(const PairAction& action, const IsogenyData& iso) {
  require_equivariant(action, iso);
  Modulus mod = iso.modulus();
  const std::int64_t n = mod.value();
  if (n > 16) throw PreconditionError("hom_to_end_sequence: exhaustive certificate capped at n = 16");
  const std::int64_t d = iso.degree();
  const std::int64_t m = std::gcd(d % n, n);

  ExactnessCertificate cert;
  cert.m = m;
  auto code = [&](const Mat2& x) {
    return ((x.e[0] * n + x.e[1]) * n + x.e[2]) * n + x.e[3];
  };

  Mat2 embed = iso.phi().scale(n / m);  // phi o [n/m]
  std::set<std::int64_t> image_left, kernel_mid, image_mid, h_set;
  for (std::int64_t a = 0; a < n; ++a)
    for (std::int64_t b = 0; b < n; ++b)
      for (std::int64_t c = 0; c < n; ++c)
        for (std::int64_t dd = 0; dd < n; ++dd) {
          Mat2 f(mod, a, b, c, dd);
          image_left.insert(code(f.mul(embed)));
          if (f.mul(iso.phi_dual()).is_zero()) kernel_mid.insert(code(f));
          image_mid.insert(code(f.mul(iso.phi_dual())));
          if (f.mul(embed).is_zero()) h_set.insert(code(f));
        }

  cert.left_order = static_cast<std::int64_t>(image_left.size());
  cert.middle_order = BigInt(n) * n * n * n;
  cert.h_order = static_cast<std::int64_t>(h_set.size());

  if (cert.left_order != BigInt(m) * m) {
    cert.failure = "left embedding is not injective: image order " + cert.left_order.str() +
                   " != m^2 = " + std::to_string(m * m);
    return cert;
  }
  if (image_left != kernel_mid) {
    cert.failure = "image of (- o phi o [n/m]) differs from kernel of (- o phi_dual)";
    return cert;
  }
  if (image_mid != h_set) {
    cert.failure = "image of (- o phi_dual) differs from H";
    return cert;
  }
  if (cert.left_order * cert.h_order != cert.middle_order) {
    cert.failure = "order product |left| * |H| != |middle|";
    return cert;
  }
  cert.ok = true;
  return cert;
}

std::int64_t largest_scalar_divisor(const MatrixGroup& image) {
  const std::int64_t n = image.modulus().value();
  std::int64_t best = 1;
  for (std::int64_t k = 1; k <= n; ++k)
    if (n % k == 0 && image.reduced(Modulus(k)).scalar_image_trivial()) best = k;
  return best;
}

std::int64_t largest_enveloped_divisor(const MatrixGroup& image) {
  const std::int64_t n = image.modulus().value();
  std::int64_t best = 1;
  for (std::int64_t k = 1; k <= n; ++k) {
    if (n % k) continue;
    Modulus mk(k);
    std::vector<std::vector<std::int64_t>> parts;
    for (const auto& g : image.generators()) {
      Mat2 r = g.reduced(mk);
      parts.push_back({mk.sub(r.a(), r.d()), r.b(), r.c()});
    }
    // The ring <I, A> is closed under products, so a generator-level check
    // suffices: the image fits iff the non-scalar parts span a cyclic module.
    if (subgroup_shape(mk, parts, 3).factors().size() <= 1) best = k;
  }
  return best;
}

std::int64_t largest_abelian_divisor(const MatrixGroup& image) {
  const std::int64_t n = image.modulus().value();
  std::int64_t best = 1;
  for (std::int64_t k = 1; k <= n; ++k)
    if (n % k == 0 && image.reduced(Modulus(k)).is_abelian()) best = k;
  return best;
}

EndStructure end_invariants(const MatrixGroup& image) {
  Modulus mod = image.modulus();
  const std::int64_t n = mod.value();
  std::vector<std::pair<Mat2, Mat2>> conditions;
  for (const auto& g : image.generators()) conditions.emplace_back(g, g);
  std::vector<Mat2> comm = stacked_commuting_basis(mod, conditions);
  AbelianShape shape = span_shape(mod, comm);

  std::vector<std::int64_t> f = shape.factors();  // ascending divisibility chain
  while (f.size() < 4) f.insert(f.begin(), 1);
  if (f.size() != 4 || f[3] != n || f[0] != f[1] || f[2] % f[1] != 0 || f[3] % f[2] != 0)
    throw TheoremFalsified("equivariant End module is not of shape (n, n1, n2, n2)");
  EndStructure out{n, f[2], f[1]};

  // Certified divisor-scan recharacterizations.
  std::int64_t n1_scan = largest_enveloped_divisor(image);
  std::int64_t n2_scan = largest_scalar_divisor(image);
  if (n1_scan != out.n1 || n2_scan != out.n2)
    throw TheoremFalsified(
        "End-structure mismatch: commutant gives (n1, n2) = (" + std::to_string(out.n1) + ", " +
        std::to_string(out.n2) + "), divisor scan gives (" + std::to_string(n1_scan) + ", " +
        std::to_string(n2_scan) + ")");
  return out;
}

int rank_jump(const MatrixGroup& image, std::int64_t ell, std::int64_t s) {
  if (!is_prime(ell)) throw PreconditionError("rank_jump: ell must be prime");
  if (s < 1) throw PreconditionError("rank_jump: s must be positive");
  std::int64_t q = 1;
  for (std::int64_t i = 0; i < s; ++i) q *= ell;
  if (image.modulus().value() != q) throw PreconditionError("rank_jump: modulus is not ell^s");

  auto commutant_valuation = [&](Modulus mod) {
    std::vector<std::pair<Mat2, Mat2>> conditions;
    for (const auto& g : image.generators())
      conditions.emplace_back(g.reduced(mod), g.reduced(mod));
    AbelianShape shape = span_shape(mod, stacked_commuting_basis(mod, conditions));
    std::int64_t v = 0;
    for (auto f : shape.factors()) v += valuation(f, ell).value();
    return v;
  };

  std::int64_t dim = commutant_valuation(Modulus(q)) - commutant_valuation(Modulus(q / ell));
  int expected;
  if (image.scalar_image_trivial()) {
    expected = 4;
  } else {
    // Non-scalar image: the jump is 2 exactly when the image sits inside
    // Z I + Z A for a single matrix A at full level, which forces the
    // non-scalar parts of the generators to span a cyclic module.  A
    // non-abelian image is never enveloped, so it always lands at 1.
    expected = largest_enveloped_divisor(image) == q ? 2 : 1;
  }
  if (!image.is_abelian() && expected != 1)
    throw TheoremFalsified("non-abelian image classified as enveloped");
  if (dim != expected)
    throw TheoremFalsified("rank jump " + std::to_string(dim) + " does not match the expected " +
                           std::to_string(expected));
  return static_cast<int>(dim);
}

namespace {

// Submodule of the fixed Hom module mapped into the scalar line by
// (- o phi_dual): generators, obtained by solving for coefficients in the
// fixed basis.
std::vector<Mat2> kernel_to_scalars(Modulus mod, const std::vector<Mat2>& fix_basis,
                                    const Mat2& phi_dual) {
  if (fix_basis.empty()) return {};
  // Conditions on G = F * phi_dual: off-diagonal zero, diagonal equal.
  ModMatrix cond(mod, 3, fix_basis.size());
  for (std::size_t j = 0; j < fix_basis.size(); ++j) {
    Mat2 g = fix_basis[j].mul(phi_dual);
    cond.set(0, j, g.b());
    cond.set(1, j, g.c());
    cond.set(2, j, mod.sub(g.a(), g.d()));
  }
  std::vector<Mat2> out;
  for (const auto& x : kernel(cond)) {
    Mat2 f = Mat2::zero(mod);
    for (std::size_t j = 0; j < fix_basis.size(); ++j) f = f.add(fix_basis[j].scale(x[j]));
    out.push_back(f);
  }
  return out;
}

}  // namespace

DivisibilityCertificate divisibility_check_rational(const PairAction& action,
                                                    const IsogenyData& iso) {
  if (action.twist_nontrivial())
    throw PreconditionError("divisibility_check_rational requires a trivial twist");
  require_equivariant(action, iso);
  Modulus mod = action.modulus();
  const std::int64_t n = mod.value();
  const std::int64_t m = std::gcd(iso.degree() % n, n);

  DivisibilityCertificate cert;
  AbelianShape hom_q = transcendental_quotient(action, iso);
  cert.hom_order = hom_q.order();
  cert.hom_exponent = hom_q.exponent();

  // End quotient of the target: commutant of the m_prime generators modulo
  // the scalar line.
  std::vector<std::pair<Mat2, Mat2>> conditions;
  for (const auto& p : action.pairs()) conditions.emplace_back(p.m_prime, p.m_prime);
  std::vector<Mat2> end_basis = stacked_commuting_basis(mod, conditions);
  AbelianShape end_q = quotient_shape(mod, end_basis, {Mat2::identity(mod)});
  cert.end_order = end_q.order();
  cert.end_exponent = end_q.exponent();

  cert.order_bound = BigInt(m) * cert.end_order;
  cert.exponent_bound = m * cert.end_exponent;
  if (cert.order_bound % cert.hom_order != 0)
    cert.failure = "#HomQ does not divide gcd(d,n) * #EndQ";
  else if (cert.exponent_bound % cert.hom_exponent != 0)
    cert.failure = "e(HomQ) does not divide gcd(d,n) * e(EndQ)";

  // Kernel of the induced (- o phi_dual) on the quotients: cyclic of order
  // dividing m.
  if (cert.failure.empty()) {
    FixedHomModule fix = invariant_homs(action);
    std::vector<Mat2> pre = kernel_to_scalars(mod, fix.basis, iso.phi_dual());
    GeometricFixed geo = geometric_hom_fixed(iso, false);
    std::vector<Mat2> sub;
    if (geo.generator) sub.push_back(*geo.generator);
    AbelianShape ker_shape = quotient_shape(mod, pre, sub);
    cert.kernel_order = static_cast<std::int64_t>(ker_shape.order());
    if (ker_shape.factors().size() > 1)
      cert.failure = "kernel of (- o phi_dual) on quotients is not cyclic";
    else if (m % cert.kernel_order != 0)
      cert.failure = "kernel order does not divide gcd(d,n)";
  }

  if (!cert.failure.empty())
    throw TheoremFalsified("rational divisibility certificate failed: " + cert.failure);
  cert.ok = true;
  return cert;
}

DivisibilityCertificate divisibility_check_twisted(const PairAction& action,
                                                   const IsogenyData& iso) {
  if (!action.twist_nontrivial())
    throw PreconditionError("divisibility_check_twisted requires a nontrivial twist");
  require_equivariant(action, iso);
  Modulus mod = action.modulus();
  const std::int64_t n = mod.value();
  const std::int64_t m = std::gcd(iso.degree() % n, n);
  const std::int64_t two = std::gcd<std::int64_t>(2, n);

  DivisibilityCertificate cert;
  AbelianShape hom_q = transcendental_quotient(action, iso);
  cert.hom_order = hom_q.order();
  cert.hom_exponent = hom_q.exponent();

  // End ratio: commutant over the chi-kernel subaction vs the full action.
  std::vector<std::pair<Mat2, Mat2>> sub_conditions, full_conditions;
  for (const auto& g : action.chi_kernel_subaction()) sub_conditions.emplace_back(g, g);
  for (const auto& p : action.pairs()) full_conditions.emplace_back(p.m_prime, p.m_prime);
  std::vector<Mat2> sub_comm = stacked_commuting_basis(mod, sub_conditions);
  std::vector<Mat2> full_comm = stacked_commuting_basis(mod, full_conditions);
  AbelianShape ratio = quotient_shape(mod, sub_comm, full_comm);
  cert.end_order = ratio.order();
  cert.end_exponent = ratio.exponent();

  BigInt order_budget = big_pow(BigInt(two), 4) * m * m;
  cert.order_bound = order_budget * cert.end_order;
  cert.exponent_bound = two * m * m * cert.end_exponent;
  if (cert.order_bound % cert.hom_order != 0)
    cert.failure = "#HomQ does not divide gcd(2,n)^4 gcd(d,n)^2 * #R";
  else if (cert.exponent_bound % cert.hom_exponent != 0)
    cert.failure = "e(HomQ) does not divide gcd(2,n) gcd(d,n)^2 * e(R)";

  if (!cert.failure.empty())
    throw TheoremFalsified("twisted divisibility certificate failed: " + cert.failure);
  cert.ok = true;
  return cert;
}

}  // namespace bsurf
