#include "bsurf/gl2.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace bsurf {

Mat2 Mat2::mul(const Mat2& o) const {
  return Mat2(mod, mod.add(mod.mul(e[0], o.e[0]), mod.mul(e[1], o.e[2])),
              mod.add(mod.mul(e[0], o.e[1]), mod.mul(e[1], o.e[3])),
              mod.add(mod.mul(e[2], o.e[0]), mod.mul(e[3], o.e[2])),
              mod.add(mod.mul(e[2], o.e[1]), mod.mul(e[3], o.e[3])));
}

Mat2 Mat2::add(const Mat2& o) const {
  return Mat2(mod, mod.add(e[0], o.e[0]), mod.add(e[1], o.e[1]), mod.add(e[2], o.e[2]),
              mod.add(e[3], o.e[3]));
}

Mat2 Mat2::sub(const Mat2& o) const {
  return Mat2(mod, mod.sub(e[0], o.e[0]), mod.sub(e[1], o.e[1]), mod.sub(e[2], o.e[2]),
              mod.sub(e[3], o.e[3]));
}

Mat2 Mat2::scale(std::int64_t k) const {
  return Mat2(mod, mod.mul(k, e[0]), mod.mul(k, e[1]), mod.mul(k, e[2]), mod.mul(k, e[3]));
}

Mat2 Mat2::pow(std::int64_t k) const {
  if (k < 0) return inverse().pow(-k);
  Mat2 out = Mat2::identity(mod);
  Mat2 base = *this;
  while (k > 0) {
    if (k & 1) out = out.mul(base);
    base = base.mul(base);
    k >>= 1;
  }
  return out;
}

Mat2 Mat2::inverse() const {
  std::int64_t di = mod.inv(det());
  return Mat2(mod, mod.mul(di, e[3]), mod.mul(di, mod.neg(e[1])), mod.mul(di, mod.neg(e[2])),
              mod.mul(di, e[0]));
}

std::int64_t Mat2::order(std::int64_t cap) const {
  if (!invertible()) throw PreconditionError("order: matrix is not invertible");
  Mat2 p = *this;
  std::int64_t k = 1;
  while (!p.is_identity()) {
    p = p.mul(*this);
    if (++k > cap) throw PreconditionError("order: cap exceeded");
  }
  return k;
}

std::string Mat2::str() const {
  std::ostringstream os;
  os << "[[" << e[0] << "," << e[1] << "],[" << e[2] << "," << e[3] << "]] mod " << mod.value();
  return os.str();
}

MatrixGroup::MatrixGroup(Modulus mod, std::vector<Mat2> generators, std::int64_t closure_cap)
    : mod_(mod), gens_(std::move(generators)), cap_(closure_cap) {
  if (cap_ < 1) throw PreconditionError("closure cap must be positive");
  for (const auto& g : gens_) {
    if (!(g.mod == mod_)) throw PreconditionError("generator modulus mismatch");
    if (!g.invertible()) throw PreconditionError("generator not invertible: " + g.str());
  }
}

const std::vector<Mat2>& MatrixGroup::closure() const {
  if (closed_) return closure_;
  std::set<Mat2> seen;
  std::vector<Mat2> frontier;
  seen.insert(Mat2::identity(mod_));
  frontier.push_back(Mat2::identity(mod_));
  while (!frontier.empty()) {
    std::vector<Mat2> next;
    for (const auto& x : frontier) {
      for (const auto& g : gens_) {
        Mat2 y = x.mul(g);
        if (seen.insert(y).second) {
          if (static_cast<std::int64_t>(seen.size()) > cap_)
            throw PreconditionError("closure cap exceeded after " + std::to_string(seen.size()) +
                                    " elements");
          next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  closure_.assign(seen.begin(), seen.end());
  closed_ = true;
  return closure_;
}

bool MatrixGroup::is_abelian() const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    for (std::size_t j = i + 1; j < gens_.size(); ++j)
      if (!(gens_[i].mul(gens_[j]) == gens_[j].mul(gens_[i]))) return false;
  return true;
}

bool MatrixGroup::scalar_image_trivial() const {
  return std::all_of(gens_.begin(), gens_.end(), [](const Mat2& g) { return g.is_scalar(); });
}

bool MatrixGroup::contains(const Mat2& m) const {
  const auto& cl = closure();
  return std::binary_search(cl.begin(), cl.end(), m);
}

MatrixGroup MatrixGroup::reduced(Modulus m) const {
  if (mod_.value() % m.value() != 0)
    throw PreconditionError("MatrixGroup::reduced: modulus must divide");
  std::vector<Mat2> gens;
  gens.reserve(gens_.size());
  for (const auto& g : gens_) gens.push_back(g.reduced(m));
  return MatrixGroup(m, std::move(gens), cap_);
}

BigInt ambient_gl2_order(Modulus mod) {
  std::int64_t n = mod.value();
  BigInt order = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    std::int64_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    order *= big_pow(BigInt(p), 4 * (e - 1)) * (BigInt(p) * p - 1) * (BigInt(p) * p - p);
  }
  if (n > 1) order *= (BigInt(n) * n - 1) * (BigInt(n) * n - n);
  return order;
}

BigInt subgroup_index(const MatrixGroup& h) {
  BigInt ambient = ambient_gl2_order(h.modulus());
  BigInt sz = h.order();
  if (ambient % sz != 0) throw TheoremFalsified("subgroup order does not divide |GL2|");
  return ambient / sz;
}

namespace {

// ell^s, validated prime and within the modulus range.
std::int64_t prime_power_modulus(std::int64_t ell, std::int64_t s) {
  if (!is_prime(ell)) throw PreconditionError("ell must be prime, got " + std::to_string(ell));
  if (s < 1) throw PreconditionError("s must be positive");
  std::int64_t q = 1;
  for (std::int64_t i = 0; i < s; ++i) {
    if (q > kMaxModulus / ell) throw PreconditionError("ell^s exceeds the modulus cap");
    q *= ell;
  }
  return q;
}

}  // namespace

std::int64_t mu_depth(const Mat2& a, std::int64_t ell, std::int64_t s) {
  std::int64_t q = prime_power_modulus(ell, s);
  if (a.mod.value() != q) throw PreconditionError("mu_depth: matrix modulus is not ell^s");
  if (a.is_scalar()) throw PreconditionError("mu_depth: undefined for scalar matrices");
  Valuation v = Valuation::infinite();
  for (std::int64_t x : {a.mod.sub(a.a(), a.d()), a.b(), a.c()}) {
    Valuation vx = valuation(x, ell);
    if (vx < v) v = vx;
  }
  return v.value();  // finite since A is non-scalar
}

namespace {

std::int64_t pow_i64(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

AbelianShape matrix_span_shape(Modulus mod, const std::vector<Mat2>& gens) {
  std::vector<std::vector<std::int64_t>> vecs;
  vecs.reserve(gens.size());
  for (const auto& g : gens) vecs.push_back(g.flat());
  return subgroup_shape(mod, vecs, 4);
}

}  // namespace

CommutantResult commutant(const Mat2& a, std::int64_t ell, std::int64_t s) {
  std::int64_t q = prime_power_modulus(ell, s);
  if (a.mod.value() != q) throw PreconditionError("commutant: matrix modulus is not ell^s");
  Modulus mod = a.mod;

  CommutantResult out;
  if (a.is_scalar()) {
    out.generators = {Mat2(mod, 1, 0, 0, 0), Mat2(mod, 0, 1, 0, 0), Mat2(mod, 0, 0, 1, 0),
                      Mat2(mod, 0, 0, 0, 1)};
    out.shape = matrix_span_shape(mod, out.generators);
    return out;
  }

  std::int64_t mu = mu_depth(a, ell, s);
  std::int64_t lmu = pow_i64(ell, mu);
  // A = d*I + ell^mu * A' on representatives, so A' commutes with A exactly.
  Mat2 aprime(mod, (mod.sub(a.a(), a.d())) / lmu, a.b() / lmu, a.c() / lmu, 0);
  out.mu = mu;
  out.generators.push_back(Mat2::identity(mod));
  out.generators.push_back(aprime);
  if (mu > 0) {
    // A is scalar mod ell^mu, so the whole depth block ell^{s-mu} M2 commutes.
    std::int64_t depth = pow_i64(ell, s - mu);
    out.generators.push_back(Mat2(mod, depth, 0, 0, 0));
    out.generators.push_back(Mat2(mod, 0, depth, 0, 0));
    out.generators.push_back(Mat2(mod, 0, 0, depth, 0));
    out.generators.push_back(Mat2(mod, 0, 0, 0, depth));
  }
  for (const auto& g : out.generators)
    if (!(g.mul(a) == a.mul(g))) throw TheoremFalsified("commutant generator does not commute");
  out.shape = matrix_span_shape(mod, out.generators);
  return out;
}

std::string to_string(NormalFormKind k) {
  switch (k) {
    case NormalFormKind::SplitCartan:
      return "split-cartan";
    case NormalFormKind::NonsplitCartan:
      return "nonsplit-cartan";
    case NormalFormKind::BorelAbelian:
      return "borel-abelian";
  }
  return "?";
}

bool normal_form_contains(const NormalFormTag& tag, const Mat2& m) {
  const Modulus mod = m.mod;
  if (mod.value() != tag.level) return false;
  switch (tag.kind) {
    case NormalFormKind::SplitCartan:
      return m.b() == 0 && m.c() == 0 && mod.is_unit(m.a()) && mod.is_unit(m.d());
    case NormalFormKind::NonsplitCartan: {
      std::int64_t elt = mod.reduce(pow_i64(tag.ell, tag.t) % mod.value() * tag.epsilon);
      if (m.a() != m.d()) return false;
      if (m.b() != mod.mul(elt, m.c())) return false;
      std::int64_t norm = mod.sub(mod.mul(m.a(), m.a()), mod.mul(elt, mod.mul(m.c(), m.c())));
      return norm % tag.ell != 0;
    }
    case NormalFormKind::BorelAbelian: {
      if (m.c() != 0) return false;
      std::int64_t lt = pow_i64(tag.ell, tag.t) % mod.value();
      if (m.d() != mod.add(m.a(), mod.mul(lt, m.b()))) return false;
      return mod.is_unit(m.a());
    }
  }
  return false;
}

namespace {

// Square root of a unit square mod ell^k (ell odd) by lifting a mod-ell root.
std::int64_t sqrt_unit_mod(std::int64_t u, std::int64_t ell, std::int64_t k) {
  std::int64_t q = pow_i64(ell, k);
  Modulus mod(q);
  u = mod.reduce(u);
  std::int64_t r = -1;
  for (std::int64_t x = 1; x < ell; ++x)
    if ((x * x) % ell == u % ell) {
      r = x;
      break;
    }
  if (r < 0) throw PreconditionError("sqrt_unit_mod: not a quadratic residue");
  for (std::int64_t i = 1; i < k; ++i) {
    // Newton step r <- (r + u/r)/2, exact because ell is odd.
    r = mod.mul(mod.inv(2), mod.add(r, mod.mul(u, mod.inv(r))));
  }
  if (mod.sub(mod.mul(r, r), u) != 0) throw TheoremFalsified("sqrt lift failed");
  return r;
}

bool is_qr_mod_ell(std::int64_t u, std::int64_t ell) {
  u %= ell;
  if (u < 0) u += ell;
  for (std::int64_t x = 1; x < ell; ++x)
    if ((x * x) % ell == u) return true;
  return false;
}

std::int64_t least_nonresidue(std::int64_t ell) {
  for (std::int64_t x = 2; x < ell; ++x)
    if (!is_qr_mod_ell(x, ell)) return x;
  throw PreconditionError("least_nonresidue: ell must be an odd prime");
}

// Conjugate m to its companion matrix: returns P with P^-1 m P = companion.
// Requires m non-scalar mod ell.
Mat2 cyclic_basis(const Mat2& m, std::int64_t ell) {
  const Modulus mod = m.mod;
  // Pick v with (v, m v) a basis; the columns of P are v and m v.
  std::vector<std::array<std::int64_t, 2>> candidates = {{1, 0}, {0, 1}, {1, 1}};
  for (auto v : candidates) {
    std::array<std::int64_t, 2> w = {mod.add(mod.mul(m.a(), v[0]), mod.mul(m.b(), v[1])),
                                     mod.add(mod.mul(m.c(), v[0]), mod.mul(m.d(), v[1]))};
    std::int64_t det = mod.sub(mod.mul(v[0], w[1]), mod.mul(v[1], w[0]));
    if (mod.is_unit(det)) return Mat2(mod, v[0], w[0], v[1], w[1]);
  }
  throw PreconditionError("cyclic_basis: matrix is scalar mod " + std::to_string(ell));
}

}  // namespace

NormalFormTag classify_abelian(const MatrixGroup& h, std::int64_t ell, std::int64_t s) {
  if (ell == 2) throw PreconditionError("classify_abelian: ell must be odd");
  std::int64_t q_full = prime_power_modulus(ell, s);
  if (h.modulus().value() != q_full)
    throw PreconditionError("classify_abelian: group modulus is not ell^s");
  if (!h.is_abelian()) throw PreconditionError("classify_abelian: subgroup is not abelian");

  const std::int64_t sp = (s + 1) / 2;  // s' = ceil(s/2)
  const std::int64_t q = pow_i64(ell, sp);
  Modulus modq(q);

  // Minimal scalarity depth over the subgroup, attained at a canonical
  // (first in sorted closure order) element.
  std::optional<Mat2> pick;
  std::int64_t mu = s;
  for (const auto& g : h.closure()) {
    if (g.is_scalar()) continue;
    std::int64_t m = mu_depth(g, ell, s);
    if (m < mu) {
      mu = m;
      pick = g;
    }
  }

  NormalFormTag tag{NormalFormKind::SplitCartan, ell, q, 0, 0, Mat2::identity(modq)};
  if (!pick || mu >= sp) {
    // Everything is scalar mod ell^{s'}; scalars sit inside the split torus.
    for (const auto& g : h.closure())
      if (!normal_form_contains(tag, g.reduced(modq)))
        throw TheoremFalsified("scalar-depth subgroup escapes the split torus");
    return tag;
  }

  std::int64_t lmu = pow_i64(ell, mu);
  const Mat2& a = *pick;
  Mat2 aprime_full(a.mod, (a.mod.sub(a.a(), a.d())) / lmu, a.b() / lmu, a.c() / lmu, 0);
  Mat2 b = aprime_full.reduced(modq);  // non-scalar mod ell by maximality of mu

  std::int64_t tr = b.trace();
  std::int64_t x = modq.mul(modq.inv(2), tr);
  std::int64_t disc4 = modq.sub(modq.mul(x, x), b.det());

  Mat2 normal = Mat2::identity(modq);
  if (disc4 == 0) {
    // Char poly (T-x)^2: borel-abelian with t = s'.
    tag.kind = NormalFormKind::BorelAbelian;
    tag.t = sp;
    normal = Mat2(modq, x, 1, 0, x);  // ell^{s'} y = 0
  } else {
    std::int64_t t = valuation(disc4, ell).value();
    std::int64_t u = disc4 / pow_i64(ell, t);
    if (t % 2 == 0 && is_qr_mod_ell(u, ell)) {
      std::int64_t w = sqrt_unit_mod(u, ell, sp - t);
      std::int64_t half = pow_i64(ell, t / 2);
      std::int64_t r1 = modq.add(x, modq.mul(half, w));
      std::int64_t r2 = modq.sub(x, modq.mul(half, w));
      if (t == 0) {
        // Roots distinct mod ell: split Cartan via an eigenbasis.
        if (r2 < r1) std::swap(r1, r2);
        auto eigvec = [&](std::int64_t r) -> std::array<std::int64_t, 2> {
          std::array<std::int64_t, 2> v1 = {b.b(), modq.sub(r, b.a())};
          if (v1[0] % ell != 0 || v1[1] % ell != 0) return v1;
          return {modq.sub(r, b.d()), b.c()};
        };
        auto v1 = eigvec(r1), v2 = eigvec(r2);
        Mat2 p(modq, v1[0], v2[0], v1[1], v2[1]);
        tag.kind = NormalFormKind::SplitCartan;
        tag.conjugator = p.inverse();
        normal = Mat2(modq, r1, 0, 0, r2);
        Mat2 conj = tag.conjugator.mul(b).mul(tag.conjugator.inverse());
        if (!(conj == normal)) throw TheoremFalsified("split-cartan conjugation failed");
        for (const auto& g : h.closure()) {
          Mat2 moved = tag.conjugator.mul(g.reduced(modq)).mul(tag.conjugator.inverse());
          if (!normal_form_contains(tag, moved))
            throw TheoremFalsified("conjugated subgroup element escapes the split torus: " +
                                   g.str());
        }
        return tag;
      }
      // Roots congruent mod ell: borel-abelian with t_b = v(r2 - r1) = t/2.
      tag.kind = NormalFormKind::BorelAbelian;
      tag.t = t / 2;
      // y = (r2 - r1)/ell^{t/2} is a unit; the representative divides exactly.
      std::int64_t y = modq.reduce(modq.sub(r2, r1) / half);
      normal = Mat2(modq, r1, y, 0, modq.add(r1, modq.mul(half, y)));
    } else {
      // Irreducible char poly: nonsplit Cartan.  The fixed lift epsilon is 1
      // for residue class, else the least positive non-residue.
      tag.kind = NormalFormKind::NonsplitCartan;
      tag.t = t;
      tag.epsilon = is_qr_mod_ell(u, ell) ? 1 : least_nonresidue(ell);
      Modulus modres(pow_i64(ell, sp - t));
      std::int64_t y = sqrt_unit_mod(modres.mul(u, modres.inv(tag.epsilon)), ell, sp - t);
      std::int64_t lt = pow_i64(ell, t);
      normal = Mat2(modq, x, modq.mul(tag.epsilon, modq.mul(lt, y)), y, x);
      if (!(normal.trace() == b.trace() && normal.det() == b.det()))
        throw TheoremFalsified("nonsplit normal form has wrong characteristic polynomial");
    }
  }

  // Both b and its normal form are cyclic mod ell with the same char poly, so
  // they share a companion form; glue the two cyclic bases.
  Mat2 pb = cyclic_basis(b, ell);
  Mat2 pn = cyclic_basis(normal, ell);
  tag.conjugator = pn.mul(pb.inverse());
  Mat2 conj = tag.conjugator.mul(b).mul(tag.conjugator.inverse());
  if (!(conj == normal)) throw TheoremFalsified("normal-form conjugation failed");
  for (const auto& g : h.closure()) {
    Mat2 moved = tag.conjugator.mul(g.reduced(modq)).mul(tag.conjugator.inverse());
    if (!normal_form_contains(tag, moved))
      throw TheoremFalsified("conjugated subgroup element escapes the " + to_string(tag.kind) +
                             " normal form: " + g.str());
  }
  return tag;
}

RealQuadMatrix::RealQuadMatrix(std::int64_t d_, std::array<QuadInt, 4> entries)
    : d(d_), e(entries) {
  if (d < 2) throw PreconditionError("RealQuadMatrix: d must be >= 2");
  std::int64_t r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(d)));
  for (std::int64_t x = r > 1 ? r - 1 : 1; x <= r + 1; ++x)
    if (x * x == d) throw PreconditionError("RealQuadMatrix: d must be a non-square");
}

namespace {

constexpr std::int64_t kQuadEntryBound = 1ll << 40;

std::int64_t checked(std::int64_t v) {
  if (v > kQuadEntryBound || v < -kQuadEntryBound)
    throw PreconditionError("Z[sqrt(d)] entries exceeded the growth bound; group looks infinite");
  return v;
}

QuadInt qmul(const QuadInt& x, const QuadInt& y, std::int64_t d) {
  return {checked(x.a * y.a + d * x.b * y.b), checked(x.a * y.b + x.b * y.a)};
}

QuadInt qadd(const QuadInt& x, const QuadInt& y) { return {checked(x.a + y.a), checked(x.b + y.b)}; }

}  // namespace

RealQuadMatrix RealQuadMatrix::mul(const RealQuadMatrix& o) const {
  if (d != o.d) throw PreconditionError("RealQuadMatrix: mixed base fields");
  return RealQuadMatrix(
      d, {qadd(qmul(e[0], o.e[0], d), qmul(e[1], o.e[2], d)),
          qadd(qmul(e[0], o.e[1], d), qmul(e[1], o.e[3], d)),
          qadd(qmul(e[2], o.e[0], d), qmul(e[3], o.e[2], d)),
          qadd(qmul(e[2], o.e[1], d), qmul(e[3], o.e[3], d))});
}

QuadInt RealQuadMatrix::trace() const { return qadd(e[0], e[3]); }

QuadInt RealQuadMatrix::det() const {
  QuadInt ad = qmul(e[0], e[3], d), bc = qmul(e[1], e[2], d);
  return {ad.a - bc.a, ad.b - bc.b};
}

bool RealQuadMatrix::is_identity() const {
  return e[0] == QuadInt{1, 0} && e[1] == QuadInt{0, 0} && e[2] == QuadInt{0, 0} &&
         e[3] == QuadInt{1, 0};
}

bool RealQuadMatrix::is_minus_identity() const {
  return e[0] == QuadInt{-1, 0} && e[1] == QuadInt{0, 0} && e[2] == QuadInt{0, 0} &&
         e[3] == QuadInt{-1, 0};
}

std::array<std::int64_t, 8> RealQuadMatrix::key() const {
  return {e[0].a, e[0].b, e[1].a, e[1].b, e[2].a, e[2].b, e[3].a, e[3].b};
}

FiniteRealGroupType classify_finite_real(const std::vector<RealQuadMatrix>& generators) {
  if (generators.empty()) return {false, 1, false};
  constexpr std::size_t kCap = 64;  // a rational-trace finite group has order <= 12

  for (const auto& g : generators) {
    if (g.trace().b != 0 || g.det().b != 0)
      throw PreconditionError("classify_finite_real: irrational trace or determinant");
    if (g.det().a == 0) throw PreconditionError("classify_finite_real: singular generator");
  }

  std::set<RealQuadMatrix> seen(generators.begin(), generators.end());
  RealQuadMatrix id(generators[0].d,
                    {QuadInt{1, 0}, QuadInt{0, 0}, QuadInt{0, 0}, QuadInt{1, 0}});
  seen.insert(id);
  std::vector<RealQuadMatrix> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<RealQuadMatrix> next;
    for (const auto& x : frontier)
      for (const auto& g : generators) {
        RealQuadMatrix y = x.mul(g);
        if (seen.insert(y).second) {
          if (seen.size() > kCap)
            throw PreconditionError("classify_finite_real: closure cap exceeded; group is infinite");
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }

  // Every element must carry one of the six admissible characteristic
  // polynomials; equivalently (trace, det) lies in the finite-order list.
  static const std::set<std::pair<std::int64_t, std::int64_t>> admissible = {
      {2, 1}, {-2, 1}, {0, -1}, {0, 1}, {-1, 1}, {1, 1}};
  for (const auto& m : seen) {
    if (m.trace().b != 0 || m.det().b != 0)
      throw PreconditionError("classify_finite_real: irrational trace or determinant in closure");
    if (!admissible.count({m.trace().a, m.det().a}))
      throw PreconditionError("classify_finite_real: element of order > 6; group is infinite");
  }

  const std::int64_t n = static_cast<std::int64_t>(seen.size());
  bool has_minus = false;
  std::int64_t max_elt_order = 1;
  for (const auto& m : seen) {
    if (m.is_minus_identity()) has_minus = true;
    RealQuadMatrix p = m;
    std::int64_t k = 1;
    while (!p.is_identity()) {
      p = p.mul(m);
      if (++k > 6) throw PreconditionError("classify_finite_real: element of order > 6");
    }
    max_elt_order = std::max(max_elt_order, k);
  }
  bool cyclic = (max_elt_order == n);
  FiniteRealGroupType out{!cyclic, n, has_minus};
  if (cyclic) {
    if (n != 1 && n != 2 && n != 3 && n != 4 && n != 6)
      throw TheoremFalsified("cyclic group of unexpected order " + std::to_string(n));
  } else {
    if (n != 4 && n != 6 && n != 8 && n != 12)
      throw TheoremFalsified("non-cyclic group of unexpected order " + std::to_string(n));
    if ((n == 4 || n == 8 || n == 12) && !has_minus)
      throw TheoremFalsified("dihedral group of order " + std::to_string(n) + " without -I");
  }
  return out;
}

}  // namespace bsurf
