#include "bsurf/brauer.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "bsurf/intlinalg.hpp"

namespace bsurf {

SurfaceScenario::SurfaceScenario(Modulus n_, std::int64_t d_, std::int64_t period_,
                                 bool twist_nontrivial_, std::int64_t base_change_degree_,
                                 SurfaceKind kind_)
    : n(n_),
      d(d_),
      period(period_),
      twist_nontrivial(twist_nontrivial_),
      base_change_degree(base_change_degree_),
      kind(kind_) {
  if (d < 1) throw PreconditionError("scenario: d must be positive");
  if (period < 1) throw PreconditionError("scenario: period must be positive");
  if (kind == SurfaceKind::KummerK3 && period > 2)
    throw PreconditionError("scenario: a Kummer K3 has period at most 2");
  static const std::set<std::int64_t> degrees = {1, 2, 3, 4, 6, 8, 12};
  if (!degrees.count(base_change_degree))
    throw PreconditionError("scenario: base change degree must lie in {1,2,3,4,6,8,12}");
}

BigInt field_degree_budget(const SurfaceScenario& sc) {
  BigInt g = gcd_power(sc.period, sc.n.value());
  BigInt budget = g * g * g * g;
  if (sc.kind == SurfaceKind::KummerK3 && budget > 16) budget = 16;
  return budget;
}

std::int64_t c_constant(const SurfaceScenario& sc) {
  const std::int64_t n = sc.n.value();
  if (!sc.twist_nontrivial) return std::gcd(sc.d % n, n);  // gcd(0, n) = n
  // gcd(2 d^2, n) without overflow.
  __int128 t = static_cast<__int128>(2) * (sc.d % n) * (sc.d % n);
  return std::gcd(static_cast<std::int64_t>(t % n), n);
}

BoundCertificate brauer_n_torsion_bound(const SurfaceScenario& sc, const EndStructure& end_k,
                                        const std::optional<EndStructure>& end_twist) {
  const std::int64_t n = sc.n.value();
  if (end_k.n != n) throw PreconditionError("bound: End structure level differs from n");
  const std::int64_t m = std::gcd(sc.d % n, n);

  BoundCertificate cert;
  cert.bound = 1;
  auto push = [&](const std::string& label, const BigInt& v) {
    cert.factors.push_back({label, v});
    cert.bound *= v;
  };

  if (!sc.twist_nontrivial) {
    push("hom-to-end kernel gcd(d,n)", m);
    push("equivariant end quotient n1*n2^2", end_k.quotient_order());
  } else {
    if (!end_twist)
      throw PreconditionError("bound: twisted scenario needs the quadratic-extension End structure");
    if (end_twist->n != n) throw PreconditionError("bound: twisted End structure level differs");
    if (end_twist->n1 % end_k.n1 != 0 || end_twist->n2 % end_k.n2 != 0)
      throw PreconditionError("bound: base End structure must divide the extension one");
    std::int64_t two = std::gcd<std::int64_t>(2, n);
    push("twist kernel gcd(2,n)^4", big_pow(BigInt(two), 4));
    push("hom-to-end kernel gcd(d,n)^2", BigInt(m) * m);
    BigInt ratio = (BigInt(end_twist->n1) / end_k.n1) * (BigInt(end_twist->n2) / end_k.n2) *
                   (BigInt(end_twist->n2) / end_k.n2);
    push("end ratio over the quadratic extension", ratio);
  }

  bool coprime_period = std::gcd(sc.period, n) == 1;
  bool odd_ok = sc.kind == SurfaceKind::AbelianTorsor || n % 2 == 1;
  cert.embedding_exact = coprime_period && sc.base_change_degree == 1 && odd_ok;
  cert.note = cert.embedding_exact
                  ? "torsor trivializes over the base and the Brauer quotient embeds isomorphically"
                  : "upper bound only";
  return cert;
}

IntegerActionGroup::IntegerActionGroup(std::int64_t rank, std::vector<BigMatrix> generators,
                                       std::int64_t closure_cap)
    : rank_(rank), gens_(std::move(generators)), cap_(closure_cap) {
  if (rank < 1) throw PreconditionError("IntegerActionGroup: rank must be positive");
  for (const auto& g : gens_) {
    if (static_cast<std::int64_t>(g.size()) != rank)
      throw PreconditionError("IntegerActionGroup: generator of wrong rank");
    for (const auto& row : g)
      if (static_cast<std::int64_t>(row.size()) != rank)
        throw PreconditionError("IntegerActionGroup: generator not square");
    BigInt det = integer_determinant(g);
    if (det != 1 && det != -1)
      throw PreconditionError("IntegerActionGroup: generator determinant must be +-1");
  }
}

namespace {

BigMatrix big_identity(std::int64_t r) {
  BigMatrix id(r, std::vector<BigInt>(r, 0));
  for (std::int64_t i = 0; i < r; ++i) id[i][i] = 1;
  return id;
}

BigMatrix big_mul(const BigMatrix& a, const BigMatrix& b) {
  const std::size_t r = a.size();
  BigMatrix out(r, std::vector<BigInt>(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < r; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

constexpr std::int64_t kEntryGrowthCap = 1ll << 48;

}  // namespace

const std::vector<BigMatrix>& IntegerActionGroup::closure() const {
  if (closed_) return closure_;
  std::set<BigMatrix> seen;
  seen.insert(big_identity(rank_));
  std::vector<BigMatrix> frontier = {big_identity(rank_)};
  while (!frontier.empty()) {
    std::vector<BigMatrix> next;
    for (const auto& x : frontier)
      for (const auto& g : gens_) {
        BigMatrix y = big_mul(x, g);
        for (const auto& row : y)
          for (const auto& v : row)
            if (v > kEntryGrowthCap || v < -kEntryGrowthCap)
              throw PreconditionError("IntegerActionGroup: entry growth cap hit; group is infinite");
        if (seen.insert(y).second) {
          if (static_cast<std::int64_t>(seen.size()) > cap_)
            throw PreconditionError("IntegerActionGroup: closure cap exceeded");
          next.push_back(std::move(y));
        }
      }
    frontier = std::move(next);
  }
  closure_.assign(seen.begin(), seen.end());
  closed_ = true;
  return closure_;
}

BigInt h1_integer_action(const IntegerActionGroup& g) {
  const std::int64_t r = g.rank();
  const std::int64_t order = g.order();
  if (order == 1) return 1;
  if (order > kMaxModulus) throw PreconditionError("h1: group order exceeds the modulus cap");
  Modulus mod(order);

  // Fixed points of the action on (Z/|G|)^r: kernel of the stacked (g - I).
  const auto& elems = g.closure();
  ModMatrix stacked(mod, r * elems.size(), r);
  for (std::size_t e = 0; e < elems.size(); ++e)
    for (std::int64_t i = 0; i < r; ++i)
      for (std::int64_t j = 0; j < r; ++j) {
        BigInt v = elems[e][i][j] - (i == j ? 1 : 0);
        stacked.set(e * r + i, j, static_cast<std::int64_t>(v % order));
      }
  std::vector<std::vector<std::int64_t>> fixed_gens = kernel(stacked);
  BigInt numerator = subgroup_shape(mod, fixed_gens, r).order();

  // Fixed sublattice (Z^r)^G: integer kernel of the stacked (g - I); the
  // kernel of an integer matrix is saturated.
  BigMatrix istack;
  for (const auto& e : elems) {
    for (std::int64_t i = 0; i < r; ++i) {
      std::vector<BigInt> row(r);
      for (std::int64_t j = 0; j < r; ++j) row[j] = e[i][j] - (i == j ? 1 : 0);
      istack.push_back(std::move(row));
    }
  }
  BigMatrix lattice = integer_kernel_basis(istack, r);
  std::vector<std::vector<std::int64_t>> lattice_mod;
  for (const auto& row : lattice) {
    std::vector<std::int64_t> v(r);
    for (std::int64_t j = 0; j < r; ++j) v[j] = static_cast<std::int64_t>(row[j] % order);
    lattice_mod.push_back(std::move(v));
  }
  BigInt denominator = subgroup_shape(mod, lattice_mod, r).order();

  if (numerator % denominator != 0)
    throw TheoremFalsified("h1: fixed-lattice image does not sit inside the fixed points");
  BigInt h1 = numerator / denominator;
  if (big_pow(BigInt(order), r) % h1 != 0)
    throw TheoremFalsified("h1 does not divide |G|^r");
  return h1;
}

BigInt algebraic_brauer_constant(std::int64_t r) {
  if (r < 1 || r > 20) throw PreconditionError("algebraic_brauer_constant: rank must be in [1,20]");
  BigInt gl = 1;
  BigInt threes = big_pow(BigInt(3), r);
  BigInt power = 1;
  for (std::int64_t i = 0; i < r; ++i) {
    gl *= threes - power;
    power *= 3;
  }
  return big_pow(gl, r);
}

BigInt k3_card_from_exponent(const BigInt& e, std::int64_t rank) {
  if (rank < 1 || rank > 20) throw PreconditionError("k3_card_from_exponent: rank must be in [1,20]");
  if (e < 1) throw PreconditionError("k3_card_from_exponent: exponent must be positive");
  return big_pow(e, 22 - rank);
}

BigInt over_q_bound(std::int64_t d) {
  if (d < 1) throw PreconditionError("over_q_bound: d must be positive");
  BigInt base = BigInt(8) * d;  // n / gcd(d, n) <= 8 forces n <= 8d
  return base * base * base;   // cubed over Br of the abelian surface, (Q/Z)^3
}

BigInt ell_primary_budget(std::int64_t ell, std::int64_t r, std::int64_t v, std::int64_t d,
                          const std::function<std::int64_t(std::int64_t, const BigInt&)>& B) {
  if (!is_prime(ell)) throw PreconditionError("ell_primary_budget: ell must be prime");
  if (r < 1 || v < 0 || d < 1) throw PreconditionError("ell_primary_budget: bad arguments");
  if (!B) throw PreconditionError("ell_primary_budget: bound function required");
  BigInt degree_budget = BigInt(24) * r * big_pow(BigInt(ell), 4 * v);
  std::int64_t b = B(ell, degree_budget);
  if (b < 0) throw PreconditionError("ell_primary_budget: bound function must be non-negative");
  // v_ell(2 d^2) on exact integers.
  BigInt twice_d2 = BigInt(2) * d * d;
  std::int64_t val = 0;
  while (twice_d2 % ell == 0) {
    twice_d2 /= ell;
    ++val;
  }
  return big_pow(BigInt(ell), b + val);
}

}  // namespace bsurf
