#include "bsurf/modring.hpp"

#include <algorithm>
#include <numeric>

#include "bsurf/intlinalg.hpp"

namespace bsurf {

namespace {

// Extended gcd on plain integers: returns g = gcd(a, b) and s, t with
// s*a + t*b == g.  Inputs may be any int64 (non-negative in our uses).
std::int64_t exgcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
  if (b == 0) {
    s = (a < 0) ? -1 : 1;
    t = 0;
    return a < 0 ? -a : a;
  }
  std::int64_t s1, t1;
  std::int64_t g = exgcd(b, a % b, s1, t1);
  s = t1;
  t = s1 - (a / b) * t1;
  return g;
}

}  // namespace

bool Modulus::is_unit(std::int64_t a) const { return std::gcd(reduce(a), n_) == 1; }

std::int64_t Modulus::inv(std::int64_t a) const {
  a = reduce(a);
  std::int64_t s, t;
  std::int64_t g = exgcd(a, n_, s, t);
  if (g != 1) throw PreconditionError("not a unit mod " + std::to_string(n_) + ": " + std::to_string(a));
  return reduce(s);
}

std::int64_t Modulus::unit_multiplier(std::int64_t a) const {
  a = reduce(a);
  if (a == 0) return 1;
  std::int64_t g = std::gcd(a, n_);
  std::int64_t a1 = a / g;
  std::int64_t m = n_ / g;  // a1 is a unit mod m
  std::int64_t s, t;
  exgcd(a1 % m == 0 ? 1 : a1 % m, m, s, t);
  std::int64_t u = m == 1 ? 1 : ((s % m) + m) % m;
  // Lift u to a unit mod n; some shift by a multiple of m is a unit.
  while (std::gcd(u, n_) != 1) u += m;
  return reduce(u);
}

Valuation valuation(std::int64_t x, std::int64_t ell) {
  if (!is_prime(ell)) throw PreconditionError("valuation: " + std::to_string(ell) + " is not prime");
  if (x == 0) return Valuation::infinite();
  if (x < 0) x = -x;
  std::int64_t e = 0;
  while (x % ell == 0) {
    x /= ell;
    ++e;
  }
  return Valuation::finite(e);
}

std::int64_t gcd_power(std::int64_t a, std::int64_t b) {
  if (a < 1 || b < 1) throw PreconditionError("gcd_power requires positive arguments");
  std::int64_t out = 1;
  std::int64_t g = std::gcd(a, b);
  while (g != 1) {
    a /= g;
    out *= g;
    g = std::gcd(a, g);
  }
  return out;
}

std::int64_t odd_part(std::int64_t n) {
  if (n < 1) throw PreconditionError("odd_part requires n >= 1");
  while (n % 2 == 0) n /= 2;
  return n;
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::pair<std::int64_t, std::int64_t> prime_power_decompose(std::int64_t n) {
  if (n < 2) throw PreconditionError("not a prime power: " + std::to_string(n));
  std::int64_t ell = n;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      ell = d;
      break;
    }
  }
  std::int64_t s = 0, m = n;
  while (m % ell == 0) {
    m /= ell;
    ++s;
  }
  if (m != 1) throw PreconditionError("not a prime power: " + std::to_string(n));
  return {ell, s};
}

ModMatrix ModMatrix::from_rows(Modulus mod, const std::vector<std::vector<std::int64_t>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows[0].size();
  for (const auto& row : rows)
    if (row.size() != c) throw SchemaError("ragged matrix rows");
  ModMatrix m(mod, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  return m;
}

std::vector<std::int64_t> ModMatrix::row(std::size_t i) const {
  return std::vector<std::int64_t>(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_);
}

std::vector<std::int64_t> ModMatrix::apply(const std::vector<std::int64_t>& v) const {
  if (v.size() != cols_) throw PreconditionError("ModMatrix::apply: size mismatch");
  std::vector<std::int64_t> out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    __int128 acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc += static_cast<__int128>(at(i, j)) * v[j];
    out[i] = mod_.reduce(static_cast<std::int64_t>(acc % mod_.value()));
  }
  return out;
}

namespace {

using Row = std::vector<std::int64_t>;

// In-place u <- s*u + t*v, v <- p*u + q*v over Z/n, for the unimodular
// transform [[s,t],[p,q]].
void transform_rows(const Modulus& mod, Row& u, Row& v, std::int64_t s, std::int64_t t,
                    std::int64_t p, std::int64_t q) {
  for (std::size_t j = 0; j < u.size(); ++j) {
    std::int64_t nu = mod.add(mod.mul(s, u[j]), mod.mul(t, v[j]));
    std::int64_t nv = mod.add(mod.mul(p, u[j]), mod.mul(q, v[j]));
    u[j] = nu;
    v[j] = nv;
  }
}

bool row_is_zero(const Row& r) {
  return std::all_of(r.begin(), r.end(), [](std::int64_t x) { return x == 0; });
}

}  // namespace

ModMatrix howell_basis(const ModMatrix& m) {
  const Modulus mod = m.modulus();
  const std::int64_t n = mod.value();
  const std::size_t cols = m.cols();

  std::vector<Row> work;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Row r = m.row(i);
    if (!row_is_zero(r)) work.push_back(std::move(r));
  }

  std::vector<std::optional<Row>> pivot_row(cols);
  for (std::size_t col = 0; col < cols; ++col) {
    std::vector<Row> next;
    for (auto& r : work) {
      if (r[col] == 0) {
        if (!row_is_zero(r)) next.push_back(std::move(r));
        continue;
      }
      if (!pivot_row[col]) {
        pivot_row[col] = std::move(r);
        continue;
      }
      Row& p = *pivot_row[col];
      if (r[col] % p[col] == 0) {
        // Plain elimination keeps the pivot row fixed.
        std::int64_t q = mod.reduce(-(r[col] / p[col]));
        for (std::size_t j = 0; j < r.size(); ++j) r[j] = mod.add(r[j], mod.mul(q, p[j]));
      } else {
        std::int64_t s, t;
        std::int64_t g = exgcd(p[col], r[col], s, t);
        // [[s, t], [-b/g, a/g]] has determinant 1, so the span is preserved.
        transform_rows(mod, p, r, mod.reduce(s), mod.reduce(t), mod.reduce(-(r[col] / g)),
                       mod.reduce(p[col] / g));
      }
      if (!row_is_zero(r)) next.push_back(std::move(r));
    }
    if (pivot_row[col]) {
      Row& p = *pivot_row[col];
      // Normalize the pivot to the canonical generator gcd(entry, n).
      std::int64_t u = mod.unit_multiplier(p[col]);
      for (auto& x : p) x = mod.mul(u, x);
      // Howell property: the annihilator multiple of the pivot row starts
      // further right and must stay inside the basis span.
      std::int64_t g = p[col];
      std::int64_t ann = n / std::gcd(g, n);
      if (ann != 1) {
        Row extra(cols);
        for (std::size_t j = 0; j < cols; ++j) extra[j] = mod.mul(ann, p[j]);
        if (!row_is_zero(extra)) next.push_back(std::move(extra));
      }
    }
    work = std::move(next);
  }

  // Reduce entries above each pivot into [0, pivot).
  std::vector<std::size_t> pivot_cols;
  for (std::size_t col = 0; col < cols; ++col)
    if (pivot_row[col]) pivot_cols.push_back(col);
  for (std::size_t pi = 0; pi < pivot_cols.size(); ++pi) {
    std::size_t col = pivot_cols[pi];
    const Row& p = *pivot_row[col];
    std::int64_t g = p[col];
    for (std::size_t qi = 0; qi < pi; ++qi) {
      Row& above = *pivot_row[pivot_cols[qi]];
      std::int64_t q = above[col] / g;
      if (q != 0)
        for (std::size_t j = 0; j < cols; ++j) above[j] = mod.sub(above[j], mod.mul(q, p[j]));
    }
  }

  ModMatrix out(mod, pivot_cols.size(), cols);
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
    const Row& p = *pivot_row[pivot_cols[i]];
    for (std::size_t j = 0; j < cols; ++j) out.set(i, j, p[j]);
  }
  return out;
}

std::vector<std::vector<std::int64_t>> kernel(const ModMatrix& m) {
  const Modulus mod = m.modulus();
  const std::size_t r = m.rows(), c = m.cols();
  // Row span of [m^T | I] is {(m v, v)}; the Howell rows whose m-part
  // vanishes generate the kernel exactly.
  ModMatrix aug(mod, c, r + c);
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < r; ++j) aug.set(i, j, m.at(j, i));
    aug.set(i, r + i, 1);
  }
  ModMatrix h = howell_basis(aug);
  std::vector<std::vector<std::int64_t>> gens;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    bool lead_zero = true;
    for (std::size_t j = 0; j < r && lead_zero; ++j) lead_zero = h.at(i, j) == 0;
    if (!lead_zero) continue;
    std::vector<std::int64_t> v(c);
    for (std::size_t j = 0; j < c; ++j) v[j] = h.at(i, r + j);
    gens.push_back(std::move(v));
  }
  for (const auto& v : gens) {
    auto image = m.apply(v);
    if (!std::all_of(image.begin(), image.end(), [](std::int64_t x) { return x == 0; }))
      throw TheoremFalsified("kernel generator fails membership check");
  }
  return gens;
}

AbelianShape::AbelianShape(std::vector<std::int64_t> factors) : factors_(std::move(factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) throw PreconditionError("invariant factors must be >= 2");
    if (i > 0 && factors_[i] % factors_[i - 1] != 0)
      throw PreconditionError("invariant factors must form a divisibility chain");
  }
}

BigInt AbelianShape::order() const {
  BigInt o = 1;
  for (auto f : factors_) o *= f;
  return o;
}

AbelianShape subgroup_shape(Modulus mod, const std::vector<std::vector<std::int64_t>>& generators,
                            std::size_t k) {
  const std::int64_t n = mod.value();
  for (const auto& g : generators)
    if (g.size() != k) throw PreconditionError("subgroup_shape: generator length mismatch");

  // S = L / nZ^k where L is spanned by the integer lifts together with nZ^k.
  BigMatrix sup;
  for (const auto& g : generators) {
    std::vector<BigInt> row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = mod.reduce(g[j]);
    sup.push_back(std::move(row));
  }
  BigMatrix sub;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<BigInt> row(k, 0);
    row[j] = n;
    sub.push_back(row);
    sup.push_back(std::move(row));
  }
  auto inv = lattice_quotient_invariants(sup, sub, k);
  std::vector<std::int64_t> factors;
  for (const auto& d : inv) factors.push_back(static_cast<std::int64_t>(d));
  return AbelianShape(std::move(factors));
}

}  // namespace bsurf
