#include "bsurf/intlinalg.hpp"

#include <algorithm>

#include "bsurf/errors.hpp"

namespace bsurf {

namespace {

BigInt big_gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

// g = s*a + t*b with g = gcd(a,b) >= 0.
BigInt big_exgcd(const BigInt& a, const BigInt& b, BigInt& s, BigInt& t) {
  if (b == 0) {
    s = a < 0 ? -1 : 1;
    t = 0;
    return boost::multiprecision::abs(a);
  }
  BigInt s1, t1;
  BigInt g = big_exgcd(b, a % b, s1, t1);
  s = t1;
  t = s1 - (a / b) * t1;
  return g;
}

bool row_is_zero(const std::vector<BigInt>& r) {
  return std::all_of(r.begin(), r.end(), [](const BigInt& x) { return x == 0; });
}

}  // namespace

BigMatrix hermite_normal_form(BigMatrix m) {
  if (m.empty()) return m;
  const std::size_t cols = m[0].size();
  std::vector<std::vector<BigInt>> out;
  std::size_t row_at = 0;
  for (std::size_t col = 0; col < cols && row_at <= m.size(); ++col) {
    // Clear the column below row_at with unimodular row pairs.
    std::size_t pivot = m.size();
    for (std::size_t i = row_at; i < m.size(); ++i) {
      if (m[i][col] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == m.size()) continue;
    std::swap(m[row_at], m[pivot]);
    for (std::size_t i = row_at + 1; i < m.size(); ++i) {
      if (m[i][col] == 0) continue;
      if (m[i][col] % m[row_at][col] == 0) {
        BigInt q = m[i][col] / m[row_at][col];
        for (std::size_t j = col; j < cols; ++j) m[i][j] -= q * m[row_at][j];
        continue;
      }
      BigInt s, t;
      BigInt g = big_exgcd(m[row_at][col], m[i][col], s, t);
      BigInt p = -(m[i][col] / g), q = m[row_at][col] / g;
      for (std::size_t j = col; j < cols; ++j) {
        BigInt nu = s * m[row_at][j] + t * m[i][j];
        BigInt nv = p * m[row_at][j] + q * m[i][j];
        m[row_at][j] = nu;
        m[i][j] = nv;
      }
    }
    if (m[row_at][col] < 0)
      for (std::size_t j = col; j < cols; ++j) m[row_at][j] = -m[row_at][j];
    ++row_at;
  }
  m.resize(row_at);
  // Reduce entries above pivots.
  std::vector<std::size_t> pivot_col(row_at);
  for (std::size_t i = 0; i < row_at; ++i) {
    std::size_t c = 0;
    while (c < cols && m[i][c] == 0) ++c;
    pivot_col[i] = c;
  }
  for (std::size_t i = 0; i < row_at; ++i) {
    for (std::size_t below = i + 1; below < row_at; ++below) {
      std::size_t c = pivot_col[below];
      BigInt q = m[i][c] / m[below][c];
      if (m[i][c] % m[below][c] < 0) q -= 1;  // floor division for a canonical range
      if (q != 0)
        for (std::size_t j = 0; j < cols; ++j) m[i][j] -= q * m[below][j];
    }
  }
  return m;
}

std::vector<BigInt> smith_invariants(BigMatrix m) {
  std::size_t rows = m.size();
  std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::size_t k = std::min(rows, cols);
  std::vector<BigInt> diag;
  std::size_t top = 0;
  while (top < k) {
    // Find a nonzero entry in the working block.
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = top; i < rows && pi == rows; ++i)
      for (std::size_t j = top; j < cols; ++j)
        if (m[i][j] != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == rows) break;
    std::swap(m[top], m[pi]);
    for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][top], m[i][pj]);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = top + 1; i < rows; ++i) {
        if (m[i][top] == 0) continue;
        if (m[i][top] % m[top][top] == 0) {
          // Plain elimination keeps the pivot row fixed; the exgcd transform
          // may swap rows when the pivot already divides the entry.
          BigInt q = m[i][top] / m[top][top];
          for (std::size_t j = top; j < cols; ++j) m[i][j] -= q * m[top][j];
          continue;
        }
        BigInt s, t;
        BigInt g = big_exgcd(m[top][top], m[i][top], s, t);
        BigInt p = -(m[i][top] / g), q = m[top][top] / g;
        for (std::size_t j = top; j < cols; ++j) {
          BigInt nu = s * m[top][j] + t * m[i][j];
          BigInt nv = p * m[top][j] + q * m[i][j];
          m[top][j] = nu;
          m[i][j] = nv;
        }
      }
      for (std::size_t j = top + 1; j < cols; ++j) {
        if (m[top][j] == 0) continue;
        if (m[top][j] % m[top][top] == 0) {
          // Column top is untouched here, so the pass stays clean.
          BigInt q = m[top][j] / m[top][top];
          for (std::size_t i = top; i < rows; ++i) m[i][j] -= q * m[i][top];
          continue;
        }
        clean = false;
        BigInt s, t;
        BigInt g = big_exgcd(m[top][top], m[top][j], s, t);
        BigInt p = -(m[top][j] / g), q = m[top][top] / g;
        for (std::size_t i = top; i < rows; ++i) {
          BigInt nu = s * m[i][top] + t * m[i][j];
          BigInt nv = p * m[i][top] + q * m[i][j];
          m[i][top] = nu;
          m[i][j] = nv;
        }
      }
    }
    diag.push_back(boost::multiprecision::abs(m[top][top]));
    ++top;
  }
  while (diag.size() < k) diag.push_back(0);
  // Enforce the divisibility chain d_i | d_{i+1}.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
      if (diag[i] == 0 && diag[i + 1] != 0) {
        std::swap(diag[i], diag[i + 1]);
        changed = true;
        continue;
      }
      if (diag[i] != 0 && diag[i + 1] % diag[i] != 0) {
        BigInt a = diag[i], b = diag[i + 1];
        BigInt g = big_gcd(a, b);
        diag[i] = g;
        diag[i + 1] = a / g * b;
        changed = true;
      }
    }
  }
  return diag;
}

BigMatrix integer_kernel_basis(const BigMatrix& m, std::size_t cols) {
  const std::size_t r = m.size();
  for (const auto& row : m)
    if (row.size() != cols) throw PreconditionError("integer_kernel_basis: ragged matrix");
  // Rows of [m^T | I] span {(m x, x)}; HNF rows whose m-part vanishes give a
  // basis of the kernel.
  BigMatrix aug(cols, std::vector<BigInt>(r + cols, 0));
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = 0; j < r; ++j) aug[i][j] = m[j][i];
    aug[i][r + i] = 1;
  }
  BigMatrix h = hermite_normal_form(std::move(aug));
  BigMatrix basis;
  for (const auto& row : h) {
    bool lead_zero = true;
    for (std::size_t j = 0; j < r && lead_zero; ++j) lead_zero = row[j] == 0;
    if (!lead_zero) continue;
    basis.emplace_back(row.begin() + r, row.end());
  }
  return basis;
}

std::vector<BigInt> lattice_quotient_invariants(const BigMatrix& sup, const BigMatrix& sub,
                                                std::size_t dim) {
  BigMatrix basis = hermite_normal_form(sup);
  if (basis.size() != dim)
    throw PreconditionError("lattice_quotient_invariants: ambient lattice is not full rank");
  std::vector<std::size_t> pivot_col(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t c = 0;
    while (c < dim && basis[i][c] == 0) ++c;
    pivot_col[i] = c;
  }
  // Express each sub generator in the sup basis; coefficients must be
  // integral, otherwise sub is not contained in sup.
  BigMatrix coeffs;
  for (const auto& gen : sub) {
    if (gen.size() != dim) throw PreconditionError("lattice_quotient_invariants: ragged sub");
    std::vector<BigInt> v = gen;
    std::vector<BigInt> x(dim, 0);
    for (std::size_t i = 0; i < dim; ++i) {
      std::size_t c = pivot_col[i];
      if (v[c] % basis[i][c] != 0)
        throw PreconditionError("lattice_quotient_invariants: sub lattice not contained in sup");
      BigInt q = v[c] / basis[i][c];
      x[i] = q;
      if (q != 0)
        for (std::size_t j = 0; j < dim; ++j) v[j] -= q * basis[i][j];
    }
    if (!row_is_zero(v))
      throw PreconditionError("lattice_quotient_invariants: sub lattice not contained in sup");
    coeffs.push_back(std::move(x));
  }
  std::vector<BigInt> diag = smith_invariants(std::move(coeffs));
  while (diag.size() < dim) diag.push_back(0);
  for (const auto& d : diag)
    if (d == 0) throw PreconditionError("lattice_quotient_invariants: infinite quotient");
  // Quotient Z^dim / rowspan(coeffs) has invariant factors = the SNF diagonal.
  std::vector<BigInt> out;
  for (const auto& d : diag)
    if (d > 1) out.push_back(d);
  return out;
}

BigInt integer_determinant(BigMatrix m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw PreconditionError("integer_determinant: matrix not square");
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (m[i][k] != 0) {
          swap_row = i;
          break;
        }
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace bsurf
