#ifndef BSURF_MODRING_HPP
#define BSURF_MODRING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "bsurf/bigint.hpp"
#include "bsurf/errors.hpp"

namespace bsurf {

inline constexpr std::int64_t kMaxModulus = 2147483647;  // 2^31 - 1

/// The ring Z/nZ for n >= 1.  Residues are machine integers in [0, n);
/// products are accumulated in 128 bits so they never overflow for the
/// supported modulus range.
class Modulus {
 public:
  explicit Modulus(std::int64_t n) : n_(n) {
    if (n < 1 || n > kMaxModulus)
      throw PreconditionError("modulus must be in [1, 2^31-1], got " + std::to_string(n));
  }

  std::int64_t value() const { return n_; }

  std::int64_t reduce(std::int64_t x) const {
    std::int64_t r = x % n_;
    return r < 0 ? r + n_ : r;
  }

  std::int64_t add(std::int64_t a, std::int64_t b) const { return reduce(a + b); }
  std::int64_t sub(std::int64_t a, std::int64_t b) const { return reduce(a - b); }
  std::int64_t neg(std::int64_t a) const { return reduce(-a); }
  std::int64_t mul(std::int64_t a, std::int64_t b) const {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % n_ < 0
                                         ? (static_cast<__int128>(a) * b) % n_ + n_
                                         : (static_cast<__int128>(a) * b) % n_);
  }

  bool is_unit(std::int64_t a) const;
  /// Multiplicative inverse of a unit; PreconditionError otherwise.
  std::int64_t inv(std::int64_t a) const;
  /// Some unit u with u*a == gcd(a, n) (mod n); a may be any residue.
  std::int64_t unit_multiplier(std::int64_t a) const;

  bool operator==(const Modulus& o) const { return n_ == o.n_; }

 private:
  std::int64_t n_;
};

/// The l-adic valuation of an integer; v(0) is a distinct infinite value,
/// never an integer sentinel.
class Valuation {
 public:
  static Valuation finite(std::int64_t e) { return Valuation(e, false); }
  static Valuation infinite() { return Valuation(0, true); }

  bool is_infinite() const { return infinite_; }
  std::int64_t value() const {
    if (infinite_) throw PreconditionError("valuation is infinite");
    return e_;
  }

  bool operator==(const Valuation& o) const {
    return infinite_ == o.infinite_ && (infinite_ || e_ == o.e_);
  }
  bool operator<(const Valuation& o) const {
    if (infinite_) return false;
    if (o.infinite_) return true;
    return e_ < o.e_;
  }

 private:
  Valuation(std::int64_t e, bool inf) : e_(e), infinite_(inf) {}
  std::int64_t e_;
  bool infinite_;
};

/// v_ell(x); ell must be prime.
Valuation valuation(std::int64_t x, std::int64_t ell);

/// gcd(a, b^inf): the largest divisor of a supported on the primes of b.
std::int64_t gcd_power(std::int64_t a, std::int64_t b);

/// n / 2^{v_2(n)}.
std::int64_t odd_part(std::int64_t n);

bool is_prime(std::int64_t p);

/// Writes n as ell^s and returns (ell, s); PreconditionError when n is not a
/// prime power > 1.
std::pair<std::int64_t, std::int64_t> prime_power_decompose(std::int64_t n);

/// Dense matrix over Z/nZ, arbitrary rectangular shape.
class ModMatrix {
 public:
  ModMatrix(Modulus mod, std::size_t rows, std::size_t cols)
      : mod_(mod), rows_(rows), cols_(cols), e_(rows * cols, 0) {}

  static ModMatrix from_rows(Modulus mod, const std::vector<std::vector<std::int64_t>>& rows);

  Modulus modulus() const { return mod_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::int64_t at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, std::int64_t v) { e_[i * cols_ + j] = mod_.reduce(v); }

  std::vector<std::int64_t> row(std::size_t i) const;

  /// m * v for a column vector v of length cols().
  std::vector<std::int64_t> apply(const std::vector<std::int64_t>& v) const;

  bool operator==(const ModMatrix& o) const {
    return mod_ == o.mod_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }

 private:
  Modulus mod_;
  std::size_t rows_, cols_;
  std::vector<std::int64_t> e_;
};

/// Howell form of the row span: the canonical echelon basis over Z/nZ.  Two
/// matrices have equal row spans iff their Howell forms are identical.  Zero
/// rows are dropped, so the result may have fewer rows than the input.
///
/// Convention: pivots sit in strictly increasing columns, each pivot is the
/// canonical generator gcd(entry, n) of its ideal, entries above a pivot p
/// are reduced into [0, p), and the span is closed under the annihilator
/// rows that the Howell property requires.
ModMatrix howell_basis(const ModMatrix& m);

/// Generators of the right kernel {v : m v = 0 (mod n)}.
std::vector<std::vector<std::int64_t>> kernel(const ModMatrix& m);

/// Invariant factors d_1 | d_2 | ... | d_k (each >= 2) of a finite abelian
/// group; the empty sequence is the trivial group.
class AbelianShape {
 public:
  AbelianShape() = default;
  explicit AbelianShape(std::vector<std::int64_t> factors);

  const std::vector<std::int64_t>& factors() const { return factors_; }
  bool trivial() const { return factors_.empty(); }
  BigInt order() const;
  std::int64_t exponent() const { return factors_.empty() ? 1 : factors_.back(); }

  bool operator==(const AbelianShape& o) const { return factors_ == o.factors_; }

 private:
  std::vector<std::int64_t> factors_;
};

/// Invariant factors of the subgroup of (Z/nZ)^k generated by the given
/// vectors (all of length k).
AbelianShape subgroup_shape(Modulus mod, const std::vector<std::vector<std::int64_t>>& generators,
                            std::size_t k);

}  // namespace bsurf

#endif
