#include "bsurf/instances.hpp"

#include <numeric>

namespace bsurf {

Mat2 random_invertible(std::mt19937_64& rng, Modulus mod) {
  std::uniform_int_distribution<std::int64_t> dist(0, mod.value() - 1);
  for (;;) {
    Mat2 m(mod, dist(rng), dist(rng), dist(rng), dist(rng));
    if (m.invertible()) return m;
  }
}

MatrixGroup random_subgroup(std::mt19937_64& rng, Modulus mod, int max_generators) {
  std::uniform_int_distribution<int> count(1, max_generators);
  std::vector<Mat2> gens;
  int k = count(rng);
  for (int i = 0; i < k; ++i) gens.push_back(random_invertible(rng, mod));
  return MatrixGroup(mod, std::move(gens));
}

namespace {

// Structured draw for the target representation generator.
Mat2 draw_target(std::mt19937_64& rng, Modulus mod) {
  std::uniform_int_distribution<std::int64_t> dist(0, mod.value() - 1);
  std::uniform_int_distribution<int> family(0, 3);
  for (;;) {
    Mat2 m = Mat2::identity(mod);
    switch (family(rng)) {
      case 0:
        m = Mat2(mod, dist(rng), 0, 0, dist(rng));
        break;
      case 1:
        m = Mat2(mod, dist(rng), dist(rng), 0, dist(rng));
        break;
      case 2: {
        std::int64_t x = dist(rng), y = dist(rng), eps = dist(rng);
        m = Mat2(mod, x, mod.mul(eps, y), y, x);
        break;
      }
      default:
        m = Mat2(mod, dist(rng), dist(rng), dist(rng), dist(rng));
        break;
    }
    if (m.invertible()) return m;
  }
}

// Solve M' phi = chi phi M for M, with phi = diag(D, 1); returns an
// invertible solution or nothing when the congruences are unsolvable.
std::optional<Mat2> solve_source(std::mt19937_64& rng, Modulus mod, const Mat2& mp, int chi,
                                 std::int64_t deg) {
  const std::int64_t n = mod.value();
  const std::int64_t dr = deg % n;
  const std::int64_t g = std::gcd(dr == 0 ? n : dr, n);
  std::int64_t sign = chi == -1 ? n - 1 : 1;
  // Entrywise: D ma = chi p D, D mb = chi q, mc = chi r D, md = chi s.
  std::int64_t q_entry = mod.mul(sign, mp.b());
  if (q_entry % g != 0) return std::nullopt;
  std::uniform_int_distribution<std::int64_t> shift(0, g - 1);
  Modulus cof(n / g == 0 ? 1 : n / g);
  std::int64_t step = n / g;
  std::int64_t mb0 =
      step == 0 ? 0 : mod.mul(cof.inv(cof.reduce(dr / g)), cof.reduce(q_entry / g));
  for (int attempt = 0; attempt < 2 * g; ++attempt) {
    std::int64_t ma = mod.add(mod.mul(sign, mp.a()), mod.mul(shift(rng), step));
    std::int64_t mb = mod.add(mb0, mod.mul(shift(rng), step));
    Mat2 m(mod, ma, mb, mod.mul(sign, mod.mul(mp.c(), dr)), mod.mul(sign, mp.d()));
    if (m.invertible()) return m;
  }
  return std::nullopt;
}

}  // namespace

EquivariantInstance random_equivariant_instance(std::mt19937_64& rng, std::int64_t n,
                                                std::int64_t d, bool twisted) {
  Modulus mod(n);
  IsogenyData iso = IsogenyData::canonical(mod, d);
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_int_distribution<int> coin(0, 1);
  const int gens = count(rng);
  for (int attempt = 0; attempt < 256; ++attempt) {
    std::vector<ActionPair> pairs;
    bool saw_twist = false;
    for (int i = 0; i < gens; ++i) {
      int chi = twisted && (coin(rng) || i + 1 == gens) ? -1 : 1;
      if (!twisted) chi = 1;
      Mat2 mp = draw_target(rng, mod);
      auto m = solve_source(rng, mod, mp, chi, d);
      if (!m) break;
      saw_twist |= chi == -1;
      pairs.push_back(ActionPair{*m, mp, chi});
    }
    if (static_cast<int>(pairs.size()) != gens) continue;
    if (twisted && !saw_twist) continue;
    PairAction action(mod, std::move(pairs));
    require_equivariant(action, iso);
    return EquivariantInstance{std::move(action), std::move(iso)};
  }
  // Deterministic fallback: +/- identity pairs are always equivariant.
  std::vector<ActionPair> pairs;
  if (twisted) {
    pairs.push_back(
        ActionPair{Mat2::scalar(mod, n - 1), Mat2::identity(mod), -1});
  } else {
    pairs.push_back(ActionPair{Mat2::identity(mod), Mat2::identity(mod), 1});
  }
  PairAction action(mod, std::move(pairs));
  require_equivariant(action, iso);
  return EquivariantInstance{std::move(action), std::move(iso)};
}

}  // namespace bsurf
