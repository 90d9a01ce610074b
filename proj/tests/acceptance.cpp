// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Every expected value here is either a pinned constant or comes
// from an independent oracle computed on the spot.
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "bsurf/brauer.hpp"
#include "bsurf/commands.hpp"
#include "bsurf/gl2.hpp"
#include "bsurf/instances.hpp"
#include "bsurf/lattice.hpp"
#include "bsurf/torsionhom.hpp"
#include "oracles.hpp"

using namespace bsurf;

namespace {

int unexpected = 0;

// A criterion marked expect_failure documents a claim with a certified
// counterexample: the run must reproduce the failure, and the failure is
// reported but does not fail the suite.  Everything else must pass.
void criterion(int number, const std::string& name, const std::function<void()>& body,
               bool expect_failure = false) {
  auto start = std::chrono::steady_clock::now();
  std::string error;
  try {
    body();
  } catch (const std::exception& e) {
    error = e.what();
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  if (error.empty() && !expect_failure) {
    std::cout << "PASS criterion " << number << ": " << name << " (" << ms << " ms)\n";
  } else if (!error.empty() && expect_failure) {
    std::cout << "FAIL criterion " << number << " (expected): " << name << " -- " << error
              << "\n";
  } else if (!error.empty()) {
    ++unexpected;
    std::cout << "FAIL criterion " << number << ": " << name << " -- " << error << "\n";
  } else {
    ++unexpected;
    std::cout << "PASS criterion " << number
              << " (UNEXPECTED, the documented counterexample vanished): " << name << "\n";
  }
  std::cout.flush();
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

std::vector<Mat2> gl2_generators(Modulus mod) {
  std::vector<Mat2> gens = {Mat2(mod, 1, 1, 0, 1), Mat2(mod, 1, 0, 1, 1), Mat2(mod, 0, 1, 1, 0)};
  for (std::int64_t u = 2; u < mod.value(); ++u)
    if (mod.is_unit(u)) {
      gens.push_back(Mat2(mod, u, 0, 0, 1));
      break;
    }
  return gens;
}

// ---- criterion bodies -------------------------------------------------

// Structured commutant = exhaustive commutant for every matrix over the
// listed moduli.
void commutant_oracle_equivalence() {
  const std::vector<std::pair<std::int64_t, std::int64_t>> levels = {
      {2, 1}, {3, 1}, {2, 2}, {5, 1}, {2, 3}, {3, 2}};
  std::int64_t checked = 0;
  for (auto [ell, s] : levels) {
    std::int64_t q = 1;
    for (int i = 0; i < s; ++i) q *= ell;
    Modulus mod(q);
    std::vector<Mat2> all = oracles::all_matrices(mod);
    for (const auto& a : all) {
      CommutantResult res = commutant(a, ell, s);
      // Exhaustive commutant as a set of flat coordinates.
      std::set<std::array<std::int64_t, 4>> brute;
      for (const auto& m : all)
        if (m.mul(a) == a.mul(m)) brute.insert(m.e);
      auto span =
          oracles::enumerate_span(mod, oracles::matrices_to_vectors(res.generators), 4);
      std::set<std::array<std::int64_t, 4>> structured;
      for (const auto& v : span) structured.insert({v[0], v[1], v[2], v[3]});
      require(structured == brute, "mismatch at " + a.str());
      require(res.shape.order() == BigInt(static_cast<std::int64_t>(brute.size())),
              "shape order mismatch at " + a.str());
      ++checked;
    }
  }
  require(checked == 16 + 81 + 256 + 625 + 4096 + 6561, "wrong sweep size");
}

// Exhaustive abelian-subgroup enumeration obeys #H <= ell^{3s}; the maximal
// orders at levels 3 and 5 are exactly 8 and 24.
void abelian_subgroup_bound() {
  AbelianEnumeration e3 = enumerate_abelian(3, 1);
  require(e3.max_order == 8, "max abelian order at level 3 is " + std::to_string(e3.max_order));
  AbelianEnumeration e5 = enumerate_abelian(5, 1);
  require(e5.max_order == 24, "max abelian order at level 5 is " + std::to_string(e5.max_order));
  AbelianEnumeration e9 = enumerate_abelian(3, 2);
  require(e9.max_order <= 729, "bound violated at level 9");
  // enumerate_abelian throws TheoremFalsified internally if any subgroup
  // exceeds ell^{3s}; reaching this point certifies the bound for all three.
}

// Every enumerated abelian subgroup conjugates into its tagged normal form,
// with membership checked against the verbatim defining conditions.
void normal_form_soundness() {
  std::int64_t verified = 0;
  for (auto [ell, s] : std::vector<std::pair<std::int64_t, std::int64_t>>{{3, 1}, {5, 1}, {3, 2}}) {
    AbelianEnumeration e = enumerate_abelian(ell, s);
    for (const auto& h : e.representatives) {
      NormalFormTag tag = classify_abelian(h, ell, s);
      Modulus level(tag.level);
      for (const auto& g : h.closure()) {
        Mat2 moved = tag.conjugator.mul(g.reduced(level)).mul(tag.conjugator.inverse());
        require(normal_form_contains(tag, moved),
                "element escapes " + to_string(tag.kind) + " at level " +
                    std::to_string(tag.level));
      }
      ++verified;
    }
  }
  require(verified > 100, "surprisingly few subgroups verified");
}

// The 4 / 2 / 1 rank-jump trichotomy on constructed representatives.
void rank_trichotomy() {
  struct Case {
    std::int64_t ell, s;
  };
  for (auto [ell, s] : std::vector<std::pair<std::int64_t, std::int64_t>>{{3, 1}, {3, 2}, {5, 1}}) {
    std::int64_t q = 1;
    for (int i = 0; i < s; ++i) q *= ell;
    Modulus mod(q);
    require(rank_jump(MatrixGroup(mod, {}), ell, s) == 4, "scalar case is not 4");
    require(rank_jump(MatrixGroup(mod, {Mat2(mod, 1, 1, 0, 1)}), ell, s) == 2,
            "abelian case is not 2");
    require(rank_jump(MatrixGroup(mod, gl2_generators(mod)), ell, s) == 1,
            "non-abelian case is not 1");
  }
}

// End-structure shape on random subgroups at each listed modulus, with the
// divisor-scan recharacterization taken verbatim: n1 = largest divisor with
// abelian reduced image, n2 = largest divisor with scalar reduced image.
// The n1 form of this claim is false: an image that is scalar mod a prime
// but carries two independent depth directions is abelian at the full level
// while its End module stays small.  This criterion is implemented as
// stated and is expected to fail with an explicit counterexample; the
// corrected recharacterization is certified by the next criterion.
void end_shape_random_verbatim() {
  std::mt19937_64 rng(kDefaultSeed);
  for (std::int64_t n : {4, 8, 9, 25, 27}) {
    Modulus mod(n);
    for (int trial = 0; trial < 200; ++trial) {
      MatrixGroup image = random_subgroup(rng, mod);
      EndStructure es = end_invariants(image);  // certifies shape + corrected scans
      require(es.n % es.n1 == 0 && es.n1 % es.n2 == 0, "divisibility chain broken");
      std::int64_t abelian = largest_abelian_divisor(image);
      if (abelian != es.n1) {
        std::string gens;
        for (const auto& g : image.generators()) gens += " " + g.str();
        require(false, "verbatim abelian-divisor scan gives n1 = " + std::to_string(abelian) +
                           " but the End module has n1 = " + std::to_string(es.n1) +
                           " for the abelian image" + gens +
                           " (End is Z/n x Z/n1 x (Z/n2)^2 by direct computation; the abelian "
                           "recharacterization of n1 overshoots on depth images)");
      }
    }
  }
}

// Same sweep with the certified recharacterizations: n2 = largest scalar
// divisor and n1 = largest divisor whose reduced image is enveloped by a
// single matrix.  end_invariants hard-checks both on every call.
void end_shape_random_certified() {
  std::mt19937_64 rng(kDefaultSeed);
  for (std::int64_t n : {4, 8, 9, 25, 27}) {
    Modulus mod(n);
    for (int trial = 0; trial < 200; ++trial) {
      MatrixGroup image = random_subgroup(rng, mod);
      EndStructure es = end_invariants(image);
      require(es.n % es.n1 == 0 && es.n1 % es.n2 == 0, "divisibility chain broken");
      require(largest_enveloped_divisor(image) == es.n1, "enveloped-divisor scan mismatch");
      require(largest_scalar_divisor(image) == es.n2, "scalar-divisor scan mismatch");
      // Enveloped implies abelian, so n1 always divides the abelian divisor.
      require(largest_abelian_divisor(image) % es.n1 == 0, "envelope not abelian");
    }
  }
}

// Exactness and divisibility certificates across degrees and levels.
void exactness_and_divisibility() {
  std::mt19937_64 rng(kDefaultSeed + 1);
  const std::int64_t degrees[] = {1, 2, 3, 4, 6};
  for (std::int64_t n = 2; n <= 12; ++n) {
    for (std::int64_t d : degrees) {
      for (int rep = 0; rep < 4; ++rep) {
        EquivariantInstance plain = random_equivariant_instance(rng, n, d, false);
        ExactnessCertificate seq = hom_to_end_sequence(plain.action, plain.iso);
        require(seq.ok, "exactness failed at n=" + std::to_string(n) + " d=" + std::to_string(d) +
                            ": " + seq.failure);
        require(divisibility_check_rational(plain.action, plain.iso).ok,
                "rational divisibility failed");
        EquivariantInstance tw = random_equivariant_instance(rng, n, d, true);
        require(divisibility_check_twisted(tw.action, tw.iso).ok, "twisted divisibility failed");
      }
    }
  }
}

// The factorization criterion agrees with the exhaustive search oracle on
// every valid triple at n <= 12.
void factorization_agreement() {
  std::int64_t checked = 0;
  for (std::int64_t n = 2; n <= 12; ++n) {
    Modulus mod(n);
    auto all = oracles::all_matrices(mod);
    for (std::int64_t d : {1, 2, 3, 4, 6}) {
      IsogenyData iso = IsogenyData::canonical(mod, d);
      for (std::int64_t np = 1; np <= n; ++np) {
        std::int64_t m = std::gcd(d % n, n);
        std::int64_t gdn = std::gcd(static_cast<std::int64_t>((__int128(d % n) * (np % n)) % n), n);
        if (np * m != gdn) continue;
        for (const auto& f : all) {
          bool lhs = factorization_criterion(f, iso, np);
          bool rhs = oracles::factorization_oracle(f, iso, np);
          require(lhs == rhs, "criterion/oracle mismatch at n=" + std::to_string(n) +
                                  " d=" + std::to_string(d) + " n'=" + std::to_string(np) +
                                  " f=" + f.str());
          ++checked;
        }
      }
    }
  }
  require(checked > 100000, "sweep unexpectedly small");
}

// Lattice constants: family determinant 2d, the rank-16 lattice report, and
// the orthogonal sum with a hyperbolic plane.
void lattice_constants() {
  for (std::int64_t d = 1; d <= 50; ++d)
    require(gram_determinant(build_family_gram(d)) == 2 * d,
            "family determinant != 2d at d=" + std::to_string(d));
  LatticeReport k = lattice_report(build_kummer_lattice());
  require(k.rank == 16 && k.determinant == 64 && k.even && k.negative == 16 && k.positive == 0,
          "rank-16 lattice report off");
  LatticeReport p = lattice_report(build_lambda_prod());
  require(p.rank == 18 && (p.determinant == -64 || p.determinant == 64) && p.even,
          "rank-18 sum report off");
  BigInt abs_det = p.determinant < 0 ? -p.determinant : p.determinant;
  require(abs_det == 64, "rank-18 determinant has wrong magnitude");
}

// H^1 formula: classical values, the divisibility |G|^r, and the rank-2
// universal constant 48^2.
void h1_formula() {
  require(h1_integer_action(IntegerActionGroup(2, {})) == 1, "H^1 of the trivial group");
  BigMatrix neg = {{BigInt(-1)}};
  require(h1_integer_action(IntegerActionGroup(1, {neg})) == 2, "H^1 of negation on Z");
  std::mt19937_64 rng(kDefaultSeed + 2);
  for (int trial = 0; trial < 25; ++trial) {
    std::int64_t r = 1 + static_cast<std::int64_t>(rng() % 4);
    std::vector<BigMatrix> gens;
    for (int g = 0; g < 2; ++g) {
      std::vector<std::int64_t> perm(r);
      for (std::int64_t i = 0; i < r; ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      BigMatrix m(r, std::vector<BigInt>(r, 0));
      for (std::int64_t i = 0; i < r; ++i) m[i][perm[i]] = (rng() % 2) ? 1 : -1;
      gens.push_back(std::move(m));
    }
    IntegerActionGroup g(r, std::move(gens));
    BigInt h1 = h1_integer_action(g);
    require(big_pow(BigInt(g.order()), r) % h1 == 0, "H^1 does not divide |G|^r");
  }
  require(algebraic_brauer_constant(2) == 2304, "rank-2 universal constant");
}

// (8d)^3 against an independently computed cube.
void over_q_constant() {
  auto cube = [](std::int64_t x) {
    BigInt c = 1;
    for (int i = 0; i < 3; ++i) c *= x;
    return c;
  };
  require(over_q_bound(1) == cube(8), "d=1 constant");
  require(over_q_bound(163) == cube(8 * 163), "d=163 constant");
}

// On seeded random exact scenarios the pipeline bound dominates the exact
// transcendental-quotient order.
void soundness_sandwich() {
  std::mt19937_64 rng(kDefaultSeed + 3);
  const std::int64_t degrees[] = {1, 2, 3, 4, 6};
  for (int trial = 0; trial < 100; ++trial) {
    std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 8);
    std::int64_t d = degrees[rng() % 5];
    bool twisted = (trial % 2) == 1;
    EquivariantInstance inst = random_equivariant_instance(rng, n, d, twisted);
    BigInt exact = transcendental_quotient(inst.action, inst.iso).order();
    std::vector<Mat2> target_gens;
    for (const auto& p : inst.action.pairs()) target_gens.push_back(p.m_prime);
    EndStructure end_k = end_invariants(MatrixGroup(Modulus(n), target_gens));
    std::optional<EndStructure> end_tw;
    if (twisted)
      end_tw = end_invariants(MatrixGroup(Modulus(n), inst.action.chi_kernel_subaction()));
    SurfaceScenario sc(Modulus(n), d, 1, twisted, 1, SurfaceKind::AbelianTorsor);
    BigInt bound = brauer_n_torsion_bound(sc, end_k, end_tw).bound;
    require(exact <= bound, "exact order " + exact.str() + " exceeds bound " + bound.str() +
                                " at n=" + std::to_string(n) + " d=" + std::to_string(d));
  }
}

}  // namespace

int main() {
  criterion(1, "commutant oracle equivalence over moduli {2,3,4,5,8,9}",
            commutant_oracle_equivalence);
  criterion(2, "abelian subgroup bound #H <= ell^{3s} with exact maxima 8 and 24",
            abelian_subgroup_bound);
  criterion(3, "normal-form soundness for every abelian subgroup at levels 3, 5, 9",
            normal_form_soundness);
  criterion(4, "rank-jump trichotomy 4 / 2 / 1 on constructed representatives", rank_trichotomy);
  criterion(5, "End structure with the verbatim abelian-divisor recharacterization "
               "(claim carries a certified counterexample; kept as stated)",
            end_shape_random_verbatim, /*expect_failure=*/true);
  criterion(5, "End structure (n, n1, n2, n2) with certified scalar/enveloped divisor scans, "
               "200 random subgroups per modulus (corrected form)",
            end_shape_random_certified);
  criterion(6, "exactness and divisibility certificates, d in {1,2,3,4,6}, n <= 12",
            exactness_and_divisibility);
  criterion(7, "factorization criterion agrees with the exhaustive oracle at n <= 12",
            factorization_agreement);
  criterion(8, "lattice constants: det 2d, rank-16 report, rank-18 sum", lattice_constants);
  criterion(9, "H^1 formula: classical values, |G|^r divisibility, 48^2", h1_formula);
  criterion(10, "rational-base constant (8d)^3 via independent cubes", over_q_constant);
  criterion(11, "soundness sandwich on 100 seeded scenarios", soundness_sandwich);

  if (unexpected) {
    std::cout << unexpected << " criterion(s) in an unexpected state\n";
    return 1;
  }
  std::cout << "acceptance complete: all criteria in their expected state (the verbatim form "
               "of criterion 5 fails on its certified counterexample; the corrected form "
               "passes)\n";
  return 0;
}
