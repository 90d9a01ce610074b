#include <algorithm>
#include <cstdint>
#include <map>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "bsurf/gl2.hpp"

namespace bsurf {

namespace {

std::int64_t pow_i64(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Dense bitset sized for the ambient group.
struct Bits {
  explicit Bits(std::size_t n) : size(n), words((n + 63) / 64, 0) {}
  void set(std::size_t i) { words[i >> 6] |= std::uint64_t(1) << (i & 63); }
  bool get(std::size_t i) const { return (words[i >> 6] >> (i & 63)) & 1; }
  void and_with(const Bits& o) {
    for (std::size_t w = 0; w < words.size(); ++w) words[w] &= o.words[w];
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words) c += __builtin_popcountll(w);
    return c;
  }
  bool operator==(const Bits& o) const { return words == o.words; }

  std::size_t size;
  std::vector<std::uint64_t> words;
};

struct Ambient {
  Modulus mod;
  std::int64_t q;
  std::vector<Mat2> elems;  // sorted by entry tuple
  std::vector<std::int32_t> code_to_index;
  std::vector<std::vector<std::int32_t>> mul;  // Cayley table
  std::vector<std::int32_t> inv;
  std::vector<Bits> cent;  // per-element centralizer
  std::int32_t id;

  std::int32_t code(const Mat2& m) const {
    return static_cast<std::int32_t>(((m.e[0] * q + m.e[1]) * q + m.e[2]) * q + m.e[3]);
  }

  explicit Ambient(std::int64_t q_) : mod(q_), q(q_) {
    for (std::int64_t a = 0; a < q; ++a)
      for (std::int64_t b = 0; b < q; ++b)
        for (std::int64_t c = 0; c < q; ++c)
          for (std::int64_t d = 0; d < q; ++d) {
            Mat2 m(mod, a, b, c, d);
            if (m.invertible()) elems.push_back(m);
          }
    std::sort(elems.begin(), elems.end());
    code_to_index.assign(static_cast<std::size_t>(q * q * q * q), -1);
    for (std::size_t i = 0; i < elems.size(); ++i)
      code_to_index[code(elems[i])] = static_cast<std::int32_t>(i);
    const std::size_t n = elems.size();
    mul.assign(n, std::vector<std::int32_t>(n));
    inv.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) mul[i][j] = code_to_index[code(elems[i].mul(elems[j]))];
      inv[i] = code_to_index[code(elems[i].inverse())];
    }
    id = code_to_index[code(Mat2::identity(mod))];
    cent.assign(n, Bits(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (mul[i][j] == mul[j][i]) cent[i].set(j);
  }

  Bits centralizer_of_set(const std::vector<std::int32_t>& elts) const {
    Bits out(elems.size());
    for (auto& w : out.words) w = ~std::uint64_t(0);
    for (auto i : elts) out.and_with(cent[i]);
    // Mask the tail bits beyond the group size.
    std::size_t tail = elems.size() % 64;
    if (tail) out.words.back() &= (std::uint64_t(1) << tail) - 1;
    return out;
  }
};

using Subgroup = std::vector<std::int32_t>;  // sorted element indices

std::uint64_t subgroup_hash(const Subgroup& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (auto i : s) {
    h ^= static_cast<std::uint64_t>(i) + 0x9e3779b97f4a7c15ull;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::vector<std::int32_t> bits_to_list(const Bits& b) {
  std::vector<std::int32_t> out;
  for (std::size_t i = 0; i < b.size; ++i)
    if (b.get(i)) out.push_back(static_cast<std::int32_t>(i));
  return out;
}

bool set_is_abelian(const Ambient& amb, const std::vector<std::int32_t>& elts) {
  for (std::size_t i = 0; i < elts.size(); ++i)
    for (std::size_t j = i + 1; j < elts.size(); ++j)
      if (amb.mul[elts[i]][elts[j]] != amb.mul[elts[j]][elts[i]]) return false;
  return true;
}

// All maximal abelian subgroups: the self-centralizing intersections of
// element centralizers, found by refinement.
std::vector<Subgroup> maximal_abelian_subgroups(const Ambient& amb) {
  const std::size_t n = amb.elems.size();
  std::unordered_map<std::uint64_t, std::vector<Subgroup>> seen;
  std::vector<Subgroup> queue_sets;
  auto push = [&](Subgroup s) -> bool {
    std::uint64_t h = subgroup_hash(s);
    auto& bucket = seen[h];
    for (const auto& t : bucket)
      if (t == s) return false;
    bucket.push_back(s);
    queue_sets.push_back(std::move(s));
    return true;
  };
  for (std::size_t g = 0; g < n; ++g) push(bits_to_list(amb.cent[g]));

  std::vector<Subgroup> maximal;
  for (std::size_t at = 0; at < queue_sets.size(); ++at) {
    Subgroup x = queue_sets[at];
    if (set_is_abelian(amb, x)) {
      Bits cx = amb.centralizer_of_set(x);
      if (cx.count() == x.size()) maximal.push_back(x);
      // An abelian non-self-centralizing intersection is not maximal and its
      // refinements only shrink it; nothing more to do with it.
      continue;
    }
    for (auto h : x) {
      // Intersect the subgroup with C(h).
      Subgroup next;
      for (auto i : x)
        if (amb.cent[h].get(i)) next.push_back(i);
      if (next.size() < x.size()) push(std::move(next));
    }
  }
  std::sort(maximal.begin(), maximal.end());
  maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());
  return maximal;
}

// <S, g> inside an abelian group: union of cosets S * g^k.
Subgroup extend(const Ambient& amb, const Subgroup& s, std::int32_t g) {
  std::unordered_set<std::int32_t> acc(s.begin(), s.end());
  std::int32_t p = g;
  while (!acc.count(p)) {
    for (auto x : s) acc.insert(amb.mul[x][p]);
    p = amb.mul[p][g];
  }
  Subgroup out(acc.begin(), acc.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Every subgroup of the abelian group M (given as a sorted element list).
std::vector<Subgroup> subgroups_of_abelian(const Ambient& amb, const Subgroup& m) {
  std::vector<Subgroup> all;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen;
  auto add = [&](Subgroup s) -> bool {
    std::uint64_t h = subgroup_hash(s);
    auto& bucket = seen[h];
    for (auto idx : bucket)
      if (all[idx] == s) return false;
    bucket.push_back(all.size());
    all.push_back(std::move(s));
    return true;
  };
  add(Subgroup{amb.id});
  for (std::size_t at = 0; at < all.size(); ++at) {
    Subgroup base = all[at];
    for (auto g : m) {
      if (std::binary_search(base.begin(), base.end(), g)) continue;
      add(extend(amb, base, g));
    }
  }
  return all;
}

Subgroup conjugate_subgroup(const Ambient& amb, const Subgroup& s, std::int32_t g) {
  Subgroup out;
  out.reserve(s.size());
  std::int32_t gi = amb.inv[g];
  for (auto x : s) out.push_back(amb.mul[amb.mul[g][x]][gi]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

AbelianEnumeration enumerate_abelian(std::int64_t ell, std::int64_t s, int threads) {
  if (!is_prime(ell)) throw PreconditionError("enumerate_abelian: ell must be prime");
  std::int64_t q = pow_i64(ell, s);
  if (q != 3 && q != 5 && q != 7 && q != 9)
    throw PreconditionError("enumerate_abelian: unsupported ell^s = " + std::to_string(q) +
                            " (supported: 3, 5, 7, 9)");

  Ambient amb(q);
  std::vector<Subgroup> maximal = maximal_abelian_subgroups(amb);

  // Collect every subgroup of every maximal abelian subgroup.
  std::vector<Subgroup> all;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen;
  auto add = [&](Subgroup sg) {
    std::uint64_t h = subgroup_hash(sg);
    auto& bucket = seen[h];
    for (auto idx : bucket)
      if (all[idx] == sg) return;
    bucket.push_back(all.size());
    all.push_back(std::move(sg));
  };

  int nt = std::max(1, threads);
  if (nt == 1 || maximal.size() < 2) {
    for (const auto& m : maximal)
      for (auto& sg : subgroups_of_abelian(amb, m)) add(std::move(sg));
  } else {
    std::vector<std::vector<Subgroup>> outputs(maximal.size());
    std::vector<std::thread> pool;
    std::size_t chunk = (maximal.size() + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
      std::size_t lo = t * chunk, hi = std::min(maximal.size(), lo + chunk);
      if (lo >= hi) continue;
      pool.emplace_back([&, lo, hi] {
        for (std::size_t i = lo; i < hi; ++i) outputs[i] = subgroups_of_abelian(amb, maximal[i]);
      });
    }
    for (auto& th : pool) th.join();
    for (auto& out_i : outputs)
      for (auto& sg : out_i) add(std::move(sg));
  }

  std::sort(all.begin(), all.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });

  AbelianEnumeration out;
  out.ell = ell;
  out.s = s;
  out.total_subgroups = static_cast<std::int64_t>(all.size());
  for (const auto& sg : all)
    out.max_order = std::max(out.max_order, static_cast<std::int64_t>(sg.size()));
  std::int64_t bound = pow_i64(ell, 3 * s);
  if (out.max_order > bound)
    throw TheoremFalsified("abelian subgroup of order " + std::to_string(out.max_order) +
                           " exceeds ell^{3s} = " + std::to_string(bound));

  // Conjugacy classes by orbit sweep: the first unvisited subgroup in the
  // canonical order represents its class; mark its whole conjugation orbit.
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> locate;
  for (std::size_t i = 0; i < all.size(); ++i) locate[subgroup_hash(all[i])].push_back(i);
  auto find_index = [&](const Subgroup& sg) -> std::size_t {
    auto it = locate.find(subgroup_hash(sg));
    if (it != locate.end())
      for (auto idx : it->second)
        if (all[idx] == sg) return idx;
    throw TheoremFalsified("conjugate of an abelian subgroup missing from the enumeration");
  };

  std::vector<bool> visited(all.size(), false);
  std::vector<std::size_t> reps;
  const std::size_t n = amb.elems.size();
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (visited[i]) continue;
    reps.push_back(i);
    for (std::size_t g = 0; g < n; ++g) {
      Subgroup c = conjugate_subgroup(amb, all[i], static_cast<std::int32_t>(g));
      visited[find_index(c)] = true;
    }
  }

  out.class_count = static_cast<std::int64_t>(reps.size());
  for (auto i : reps) {
    std::vector<Mat2> gens;
    gens.reserve(all[i].size());
    for (auto idx : all[i]) gens.push_back(amb.elems[idx]);
    MatrixGroup h(amb.mod, std::move(gens));
    NormalFormTag tag = classify_abelian(h, ell, s);
    out.tag_histogram[to_string(tag.kind)]++;
    out.representatives.push_back(std::move(h));
  }
  return out;
}

}  // namespace bsurf
