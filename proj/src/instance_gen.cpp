#include "spi/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "spi/errors.hpp"

namespace spi {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw ArgumentError("below: bound must be positive");
  // Rejecting draws under the wrap-around remainder keeps the result
  // exactly uniform.
  std::uint64_t floor = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = next();
    if (r >= floor) return r % bound;
  }
}

void SplitMix64::shuffle(std::vector<int>& v) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[below(i)]);
}

namespace {

// w^e, or -1 on overflow past the long long range.
long long ipow_checked(long long w, int e) {
  long long r = 1;
  for (int k = 0; k < e; ++k) {
    if (r > std::numeric_limits<long long>::max() / w) return -1;
    r *= w;
  }
  return r;
}

std::pair<int, int> require_family_shape(long long n, int c) {
  auto shape = family_shape(n, c);
  if (!shape)
    throw ArgumentError("no family instance exists for n=" + std::to_string(n) +
                        ", c=" + std::to_string(c));
  return *shape;
}

}  // namespace

std::optional<std::pair<int, int>> family_shape(long long n, int c) {
  if (c < 2) throw ArgumentError("family_shape: c must be >= 2");
  if (n < 1) return std::nullopt;
  long long w = std::llround(std::pow(static_cast<double>(n), 1.0 / c));
  // pow can land one off for exact powers; probe the neighbours.
  long long hit = -1;
  for (long long cand = std::max(1LL, w - 1); cand <= w + 1; ++cand) {
    if (ipow_checked(cand, c) == n) {
      hit = cand;
      break;
    }
  }
  if (hit < 0 || hit % 2 != 0) return std::nullopt;
  if (hit > std::numeric_limits<int>::max()) return std::nullopt;
  long long h2 = ipow_checked(hit, c - 1);
  if (h2 < 4 || h2 / 2 > std::numeric_limits<int>::max()) return std::nullopt;
  return std::make_pair(static_cast<int>(hit), static_cast<int>(h2 / 2));
}

long long nearest_family_n(long long n, int c) {
  if (c < 2) throw ArgumentError("nearest_family_n: c must be >= 2");
  long long best = -1;
  for (long long w = 2;; w += 2) {
    long long hc = ipow_checked(w, c - 1);
    if (hc < 0) break;
    if (hc < 4) continue;  // h would drop below 2
    long long cand = ipow_checked(w, c);
    if (cand < 0) break;
    if (best == -1 || std::llabs(cand - n) < std::llabs(best - n)) best = cand;
    if (cand >= n) break;  // sizes only grow from here
  }
  return best;
}

FamilyInstance gen_lower_bound_family(long long n, int c, std::uint64_t seed) {
  if (n > 50000000)
    throw ArgumentError("gen_lower_bound_family: n is capped at 50000000");
  auto [w, h] = require_family_shape(n, c);
  const long long half = n / 2;  // w * h backbone elements
  const long long slots = static_cast<long long>(w) * (h - 1);

  FamilyInstance fam;
  fam.w = w;
  fam.h = h;
  SplitMix64 rng(seed);
  std::vector<std::vector<int>> slot_elems(slots);
  fam.slot_of_leftover.reserve(n - half);
  for (long long e = half + 1; e <= n; ++e) {
    int s = static_cast<int>(rng.below(slots));
    fam.slot_of_leftover.push_back(s);
    slot_elems[s].push_back(static_cast<int>(e));
  }

  PosetInstance& inst = fam.inst;
  inst.n = static_cast<int>(n);
  inst.c_hint = static_cast<double>(c);
  inst.hidden_order.reserve(n);
  for (int j = 1; j <= w; ++j) {
    std::size_t chain_begin = inst.hidden_order.size();
    for (int k = 0; k < h; ++k) {
      inst.hidden_order.push_back(k * w + j);
      if (k < h - 1)
        for (int e : slot_elems[static_cast<std::size_t>(k) * w + (j - 1)])
          inst.hidden_order.push_back(e);
    }
    for (std::size_t p = chain_begin; p + 1 < inst.hidden_order.size(); ++p)
      inst.cover_edges.emplace_back(inst.hidden_order[p],
                                    inst.hidden_order[p + 1]);
  }
  if (auto defect = instance_defect(inst))
    throw ArgumentError("gen_lower_bound_family: " + *defect);
  return fam;
}

std::vector<int> recover_family_partial_order(const std::vector<int>& order,
                                              long long n, int c) {
  auto [w, h] = require_family_shape(n, c);
  const long long half = n / 2;
  if (static_cast<long long>(order.size()) != n)
    throw ArgumentError("recover: order has the wrong length");

  std::vector<int> slot_of_leftover(n - half, -1);
  std::size_t pos = 0;
  auto take = [&] {
    if (pos >= order.size())
      throw ArgumentError("recover: order ended inside a chain");
    return order[pos++];
  };
  for (int j = 1; j <= w; ++j) {
    if (take() != j) throw ArgumentError("recover: chain head out of place");
    for (int k = 1; k < h; ++k) {
      // Leftovers of slot (k-1)*w + (j-1) sit here, ascending by id, until
      // the next backbone element of this chain.
      int prev_leftover = 0;
      int e;
      while ((e = take()) != k * w + j) {
        if (e <= half || e > n || e <= prev_leftover)
          throw ArgumentError("recover: misplaced element inside a chain");
        slot_of_leftover[e - half - 1] = (k - 1) * w + (j - 1);
        prev_leftover = e;
      }
    }
  }
  if (pos != order.size())
    throw ArgumentError("recover: trailing elements after the last chain");
  for (int s : slot_of_leftover)
    if (s < 0) throw ArgumentError("recover: leftover element never appeared");
  return slot_of_leftover;
}

PosetInstance gen_random_chain_union(int n, int chains, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("gen_random_chain_union: n must be >= 1");
  if (chains < 1 || chains > n)
    throw ArgumentError("gen_random_chain_union: need 1 <= chains <= n");
  SplitMix64 rng(seed);

  // Floyd sampling: chains-1 distinct cut points out of 1..n-1.
  std::set<int> cuts;
  for (int t = n - chains + 1; t <= n - 1; ++t) {
    int r = 1 + static_cast<int>(rng.below(t));
    cuts.insert(cuts.count(r) ? t : r);
  }

  PosetInstance inst;
  inst.n = n;
  std::vector<int> sizes;
  {
    int prev = 0;
    for (int cut : cuts) {
      sizes.push_back(cut - prev);
      prev = cut;
    }
    sizes.push_back(n - prev);
  }
  for (int start = 1; int size : sizes) {
    for (int e = start; e + 1 < start + size; ++e)
      inst.cover_edges.emplace_back(e, e + 1);
    start += size;
  }

  // A uniformly shuffled multiset of chain ids is a uniformly random
  // interleaving; replay it against per-chain cursors.
  std::vector<int> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < sizes.size(); ++i)
    ids.insert(ids.end(), sizes[i], static_cast<int>(i));
  rng.shuffle(ids);
  std::vector<int> cursor(sizes.size());
  {
    int start = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      cursor[i] = start + 1;
      start += sizes[i];
    }
  }
  inst.hidden_order.reserve(n);
  for (int id : ids) inst.hidden_order.push_back(cursor[id]++);

  if (auto defect = instance_defect(inst))
    throw ArgumentError("gen_random_chain_union: " + *defect);
  return inst;
}

PosetInstance gen_random_poset(int n, double density, std::uint64_t seed) {
  if (n < 1 || n > 64)
    throw ArgumentError("gen_random_poset: n must be in 1..64");
  if (!(density >= 0.0 && density <= 1.0))
    throw ArgumentError("gen_random_poset: density must be in [0, 1]");
  SplitMix64 rng(seed);

  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i + 1;
  rng.shuffle(perm);
  std::vector<int> rank(n + 1);
  for (int i = 0; i < n; ++i) rank[perm[i]] = i;

  // One 53-bit draw per unordered pair, oriented by the permutation.
  // reach[u] keeps element v in bit v-1.
  const std::uint64_t threshold =
      static_cast<std::uint64_t>(std::llround(density * 9007199254740992.0));
  std::vector<std::uint64_t> reach(n + 1, 0);
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if ((rng.next() >> 11) < threshold) {
        if (rank[u] < rank[v])
          reach[u] |= 1ULL << (v - 1);
        else
          reach[v] |= 1ULL << (u - 1);
      }
    }
  }

  // Close transitively in reverse permutation order, then keep only the
  // edges with no two-hop witness.
  for (int i = n - 1; i >= 0; --i) {
    int u = perm[i];
    std::uint64_t direct = reach[u];
    for (int v = 1; v <= n; ++v)
      if (direct >> (v - 1) & 1) reach[u] |= reach[v];
  }
  PosetInstance inst;
  inst.n = n;
  for (int u = 1; u <= n; ++u) {
    for (int v = 1; v <= n; ++v) {
      if (!(reach[u] >> (v - 1) & 1)) continue;
      bool witnessed = false;
      for (int z = 1; z <= n && !witnessed; ++z)
        if ((reach[u] >> (z - 1) & 1) && (reach[z] >> (v - 1) & 1))
          witnessed = true;
      if (!witnessed) inst.cover_edges.emplace_back(u, v);
    }
  }

  // Random topological sort of the cover as the hidden order.
  std::vector<int> indeg(n + 1, 0);
  for (const auto& [a, b] : inst.cover_edges) ++indeg[b];
  std::vector<int> ready;
  for (int v = 1; v <= n; ++v)
    if (indeg[v] == 0) ready.push_back(v);
  inst.hidden_order.reserve(n);
  while (!ready.empty()) {
    std::size_t pick = rng.below(ready.size());
    int v = ready[pick];
    ready[pick] = ready.back();
    ready.pop_back();
    inst.hidden_order.push_back(v);
    for (const auto& [a, b] : inst.cover_edges)
      if (a == v && --indeg[b] == 0) ready.push_back(b);
  }

  if (auto defect = instance_defect(inst))
    throw ArgumentError("gen_random_poset: " + *defect);
  return inst;
}

}  // namespace spi
