#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "spi/errors.hpp"
#include "spi/instance_gen.hpp"
#include "spi/oracle.hpp"
#include "spi/poset.hpp"
#include "spi/sorter.hpp"

using spi::PosetInstance;

namespace {

PosetInstance free_order(std::vector<int> hidden) {
  PosetInstance inst;
  inst.n = static_cast<int>(hidden.size());
  inst.hidden_order = std::move(hidden);
  return inst;
}

// Runs the full pipeline and checks the output plus the bookkeeping that
// must hold for every instance.
spi::SortResult run_pipeline(const PosetInstance& inst, double c) {
  spi::PartialOracle h(inst);
  spi::PreprocessedIndex idx = spi::preprocess(h, c);
  spi::LinearOracle l(inst);
  spi::SortResult res = spi::query_sort(idx, l);

  CHECK(res.order == inst.hidden_order);
  CHECK(res.complementing_set.size() == res.linear_queries);
  CHECK(res.linear_queries == res.merge_queries + res.chain_loop_queries +
                                  res.antichain_loop_queries);
  CHECK(res.linear_queries == l.query_count());
  return res;
}

}  // namespace

TEST_CASE("width parameter across the tuning range") {
  CHECK(spi::width_parameter(1, 2.0) == 1);
  CHECK(spi::width_parameter(16, 2.0) == 1);
  CHECK(spi::width_parameter(64, 2.0) == 1);
  CHECK(spi::width_parameter(256, 2.0) == 2);
  CHECK(spi::width_parameter(1024, 2.0) == 2);
  CHECK(spi::width_parameter(4096, 2.0) == 2);
  CHECK(spi::width_parameter(64, 3.0) == 1);
  CHECK(spi::width_parameter(4096, 3.0) == 2);
  CHECK_THROWS_AS(spi::width_parameter(0, 2.0), spi::ArgumentError);
  CHECK_THROWS_AS(spi::width_parameter(8, 0.5), spi::ArgumentError);
}

TEST_CASE("preprocess partitions the poset and bounds every cover element") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    int n = 2 + static_cast<int>(seed % 11);
    PosetInstance inst = spi::gen_random_poset(n, 0.2 + 0.15 * (seed % 4), seed);
    auto lt = ref::closure(inst);
    spi::PartialOracle h(inst);
    spi::PreprocessedIndex idx = spi::preprocess(h, 2.0);

    CHECK(idx.stats.w == spi::width_parameter(n, 2.0));
    CHECK(idx.tree.to_vector() == idx.decomp.c0);
    CHECK(!idx.consumed);
    CHECK(idx.stats.partial_queries ==
          idx.stats.chain_queries + idx.stats.extraction_queries +
              idx.stats.cover_queries + idx.stats.bound_queries);
    CHECK(idx.stats.partial_queries == h.query_count());

    std::vector<int> got = idx.decomp.c0;
    std::vector<char> in_cover(n + 1, 0);
    for (const auto& ch : idx.decomp.chain_cover) {
      CHECK(ref::is_ascending_chain(lt, ch));
      for (int e : ch) {
        got.push_back(e);
        in_cover[e] = 1;
      }
    }
    for (const auto& a : idx.decomp.antichains) {
      CHECK(static_cast<int>(a.size()) == idx.decomp.w + 1);
      CHECK(ref::is_antichain(lt, a));
      got.insert(got.end(), a.begin(), a.end());
    }
    std::sort(got.begin(), got.end());
    std::vector<int> want(n);
    std::iota(want.begin(), want.end(), 1);
    CHECK(got == want);
    CHECK(ref::is_ascending_chain(lt, idx.decomp.c0));

    // alpha/beta agree with a direct scan of the backbone.
    for (int y = 1; y <= n; ++y) {
      if (!in_cover[y]) {
        CHECK(idx.decomp.alpha[y] == spi::kNoElement);
        CHECK(idx.decomp.beta[y] == spi::kNoElement);
        continue;
      }
      int want_a = spi::kNoElement, want_b = spi::kNoElement;
      for (int x : idx.decomp.c0) {
        if (lt[x][y]) want_a = x;
        if (lt[y][x] && want_b == spi::kNoElement) want_b = x;
      }
      CHECK(idx.decomp.alpha[y] == want_a);
      CHECK(idx.decomp.beta[y] == want_b);
    }
  }
}

TEST_CASE("sorting recovers the hidden order on random posets") {
  for (std::uint64_t seed = 1; seed <= 45; ++seed) {
    int n = 1 + static_cast<int>(seed % 12);
    double density = 0.15 + 0.15 * (seed % 4);
    PosetInstance inst = spi::gen_random_poset(n, density, seed);
    run_pipeline(inst, 2.0);
    if (seed % 3 == 0) run_pipeline(inst, 3.0);
  }
}

TEST_CASE("sorting recovers the hidden order on chain unions") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    int n = 8 + static_cast<int>(seed % 5) * 14;
    int chains = 1 + static_cast<int>(seed % 6);
    if (chains > n) chains = n;
    PosetInstance inst = spi::gen_random_chain_union(n, chains, seed);
    run_pipeline(inst, 2.0);
  }
}

TEST_CASE("sorting recovers the hidden order on the hard family") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    spi::FamilyInstance fam = spi::gen_lower_bound_family(16, 2, seed);
    run_pipeline(fam.inst, 2.0);
    spi::FamilyInstance big = spi::gen_lower_bound_family(64, 2, seed);
    run_pipeline(big.inst, 2.0);
  }
}

TEST_CASE("tiny and degenerate instances") {
  run_pipeline(free_order({1}), 2.0);
  run_pipeline(free_order({1, 2}), 2.0);
  run_pipeline(free_order({2, 1}), 2.0);
  run_pipeline(free_order({4, 1, 3, 2, 6, 5}), 2.0);  // total antichain

  PosetInstance pair;
  pair.n = 2;
  pair.cover_edges = {{1, 2}};
  pair.hidden_order = {1, 2};
  spi::SortResult res = run_pipeline(pair, 2.0);
  CHECK(res.linear_queries == 0);  // the edge already pins the order
}

TEST_CASE("every consecutive output pair is certified") {
  for (std::uint64_t seed = 3; seed <= 18; seed += 3) {
    int n = 6 + static_cast<int>(seed % 7);
    PosetInstance inst = spi::gen_random_poset(n, 0.3, seed);
    auto lt = ref::closure(inst);
    spi::SortResult res = run_pipeline(inst, 2.0);
    std::set<std::pair<int, int>> said;
    for (auto [u, v] : res.complementing_set) said.insert({u, v});
    for (std::size_t i = 0; i + 1 < res.order.size(); ++i) {
      int u = res.order[i], v = res.order[i + 1];
      CHECK((lt[u][v] || said.count({u, v})));
    }
  }
}

TEST_CASE("the pipeline is deterministic") {
  PosetInstance inst = spi::gen_random_poset(11, 0.3, 99);
  spi::SortResult r1 = run_pipeline(inst, 2.0);
  spi::SortResult r2 = run_pipeline(inst, 2.0);
  CHECK(r1.order == r2.order);
  CHECK(r1.complementing_set == r2.complementing_set);
  CHECK(r1.linear_queries == r2.linear_queries);
  CHECK(r1.merge_queries == r2.merge_queries);
  CHECK(r1.chain_loop_queries == r2.chain_loop_queries);
  CHECK(r1.antichain_loop_queries == r2.antichain_loop_queries);
  CHECK(r1.chain_loop_distances == r2.chain_loop_distances);
}

TEST_CASE("an index cannot be consumed twice or used across sizes") {
  PosetInstance inst = spi::gen_random_poset(8, 0.3, 5);
  spi::PartialOracle h(inst);
  spi::PreprocessedIndex idx = spi::preprocess(h, 2.0);
  spi::LinearOracle l(inst);
  spi::query_sort(idx, l);
  CHECK_THROWS_AS(spi::query_sort(idx, l), spi::ArgumentError);

  spi::PartialOracle h2(inst);
  spi::PreprocessedIndex idx2 = spi::preprocess(h2, 2.0);
  PosetInstance other = spi::gen_random_poset(9, 0.3, 5);
  spi::LinearOracle l2(other);
  CHECK_THROWS_AS(spi::query_sort(idx2, l2), spi::ArgumentError);
}

TEST_CASE("two-chain merge stays within its query budget") {
  PosetInstance inst = free_order({1, 2, 3, 4, 5, 6, 7, 8});
  spi::LinearOracle l(inst);

  std::vector<spi::Edge> pairs;
  spi::Chain out = spi::merge_two_chains({1, 3, 5, 7}, {2, 4, 6, 8}, l, &pairs);
  CHECK(out == spi::Chain{1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(l.query_count() <= 7);
  CHECK(pairs.size() == l.query_count());
  for (auto [u, v] : pairs) CHECK(u < v);

  std::uint64_t before = l.query_count();
  out = spi::merge_two_chains({1, 2, 3, 4}, {5, 6, 7, 8}, l);
  CHECK(out == spi::Chain{1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(l.query_count() - before == 4);
}

TEST_CASE("huffman merge is smallest-first with arrival tie breaks") {
  PosetInstance inst = free_order({1, 2, 3, 4, 5});
  spi::LinearOracle l(inst);
  spi::Chain out = spi::huffman_chain_merge({{2}, {1, 5}, {3, 4}}, l);
  CHECK(out == spi::Chain{1, 2, 3, 4, 5});

  CHECK(spi::huffman_chain_merge({}, l).empty());
  CHECK(spi::huffman_chain_merge({{}, {}}, l).empty());
  CHECK(spi::huffman_chain_merge({{}, {4}}, l) == spi::Chain{4});
}
