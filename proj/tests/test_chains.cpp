#include <algorithm>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "spi/chains.hpp"
#include "spi/errors.hpp"
#include "spi/instance_gen.hpp"
#include "spi/oracle.hpp"
#include "spi/poset.hpp"

using spi::PosetInstance;

namespace {

std::vector<int> all_elems(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return v;
}

}  // namespace

TEST_CASE("merging two comparable runs keeps every element") {
  PosetInstance inst = spi::gen_random_chain_union(10, 1, 7);
  spi::PartialOracle h(inst);
  spi::MergeOutcome out = spi::merge_runs_deleting(h, {1, 3, 5}, {2, 4});
  CHECK(out.merged == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(out.deleted.empty());
}

TEST_CASE("merging incomparable heads deletes the pair") {
  // Two 2-chains with nothing in between.
  PosetInstance inst;
  inst.n = 4;
  inst.cover_edges = {{1, 2}, {3, 4}};
  inst.hidden_order = {1, 3, 2, 4};
  spi::PartialOracle h(inst);
  spi::MergeOutcome out = spi::merge_runs_deleting(h, {1, 2}, {3, 4});
  CHECK(out.merged.empty());
  CHECK(out.deleted == std::vector<spi::Edge>{{1, 3}, {2, 4}});
}

TEST_CASE("merge rejects overlapping or out-of-range inputs") {
  PosetInstance inst = spi::gen_random_chain_union(4, 1, 7);
  spi::PartialOracle h(inst);
  CHECK_THROWS_AS(spi::merge_runs_deleting(h, {1, 2}, {2, 3}),
                  spi::ArgumentError);
  CHECK_THROWS_AS(spi::merge_runs_deleting(h, {0}, {1}), spi::ArgumentError);
  // Empty runs are fine: a deleting merge can consume a whole side.
  spi::MergeOutcome out = spi::merge_runs_deleting(h, {}, {1});
  CHECK(out.merged == std::vector<int>{1});
  CHECK(out.deleted.empty());
}

TEST_CASE("approximate chain drops two elements per deletion") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    int n = 2 + static_cast<int>(seed % 9);
    PosetInstance inst = spi::gen_random_poset(n, 0.4, seed);
    auto lt = ref::closure(inst);
    spi::PartialOracle h(inst);
    spi::ApproxChainResult res = spi::approx_max_chain(h, all_elems(n));
    CHECK(res.chain.size() + 2 * res.deleted.size() == static_cast<std::size_t>(n));
    CHECK(ref::is_ascending_chain(lt, res.chain));
    for (auto [a, b] : res.deleted) {
      CHECK(!lt[a][b]);
      CHECK(!lt[b][a]);
    }
    // If the longest chain misses k elements, at most 2k can be deleted.
    int k = n - ref::max_chain_len(lt, all_elems(n));
    CHECK(static_cast<int>(res.chain.size()) >= n - 2 * k);
  }
}

TEST_CASE("exact maximum chain matches the reference length") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    int n = 2 + static_cast<int>(seed % 9);
    PosetInstance inst = spi::gen_random_poset(n, 0.35, seed);
    auto lt = ref::closure(inst);
    spi::PartialOracle h(inst);
    spi::Chain best = spi::exact_max_chain(h, all_elems(n));
    CHECK(ref::is_ascending_chain(lt, best));
    CHECK(static_cast<int>(best.size()) ==
          ref::max_chain_len(lt, all_elems(n)));
  }
}

TEST_CASE("exact maximum chain on a subset of the ground set") {
  PosetInstance inst = spi::gen_random_poset(12, 0.5, 5);
  auto lt = ref::closure(inst);
  std::vector<int> subset = {2, 3, 5, 7, 11};
  spi::PartialOracle h(inst);
  spi::Chain best = spi::exact_max_chain(h, subset);
  CHECK(ref::is_ascending_chain(lt, best));
  CHECK(static_cast<int>(best.size()) == ref::max_chain_len(lt, subset));
}

TEST_CASE("chain bound searches agree with a linear scan") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    int n = 3 + static_cast<int>(seed);
    PosetInstance inst = spi::gen_random_poset(n, 0.45, seed ^ 42);
    auto lt = ref::closure(inst);
    spi::PartialOracle h(inst);
    spi::Chain chain = spi::approx_max_chain(h, all_elems(n)).chain;
    for (int x = 1; x <= n; ++x) {
      if (std::find(chain.begin(), chain.end(), x) != chain.end()) continue;
      int want_pred = -1;
      for (int i = 0; i < static_cast<int>(chain.size()); ++i)
        if (lt[chain[i]][x]) want_pred = i;
      int want_succ = static_cast<int>(chain.size());
      for (int i = static_cast<int>(chain.size()) - 1; i >= 0; --i)
        if (lt[x][chain[i]]) want_succ = i;
      CHECK(spi::chain_pred_index(h, chain, x) == want_pred);
      CHECK(spi::chain_succ_index(h, chain, x) == want_succ);
    }
  }
}
