#pragma once

#include <cstdint>
#include <vector>

#include "spi/decomposition.hpp"
#include "spi/finger_tree.hpp"
#include "spi/oracle.hpp"
#include "spi/poset.hpp"

namespace spi {

// Width parameter used by preprocess: max(1, ceil(n^(1/(3c)) / 2)).
int width_parameter(int n, double c);

struct PreprocessStats {
  int n = 0;
  double c = 0.0;
  int w = 0;
  std::uint64_t partial_queries = 0;  // total partial-oracle queries spent
  std::uint64_t steps = 0;
  std::uint64_t chain_queries = 0;       // approximate maximum chain
  std::uint64_t extraction_queries = 0;  // antichain extraction merge sort
  std::uint64_t cover_queries = 0;       // greedy chain decomposition
  std::uint64_t bound_queries = 0;       // alpha/beta binary searches
  std::size_t c0_size = 0;
  std::size_t antichain_count = 0;
  std::size_t cover_chain_count = 0;
};

// Everything the query phase needs: the structural decomposition, a finger
// tree seeded with the backbone chain, and query accounting.
struct PreprocessedIndex {
  Decomposition decomp;
  FingerTree tree;
  PreprocessStats stats;
  bool consumed = false;
};

// Builds the index with the partial oracle only: approximate maximum chain
// as the backbone, antichain extraction over the deleted leftovers, greedy
// chain decomposition of the extraction leftovers, and backbone bounds
// (alpha/beta) for every cover-chain element.
PreprocessedIndex preprocess(PartialOracle& h, double c);

struct SortResult {
  std::vector<int> order;
  // One pair (u, v) with u before v for every linear query asked; together
  // with the partial order these pairs pin the output order.
  std::vector<Edge> complementing_set;
  std::uint64_t linear_queries = 0;
  std::uint64_t merge_queries = 0;           // huffman chain merging
  std::uint64_t chain_loop_queries = 0;      // threading the merged chain
  std::uint64_t antichain_loop_queries = 0;  // inserting antichain elements
  std::uint64_t steps = 0;
  std::vector<std::int64_t> chain_loop_distances;
};

// Merge two chains by the hidden order; at most |a| + |b| - 1 queries.
// Every query's outcome is appended to *complement when it is non-null.
Chain merge_two_chains(const Chain& a, const Chain& b, LinearOracle& l,
                       std::vector<Edge>* complement = nullptr);

// Repeatedly merges the two smallest chains, ties broken by arrival order,
// until one chain remains.
Chain huffman_chain_merge(const ChainList& chains, LinearOracle& l,
                          std::vector<Edge>* complement = nullptr);

// Recovers the hidden linear extension: huffman-merges the cover chains,
// threads the merged chain into the tree with finger searches started from
// the later of (previous element, alpha bound), then places the extracted
// antichain elements with whole-tree binary searches. Consumes the index.
SortResult query_sort(PreprocessedIndex& index, LinearOracle& l);

}  // namespace spi
