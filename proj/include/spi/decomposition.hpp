#pragma once

#include <vector>

#include "spi/oracle.hpp"
#include "spi/poset.hpp"

namespace spi {

// Output of the preprocessing phase: an approximate maximum chain c0, a
// maximal family of (w+1)-antichains, the remaining elements as a greedy
// chain cover, and for every cover element its nearest neighbours in c0
// (alpha below, beta above; kNoElement when none exists).
struct Decomposition {
  Chain c0;
  std::vector<std::vector<int>> antichains;
  ChainList chain_cover;
  int w = 1;
  std::vector<int> alpha;  // indexed by element id
  std::vector<int> beta;   // indexed by element id
};

struct ExtractionResult {
  ChainList chains;
  std::vector<std::vector<int>> antichains;
};

// Repeatedly inspects the maxima of w+1 working chains. While two maxima
// are comparable the larger one is set aside; once all maxima are pairwise
// incomparable they form an antichain of size w+1 and are removed. Stops
// when a working chain runs dry. Each element pair is queried at most once;
// returned chains are the inputs minus the antichain members.
ExtractionResult antichain_extraction(PartialOracle& h, const ChainList& chains,
                                      int w);

// Reduces w+1 chains to w chains covering the same elements. Successor
// positions between chains are found with monotone two-pointer scans, which
// yields a sparse DAG whose closure equals the restricted order; one
// min-flow decrement on that DAG then drops the cover size by one. Throws
// WidthViolationError when the elements genuinely need w+1 chains.
ChainList peeling_iteration(PartialOracle& h, const ChainList& chains, int w);

// Reduces up to 2w chains to w chains, collecting all (w+1)-antichains on
// the way: for i = w..1 run extraction then peeling on chains i..i+w.
ExtractionResult antichain_peeling(PartialOracle& h, const ChainList& chains,
                                   int w);

// Merge sort that returns at most w chains plus a maximal set of
// (w+1)-antichains over elems. Sets of at most w elements are returned as
// singleton chains.
ExtractionResult chain_antichain_mergesort(PartialOracle& h,
                                           std::vector<int> elems, int w);

// Repeatedly extracts a maximum chain of the remaining elements (longest
// path over the sparse successor DAG of the current cover) until the cover
// is exhausted. Chain i is a maximum chain of the poset minus the first
// i-1 chains.
ChainList greedy_chain_decomposition(PartialOracle& h, const ChainList& cover);

}  // namespace spi
