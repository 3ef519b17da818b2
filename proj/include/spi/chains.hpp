#pragma once

#include <utility>
#include <vector>

#include "spi/oracle.hpp"
#include "spi/poset.hpp"

namespace spi {

// Merge of two chains against the partial oracle. Comparable heads merge as
// usual; when the heads are incomparable both are deleted and recorded.
struct MergeOutcome {
  Chain merged;
  std::vector<Edge> deleted;  // incomparable head pairs, smaller id first
};

MergeOutcome merge_runs_deleting(PartialOracle& h, const Chain& a,
                                 const Chain& b);

// Merge sort over elems with deleting merges. If the longest chain through
// elems has |elems| - k elements, the result keeps at least |elems| - 2k.
struct ApproxChainResult {
  Chain chain;
  std::vector<Edge> deleted;  // in encounter order
};

ApproxChainResult approx_max_chain(PartialOracle& h,
                                   const std::vector<int>& elems);

// A true maximum chain through elems: approximate chain first, then the
// leftovers are spliced in along a sparsified DAG (predecessor/successor
// positions in the chain plus all leftover pairs) and a longest path is
// taken. About O(n log n + k^2) queries for k leftover pairs.
Chain exact_max_chain(PartialOracle& h, const std::vector<int>& elems);

// Last index i with chain[i] strictly below x, or -1. The predicate is
// monotone along a chain, so this is a plain binary search.
int chain_pred_index(PartialOracle& h, const Chain& chain, int x);

// First index i with x strictly below chain[i], or chain.size().
int chain_succ_index(PartialOracle& h, const Chain& chain, int x);

}  // namespace spi
