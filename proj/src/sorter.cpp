#include "spi/sorter.hpp"

#include <cmath>
#include <numeric>
#include <queue>
#include <tuple>
#include <utility>

#include "spi/chains.hpp"
#include "spi/errors.hpp"

namespace spi {

int width_parameter(int n, double c) {
  if (n < 1) throw ArgumentError("width_parameter: n must be >= 1");
  if (c < 1.0) throw ArgumentError("width_parameter: c must be >= 1");
  // The small epsilon keeps exact powers (e.g. 4096^(1/6) = 4) from being
  // pushed up by floating point noise.
  double raw = 0.5 * std::exp(std::log(static_cast<double>(n)) / (3.0 * c));
  return std::max(1, static_cast<int>(std::ceil(raw - 1e-9)));
}

PreprocessedIndex preprocess(PartialOracle& h, double c) {
  const int n = h.instance().n;
  const std::uint64_t q_start = h.query_count();
  const std::uint64_t s_start = h.step_count();

  PreprocessedIndex idx;
  idx.stats.n = n;
  idx.stats.c = c;
  idx.stats.w = width_parameter(n, c);
  idx.decomp.w = idx.stats.w;

  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 1);

  std::uint64_t q0 = h.query_count();
  ApproxChainResult backbone = approx_max_chain(h, all);
  idx.stats.chain_queries = h.query_count() - q0;
  idx.decomp.c0 = std::move(backbone.chain);

  std::vector<int> leftovers;
  leftovers.reserve(2 * backbone.deleted.size());
  for (const auto& [a, b] : backbone.deleted) {
    leftovers.push_back(a);
    leftovers.push_back(b);
  }

  q0 = h.query_count();
  ExtractionResult ex = chain_antichain_mergesort(h, leftovers, idx.decomp.w);
  idx.stats.extraction_queries = h.query_count() - q0;
  idx.decomp.antichains = std::move(ex.antichains);

  q0 = h.query_count();
  idx.decomp.chain_cover = greedy_chain_decomposition(h, ex.chains);
  idx.stats.cover_queries = h.query_count() - q0;

  q0 = h.query_count();
  idx.decomp.alpha.assign(n + 1, kNoElement);
  idx.decomp.beta.assign(n + 1, kNoElement);
  for (const Chain& ch : idx.decomp.chain_cover) {
    for (int y : ch) {
      int pi = chain_pred_index(h, idx.decomp.c0, y);
      if (pi >= 0) idx.decomp.alpha[y] = idx.decomp.c0[pi];
      int si = chain_succ_index(h, idx.decomp.c0, y);
      if (si < static_cast<int>(idx.decomp.c0.size()))
        idx.decomp.beta[y] = idx.decomp.c0[si];
    }
  }
  idx.stats.bound_queries = h.query_count() - q0;

  idx.tree = FingerTree(idx.decomp.c0);
  idx.stats.c0_size = idx.decomp.c0.size();
  idx.stats.antichain_count = idx.decomp.antichains.size();
  idx.stats.cover_chain_count = idx.decomp.chain_cover.size();
  idx.stats.partial_queries = h.query_count() - q_start;
  idx.stats.steps = h.step_count() - s_start;
  return idx;
}

Chain merge_two_chains(const Chain& a, const Chain& b, LinearOracle& l,
                       std::vector<Edge>* complement) {
  Chain out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    bool a_first = l.less(a[i], b[j]);
    if (complement)
      complement->push_back(a_first ? Edge{a[i], b[j]} : Edge{b[j], a[i]});
    out.push_back(a_first ? a[i++] : b[j++]);
  }
  out.insert(out.end(), a.begin() + i, a.end());
  out.insert(out.end(), b.begin() + j, b.end());
  return out;
}

Chain huffman_chain_merge(const ChainList& chains, LinearOracle& l,
                          std::vector<Edge>* complement) {
  std::vector<Chain> store;
  for (const Chain& c : chains)
    if (!c.empty()) store.push_back(c);
  if (store.empty()) return {};

  using Entry = std::tuple<std::size_t, std::size_t, std::size_t>;  // size, seq, slot
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
  for (std::size_t s = 0; s < store.size(); ++s)
    heap.emplace(store[s].size(), s, s);
  std::size_t seq = store.size();
  while (heap.size() > 1) {
    std::size_t ia = std::get<2>(heap.top());
    heap.pop();
    std::size_t ib = std::get<2>(heap.top());
    heap.pop();
    store.push_back(merge_two_chains(store[ia], store[ib], l, complement));
    heap.emplace(store.back().size(), seq++, store.size() - 1);
  }
  return store[std::get<2>(heap.top())];
}

SortResult query_sort(PreprocessedIndex& idx, LinearOracle& l) {
  if (idx.consumed)
    throw ArgumentError("query_sort: index was already consumed by a sort");
  idx.consumed = true;
  const PosetInstance& inst = l.instance();
  if (idx.stats.n != inst.n)
    throw ArgumentError("query_sort: index and oracle sizes differ");

  SortResult res;
  const std::uint64_t q_start = l.query_count();
  const std::uint64_t s_start = l.step_count();
  auto ask = [&](int u, int v) {
    bool before = l.less(u, v);
    res.complementing_set.push_back(before ? Edge{u, v} : Edge{v, u});
    return before;
  };

  std::uint64_t q0 = l.query_count();
  Chain merged =
      huffman_chain_merge(idx.decomp.chain_cover, l, &res.complementing_set);
  res.merge_queries = l.query_count() - q0;

  q0 = l.query_count();
  Finger prev;
  int prev_elem = kNoElement;
  for (int y : merged) {
    int a = idx.decomp.alpha[y];
    Finger start;
    if (prev_elem != kNoElement && a != kNoElement && a != prev_elem)
      start = ask(prev_elem, a) ? idx.tree.finger(a) : prev;
    else if (prev_elem != kNoElement)
      start = prev;
    else if (a != kNoElement)
      start = idx.tree.finger(a);
    SearchStats st;
    Finger at = idx.tree.exponential_search(
        start, [&](int t) { return ask(t, y); }, &st);
    prev = idx.tree.insert_after(at, y);
    prev_elem = y;
    res.chain_loop_distances.push_back(st.distance);
  }
  res.chain_loop_queries = l.query_count() - q0;

  q0 = l.query_count();
  for (const auto& anti : idx.decomp.antichains) {
    for (int y : anti) {
      Finger at = idx.tree.binary_search([&](int t) { return ask(t, y); });
      idx.tree.insert_after(at, y);
    }
  }
  res.antichain_loop_queries = l.query_count() - q0;

  res.order = idx.tree.to_vector();
  res.linear_queries = l.query_count() - q_start;
  res.steps = l.step_count() - s_start;
  if (res.order != inst.hidden_order)
    throw SortMismatchError(
        "query_sort: recovered order differs from the hidden order");
  return res;
}

}  // namespace spi
