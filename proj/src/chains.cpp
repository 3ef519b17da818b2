#include "spi/chains.hpp"

#include <algorithm>
#include <unordered_map>

#include "longest_path.hpp"
#include "spi/errors.hpp"

namespace spi {

namespace {

void check_elems(const PosetInstance& inst, const std::vector<int>& elems,
                 const char* who) {
  if (elems.empty())
    throw ArgumentError(std::string(who) + ": empty element set");
  std::vector<char> seen(inst.n + 1, 0);
  for (int e : elems) {
    if (e < 1 || e > inst.n)
      throw ArgumentError(std::string(who) + ": element out of range");
    if (seen[e]) throw ArgumentError(std::string(who) + ": duplicate element");
    seen[e] = 1;
  }
}

}  // namespace

MergeOutcome merge_runs_deleting(PartialOracle& h, const Chain& a,
                                 const Chain& b) {
  // Either run may be empty: a deleting merge can wipe out a whole side.
  Chain joint = a;
  joint.insert(joint.end(), b.begin(), b.end());
  if (!joint.empty()) check_elems(h.instance(), joint, "merge_runs_deleting");
  MergeOutcome out;
  out.merged.reserve(a.size() + b.size());
  std::size_t ia = 0, ib = 0;
  while (ia < a.size() && ib < b.size()) {
    int x = a[ia], y = b[ib];
    if (h.less(x, y)) {
      out.merged.push_back(x);
      ++ia;
    } else if (h.less(y, x)) {
      out.merged.push_back(y);
      ++ib;
    } else {
      out.deleted.emplace_back(std::min(x, y), std::max(x, y));
      ++ia;
      ++ib;
    }
    h.add_steps(1);
  }
  for (; ia < a.size(); ++ia) out.merged.push_back(a[ia]);
  for (; ib < b.size(); ++ib) out.merged.push_back(b[ib]);
  h.add_steps(a.size() + b.size() - out.merged.size());
  return out;
}

ApproxChainResult approx_max_chain(PartialOracle& h,
                                   const std::vector<int>& elems) {
  check_elems(h.instance(), elems, "approx_max_chain");
  std::vector<int> sorted = elems;
  std::sort(sorted.begin(), sorted.end());

  ApproxChainResult result;
  auto rec = [&](auto&& self, std::size_t lo, std::size_t hi) -> Chain {
    if (hi - lo == 1) return {sorted[lo]};
    std::size_t mid = lo + (hi - lo) / 2;
    Chain left = self(self, lo, mid);
    Chain right = self(self, mid, hi);
    MergeOutcome m = merge_runs_deleting(h, left, right);
    for (const auto& p : m.deleted) result.deleted.push_back(p);
    return m.merged;
  };
  result.chain = rec(rec, 0, sorted.size());
  return result;
}

int chain_pred_index(PartialOracle& h, const Chain& chain, int x) {
  int lo = -1, hi = static_cast<int>(chain.size());
  while (lo + 1 < hi) {
    int mid = lo + (hi - lo) / 2;
    if (h.less(chain[mid], x))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

int chain_succ_index(PartialOracle& h, const Chain& chain, int x) {
  int lo = -1, hi = static_cast<int>(chain.size());
  while (lo + 1 < hi) {
    int mid = lo + (hi - lo) / 2;
    if (h.less(x, chain[mid]))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

Chain exact_max_chain(PartialOracle& h, const std::vector<int>& elems) {
  check_elems(h.instance(), elems, "exact_max_chain");
  ApproxChainResult approx = approx_max_chain(h, elems);
  const Chain& c = approx.chain;

  std::vector<int> leftovers;
  for (const auto& [u, v] : approx.deleted) {
    leftovers.push_back(u);
    leftovers.push_back(v);
  }
  std::sort(leftovers.begin(), leftovers.end());
  if (leftovers.empty()) return c;

  // Local ids: chain elements first, then leftovers.
  std::vector<int> local_elem;
  local_elem.reserve(c.size() + leftovers.size());
  for (int e : c) local_elem.push_back(e);
  for (int e : leftovers) local_elem.push_back(e);
  int m = static_cast<int>(local_elem.size());
  int base = static_cast<int>(c.size());

  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < base; ++i) edges.emplace_back(i, i + 1);
  for (std::size_t r = 0; r < leftovers.size(); ++r) {
    int x = leftovers[r];
    int node = base + static_cast<int>(r);
    int p = chain_pred_index(h, c, x);
    if (p >= 0) edges.emplace_back(p, node);
    int s = chain_succ_index(h, c, x);
    if (s < base) edges.emplace_back(node, s);
  }
  for (std::size_t i = 0; i < leftovers.size(); ++i) {
    for (std::size_t j = i + 1; j < leftovers.size(); ++j) {
      int x = leftovers[i], y = leftovers[j];
      if (h.less(x, y))
        edges.emplace_back(base + static_cast<int>(i),
                           base + static_cast<int>(j));
      else if (h.less(y, x))
        edges.emplace_back(base + static_cast<int>(j),
                           base + static_cast<int>(i));
    }
  }

  std::vector<int> path = detail::longest_path_dag(m, edges);
  Chain out;
  out.reserve(path.size());
  for (int v : path) out.push_back(local_elem[v]);
  h.add_steps(out.size());
  return out;
}

}  // namespace spi
