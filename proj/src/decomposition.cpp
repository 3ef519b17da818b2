#include "spi/decomposition.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

#include "longest_path.hpp"
#include "spi/errors.hpp"

namespace spi {

namespace {

// Successor edges between every ordered pair of chains, as local-id pairs.
// Walking both chains with one resumable pointer costs at most
// |c_i| + |c_j| queries per ordered pair, since the first element of c_j
// above x only moves forward as x climbs c_i.
void add_succ_edges(PartialOracle& h, const ChainList& chains,
                    const std::vector<std::vector<int>>& ids,
                    std::vector<std::pair<int, int>>& edges) {
  for (std::size_t i = 0; i < chains.size(); ++i) {
    for (std::size_t j = 0; j < chains.size(); ++j) {
      if (i == j) continue;
      std::size_t t = 0;
      for (std::size_t p = 0; p < chains[i].size(); ++p) {
        int x = chains[i][p];
        while (t < chains[j].size() && !h.less(x, chains[j][t])) ++t;
        if (t == chains[j].size()) break;
        edges.emplace_back(ids[i][p], ids[j][t]);
      }
    }
  }
}

void add_path_edges(const std::vector<std::vector<int>>& ids,
                    std::vector<std::pair<int, int>>& edges) {
  for (const auto& chain_ids : ids)
    for (std::size_t p = 0; p + 1 < chain_ids.size(); ++p)
      edges.emplace_back(chain_ids[p], chain_ids[p + 1]);
}

// Local ids 0..m-1 assigned by concatenating the chains.
std::vector<std::vector<int>> assign_ids(const ChainList& chains,
                                         std::vector<int>& local_elem) {
  std::vector<std::vector<int>> ids(chains.size());
  for (std::size_t i = 0; i < chains.size(); ++i) {
    ids[i].reserve(chains[i].size());
    for (int e : chains[i]) {
      ids[i].push_back(static_cast<int>(local_elem.size()));
      local_elem.push_back(e);
    }
  }
  return ids;
}

void check_disjoint(const PosetInstance& inst, const ChainList& chains,
                    const char* who) {
  std::vector<char> seen(inst.n + 1, 0);
  for (const auto& c : chains) {
    for (int e : c) {
      if (e < 1 || e > inst.n)
        throw ArgumentError(std::string(who) + ": element out of range");
      if (seen[e])
        throw ArgumentError(std::string(who) + ": chains overlap");
      seen[e] = 1;
    }
  }
}

}  // namespace

ExtractionResult antichain_extraction(PartialOracle& h, const ChainList& chains,
                                      int w) {
  if (w < 1) throw ArgumentError("antichain_extraction: w must be >= 1");
  if (static_cast<int>(chains.size()) != w + 1)
    throw ArgumentError("antichain_extraction: expected exactly w+1 chains");
  check_disjoint(h.instance(), chains, "antichain_extraction");

  ChainList work = chains;
  // Pair relations are immutable, so one global cache per call suffices:
  // -1 when a < b, +1 when b < a, 0 when incomparable (keyed with a < b).
  std::unordered_map<std::uint64_t, int> cache;
  auto relation = [&](int x, int y) {
    int a = std::min(x, y), b = std::max(x, y);
    std::uint64_t key =
        (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
    int rel;
    auto it = cache.find(key);
    if (it != cache.end()) {
      rel = it->second;
    } else {
      if (h.less(a, b))
        rel = -1;
      else if (h.less(b, a))
        rel = +1;
      else
        rel = 0;
      cache.emplace(key, rel);
    }
    return (x == a) ? rel : -rel;
  };

  auto all_nonempty = [&] {
    for (const auto& c : work)
      if (c.empty()) return false;
    return true;
  };

  std::vector<std::vector<int>> antichains;
  while (all_nonempty()) {
    bool removed = false;
    for (int i = 0; i <= w && !removed; ++i) {
      for (int j = i + 1; j <= w; ++j) {
        int rel = relation(work[i].back(), work[j].back());
        if (rel == -1) {
          work[j].pop_back();
          removed = true;
          break;
        }
        if (rel == +1) {
          work[i].pop_back();
          removed = true;
          break;
        }
      }
    }
    if (!removed) {
      std::vector<int> anti;
      anti.reserve(w + 1);
      for (auto& c : work) {
        anti.push_back(c.back());
        c.pop_back();
      }
      antichains.push_back(std::move(anti));
      h.add_steps(w + 1);
    }
  }

  ExtractionResult res;
  res.chains = chains;
  std::vector<char> in_anti(h.instance().n + 1, 0);
  for (const auto& a : antichains)
    for (int e : a) in_anti[e] = 1;
  for (auto& c : res.chains) {
    Chain kept;
    kept.reserve(c.size());
    for (int e : c)
      if (!in_anti[e]) kept.push_back(e);
    c = std::move(kept);
  }
  res.antichains = std::move(antichains);
  return res;
}

namespace {

struct FlowNet {
  struct Arc {
    int from, to;
    int lower;
    int flow;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> arcs_out, arcs_in;

  explicit FlowNet(int nodes) : arcs_out(nodes), arcs_in(nodes) {}

  int add(int from, int to, int lower, int flow) {
    int id = static_cast<int>(arcs.size());
    arcs.push_back({from, to, lower, flow});
    arcs_out[from].push_back(id);
    arcs_in[to].push_back(id);
    return id;
  }
};

}  // namespace

ChainList peeling_iteration(PartialOracle& h, const ChainList& chains, int w) {
  if (w < 1) throw ArgumentError("peeling_iteration: w must be >= 1");
  if (static_cast<int>(chains.size()) > w + 1)
    throw ArgumentError("peeling_iteration: more than w+1 chains");
  check_disjoint(h.instance(), chains, "peeling_iteration");

  ChainList live;
  for (const auto& c : chains)
    if (!c.empty()) live.push_back(c);
  if (static_cast<int>(live.size()) <= w) {
    live.resize(w);
    return live;
  }

  std::vector<int> local_elem;
  auto ids = assign_ids(live, local_elem);
  int m = static_cast<int>(local_elem.size());

  std::vector<std::pair<int, int>> edges;
  add_path_edges(ids, edges);
  std::size_t first_succ = edges.size();
  add_succ_edges(h, live, ids, edges);

  // Vertex-demand min flow: every element node carries a lower bound of 1,
  // walks may pass an element more than once, and the w+1 input chains give
  // a feasible flow. One residual pass from sink to source lowers the value
  // to w; failing to find that pass means the elements have width w+1.
  const int S = 0, T = 1;
  auto in_node = [](int v) { return 2 + 2 * v; };
  auto out_node = [](int v) { return 3 + 2 * v; };
  FlowNet net(2 + 2 * m);

  std::vector<int> s_arc(m), t_arc(m);
  for (int v = 0; v < m; ++v) net.add(in_node(v), out_node(v), 1, 1);  // ids 0..m-1
  for (int v = 0; v < m; ++v) s_arc[v] = net.add(S, in_node(v), 0, 0);
  for (int v = 0; v < m; ++v) t_arc[v] = net.add(out_node(v), T, 0, 0);
  for (std::size_t e = 0; e < edges.size(); ++e)
    net.add(out_node(edges[e].first), in_node(edges[e].second), 0,
            e < first_succ ? 1 : 0);
  for (const auto& chain_ids : ids) {
    net.arcs[s_arc[chain_ids.front()]].flow = 1;
    net.arcs[t_arc[chain_ids.back()]].flow = 1;
  }

  // BFS from T to S over the residual graph.
  int nodes = 2 + 2 * m;
  std::vector<int> par_arc(nodes, -1), par_node(nodes, -1), par_dir(nodes, 0);
  std::vector<char> visited(nodes, 0);
  std::vector<int> queue{T};
  visited[T] = 1;
  bool reached = false;
  for (std::size_t head = 0; head < queue.size() && !reached; ++head) {
    int u = queue[head];
    for (int a : net.arcs_out[u]) {
      int x = net.arcs[a].to;  // capacity is unbounded, can always raise
      if (!visited[x]) {
        visited[x] = 1;
        par_arc[x] = a;
        par_node[x] = u;
        par_dir[x] = +1;
        if (x == S) { reached = true; break; }
        queue.push_back(x);
      }
    }
    if (reached) break;
    for (int a : net.arcs_in[u]) {
      if (net.arcs[a].flow <= net.arcs[a].lower) continue;
      int x = net.arcs[a].from;
      if (!visited[x]) {
        visited[x] = 1;
        par_arc[x] = a;
        par_node[x] = u;
        par_dir[x] = -1;
        if (x == S) { reached = true; break; }
        queue.push_back(x);
      }
    }
  }
  if (!reached)
    throw WidthViolationError(
        "peeling_iteration: no w-chain cover exists for these elements");

  for (int x = S; x != T; x = par_node[x]) net.arcs[par_arc[x]].flow += par_dir[x];
  h.add_steps(queue.size());

  // Trace the w remaining walks; the first walk through an element keeps it.
  ChainList out;
  std::vector<char> taken(m, 0);
  for (int k = 0; k < w; ++k) {
    Chain chain;
    int cur = S;
    while (cur != T) {
      int chosen = -1;
      for (int a : net.arcs_out[cur]) {
        if (net.arcs[a].flow > 0) {
          chosen = a;
          break;
        }
      }
      if (chosen == -1)
        throw WidthViolationError("peeling_iteration: flow tracing failed");
      --net.arcs[chosen].flow;
      int nxt = net.arcs[chosen].to;
      if (chosen < m) {  // vertex arcs were added first, ids 0..m-1
        int v = chosen;
        if (!taken[v]) {
          taken[v] = 1;
          chain.push_back(local_elem[v]);
        }
      }
      cur = nxt;
      h.add_steps(1);
    }
    out.push_back(std::move(chain));
  }
  for (int v = 0; v < m; ++v) {
    if (!taken[v])
      throw WidthViolationError("peeling_iteration: element left uncovered");
  }
  return out;
}

ExtractionResult antichain_peeling(PartialOracle& h, const ChainList& chains,
                                   int w) {
  if (w < 1) throw ArgumentError("antichain_peeling: w must be >= 1");
  if (static_cast<int>(chains.size()) > 2 * w)
    throw ArgumentError("antichain_peeling: more than 2w chains");

  ChainList slots = chains;
  slots.resize(2 * static_cast<std::size_t>(w));
  ExtractionResult out;
  for (int i = w - 1; i >= 0; --i) {
    ChainList window(slots.begin() + i, slots.begin() + i + w + 1);
    ExtractionResult ex = antichain_extraction(h, window, w);
    ChainList peeled = peeling_iteration(h, ex.chains, w);
    for (auto& a : ex.antichains) out.antichains.push_back(std::move(a));
    for (int k = 0; k < w; ++k) slots[i + k] = std::move(peeled[k]);
    slots[i + w] = {};
  }
  out.chains.assign(slots.begin(), slots.begin() + w);
  return out;
}

ExtractionResult chain_antichain_mergesort(PartialOracle& h,
                                           std::vector<int> elems, int w) {
  if (w < 1) throw ArgumentError("chain_antichain_mergesort: w must be >= 1");
  if (elems.empty()) return {};
  std::sort(elems.begin(), elems.end());
  ChainList as_chains;
  for (int e : elems) as_chains.push_back({e});
  check_disjoint(h.instance(), as_chains, "chain_antichain_mergesort");

  auto rec = [&](auto&& self, std::size_t lo, std::size_t hi) -> ExtractionResult {
    if (hi - lo <= static_cast<std::size_t>(w)) {
      ExtractionResult base;
      for (std::size_t i = lo; i < hi; ++i) base.chains.push_back({elems[i]});
      return base;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    ExtractionResult left = self(self, lo, mid);
    ExtractionResult right = self(self, mid, hi);
    ChainList combined = std::move(left.chains);
    for (auto& c : right.chains) combined.push_back(std::move(c));
    ExtractionResult peeled = antichain_peeling(h, combined, w);
    ExtractionResult res;
    res.antichains = std::move(left.antichains);
    for (auto& a : right.antichains) res.antichains.push_back(std::move(a));
    for (auto& a : peeled.antichains) res.antichains.push_back(std::move(a));
    for (auto& c : peeled.chains)
      if (!c.empty()) res.chains.push_back(std::move(c));
    return res;
  };
  return rec(rec, 0, elems.size());
}

ChainList greedy_chain_decomposition(PartialOracle& h, const ChainList& cover) {
  check_disjoint(h.instance(), cover, "greedy_chain_decomposition");
  ChainList work;
  for (const auto& c : cover)
    if (!c.empty()) work.push_back(c);

  ChainList out;
  while (!work.empty()) {
    std::vector<int> local_elem;
    auto ids = assign_ids(work, local_elem);
    std::vector<std::pair<int, int>> edges;
    add_path_edges(ids, edges);
    add_succ_edges(h, work, ids, edges);
    std::vector<int> path =
        detail::longest_path_dag(static_cast<int>(local_elem.size()), edges);

    Chain chain;
    chain.reserve(path.size());
    for (int v : path) chain.push_back(local_elem[v]);
    std::vector<char> taken(h.instance().n + 1, 0);
    for (int e : chain) taken[e] = 1;
    out.push_back(std::move(chain));

    ChainList next;
    for (auto& c : work) {
      Chain kept;
      for (int e : c)
        if (!taken[e]) kept.push_back(e);
      if (!kept.empty()) next.push_back(std::move(kept));
    }
    work = std::move(next);
    h.add_steps(local_elem.size());
  }
  return out;
}

}  // namespace spi
