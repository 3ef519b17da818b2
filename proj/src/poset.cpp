#include "spi/poset.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_map>

#include "spi/errors.hpp"

namespace spi {

namespace {

// Kahn topological sort over cover edges. Returns node ids in topological
// order, or an empty vector when a cycle exists.
std::vector<int> topo_order(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> adj(n + 1);
  std::vector<int> indeg(n + 1, 0);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    ++indeg[v];
  }
  std::vector<int> queue;
  queue.reserve(n);
  for (int v = 1; v <= n; ++v)
    if (indeg[v] == 0) queue.push_back(v);
  std::vector<int> order;
  order.reserve(n);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    order.push_back(u);
    for (int v : adj[u])
      if (--indeg[v] == 0) queue.push_back(v);
  }
  if (static_cast<int>(order.size()) != n) return {};
  return order;
}

bool is_permutation_1n(int n, const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != n) return false;
  std::vector<char> seen(n + 1, 0);
  for (int v : order) {
    if (v < 1 || v > n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

}  // namespace

std::optional<std::string> instance_defect(const PosetInstance& inst) {
  if (inst.n < 1) return "n must be at least 1";
  std::set<Edge> seen;
  for (const auto& [u, v] : inst.cover_edges) {
    if (u < 1 || u > inst.n || v < 1 || v > inst.n)
      return "edge endpoint out of range";
    if (u == v) return "self loop";
    if (!seen.insert({u, v}).second) return "duplicate edge";
  }
  if (topo_order(inst.n, inst.cover_edges).empty() && inst.n > 0)
    return "edges contain a cycle";
  if (!is_permutation_1n(inst.n, inst.hidden_order))
    return "hidden order is not a permutation of 1..n";
  std::vector<int> pos(inst.n + 1, 0);
  for (int i = 0; i < inst.n; ++i) pos[inst.hidden_order[i]] = i;
  for (const auto& [u, v] : inst.cover_edges)
    if (pos[u] >= pos[v]) return "hidden order violates an edge";
  return std::nullopt;
}

void validate_instance(const PosetInstance& inst) {
  if (auto defect = instance_defect(inst))
    throw ArgumentError("invalid instance: " + *defect);
}

bool verify_extension(const PosetInstance& inst, const std::vector<int>& order) {
  if (!is_permutation_1n(inst.n, order))
    throw ArgumentError("verify_extension: order is not a permutation of 1..n");
  std::vector<int> pos(inst.n + 1, 0);
  for (int i = 0; i < inst.n; ++i) pos[order[i]] = i;
  for (const auto& [u, v] : inst.cover_edges)
    if (pos[u] >= pos[v]) return false;
  return true;
}

std::uint64_t count_linear_extensions(const PosetInstance& inst, int limit) {
  if (limit < 1 || limit > 20)
    throw ArgumentError("count_linear_extensions: limit must be in 1..20");
  if (inst.n > limit) {
    std::ostringstream msg;
    msg << "count_linear_extensions: n=" << inst.n
        << " exceeds counting limit " << limit;
    throw LimitError(msg.str());
  }
  int n = inst.n;
  std::vector<std::uint64_t> pred(n, 0);
  for (const auto& [u, v] : inst.cover_edges)
    pred[v - 1] |= std::uint64_t{1} << (u - 1);
  std::unordered_map<std::uint64_t, std::uint64_t> memo;
  std::uint64_t full =
      (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);

  auto rec = [&](auto&& self, std::uint64_t remaining) -> std::uint64_t {
    if (remaining == 0) return 1;
    auto it = memo.find(remaining);
    if (it != memo.end()) return it->second;
    std::uint64_t total = 0;
    for (std::uint64_t m = remaining; m != 0; m &= m - 1) {
      int v = std::countr_zero(m);
      if ((pred[v] & remaining) == 0)
        total += self(self, remaining & ~(std::uint64_t{1} << v));
    }
    memo.emplace(remaining, total);
    return total;
  };
  return rec(rec, full);
}

double log_extensions_chain_union(const std::vector<int>& sizes) {
  if (sizes.empty())
    throw ArgumentError("log_extensions_chain_union: empty size list");
  long long n = 0;
  for (int s : sizes) {
    if (s < 1) throw ArgumentError("log_extensions_chain_union: size < 1");
    n += s;
  }
  double bits = std::lgamma(static_cast<double>(n) + 1.0);
  for (int s : sizes) bits -= std::lgamma(static_cast<double>(s) + 1.0);
  return bits / std::log(2.0);
}

double chain_union_entropy(const std::vector<int>& sizes) {
  if (sizes.empty()) throw ArgumentError("chain_union_entropy: empty size list");
  long long n = 0;
  for (int s : sizes) {
    if (s < 1) throw ArgumentError("chain_union_entropy: size < 1");
    n += s;
  }
  double h = 0.0;
  for (int s : sizes) {
    double p = static_cast<double>(s) / static_cast<double>(n);
    h += p * std::log2(static_cast<double>(n) / static_cast<double>(s));
  }
  return h;
}

std::optional<std::vector<int>> chain_union_sizes(const PosetInstance& inst) {
  std::vector<int> out(inst.n + 1, 0), indeg(inst.n + 1, 0), next(inst.n + 1, 0);
  for (const auto& [u, v] : inst.cover_edges) {
    if (++out[u] > 1 || ++indeg[v] > 1) return std::nullopt;
    next[u] = v;
  }
  std::vector<int> sizes;
  for (int v = 1; v <= inst.n; ++v) {
    if (indeg[v] != 0) continue;
    int len = 0;
    for (int u = v; u != 0; u = next[u]) ++len;
    sizes.push_back(len);
  }
  long long total = 0;
  for (int s : sizes) total += s;
  if (total != inst.n) return std::nullopt;  // cycle-only components
  return sizes;
}

Reachability::Reachability(const PosetInstance& inst)
    : n_(inst.n), words_((inst.n + 64) / 64) {
  adj_.assign(n_ + 1, {});
  for (const auto& [u, v] : inst.cover_edges) adj_[u].push_back(v);
  rows_.assign(static_cast<std::size_t>(n_ + 1) * words_, 0);
  done_.assign(n_ + 1, 0);
  if (n_ <= 4096) {
    std::vector<int> order = topo_order(n_, inst.cover_edges);
    for (auto it = order.rbegin(); it != order.rend(); ++it) compute_row(*it);
  }
}

void Reachability::compute_row(int u) const {
  if (done_[u]) return;
  // Iterative DFS; children rows are completed before the parent's.
  std::vector<int> stack{u};
  while (!stack.empty()) {
    int v = stack.back();
    if (done_[v]) {
      stack.pop_back();
      continue;
    }
    bool ready = true;
    for (int w : adj_[v]) {
      if (!done_[w]) {
        stack.push_back(w);
        ready = false;
      }
    }
    if (!ready) continue;
    std::uint64_t* row = &rows_[static_cast<std::size_t>(v) * words_];
    for (int w : adj_[v]) {
      const std::uint64_t* sub = &rows_[static_cast<std::size_t>(w) * words_];
      for (int i = 0; i < words_; ++i) row[i] |= sub[i];
      row[w >> 6] |= std::uint64_t{1} << (w & 63);
    }
    done_[v] = 1;
    stack.pop_back();
  }
}

bool Reachability::less(int u, int v) const {
  if (!done_[u]) compute_row(u);
  return (rows_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >>
          (v & 63)) & 1;
}

}  // namespace spi
