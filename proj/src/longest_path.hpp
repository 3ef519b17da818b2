#pragma once

#include <algorithm>
#include <utility>
#include <vector>

namespace spi::detail {

// Longest path (by vertex count) in a DAG over nodes 0..m-1. Edges are
// (from, to) pairs. Returns the node sequence of one longest path,
// deterministically: ties keep the first improvement found while relaxing
// in topological order.
inline std::vector<int> longest_path_dag(
    int m, const std::vector<std::pair<int, int>>& edges) {
  if (m == 0) return {};
  std::vector<std::vector<int>> adj(m);
  std::vector<int> indeg(m, 0);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    ++indeg[v];
  }
  std::vector<int> queue;
  queue.reserve(m);
  for (int v = 0; v < m; ++v)
    if (indeg[v] == 0) queue.push_back(v);
  std::vector<int> len(m, 1), prev(m, -1), topo;
  topo.reserve(m);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    topo.push_back(u);
    for (int v : adj[u])
      if (--indeg[v] == 0) queue.push_back(v);
  }
  for (int u : topo) {
    for (int v : adj[u]) {
      if (len[u] + 1 > len[v]) {
        len[v] = len[u] + 1;
        prev[v] = u;
      }
    }
  }
  int best = 0;
  for (int v = 1; v < m; ++v)
    if (len[v] > len[best]) best = v;
  std::vector<int> path;
  for (int v = best; v != -1; v = prev[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace spi::detail
