#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spi {

// Elements are 1-indexed. Element id 0 is reserved as a "no element"
// sentinel used by finger bookkeeping.
inline constexpr int kNoElement = 0;

using Chain = std::vector<int>;
using ChainList = std::vector<Chain>;
using Edge = std::pair<int, int>;

// A ground set {1..n}, the cover edges of a partial order on it, and the
// hidden linear extension that a linear oracle answers from.
struct PosetInstance {
  int n = 0;
  std::vector<Edge> cover_edges;   // u before v, no self loops, acyclic
  std::vector<int> hidden_order;   // permutation of 1..n extending the order
  std::optional<double> c_hint;    // generator parameter, if any
};

// Returns a description of the first structural defect, or nullopt if the
// instance is well formed (edges in range, acyclic, hidden_order a linear
// extension).
std::optional<std::string> instance_defect(const PosetInstance& inst);

// Throws ArgumentError when the instance is defective.
void validate_instance(const PosetInstance& inst);

// True iff order is a linear extension of the instance's partial order.
// Throws ArgumentError when order is not a permutation of 1..n.
bool verify_extension(const PosetInstance& inst, const std::vector<int>& order);

// Exact number of linear extensions by backtracking over minimal elements
// (memoized on the remaining-element set). Refuses n > limit with a
// LimitError; limit is capped at 20 so the count fits in 64 bits.
std::uint64_t count_linear_extensions(const PosetInstance& inst, int limit = 12);

// log2(n! / prod(sizes[i]!)) for a disjoint union of chains with the given
// sizes, computed with log-gamma.
double log_extensions_chain_union(const std::vector<int>& sizes);

// sum over chains of (|C_i|/n) * log2(n/|C_i|).
double chain_union_entropy(const std::vector<int>& sizes);

// Chain sizes when the cover edges form a disjoint union of paths,
// otherwise nullopt.
std::optional<std::vector<int>> chain_union_sizes(const PosetInstance& inst);

// Transitive closure of the cover DAG. Dense bit rows are precomputed for
// n <= 4096; larger instances fill rows on demand with cached DFS.
class Reachability {
 public:
  Reachability() = default;
  explicit Reachability(const PosetInstance& inst);

  // u strictly precedes v. Both must be in 1..n and distinct.
  bool less(int u, int v) const;
  int n() const { return n_; }

 private:
  void compute_row(int u) const;

  int n_ = 0;
  int words_ = 0;
  std::vector<std::vector<int>> adj_;
  mutable std::vector<std::uint64_t> rows_;
  mutable std::vector<char> done_;
};

}  // namespace spi
