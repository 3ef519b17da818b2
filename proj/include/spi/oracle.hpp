#pragma once

#include <cstdint>

#include "spi/poset.hpp"

namespace spi {

// Counted access to the partial order. Every less() call is one oracle
// query; query_count and step_count only ever grow.
class PartialOracle {
 public:
  explicit PartialOracle(const PosetInstance& inst)
      : inst_(&inst), reach_(inst) {}

  // Is i strictly below j in the partial order?
  bool less(int i, int j) {
    check(i, j);
    ++queries_;
    ++steps_;
    return reach_.less(i, j);
  }

  const PosetInstance& instance() const { return *inst_; }
  std::uint64_t query_count() const { return queries_; }
  std::uint64_t step_count() const { return steps_; }
  void add_steps(std::uint64_t k) { steps_ += k; }

 private:
  void check(int i, int j) const;

  const PosetInstance* inst_;
  Reachability reach_;
  std::uint64_t queries_ = 0;
  std::uint64_t steps_ = 0;
};

// Counted access to the hidden linear extension.
class LinearOracle {
 public:
  explicit LinearOracle(const PosetInstance& inst);

  // Is i strictly before j in the hidden order?
  bool less(int i, int j) {
    check(i, j);
    ++queries_;
    ++steps_;
    return pos_[i] < pos_[j];
  }

  const PosetInstance& instance() const { return *inst_; }
  std::uint64_t query_count() const { return queries_; }
  std::uint64_t step_count() const { return steps_; }
  void add_steps(std::uint64_t k) { steps_ += k; }

 private:
  void check(int i, int j) const;

  const PosetInstance* inst_;
  std::vector<int> pos_;
  std::uint64_t queries_ = 0;
  std::uint64_t steps_ = 0;
};

}  // namespace spi
