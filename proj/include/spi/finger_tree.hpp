#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <unordered_map>
#include <vector>

namespace spi {

class FingerTree;

// Stable handle to a position in a FingerTree sequence. A default
// constructed finger denotes the slot before the first element.
class Finger {
 public:
  Finger() = default;
  bool before_first() const { return leaf_ == nullptr; }

 private:
  friend class FingerTree;
  explicit Finger(const void* leaf) : leaf_(leaf) {}
  const void* leaf_ = nullptr;
};

struct SearchStats {
  int predicate_calls = 0;
  std::int64_t distance = 0;  // leaves between the start finger and the result
};

// Balanced (2,4)-tree over a sequence of distinct ints, with linked leaves.
// Searches take a monotone predicate (true on a prefix of the sequence,
// false on the rest) and locate the last true position.
//
// exponential_search starts from a finger known to be inside the true
// prefix and gallops right, so it costs O(log d) predicate calls where d
// is the distance to the answer. binary_search bisects on leaf ranks
// (subtree leaf counts are kept in the nodes) and needs exactly
// ceil(log2(size+1)) predicate calls. insert_after splits overfull nodes
// upward; the split count is amortized constant per insertion. Fingers
// stay valid across insertions.
class FingerTree {
 public:
  FingerTree() = default;
  explicit FingerTree(const std::vector<int>& elems);

  FingerTree(const FingerTree&) = delete;
  FingerTree& operator=(const FingerTree&) = delete;
  FingerTree(FingerTree&&) = default;
  FingerTree& operator=(FingerTree&&) = default;

  int size() const { return static_cast<int>(leaf_of_.size()); }
  bool contains(int elem) const { return leaf_of_.count(elem) != 0; }

  // Finger for an element already in the sequence; throws if absent.
  Finger finger(int elem) const;
  // Element under a finger; throws on the before-first finger.
  int elem(Finger f) const;

  // Places a new element directly after the fingered position and returns
  // its finger. Throws on duplicate elements and foreign fingers.
  Finger insert_after(Finger f, int elem);

  // Last position at or after `from` where pred still holds; `from` itself
  // is assumed to hold (or to be before-first) and is returned when the
  // very next element already fails.
  Finger exponential_search(Finger from, const std::function<bool(int)>& pred,
                            SearchStats* stats = nullptr) const;

  // Last position in the whole sequence where pred holds, or the
  // before-first finger when even the first element fails.
  Finger binary_search(const std::function<bool(int)>& pred,
                       SearchStats* stats = nullptr) const;

  std::vector<int> to_vector() const;
  int height() const;  // edges from root to leaves, -1 when empty
  std::uint64_t rebalance_steps() const { return rebalance_steps_; }
  bool check_invariants() const;

 private:
  struct Node {
    Node* parent = nullptr;
    Node* child[5] = {};  // fifth slot only holds an overflow during splits
    int nchild = 0;
    int weight = 1;  // leaves in this subtree
    Node* prev = nullptr;  // leaf links
    Node* next = nullptr;
    int elem = 0;
    bool leaf = false;
  };

  Node* new_leaf(int elem);
  Node* new_internal();
  Node* leaf_ptr(Finger f) const;
  const Node* leaf_at(std::int64_t rank) const;
  static int child_index(const Node* p, const Node* c);
  void insert_child(Node* p, int at, Node* c);
  void attach_beside(Node* anchor, Node* added, bool after);
  void split_overfull(Node* x);

  std::deque<Node> pool_;  // stable addresses, nodes are never reclaimed
  Node* root_ = nullptr;
  Node* first_ = nullptr;
  Node* last_ = nullptr;
  std::unordered_map<int, Node*> leaf_of_;
  std::uint64_t rebalance_steps_ = 0;
};

}  // namespace spi
