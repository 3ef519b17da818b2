#include "spi/finger_tree.hpp"

#include <utility>

#include "spi/errors.hpp"

namespace spi {

FingerTree::Node* FingerTree::new_leaf(int elem) {
  pool_.emplace_back();
  Node* n = &pool_.back();
  n->leaf = true;
  n->elem = elem;
  return n;
}

FingerTree::Node* FingerTree::new_internal() {
  pool_.emplace_back();
  return &pool_.back();
}

FingerTree::Node* FingerTree::leaf_ptr(Finger f) const {
  const Node* n = static_cast<const Node*>(f.leaf_);
  auto it = leaf_of_.find(n->elem);
  if (it == leaf_of_.end() || it->second != n)
    throw ArgumentError("finger does not belong to this tree");
  return it->second;
}

FingerTree::FingerTree(const std::vector<int>& elems) {
  if (elems.empty()) return;
  std::vector<Node*> level;
  level.reserve(elems.size());
  for (int e : elems) {
    if (!leaf_of_.emplace(e, nullptr).second)
      throw ArgumentError("duplicate element in finger tree build");
    Node* l = new_leaf(e);
    leaf_of_[e] = l;
    if (!level.empty()) {
      level.back()->next = l;
      l->prev = level.back();
    }
    level.push_back(l);
  }
  first_ = level.front();
  last_ = level.back();
  while (level.size() > 1) {
    std::vector<Node*> up;
    up.reserve(level.size() / 2 + 1);
    std::size_t i = 0;
    while (i < level.size()) {
      int take = (level.size() - i == 3) ? 3 : 2;
      Node* p = new_internal();
      for (int k = 0; k < take; ++k) {
        p->child[k] = level[i + k];
        level[i + k]->parent = p;
      }
      p->nchild = take;
      p->weight = 0;
      for (int k = 0; k < take; ++k) p->weight += p->child[k]->weight;
      i += take;
      up.push_back(p);
    }
    level = std::move(up);
  }
  root_ = level.front();
}

Finger FingerTree::finger(int elem) const {
  auto it = leaf_of_.find(elem);
  if (it == leaf_of_.end())
    throw ArgumentError("element is not in the finger tree");
  return Finger(it->second);
}

int FingerTree::elem(Finger f) const {
  if (f.before_first())
    throw ArgumentError("the before-first finger carries no element");
  return leaf_ptr(f)->elem;
}

int FingerTree::child_index(const Node* p, const Node* c) {
  for (int k = 0; k < p->nchild; ++k)
    if (p->child[k] == c) return k;
  throw ArgumentError("finger tree child link is inconsistent");
}

void FingerTree::insert_child(Node* p, int at, Node* c) {
  for (int k = p->nchild; k > at; --k) p->child[k] = p->child[k - 1];
  p->child[at] = c;
  c->parent = p;
  ++p->nchild;
  ++rebalance_steps_;
}

void FingerTree::split_overfull(Node* x) {
  while (x->nchild == 5) {
    Node* r = new_internal();
    for (int k = 3; k < 5; ++k) {
      r->child[k - 3] = x->child[k];
      r->child[k - 3]->parent = r;
      x->child[k] = nullptr;
    }
    r->nchild = 2;
    r->weight = r->child[0]->weight + r->child[1]->weight;
    x->nchild = 3;
    x->weight -= r->weight;
    ++rebalance_steps_;
    if (x == root_) {
      Node* nr = new_internal();
      nr->child[0] = x;
      nr->child[1] = r;
      nr->nchild = 2;
      nr->weight = x->weight + r->weight;
      x->parent = nr;
      r->parent = nr;
      root_ = nr;
      ++rebalance_steps_;
      return;
    }
    insert_child(x->parent, child_index(x->parent, x) + 1, r);
    x = x->parent;
  }
}

void FingerTree::attach_beside(Node* anchor, Node* added, bool after) {
  if (anchor == root_) {
    Node* nr = new_internal();
    nr->child[0] = after ? anchor : added;
    nr->child[1] = after ? added : anchor;
    nr->nchild = 2;
    nr->weight = anchor->weight + added->weight;
    anchor->parent = nr;
    added->parent = nr;
    root_ = nr;
    ++rebalance_steps_;
    return;
  }
  Node* p = anchor->parent;
  insert_child(p, child_index(p, anchor) + (after ? 1 : 0), added);
  for (Node* a = p; a; a = a->parent) a->weight += added->weight;
  split_overfull(p);
}

Finger FingerTree::insert_after(Finger f, int elem) {
  if (leaf_of_.count(elem))
    throw ArgumentError("element is already in the finger tree");
  Node* anchor = f.before_first() ? nullptr : leaf_ptr(f);
  Node* nl = new_leaf(elem);
  if (!root_) {
    root_ = first_ = last_ = nl;
  } else if (!anchor) {
    nl->next = first_;
    first_->prev = nl;
    Node* old_first = first_;
    first_ = nl;
    attach_beside(old_first, nl, /*after=*/false);
  } else {
    nl->prev = anchor;
    nl->next = anchor->next;
    if (anchor->next)
      anchor->next->prev = nl;
    else
      last_ = nl;
    anchor->next = nl;
    attach_beside(anchor, nl, /*after=*/true);
  }
  leaf_of_[elem] = nl;
  return Finger(nl);
}

Finger FingerTree::exponential_search(Finger from,
                                      const std::function<bool(int)>& pred,
                                      SearchStats* stats) const {
  SearchStats local;
  SearchStats& s = stats ? *stats : local;
  s = {};
  const Node* start = from.before_first() ? nullptr : leaf_ptr(from);
  const Node* walk_base = start ? start->next : first_;
  if (!walk_base) return from;

  // Gallop: probe offsets 1, 2, 4, ... past the start, clamped to the end.
  const Node* best = start;
  std::int64_t best_off = 0;
  const Node* probe = walk_base;
  std::int64_t probe_off = 1;
  std::int64_t fail_off = -1;
  while (true) {
    ++s.predicate_calls;
    if (!pred(probe->elem)) {
      fail_off = probe_off;
      break;
    }
    best = probe;
    best_off = probe_off;
    if (probe == last_) break;
    std::int64_t target = 2 * probe_off;
    while (probe_off < target && probe != last_) {
      probe = probe->next;
      ++probe_off;
    }
  }

  if (fail_off >= 0 && fail_off - best_off > 1) {
    // Collect the open window between the last hit and the first miss,
    // then locate the boundary with a plain binary search.
    std::vector<const Node*> window;
    window.reserve(fail_off - best_off - 1);
    const Node* w = best ? best->next : first_;
    for (std::int64_t o = best_off + 1; o < fail_off; ++o, w = w->next)
      window.push_back(w);
    std::int64_t lo = -1, hi = static_cast<std::int64_t>(window.size());
    while (hi - lo > 1) {
      std::int64_t mid = (lo + hi) / 2;
      ++s.predicate_calls;
      if (pred(window[mid]->elem))
        lo = mid;
      else
        hi = mid;
    }
    if (lo >= 0) {
      best = window[lo];
      best_off += lo + 1;
    }
  }
  s.distance = best_off;
  return best == start ? from : Finger(best);
}

const FingerTree::Node* FingerTree::leaf_at(std::int64_t rank) const {
  const Node* n = root_;
  while (!n->leaf) {
    for (int k = 0; k < n->nchild; ++k) {
      if (rank < n->child[k]->weight) {
        n = n->child[k];
        break;
      }
      rank -= n->child[k]->weight;
    }
  }
  return n;
}

Finger FingerTree::binary_search(const std::function<bool(int)>& pred,
                                 SearchStats* stats) const {
  SearchStats local;
  SearchStats& s = stats ? *stats : local;
  s = {};
  std::int64_t lo = -1, hi = static_cast<std::int64_t>(leaf_of_.size());
  const Node* hit = nullptr;
  while (hi - lo > 1) {
    std::int64_t mid = (lo + hi) / 2;
    const Node* probe = leaf_at(mid);
    ++s.predicate_calls;
    if (pred(probe->elem)) {
      lo = mid;
      hit = probe;
    } else {
      hi = mid;
    }
  }
  if (lo < 0) return Finger();
  s.distance = lo + 1;
  return Finger(hit);
}

std::vector<int> FingerTree::to_vector() const {
  std::vector<int> out;
  out.reserve(leaf_of_.size());
  for (const Node* l = first_; l; l = l->next) out.push_back(l->elem);
  return out;
}

int FingerTree::height() const {
  int h = -1;
  for (const Node* n = root_; n; n = n->child[0]) ++h;
  return h;
}

bool FingerTree::check_invariants() const {
  if (!root_)
    return leaf_of_.empty() && !first_ && !last_;
  if (root_->parent) return false;

  std::vector<const Node*> leaves;
  int depth = -1;
  auto walk = [&](auto&& self, const Node* n, int d) -> bool {
    if (n->leaf) {
      if (n->nchild != 0 || n->weight != 1) return false;
      if (depth == -1) depth = d;
      if (d != depth) return false;
      leaves.push_back(n);
      return true;
    }
    if (n->nchild < 2 || n->nchild > 4) return false;
    int wsum = 0;
    for (int k = 0; k < n->nchild; ++k) {
      if (!n->child[k] || n->child[k]->parent != n) return false;
      if (!self(self, n->child[k], d + 1)) return false;
      wsum += n->child[k]->weight;
    }
    if (n->weight != wsum) return false;
    for (int k = n->nchild; k < 5; ++k)
      if (n->child[k]) return false;
    return true;
  };
  if (!walk(walk, root_, 0)) return false;

  if (leaves.size() != leaf_of_.size()) return false;
  if (leaves.front() != first_ || leaves.back() != last_) return false;
  if (first_->prev || last_->next) return false;
  for (std::size_t i = 0; i + 1 < leaves.size(); ++i) {
    if (leaves[i]->next != leaves[i + 1]) return false;
    if (leaves[i + 1]->prev != leaves[i]) return false;
  }
  for (const Node* l : leaves) {
    auto it = leaf_of_.find(l->elem);
    if (it == leaf_of_.end() || it->second != l) return false;
  }
  return true;
}

}  // namespace spi
