#pragma once

#include <numeric>
#include <vector>

namespace uag {

// Disjoint-set forest with path halving and union by size.
class UnionFind {
public:
  explicit UnionFind(int n = 0) { reset(n); }

  void reset(int n) {
    parent_.resize(static_cast<std::size_t>(n));
    std::iota(parent_.begin(), parent_.end(), 0);
    size_.assign(static_cast<std::size_t>(n), 1);
  }

  int add() {
    int id = static_cast<int>(parent_.size());
    parent_.push_back(id);
    size_.push_back(1);
    return id;
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns true when the two classes were distinct and got merged.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

  bool same(int a, int b) { return find(a) == find(b); }

  int node_count() const { return static_cast<int>(parent_.size()); }

private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

}  // namespace uag
