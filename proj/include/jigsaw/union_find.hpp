#pragma once
#include <numeric>
#include <utility>
#include <vector>

namespace jigsaw {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(int x, int y) {
    int px = find(x), py = find(y);
    if (px == py) return false;
    if (rank_[px] < rank_[py]) std::swap(px, py);
    parent_[py] = px;
    if (rank_[px] == rank_[py]) rank_[px]++;
    return true;
  }

  bool connected(int x, int y) { return find(x) == find(y); }

  int component_count() {
    int c = 0;
    for (int i = 0; i < static_cast<int>(parent_.size()); ++i) c += find(i) == i;
    return c;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
};

}  // namespace jigsaw
