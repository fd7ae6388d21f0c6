#ifndef DITOP_UNION_FIND_HPP
#define DITOP_UNION_FIND_HPP

#include <numeric>
#include <vector>

namespace ditop {

class UnionFind {
public:
  explicit UnionFind(size_t n) : id_(n), sz_(n, 1) {
    std::iota(id_.begin(), id_.end(), size_t{0});
  }

  size_t find(size_t p) {
    size_t root = p;
    while (root != id_[root]) root = id_[root];
    while (p != root) {
      size_t next = id_[p];
      id_[p] = root;
      p = next;
    }
    return root;
  }

  void merge(size_t x, size_t y) {
    size_t i = find(x), j = find(y);
    if (i == j) return;
    if (sz_[i] < sz_[j]) std::swap(i, j);
    id_[j] = i;
    sz_[i] += sz_[j];
  }

  bool connected(size_t x, size_t y) { return find(x) == find(y); }

private:
  std::vector<size_t> id_, sz_;
};

} // namespace ditop

#endif
