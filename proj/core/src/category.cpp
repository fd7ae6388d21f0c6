#include "ditop/category.hpp"
#include "ditop/errors.hpp"

#include <algorithm>

namespace ditop {

HomTable HomTable::full_subcategory(const GridComplex& g, std::vector<GridComplex::Vertex> objects,
                                    const Budget& budget, const Region* region) {
  std::sort(objects.begin(), objects.end());
  objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
  HomTable t;
  t.grid_ = &g;
  t.objects_ = std::move(objects);
  int n = t.object_count();
  t.hom_.reserve(n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      t.hom_.push_back(classes(g, t.objects_[a], t.objects_[b], budget, region));
    }
  }
  return t;
}

std::optional<int> HomTable::index_of(GridComplex::Vertex v) const {
  auto it = std::lower_bound(objects_.begin(), objects_.end(), v);
  if (it == objects_.end() || *it != v) return std::nullopt;
  return static_cast<int>(it - objects_.begin());
}

bool HomTable::all_exact() const {
  for (const ClassSet& cs : hom_) {
    if (!cs.exact) return false;
  }
  return true;
}

int HomTable::identity(int a) const {
  auto id = hom(a, a).identity();
  if (!id) throw Error(Errc::analysis_error, "hom table lacks an identity class");
  return *id;
}

std::optional<int> HomTable::compose(int a, int b, int f, int c, int gcls) const {
  unsigned long long key = ((static_cast<unsigned long long>(a) * 256 + b) * 256 + c);
  key = (key << 20) | static_cast<unsigned>(f);
  key = (key << 20) | static_cast<unsigned>(gcls);
  auto it = compose_memo_.find(key);
  if (it != compose_memo_.end())
    return it->second < 0 ? std::nullopt : std::optional<int>(it->second);
  LatticePath joined =
      concat(hom(a, b).classes[f].canonical, hom(b, c).classes[gcls].canonical);
  std::optional<int> result = hom(a, c).class_of(joined);
  compose_memo_[key] = result ? *result : -1;
  return result;
}

HomTable HomTable::restrict(const std::vector<int>& subset) const {
  HomTable t;
  t.grid_ = grid_;
  for (int i : subset) t.objects_.push_back(objects_[i]);
  std::sort(t.objects_.begin(), t.objects_.end());
  t.objects_.erase(std::unique(t.objects_.begin(), t.objects_.end()), t.objects_.end());
  int n = t.object_count();
  t.hom_.reserve(n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int ia = *index_of(t.objects_[a]);
      int ib = *index_of(t.objects_[b]);
      t.hom_.push_back(hom(ia, ib));
    }
  }
  return t;
}

Preorder::Preorder(const GridComplex& g) : n_(g.vertex_count()) {
  verts_ = g.allowed_vertices();
  reach_.assign(static_cast<size_t>(n_) * n_, 0);
  for (GridComplex::Vertex s : verts_) {
    // DFS forward
    std::vector<GridComplex::Vertex> stack{s};
    reach_[static_cast<size_t>(s) * n_ + s] = 1;
    while (!stack.empty()) {
      GridComplex::Vertex v = stack.back();
      stack.pop_back();
      for (int ax = 0; ax < g.dim(); ++ax) {
        if (!g.edge_allowed(v, ax)) continue;
        GridComplex::Vertex w = g.edge_target(v, ax);
        if (!g.vertex_allowed(w)) continue;
        char& seen = reach_[static_cast<size_t>(s) * n_ + w];
        if (!seen) {
          seen = 1;
          stack.push_back(w);
        }
      }
    }
  }
}

bool Preorder::leq(GridComplex::Vertex x, GridComplex::Vertex y) const {
  return reach_[static_cast<size_t>(x) * n_ + y];
}

Preorder preorder(const GridComplex& g) {
  return Preorder(g);
}

std::vector<GridComplex::Vertex> ExtremalPoints::all() const {
  std::vector<GridComplex::Vertex> out = minimals;
  out.insert(out.end(), maximals.begin(), maximals.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ExtremalPoints extremal_points(const GridComplex& g) {
  Preorder p(g);
  ExtremalPoints out;
  for (GridComplex::Vertex a : p.vertices()) {
    // a vertex on a directed cycle has a strict predecessor and successor
    // (possibly itself through the cycle), so it is neither minimal nor
    // maximal; with a one-vertex quotient the plain quantifier would be
    // vacuous, hence the explicit cycle test
    bool on_cycle = false;
    for (int ax = 0; ax < g.dim() && !on_cycle; ++ax) {
      if (!g.edge_allowed(a, ax)) continue;
      GridComplex::Vertex w = g.edge_target(a, ax);
      if (g.vertex_allowed(w) && p.leq(w, a)) on_cycle = true;
    }
    bool minimal = !on_cycle, maximal = !on_cycle;
    for (GridComplex::Vertex x : p.vertices()) {
      if (!minimal && !maximal) break;
      if (x == a) continue;
      if (p.leq(x, a)) minimal = false;
      if (p.leq(a, x)) maximal = false;
    }
    if (minimal) out.minimals.push_back(a);
    if (maximal) out.maximals.push_back(a);
  }
  return out;
}

HomTable bipartite_graph(const GridComplex& g, const Budget& budget) {
  return HomTable::full_subcategory(g, extremal_points(g).all(), budget);
}

} // namespace ditop
