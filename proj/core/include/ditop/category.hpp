#ifndef DITOP_CATEGORY_HPP
#define DITOP_CATEGORY_HPP

#include "ditop/paths.hpp"

#include <map>
#include <memory>
#include <optional>
#include <tuple>
#include <vector>

namespace ditop {

// Finite full subcategory of the fundamental category on an object set A:
// per-pair dihomotopy class lists plus memoized composition.
class HomTable {
public:
  HomTable() = default;

  static HomTable full_subcategory(const GridComplex& g, std::vector<GridComplex::Vertex> objects,
                                   const Budget& budget, const Region* region = nullptr);

  const GridComplex& grid() const { return *grid_; }
  int object_count() const { return static_cast<int>(objects_.size()); }
  GridComplex::Vertex object(int i) const { return objects_[i]; }
  const std::vector<GridComplex::Vertex>& objects() const { return objects_; }
  std::optional<int> index_of(GridComplex::Vertex v) const;

  const ClassSet& hom(int a, int b) const { return hom_[a * object_count() + b]; }
  bool exact(int a, int b) const { return hom(a, b).exact; }
  bool all_exact() const;
  int identity(int a) const; // index of the identity class in hom(a,a)

  // Class of g∘f for f: a -> b, g: b -> c, as an index into hom(a,c); nullopt
  // if the concatenation fell outside the enumerated (truncated) class list.
  std::optional<int> compose(int a, int b, int f, int c, int gcls) const;

  // Full subtable on a subset of the objects (indices into this table).
  HomTable restrict(const std::vector<int>& subset) const;

private:
  const GridComplex* grid_ = nullptr; // not owned; the grid must outlive the table
  std::vector<GridComplex::Vertex> objects_;
  std::vector<ClassSet> hom_;
  // packed (a,b,c,f,g) -> class index, -1 for "escaped the table"
  mutable std::unordered_map<unsigned long long, int> compose_memo_;
};

class Preorder {
public:
  explicit Preorder(const GridComplex& g);

  bool leq(GridComplex::Vertex x, GridComplex::Vertex y) const;
  const std::vector<GridComplex::Vertex>& vertices() const { return verts_; }

private:
  int n_ = 0;
  std::vector<GridComplex::Vertex> verts_;
  std::vector<char> reach_;
};

Preorder preorder(const GridComplex& g);

struct ExtremalPoints {
  std::vector<GridComplex::Vertex> minimals, maximals;
  std::vector<GridComplex::Vertex> all() const;
};

ExtremalPoints extremal_points(const GridComplex& g);

// tau_1(X, Ext(X)); identity classes are suppressed only in renderings.
HomTable bipartite_graph(const GridComplex& g, const Budget& budget);

} // namespace ditop

#endif
