#ifndef DITOP_PATHS_HPP
#define DITOP_PATHS_HPP

#include "ditop/grid.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace ditop {

// Monotone lattice path: a start vertex and a sequence of axis indices, each
// stepping one grid unit forward (possibly through an identification).
struct LatticePath {
  GridComplex::Vertex start = 0;
  std::vector<int> steps;

  bool operator==(const LatticePath&) const = default;
};

GridComplex::Vertex path_end(const GridComplex& g, const LatticePath& p);
GridComplex::Vertex path_vertex_at(const GridComplex& g, const LatticePath& p, size_t i);
bool path_valid(const GridComplex& g, const LatticePath& p);
LatticePath concat(const LatticePath& p, const LatticePath& q);
// (length, lexicographic) order on step sequences.
bool step_less(const std::vector<int>& a, const std::vector<int>& b);

struct Budget {
  long long max_paths = 200000;
  int max_steps = 64;
};

// Axis-aligned closed sub-window of the grid, one vertex-index arc per axis.
// On a wrapped axis the arc runs forward from `start` through `count`
// consecutive coordinates (mod n), so a window may cross the seam.
class Region {
public:
  struct AxisArc {
    int start = 0;
    int count = 0; // number of grid coordinates in the arc
    bool full = false;
  };

  static Region whole(const GridComplex& g);

  bool contains_coord(const GridComplex& g, int ax, int j) const;
  bool contains_cell(const GridComplex& g, int ax, int j) const;
  bool contains_vertex(const GridComplex& g, GridComplex::Vertex v) const;
  bool contains_edge(const GridComplex& g, GridComplex::Vertex v, int ax) const;
  bool contains_face(const GridComplex& g, GridComplex::Vertex v, int ax1, int ax2) const;

  std::vector<AxisArc> arcs;
};

struct PathSet {
  std::vector<LatticePath> paths; // deterministic order (length, lex)
  bool truncated = false;         // hit max_paths or max_steps
};

// All allowed monotone edge paths u -> v with length <= budget.max_steps whose
// edges lie inside `region` (nullptr = whole grid).  Truncation is flagged,
// never silent.
PathSet enumerate_dipaths(const GridComplex& g, GridComplex::Vertex u, GridComplex::Vertex v,
                          const Budget& budget, const Region* region = nullptr);

// Swap steps i, i+1 if they span an allowed 2-face (inside `region` if given);
// nothing if same axis or the face is forbidden.
std::optional<LatticePath> flip(const GridComplex& g, const LatticePath& p, size_t i,
                                const Region* region = nullptr);

struct DihomotopyClass {
  GridComplex::Vertex src = 0, dst = 0;
  LatticePath canonical; // (length, lex)-least member
  long long size = 0;    // members enumerated
};

class ClassSet {
public:
  GridComplex::Vertex src = 0, dst = 0;
  std::vector<DihomotopyClass> classes; // sorted by canonical representative
  bool exact = true;

  // Class of an arbitrary path u -> v, if it was enumerated.
  std::optional<int> class_of(const LatticePath& p) const;
  std::optional<int> identity() const; // index of the empty-path class, if present

  std::unordered_map<std::string, int> by_path; // step-sequence key -> class index
};

std::string step_key(const std::vector<int>& steps);

// Partition of enumerate_dipaths under the equivalence generated by flips.
ClassSet classes(const GridComplex& g, GridComplex::Vertex u, GridComplex::Vertex v,
                 const Budget& budget, const Region* region = nullptr);

// Independent 2D oracle: bit b = 1 iff the path passes above forbidden box b
// (some path point has x strictly inside the box's x-span and y >= the box
// top).  Requires dim = 2 and no identifications.
std::vector<bool> signature_2d(const GridComplex& g, const LatticePath& p);

} // namespace ditop

#endif
