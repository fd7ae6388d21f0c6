#ifndef DITOP_GRID_HPP
#define DITOP_GRID_HPP

#include "ditop/scene.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ditop {

// Coordinate-compacted cell complex of a validated scene.  Vertices are grid
// points of the kept region, already quotiented by identifications: on a
// wrapped axis the final coordinate (the identification target) names the
// same vertex as the first.  A cell/face is allowed iff its relative interior
// is disjoint from every forbidden open box.
class GridComplex {
public:
  using Vertex = int;

  struct Axis {
    std::vector<Rat> coords; // sorted; on wrapped axes the last coord is glued to the first
    bool wrap = false;

    int vertex_count() const { return static_cast<int>(coords.size()) - (wrap ? 1 : 0); }
    int cell_count() const { return static_cast<int>(coords.size()) - 1; }
  };

  int dim() const { return static_cast<int>(axes_.size()); }
  const Axis& axis(int ax) const { return axes_[ax]; }
  int vertex_count() const { return total_vertices_; }

  Vertex vertex_of(const std::vector<int>& idx) const;
  std::vector<int> index_of(Vertex v) const;
  std::vector<Rat> coords_of(Vertex v) const;
  // Exact coordinate lookup; on a wrapped axis the target coordinate resolves
  // to the source vertex.  nullopt if any coordinate is not a grid coordinate
  // of the kept region.
  std::optional<Vertex> vertex_at(const std::vector<Rat>& p) const;

  Vertex marked_vertex(const std::string& name) const; // throws input_error if unknown
  const std::map<std::string, Vertex>& marked() const { return marked_; }
  std::optional<std::string> name_of(Vertex v) const;
  // Marked-point name if present, else the coordinate tuple.
  std::string label_of(Vertex v) const;

  bool vertex_allowed(Vertex v) const { return vertex_allowed_[v]; }
  bool has_edge(Vertex v, int ax) const;
  bool edge_allowed(Vertex v, int ax) const;
  Vertex edge_target(Vertex v, int ax) const;
  // The open 2-face spanned forward from v along distinct axes ax1, ax2.
  bool face_allowed(Vertex v, int ax1, int ax2) const;

  std::vector<Vertex> allowed_vertices() const;
  const std::vector<Box>& forbidden() const { return boxes_; }
  bool has_identifications() const;
  bool loop_free() const;

private:
  friend GridComplex compactify(const CubicalScene&, const std::vector<std::vector<Rat>>&);

  std::vector<Axis> axes_;
  std::vector<Box> boxes_;
  std::vector<long long> strides_;
  int total_vertices_ = 0;
  std::vector<char> vertex_allowed_;
  std::vector<std::vector<char>> edge_allowed_; // [axis][vertex]
  std::map<std::string, Vertex> marked_;
};

GridComplex compactify(const CubicalScene& scene);
// Variant injecting extra (redundant) grid coordinates per axis, for
// refinement-invariance tests.
GridComplex compactify(const CubicalScene& scene, const std::vector<std::vector<Rat>>& extra);

} // namespace ditop

#endif
