#include "ditop/grid.hpp"
#include "ditop/errors.hpp"

#include <algorithm>
#include <set>

namespace ditop {

namespace {

// Extent of a face: per axis either a fixed coordinate or an open interval.
struct AxisExtent {
  bool is_interval = false;
  Rat lo, hi; // point stored in lo when !is_interval
};

bool extent_meets_box(const std::vector<AxisExtent>& ext, const Box& box) {
  for (size_t ax = 0; ax < ext.size(); ++ax) {
    const auto& [blo, bhi] = box.intervals[ax];
    if (ext[ax].is_interval) {
      if (!(std::max(blo, ext[ax].lo) < std::min(bhi, ext[ax].hi))) return false;
    } else {
      if (!(blo < ext[ax].lo && ext[ax].lo < bhi)) return false;
    }
  }
  return true;
}

} // namespace

GridComplex::Vertex GridComplex::vertex_of(const std::vector<int>& idx) const {
  long long v = 0;
  for (int ax = 0; ax < dim(); ++ax) v += idx[ax] * strides_[ax];
  return static_cast<Vertex>(v);
}

std::vector<int> GridComplex::index_of(Vertex v) const {
  std::vector<int> idx(dim());
  long long rest = v;
  for (int ax = 0; ax < dim(); ++ax) {
    idx[ax] = static_cast<int>(rest / strides_[ax]);
    rest %= strides_[ax];
  }
  return idx;
}

std::vector<Rat> GridComplex::coords_of(Vertex v) const {
  std::vector<int> idx = index_of(v);
  std::vector<Rat> out(dim());
  for (int ax = 0; ax < dim(); ++ax) out[ax] = axes_[ax].coords[idx[ax]];
  return out;
}

std::optional<GridComplex::Vertex> GridComplex::vertex_at(const std::vector<Rat>& p) const {
  if (static_cast<int>(p.size()) != dim()) return std::nullopt;
  std::vector<int> idx(dim());
  for (int ax = 0; ax < dim(); ++ax) {
    const Axis& a = axes_[ax];
    auto it = std::lower_bound(a.coords.begin(), a.coords.end(), p[ax]);
    if (it == a.coords.end() || *it != p[ax]) return std::nullopt;
    int j = static_cast<int>(it - a.coords.begin());
    if (a.wrap && j == a.vertex_count()) j = 0; // target coordinate ~ source
    idx[ax] = j;
  }
  return vertex_of(idx);
}

GridComplex::Vertex GridComplex::marked_vertex(const std::string& name) const {
  auto it = marked_.find(name);
  if (it == marked_.end()) throw Error(Errc::input_error, "unknown point name '" + name + "'");
  return it->second;
}

std::optional<std::string> GridComplex::name_of(Vertex v) const {
  for (const auto& [name, u] : marked_) {
    if (u == v) return name;
  }
  return std::nullopt;
}

std::string GridComplex::label_of(Vertex v) const {
  if (auto n = name_of(v)) return *n;
  return format_point(coords_of(v));
}

bool GridComplex::has_edge(Vertex v, int ax) const {
  return index_of(v)[ax] < axes_[ax].cell_count();
}

bool GridComplex::edge_allowed(Vertex v, int ax) const {
  return has_edge(v, ax) && edge_allowed_[ax][v];
}

GridComplex::Vertex GridComplex::edge_target(Vertex v, int ax) const {
  std::vector<int> idx = index_of(v);
  idx[ax] += 1;
  if (axes_[ax].wrap && idx[ax] == axes_[ax].vertex_count()) idx[ax] = 0;
  return vertex_of(idx);
}

bool GridComplex::face_allowed(Vertex v, int ax1, int ax2) const {
  if (ax1 == ax2) return false;
  if (!has_edge(v, ax1) || !has_edge(v, ax2)) return false;
  std::vector<int> idx = index_of(v);
  std::vector<AxisExtent> ext(dim());
  for (int ax = 0; ax < dim(); ++ax) {
    if (ax == ax1 || ax == ax2) {
      ext[ax] = {true, axes_[ax].coords[idx[ax]], axes_[ax].coords[idx[ax] + 1]};
    } else {
      ext[ax] = {false, axes_[ax].coords[idx[ax]], Rat(0)};
    }
  }
  for (const Box& b : boxes_) {
    if (extent_meets_box(ext, b)) return false;
  }
  return true;
}

std::vector<GridComplex::Vertex> GridComplex::allowed_vertices() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < total_vertices_; ++v) {
    if (vertex_allowed_[v]) out.push_back(v);
  }
  return out;
}

bool GridComplex::has_identifications() const {
  for (const Axis& a : axes_) {
    if (a.wrap) return true;
  }
  return false;
}

bool GridComplex::loop_free() const {
  // iterative 3-color DFS over allowed edges
  std::vector<int> color(total_vertices_, 0);
  std::vector<std::pair<Vertex, int>> stack;
  for (Vertex s = 0; s < total_vertices_; ++s) {
    if (color[s] || !vertex_allowed_[s]) continue;
    stack.push_back({s, 0});
    color[s] = 1;
    while (!stack.empty()) {
      auto& [v, ax] = stack.back();
      if (ax == dim()) {
        color[v] = 2;
        stack.pop_back();
        continue;
      }
      int a = ax++;
      if (!edge_allowed(v, a)) continue;
      Vertex w = edge_target(v, a);
      if (!vertex_allowed_[w]) continue;
      if (color[w] == 1) return false;
      if (color[w] == 0) {
        color[w] = 1;
        stack.push_back({w, 0});
      }
    }
  }
  return true;
}

GridComplex compactify(const CubicalScene& scene) {
  return compactify(scene, {});
}

GridComplex compactify(const CubicalScene& scene, const std::vector<std::vector<Rat>>& extra) {
  validate_scene(scene);
  GridComplex g;
  g.boxes_ = scene.forbidden;

  std::vector<std::optional<SlabIdentification>> ident(scene.dim);
  for (const SlabIdentification& id : scene.identifications) ident[id.axis] = id;

  for (int ax = 0; ax < scene.dim; ++ax) {
    Rat lo(0), hi(1);
    if (ident[ax]) {
      lo = ident[ax]->source;
      hi = ident[ax]->target;
    }
    std::set<Rat> cs{lo, hi};
    for (const Box& b : scene.forbidden) {
      for (Rat c : {b.intervals[ax].first, b.intervals[ax].second}) {
        if (lo <= c && c <= hi) cs.insert(c);
      }
    }
    for (const auto& [name, p] : scene.marked_points) {
      (void)name;
      cs.insert(p[ax]); // validated to lie in [lo,hi]
    }
    if (ax < static_cast<int>(extra.size())) {
      for (const Rat& c : extra[ax]) {
        if (lo <= c && c <= hi) cs.insert(c);
      }
    }
    GridComplex::Axis axis;
    axis.coords.assign(cs.begin(), cs.end());
    axis.wrap = ident[ax].has_value();
    g.axes_.push_back(std::move(axis));
  }

  g.strides_.assign(scene.dim, 1);
  long long total = 1;
  for (int ax = scene.dim - 1; ax >= 0; --ax) {
    g.strides_[ax] = total;
    total *= g.axes_[ax].vertex_count();
  }
  g.total_vertices_ = static_cast<int>(total);

  // allowed vertices: the vertex as a 0-dimensional extent
  g.vertex_allowed_.assign(g.total_vertices_, 1);
  for (GridComplex::Vertex v = 0; v < g.total_vertices_; ++v) {
    std::vector<Rat> p = g.coords_of(v);
    for (const Box& b : g.boxes_) {
      if (b.contains_open(p)) {
        g.vertex_allowed_[v] = 0;
        break;
      }
    }
  }

  // allowed edges: the open segment
  g.edge_allowed_.assign(scene.dim, std::vector<char>(g.total_vertices_, 0));
  for (int ax = 0; ax < scene.dim; ++ax) {
    for (GridComplex::Vertex v = 0; v < g.total_vertices_; ++v) {
      if (!g.has_edge(v, ax)) continue;
      std::vector<int> idx = g.index_of(v);
      std::vector<AxisExtent> ext(scene.dim);
      for (int a2 = 0; a2 < scene.dim; ++a2) {
        if (a2 == ax) {
          ext[a2] = {true, g.axes_[a2].coords[idx[a2]], g.axes_[a2].coords[idx[a2] + 1]};
        } else {
          ext[a2] = {false, g.axes_[a2].coords[idx[a2]], Rat(0)};
        }
      }
      bool ok = true;
      for (const Box& b : g.boxes_) {
        if (extent_meets_box(ext, b)) {
          ok = false;
          break;
        }
      }
      g.edge_allowed_[ax][v] = ok;
    }
  }

  for (const auto& [name, p] : scene.marked_points) {
    auto v = g.vertex_at(p);
    if (!v) throw Error(Errc::input_error, "marked point '" + name + "' missed the grid");
    g.marked_[name] = *v;
  }
  return g;
}

} // namespace ditop
