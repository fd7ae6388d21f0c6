#include "ditop/paths.hpp"
#include "ditop/errors.hpp"
#include "ditop/union_find.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace ditop {

GridComplex::Vertex path_end(const GridComplex& g, const LatticePath& p) {
  return path_vertex_at(g, p, p.steps.size());
}

GridComplex::Vertex path_vertex_at(const GridComplex& g, const LatticePath& p, size_t i) {
  GridComplex::Vertex v = p.start;
  for (size_t k = 0; k < i; ++k) v = g.edge_target(v, p.steps[k]);
  return v;
}

bool path_valid(const GridComplex& g, const LatticePath& p) {
  GridComplex::Vertex v = p.start;
  if (!g.vertex_allowed(v)) return false;
  for (int ax : p.steps) {
    if (ax < 0 || ax >= g.dim() || !g.edge_allowed(v, ax)) return false;
    v = g.edge_target(v, ax);
    if (!g.vertex_allowed(v)) return false;
  }
  return true;
}

LatticePath concat(const LatticePath& p, const LatticePath& q) {
  LatticePath out = p;
  out.steps.insert(out.steps.end(), q.steps.begin(), q.steps.end());
  return out;
}

bool step_less(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Region Region::whole(const GridComplex& g) {
  Region r;
  r.arcs.assign(g.dim(), AxisArc{0, 0, true});
  return r;
}

bool Region::contains_coord(const GridComplex& g, int ax, int j) const {
  const AxisArc& a = arcs[ax];
  if (a.full) return true;
  int n = g.axis(ax).vertex_count();
  int d = j - a.start;
  if (g.axis(ax).wrap) d = ((d % n) + n) % n;
  return 0 <= d && d < a.count;
}

bool Region::contains_cell(const GridComplex& g, int ax, int j) const {
  const AxisArc& a = arcs[ax];
  if (a.full) return true;
  int n = g.axis(ax).vertex_count();
  int d = j - a.start;
  if (g.axis(ax).wrap) d = ((d % n) + n) % n;
  return 0 <= d && d < a.count - 1;
}

bool Region::contains_vertex(const GridComplex& g, GridComplex::Vertex v) const {
  std::vector<int> idx = g.index_of(v);
  for (int ax = 0; ax < g.dim(); ++ax) {
    if (!contains_coord(g, ax, idx[ax])) return false;
  }
  return true;
}

bool Region::contains_edge(const GridComplex& g, GridComplex::Vertex v, int ax) const {
  std::vector<int> idx = g.index_of(v);
  for (int a2 = 0; a2 < g.dim(); ++a2) {
    if (a2 == ax) {
      if (!contains_cell(g, a2, idx[a2])) return false;
    } else {
      if (!contains_coord(g, a2, idx[a2])) return false;
    }
  }
  return true;
}

bool Region::contains_face(const GridComplex& g, GridComplex::Vertex v, int ax1, int ax2) const {
  std::vector<int> idx = g.index_of(v);
  for (int a2 = 0; a2 < g.dim(); ++a2) {
    if (a2 == ax1 || a2 == ax2) {
      if (!contains_cell(g, a2, idx[a2])) return false;
    } else {
      if (!contains_coord(g, a2, idx[a2])) return false;
    }
  }
  return true;
}

namespace {

bool step_ok(const GridComplex& g, const Region* region, GridComplex::Vertex v, int ax) {
  if (!g.edge_allowed(v, ax)) return false;
  if (!g.vertex_allowed(g.edge_target(v, ax))) return false;
  if (region && !region->contains_edge(g, v, ax)) return false;
  return true;
}

// Vertices from which v is reachable through allowed in-region edges.
std::vector<char> reverse_reachable(const GridComplex& g, GridComplex::Vertex v,
                                    const Region* region) {
  std::vector<std::vector<GridComplex::Vertex>> preds(g.vertex_count());
  for (GridComplex::Vertex u = 0; u < g.vertex_count(); ++u) {
    if (!g.vertex_allowed(u)) continue;
    if (region && !region->contains_vertex(g, u)) continue;
    for (int ax = 0; ax < g.dim(); ++ax) {
      if (step_ok(g, region, u, ax)) preds[g.edge_target(u, ax)].push_back(u);
    }
  }
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<GridComplex::Vertex> stack{v};
  seen[v] = 1;
  while (!stack.empty()) {
    GridComplex::Vertex w = stack.back();
    stack.pop_back();
    for (GridComplex::Vertex u : preds[w]) {
      if (!seen[u]) {
        seen[u] = 1;
        stack.push_back(u);
      }
    }
  }
  return seen;
}

} // namespace

PathSet enumerate_dipaths(const GridComplex& g, GridComplex::Vertex u, GridComplex::Vertex v,
                          const Budget& budget, const Region* region) {
  PathSet out;
  if (!g.vertex_allowed(u) || !g.vertex_allowed(v)) return out;
  if (region && (!region->contains_vertex(g, u) || !region->contains_vertex(g, v))) return out;
  std::vector<char> can_reach = reverse_reachable(g, v, region);
  if (!can_reach[u]) return out;

  std::vector<int> steps;
  bool done = false;
  std::function<void(GridComplex::Vertex)> dfs = [&](GridComplex::Vertex cur) {
    if (done) return;
    if (cur == v) {
      if (static_cast<long long>(out.paths.size()) >= budget.max_paths) {
        out.truncated = true;
        done = true;
        return;
      }
      out.paths.push_back(LatticePath{u, steps});
    }
    if (static_cast<int>(steps.size()) == budget.max_steps) {
      for (int ax = 0; ax < g.dim(); ++ax) {
        if (step_ok(g, region, cur, ax) && can_reach[g.edge_target(cur, ax)]) {
          out.truncated = true;
          break;
        }
      }
      return;
    }
    for (int ax = 0; ax < g.dim() && !done; ++ax) {
      if (!step_ok(g, region, cur, ax)) continue;
      GridComplex::Vertex next = g.edge_target(cur, ax);
      if (!can_reach[next]) continue;
      steps.push_back(ax);
      dfs(next);
      steps.pop_back();
    }
  };
  dfs(u);
  std::sort(out.paths.begin(), out.paths.end(),
            [](const LatticePath& a, const LatticePath& b) { return step_less(a.steps, b.steps); });
  return out;
}

std::optional<LatticePath> flip(const GridComplex& g, const LatticePath& p, size_t i,
                                const Region* region) {
  if (i + 1 >= p.steps.size()) return std::nullopt;
  int a = p.steps[i], b = p.steps[i + 1];
  if (a == b) return std::nullopt;
  GridComplex::Vertex base = path_vertex_at(g, p, i);
  if (!g.face_allowed(base, a, b)) return std::nullopt;
  if (region && !region->contains_face(g, base, a, b)) return std::nullopt;
  LatticePath q = p;
  std::swap(q.steps[i], q.steps[i + 1]);
  return q;
}

std::string step_key(const std::vector<int>& steps) {
  std::string key;
  key.reserve(steps.size());
  for (int ax : steps) key.push_back(static_cast<char>(ax));
  return key;
}

std::optional<int> ClassSet::class_of(const LatticePath& p) const {
  if (p.start != src) return std::nullopt;
  auto it = by_path.find(step_key(p.steps));
  if (it == by_path.end()) return std::nullopt;
  return it->second;
}

std::optional<int> ClassSet::identity() const {
  if (src != dst) return std::nullopt;
  auto it = by_path.find(std::string());
  if (it == by_path.end()) return std::nullopt;
  return it->second;
}

ClassSet classes(const GridComplex& g, GridComplex::Vertex u, GridComplex::Vertex v,
                 const Budget& budget, const Region* region) {
  ClassSet out;
  out.src = u;
  out.dst = v;
  PathSet ps = enumerate_dipaths(g, u, v, budget, region);
  out.exact = !ps.truncated;

  std::unordered_map<std::string, size_t> index;
  index.reserve(ps.paths.size() * 2);
  for (size_t i = 0; i < ps.paths.size(); ++i) index[step_key(ps.paths[i].steps)] = i;

  UnionFind uf(ps.paths.size());
  for (size_t i = 0; i < ps.paths.size(); ++i) {
    for (size_t k = 0; k + 1 < ps.paths[i].steps.size(); ++k) {
      auto q = flip(g, ps.paths[i], k, region);
      if (!q) continue;
      auto it = index.find(step_key(q->steps));
      if (it != index.end()) uf.merge(i, it->second);
      // missing partners can only occur under truncation; flagged inexact
    }
  }

  std::map<size_t, int> root_to_class;
  for (size_t i = 0; i < ps.paths.size(); ++i) {
    // paths arrive (length, lex)-sorted, so the first member of each root is canonical
    size_t root = uf.find(i);
    auto [it, fresh] = root_to_class.try_emplace(root, static_cast<int>(out.classes.size()));
    if (fresh) {
      out.classes.push_back(DihomotopyClass{u, v, ps.paths[i], 0});
    }
    out.classes[it->second].size += 1;
  }
  // classes already sorted by canonical representative (construction order)
  for (size_t i = 0; i < ps.paths.size(); ++i) {
    out.by_path[step_key(ps.paths[i].steps)] = root_to_class[uf.find(i)];
  }
  return out;
}

std::vector<bool> signature_2d(const GridComplex& g, const LatticePath& p) {
  if (g.dim() != 2 || g.has_identifications())
    throw Error(Errc::not_two_dimensional,
                "signature oracle needs a 2D scene without identifications");
  std::vector<bool> bits(g.forbidden().size(), false);
  for (size_t b = 0; b < g.forbidden().size(); ++b) {
    const auto& [xlo, xhi] = g.forbidden()[b].intervals[0];
    const auto& [ylo, yhi] = g.forbidden()[b].intervals[1];
    (void)ylo;
    GridComplex::Vertex v = p.start;
    for (size_t i = 0; i <= p.steps.size() && !bits[b]; ++i) {
      std::vector<Rat> c = g.coords_of(v);
      if (xlo < c[0] && c[0] < xhi && c[1] >= yhi) bits[b] = true;
      if (i == p.steps.size() || bits[b]) break;
      std::vector<int> idx = g.index_of(v);
      if (p.steps[i] == 0) {
        // horizontal edge: open x-interval at fixed y
        Rat x1 = g.axis(0).coords[idx[0]], x2 = g.axis(0).coords[idx[0] + 1];
        if (std::max(xlo, x1) < std::min(xhi, x2) && c[1] >= yhi) bits[b] = true;
      } else {
        // vertical edge: fixed x, open y-interval
        Rat y2 = g.axis(1).coords[idx[1] + 1];
        if (xlo < c[0] && c[0] < xhi && y2 > yhi) bits[b] = true;
      }
      v = g.edge_target(v, p.steps[i]);
    }
  }
  return bits;
}

} // namespace ditop
