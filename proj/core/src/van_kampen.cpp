#include "ditop/van_kampen.hpp"
#include "ditop/errors.hpp"
#include "ditop/union_find.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ditop {

namespace {

int coord_position(const GridComplex& g, int ax, const Rat& r) {
  const auto& coords = g.axis(ax).coords;
  for (size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] == r) return static_cast<int>(i);
  }
  throw Error(Errc::input_error, "window bound is not a grid coordinate");
}

// Intersection of two closed arcs on one axis; throws when the result is not
// a single arc (only possible on a wrapped axis).
Region::AxisArc intersect_arc(const GridComplex& g, int ax, const Region::AxisArc& a,
                              const Region::AxisArc& b) {
  int n = g.axis(ax).vertex_count();
  if (a.full) return b;
  if (b.full) return a;
  // lift to integer segments [s, s+count-1]; on a wrapped axis try the three
  // relevant lifts of b against a
  long long a_lo = a.start, a_hi = a.start + a.count - 1;
  std::vector<std::pair<long long, long long>> pieces;
  std::vector<int> shifts = g.axis(ax).wrap ? std::vector<int>{-1, 0, 1} : std::vector<int>{0};
  for (int k : shifts) {
    long long b_lo = b.start + static_cast<long long>(k) * n;
    long long b_hi = b_lo + b.count - 1;
    long long lo = std::max(a_lo, b_lo), hi = std::min(a_hi, b_hi);
    if (lo <= hi) pieces.push_back({lo, hi});
  }
  if (pieces.empty()) return Region::AxisArc{0, 0, false};
  // merge lifts that are adjacent modulo n (can happen when both arcs wrap)
  std::sort(pieces.begin(), pieces.end());
  std::vector<std::pair<long long, long long>> merged{pieces[0]};
  for (size_t i = 1; i < pieces.size(); ++i) {
    if (pieces[i].first <= merged.back().second + 1)
      merged.back().second = std::max(merged.back().second, pieces[i].second);
    else
      merged.push_back(pieces[i]);
  }
  if (merged.size() > 1)
    throw Error(Errc::cover_invalid, "overlap of the pieces is not a single window");
  Region::AxisArc out;
  long long count = merged[0].second - merged[0].first + 1;
  out.start = static_cast<int>(((merged[0].first % n) + n) % n);
  out.count = static_cast<int>(count);
  out.full = count > n;
  return out;
}

std::vector<GridComplex::Vertex> sorted_unique(std::vector<GridComplex::Vertex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<GridComplex::Vertex> intersect_sorted(const std::vector<GridComplex::Vertex>& a,
                                                  const std::vector<GridComplex::Vertex>& b) {
  std::vector<GridComplex::Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void check_objects_in_piece(const GridComplex& g, const std::vector<GridComplex::Vertex>& objs,
                            const Region& piece, const char* what) {
  for (GridComplex::Vertex v : objs) {
    if (!piece.contains_vertex(g, v))
      throw Error(Errc::cover_invalid,
                  std::string(what) + " object " + g.label_of(v) + " lies outside its piece");
  }
}

// Objects of one side that sit in the overlap must belong to both sides.
void check_overlap_saturated(const GridComplex& g, const std::vector<GridComplex::Vertex>& mine,
                             const std::vector<GridComplex::Vertex>& theirs, const Region& x0,
                             const char* what) {
  for (GridComplex::Vertex v : mine) {
    if (x0.contains_vertex(g, v) &&
        !std::binary_search(theirs.begin(), theirs.end(), v))
      throw Error(Errc::cover_invalid, std::string(what) + " object " + g.label_of(v) +
                                           " lies in the overlap but only in one piece");
  }
}

} // namespace

Region window_region(const GridComplex& g, const Window& w) {
  if (static_cast<int>(w.intervals.size()) != g.dim())
    throw Error(Errc::input_error, "window dimension mismatch");
  Region r;
  for (int ax = 0; ax < g.dim(); ++ax) {
    const auto& axis = g.axis(ax);
    int n = axis.vertex_count();
    int lo = coord_position(g, ax, w.intervals[ax].first);
    int hi = coord_position(g, ax, w.intervals[ax].second);
    Region::AxisArc arc;
    int count;
    if (!axis.wrap) {
      if (lo > hi) throw Error(Errc::input_error, "window bounds out of order");
      count = hi - lo + 1;
    } else if (lo <= hi) {
      count = hi - lo + 1;
    } else {
      count = (static_cast<int>(axis.coords.size()) - 1 - lo) + hi + 1;
    }
    arc.start = lo % std::max(n, 1);
    arc.count = count;
    arc.full = count > n || (!axis.wrap && count == n);
    r.arcs.push_back(arc);
  }
  return r;
}

Cover make_cover(const GridComplex& g, const Window& w1, const Window& w2,
                 std::vector<GridComplex::Vertex> a1, std::vector<GridComplex::Vertex> a2,
                 std::vector<GridComplex::Vertex> b1, std::vector<GridComplex::Vertex> b2) {
  Cover c;
  c.x1 = window_region(g, w1);
  c.x2 = window_region(g, w2);
  for (int ax = 0; ax < g.dim(); ++ax)
    c.x0.arcs.push_back(intersect_arc(g, ax, c.x1.arcs[ax], c.x2.arcs[ax]));

  for (GridComplex::Vertex v : g.allowed_vertices()) {
    if (!c.x1.contains_vertex(g, v) && !c.x2.contains_vertex(g, v))
      throw Error(Errc::cover_invalid, "vertex " + g.label_of(v) + " covered by neither piece");
    for (int ax = 0; ax < g.dim(); ++ax) {
      if (!g.edge_allowed(v, ax) || !g.vertex_allowed(g.edge_target(v, ax))) continue;
      if (!c.x1.contains_edge(g, v, ax) && !c.x2.contains_edge(g, v, ax))
        throw Error(Errc::cover_invalid,
                    "edge at " + g.label_of(v) + " covered by neither piece");
      for (int ax2 = ax + 1; ax2 < g.dim(); ++ax2) {
        if (!g.face_allowed(v, ax, ax2)) continue;
        if (!c.x1.contains_face(g, v, ax, ax2) && !c.x2.contains_face(g, v, ax, ax2))
          throw Error(Errc::cover_invalid,
                      "2-face at " + g.label_of(v) + " covered by neither piece");
      }
    }
  }

  c.a1 = sorted_unique(std::move(a1));
  c.a2 = sorted_unique(std::move(a2));
  c.b1 = sorted_unique(std::move(b1));
  c.b2 = sorted_unique(std::move(b2));
  check_objects_in_piece(g, c.a1, c.x1, "A1");
  check_objects_in_piece(g, c.a2, c.x2, "A2");
  check_overlap_saturated(g, c.a1, c.a2, c.x0, "A1");
  check_overlap_saturated(g, c.a2, c.a1, c.x0, "A2");
  c.a0 = intersect_sorted(c.a1, c.a2);
  if (c.has_b()) {
    check_objects_in_piece(g, c.b1, c.x1, "B1");
    check_objects_in_piece(g, c.b2, c.x2, "B2");
    check_overlap_saturated(g, c.b1, c.b2, c.x0, "B1");
    check_overlap_saturated(g, c.b2, c.b1, c.x0, "B2");
    for (GridComplex::Vertex v : c.a1)
      if (!std::binary_search(c.b1.begin(), c.b1.end(), v))
        throw Error(Errc::cover_invalid, "A1 not contained in B1");
    for (GridComplex::Vertex v : c.a2)
      if (!std::binary_search(c.b2.begin(), c.b2.end(), v))
        throw Error(Errc::cover_invalid, "A2 not contained in B2");
    c.b0 = intersect_sorted(c.b1, c.b2);
  }
  return c;
}

std::vector<std::pair<LatticePath, int>> decompose_path(const GridComplex& g, const Cover& cover,
                                                        const LatticePath& path) {
  std::vector<std::pair<LatticePath, int>> out;
  if (path.steps.empty()) {
    int label = cover.x1.contains_vertex(g, path.start) ? 1
                : cover.x2.contains_vertex(g, path.start)
                    ? 2
                    : throw Error(Errc::cover_invalid, "start vertex in neither piece");
    out.push_back({path, label});
    return out;
  }
  GridComplex::Vertex v = path.start;
  LatticePath seg{v, {}};
  int label = 0;
  for (int ax : path.steps) {
    bool in1 = cover.x1.contains_edge(g, v, ax);
    bool in2 = cover.x2.contains_edge(g, v, ax);
    if (!in1 && !in2)
      throw Error(Errc::cover_invalid, "edge at " + g.label_of(v) + " in neither piece");
    if (label == 0) {
      label = in1 ? 1 : 2; // piece 1 preferred
    } else if ((label == 1 && !in1) || (label == 2 && !in2)) {
      out.push_back({seg, label});
      seg = LatticePath{v, {}};
      label = in1 ? 1 : 2;
    }
    seg.steps.push_back(ax);
    v = g.edge_target(v, ax);
  }
  out.push_back({seg, label});
  return out;
}

PieceInclusion inclusion_same_grid(const HomTable& t0, const HomTable& tk) {
  PieceInclusion incl;
  for (int i = 0; i < t0.object_count(); ++i) {
    auto idx = tk.index_of(t0.object(i));
    if (!idx)
      throw Error(Errc::inclusion_not_functorial,
                  "overlap object " + t0.grid().label_of(t0.object(i)) +
                      " is not an object of the piece");
    incl.objects.push_back(*idx);
  }
  for (int a = 0; a < t0.object_count(); ++a) {
    for (int b = 0; b < t0.object_count(); ++b) {
      const ClassSet& src = t0.hom(a, b);
      const ClassSet& dst = tk.hom(incl.objects[a], incl.objects[b]);
      std::set<int> image;
      for (size_t c = 0; c < src.classes.size(); ++c) {
        auto img = dst.class_of(src.classes[c].canonical);
        if (!img)
          throw Error(Errc::inclusion_not_functorial,
                      "overlap class " + t0.grid().label_of(t0.object(a)) + " -> " +
                          t0.grid().label_of(t0.object(b)) + " escapes the piece table");
        if (!image.insert(*img).second)
          throw Error(Errc::inclusion_not_functorial,
                      "two overlap classes " + t0.grid().label_of(t0.object(a)) + " -> " +
                          t0.grid().label_of(t0.object(b)) + " merge in the piece");
        incl.classes[{a, b, static_cast<int>(c)}] = *img;
      }
    }
  }
  return incl;
}

namespace {

int mapped_class(const PieceInclusion& incl, int a, int b, int c) {
  auto it = incl.classes.find({a, b, c});
  if (it == incl.classes.end())
    throw Error(Errc::inclusion_not_functorial, "overlap class without a piece image");
  return it->second;
}

void check_inclusion(const HomTable& t0, const HomTable& tk, const PieceInclusion& incl,
                     const char* piece_name) {
  if (static_cast<int>(incl.objects.size()) != t0.object_count())
    throw Error(Errc::inclusion_not_functorial, "inclusion object map has the wrong size");
  // identities to identities
  for (int a = 0; a < t0.object_count(); ++a) {
    auto id0 = t0.hom(a, a).identity();
    if (!id0) continue;
    if (mapped_class(incl, a, a, *id0) != tk.identity(incl.objects[a]))
      throw Error(Errc::inclusion_not_functorial,
                  std::string("identity broken in piece ") + piece_name);
  }
  // injectivity per hom-set
  for (int a = 0; a < t0.object_count(); ++a) {
    for (int b = 0; b < t0.object_count(); ++b) {
      std::set<int> image;
      for (size_t c = 0; c < t0.hom(a, b).classes.size(); ++c) {
        if (!image.insert(mapped_class(incl, a, b, static_cast<int>(c))).second)
          throw Error(Errc::inclusion_not_functorial,
                      "overlap classes " + t0.grid().label_of(t0.object(a)) + " -> " +
                          t0.grid().label_of(t0.object(b)) + " merge in piece " + piece_name);
      }
    }
  }
  // compatibility with composition where both tables compose
  for (int a = 0; a < t0.object_count(); ++a) {
    for (int b = 0; b < t0.object_count(); ++b) {
      for (int c = 0; c < t0.object_count(); ++c) {
        for (size_t f = 0; f < t0.hom(a, b).classes.size(); ++f) {
          for (size_t h = 0; h < t0.hom(b, c).classes.size(); ++h) {
            auto comp0 = t0.compose(a, b, static_cast<int>(f), c, static_cast<int>(h));
            if (!comp0) continue;
            auto compk = tk.compose(incl.objects[a], incl.objects[b],
                                    mapped_class(incl, a, b, static_cast<int>(f)),
                                    incl.objects[c],
                                    mapped_class(incl, b, c, static_cast<int>(h)));
            if (!compk || *compk != mapped_class(incl, a, c, *comp0))
              throw Error(Errc::inclusion_not_functorial,
                          "composition broken in piece " + std::string(piece_name) + " at " +
                              t0.grid().label_of(t0.object(a)) + " -> " +
                              t0.grid().label_of(t0.object(c)));
          }
        }
      }
    }
  }
}

} // namespace

std::vector<int> CatPresentation::indecomposable() const {
  // identified generators (single-generator relations) count once; a class is
  // decomposable when any member is the composite of two generators
  UnionFind uf(generators.size());
  for (const auto& [lhs, rhs] : relations) {
    if (lhs.size() == 1 && rhs.size() == 1) uf.merge(lhs[0], rhs[0]);
  }
  std::vector<char> dec(generators.size(), 0);
  for (const auto& [lhs, rhs] : relations) {
    if (lhs.size() == 2 && rhs.size() == 1) dec[uf.find(rhs[0])] = 1;
    if (rhs.size() == 2 && lhs.size() == 1) dec[uf.find(lhs[0])] = 1;
  }
  std::vector<int> out;
  for (size_t i = 0; i < generators.size(); ++i) {
    if (uf.find(i) == i && !dec[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

CatPresentation pushout_presentation(const HomTable& t1, const HomTable& t2, const HomTable& t0,
                                     const PieceInclusion& incl1, const PieceInclusion& incl2) {
  check_inclusion(t0, t1, incl1, "1");
  check_inclusion(t0, t2, incl2, "2");

  CatPresentation pres;
  int n1 = t1.object_count(), n2 = t2.object_count();
  UnionFind uf(n1 + n2);
  for (int i = 0; i < t0.object_count(); ++i) uf.merge(incl1.objects[i], n1 + incl2.objects[i]);
  std::vector<int> object_id(n1 + n2, -1);
  for (int s = 0; s < n1 + n2; ++s) {
    size_t r = uf.find(s);
    if (object_id[r] < 0) {
      object_id[r] = pres.object_count++;
      pres.object_labels.push_back(r < static_cast<size_t>(n1)
                                       ? t1.grid().label_of(t1.object(static_cast<int>(r)))
                                       : t2.grid().label_of(t2.object(static_cast<int>(r) - n1)));
    }
    object_id[s] = object_id[r];
  }
  for (int i = 0; i < n1; ++i) pres.object_of_t1.push_back(object_id[i]);
  for (int j = 0; j < n2; ++j) pres.object_of_t2.push_back(object_id[n1 + j]);

  // generators: all non-identity classes, piece 1 first, deterministic order
  std::map<std::tuple<int, int, int, int>, int> gen_of; // (piece, a, b, class)
  auto add_generators = [&](const HomTable& t, int piece, const std::vector<int>& obj_map) {
    for (int a = 0; a < t.object_count(); ++a) {
      for (int b = 0; b < t.object_count(); ++b) {
        const ClassSet& cs = t.hom(a, b);
        auto id = cs.identity();
        for (size_t c = 0; c < cs.classes.size(); ++c) {
          if (id && static_cast<int>(c) == *id) continue;
          gen_of[{piece, a, b, static_cast<int>(c)}] = static_cast<int>(pres.generators.size());
          pres.generators.push_back(
              {obj_map[a], obj_map[b], piece, a, b, static_cast<int>(c)});
        }
      }
    }
  };
  add_generators(t1, 1, pres.object_of_t1);
  add_generators(t2, 2, pres.object_of_t2);

  // relations: the piece composition tables ...
  auto add_compositions = [&](const HomTable& t, int piece) {
    for (int a = 0; a < t.object_count(); ++a) {
      for (int b = 0; b < t.object_count(); ++b) {
        auto idb = t.hom(b, b).identity();
        for (int c = 0; c < t.object_count(); ++c) {
          auto ida = t.hom(a, a).identity();
          for (size_t f = 0; f < t.hom(a, b).classes.size(); ++f) {
            if (a == b && ida && static_cast<int>(f) == *ida) continue;
            for (size_t h = 0; h < t.hom(b, c).classes.size(); ++h) {
              if (b == c && idb && static_cast<int>(h) == *idb) continue;
              auto comp = t.compose(a, b, static_cast<int>(f), c, static_cast<int>(h));
              if (!comp) continue; // escaped a truncated table: no relation recorded
              CatPresentation::Word lhs{gen_of.at({piece, a, b, static_cast<int>(f)}),
                                        gen_of.at({piece, b, c, static_cast<int>(h)})};
              CatPresentation::Word rhs;
              std::optional<int> idac =
                  a == c ? t.hom(a, a).identity() : std::optional<int>{};
              if (!(idac && *comp == *idac))
                rhs.push_back(gen_of.at({piece, a, c, *comp}));
              pres.relations.push_back({lhs, rhs});
            }
          }
        }
      }
    }
  };
  add_compositions(t1, 1);
  add_compositions(t2, 2);

  // ... plus the overlap identifications
  for (int a = 0; a < t0.object_count(); ++a) {
    for (int b = 0; b < t0.object_count(); ++b) {
      const ClassSet& cs = t0.hom(a, b);
      auto id0 = cs.identity();
      for (size_t c = 0; c < cs.classes.size(); ++c) {
        if (id0 && static_cast<int>(c) == *id0) continue;
        int g1 = gen_of.at({1, incl1.objects[a], incl1.objects[b],
                            mapped_class(incl1, a, b, static_cast<int>(c))});
        int g2 = gen_of.at({2, incl2.objects[a], incl2.objects[b],
                            mapped_class(incl2, a, b, static_cast<int>(c))});
        pres.relations.push_back({{g1}, {g2}});
      }
    }
  }
  return pres;
}

CatPresentation pushout_presentation(const HomTable& t1, const HomTable& t2, const HomTable& t0) {
  return pushout_presentation(t1, t2, t0, inclusion_same_grid(t0, t1),
                              inclusion_same_grid(t0, t2));
}

namespace {

using Word = CatPresentation::Word;

// Presentation rewritten over the indecomposable generators: identified
// generators collapse to one representative and every decomposable generator
// is substituted by a defining decomposition, so word length counts
// indecomposable factors (the grading the hom-sets are reported in).
struct ReducedPres {
  std::vector<Word> dec;                       // generator -> indecomposable word
  std::vector<std::vector<int>> out_gens;      // object -> outgoing indecomposables
  std::vector<std::pair<Word, Word>> relations;
  int max_side = 2;
};

ReducedPres reduce_presentation(const CatPresentation& pres) {
  size_t n = pres.generators.size();
  UnionFind uf(n);
  for (const auto& [lhs, rhs] : pres.relations) {
    if (lhs.size() == 1 && rhs.size() == 1) uf.merge(lhs[0], rhs[0]);
  }
  // first defining composition per representative
  std::vector<std::pair<int, int>> defining(n, {-1, -1});
  for (const auto& [lhs, rhs] : pres.relations) {
    if (lhs.size() == 2 && rhs.size() == 1) {
      size_t r = uf.find(rhs[0]);
      if (defining[r].first < 0) defining[r] = {lhs[0], lhs[1]};
    }
  }

  ReducedPres red;
  red.dec.assign(n, {});
  std::vector<char> state(n, 0); // 0 fresh, 1 in progress, 2 done
  std::function<const Word&(int)> dec = [&](int g) -> const Word& {
    size_t r = uf.find(g);
    if (state[r] == 2) return red.dec[r];
    if (state[r] == 1 || defining[r].first < 0) {
      // indecomposable (or defensively, a cyclic definition)
      red.dec[r] = {static_cast<int>(r)};
    } else {
      state[r] = 1;
      Word w = dec(defining[r].first);
      const Word& tail = dec(defining[r].second);
      w.insert(w.end(), tail.begin(), tail.end());
      red.dec[r] = std::move(w);
    }
    state[r] = 2;
    return red.dec[r];
  };
  for (size_t g = 0; g < n; ++g) red.dec[g] = dec(static_cast<int>(g));

  red.out_gens.resize(pres.object_count);
  for (size_t g = 0; g < n; ++g) {
    if (uf.find(g) == g && red.dec[g].size() == 1 && red.dec[g][0] == static_cast<int>(g))
      red.out_gens[pres.generators[g].src].push_back(static_cast<int>(g));
  }

  auto substitute = [&](const Word& w) {
    Word out;
    for (int g : w) {
      const Word& d = red.dec[uf.find(g)];
      out.insert(out.end(), d.begin(), d.end());
    }
    return out;
  };
  for (const auto& [lhs, rhs] : pres.relations) {
    Word l = substitute(lhs), r = substitute(rhs);
    if (l == r) continue;
    red.max_side = std::max({red.max_side, static_cast<int>(l.size()),
                             static_cast<int>(r.size())});
    red.relations.push_back({std::move(l), std::move(r)});
  }
  return red;
}

struct WordClosure {
  std::vector<Word> words; // sorted by (length, lex)
  std::map<Word, int> id_of;
  UnionFind uf{0};
  bool overflow = false;
};

constexpr size_t kWordCap = 200000;

// All indecomposable-generator words a -> b of length <= bound.
WordClosure enumerate_words(const CatPresentation& pres, const ReducedPres& red, int a, int b,
                            int bound) {
  WordClosure wc;
  const auto& out_gens = red.out_gens;

  Word cur;
  std::function<void(int)> dfs = [&](int at) {
    if (wc.overflow) return;
    if (at == b) {
      if (wc.words.size() >= kWordCap) {
        wc.overflow = true;
        return;
      }
      wc.words.push_back(cur);
    }
    if (static_cast<int>(cur.size()) == bound) return;
    for (int gi : out_gens[at]) {
      cur.push_back(gi);
      dfs(pres.generators[gi].dst);
      cur.pop_back();
      if (wc.overflow) return;
    }
  };
  dfs(a);
  std::sort(wc.words.begin(), wc.words.end(), [](const Word& x, const Word& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  for (size_t i = 0; i < wc.words.size(); ++i) wc.id_of[wc.words[i]] = static_cast<int>(i);
  return wc;
}

// Congruence closure over the enumerated words by single-relation rewrites.
void close_words(const CatPresentation& pres, const ReducedPres& red, int a, WordClosure& wc,
                 int bound) {
  wc.uf = UnionFind(wc.words.size());
  std::vector<std::pair<Word, Word>> rules;
  for (const auto& [l, r] : red.relations) {
    rules.push_back({l, r});
    rules.push_back({r, l});
  }
  for (size_t wi = 0; wi < wc.words.size(); ++wi) {
    const Word w = wc.words[wi];
    // object at each position along the word
    std::vector<int> obj(w.size() + 1);
    obj[0] = a;
    for (size_t p = 0; p < w.size(); ++p) obj[p + 1] = pres.generators[w[p]].dst;
    for (size_t p = 0; p <= w.size(); ++p) {
      for (const auto& [lhs, rhs] : rules) {
        if (p + lhs.size() > w.size()) continue;
        if (!std::equal(lhs.begin(), lhs.end(), w.begin() + p)) continue;
        if (lhs.empty()) {
          // inserting rhs needs matching endpoints at this position
          if (rhs.empty() || pres.generators[rhs.front()].src != obj[p]) continue;
        }
        Word next(w.begin(), w.begin() + p);
        next.insert(next.end(), rhs.begin(), rhs.end());
        next.insert(next.end(), w.begin() + p + lhs.size(), w.end());
        if (static_cast<int>(next.size()) > bound) continue;
        auto it = wc.id_of.find(next);
        if (it == wc.id_of.end()) continue; // only under overflow
        wc.uf.merge(wi, it->second);
      }
    }
  }
}

// Partition of the words of length <= max_len: class id per word index.
std::map<int, std::vector<int>> short_partition(WordClosure& wc, int max_len) {
  std::map<int, std::vector<int>> part;
  for (size_t i = 0; i < wc.words.size(); ++i) {
    if (static_cast<int>(wc.words[i].size()) > max_len) continue;
    part[static_cast<int>(wc.uf.find(i))].push_back(static_cast<int>(i));
  }
  return part;
}

bool everything_reduces(WordClosure& wc, int max_len) {
  std::set<size_t> reducible;
  for (size_t i = 0; i < wc.words.size(); ++i) {
    if (static_cast<int>(wc.words[i].size()) <= max_len) reducible.insert(wc.uf.find(i));
  }
  for (size_t i = 0; i < wc.words.size(); ++i) {
    if (!reducible.count(wc.uf.find(i))) return false;
  }
  return true;
}

} // namespace

PresHom hom_from_presentation(const CatPresentation& pres, int a, int b, int max_len) {
  ReducedPres red = reduce_presentation(pres);
  int bound = max_len + red.max_side; // headroom for one expansion step
  WordClosure wc = enumerate_words(pres, red, a, b, bound);
  close_words(pres, red, a, wc, bound);

  PresHom out;
  for (auto& [root, members] : short_partition(wc, max_len)) {
    out.classes.push_back(wc.words[members.front()]); // (length, lex)-least member
  }
  std::sort(out.classes.begin(), out.classes.end(), [](const Word& x, const Word& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });

  // conservative exactness certificate: every slack word reduces below the
  // bound (then by induction every longer word does too), and the short-word
  // partition is unchanged with one more level of slack
  out.exact = !wc.overflow && everything_reduces(wc, max_len);
  if (out.exact) {
    WordClosure wider = enumerate_words(pres, red, a, b, bound + 1);
    close_words(pres, red, a, wider, bound + 1);
    if (wider.overflow || !everything_reduces(wider, max_len)) {
      out.exact = false;
    } else {
      auto blocks = [](std::map<int, std::vector<int>> part, WordClosure& c) {
        std::set<std::vector<Word>> out_blocks;
        for (auto& [root, members] : part) {
          std::vector<Word> block;
          for (int m : members) block.push_back(c.words[m]);
          out_blocks.insert(std::move(block));
        }
        return out_blocks;
      };
      if (blocks(short_partition(wc, max_len), wc) !=
          blocks(short_partition(wider, max_len), wider))
        out.exact = false;
    }
  }
  return out;
}

LatticePath evaluate_word(const CatPresentation& pres, const HomTable& t1, const HomTable& t2,
                          const CatPresentation::Word& word, GridComplex::Vertex start) {
  LatticePath p{start, {}};
  for (int gi : word) {
    const auto& gen = pres.generators[gi];
    const HomTable& t = gen.piece == 1 ? t1 : t2;
    const LatticePath& c = t.hom(gen.piece_src, gen.piece_dst).classes[gen.piece_class].canonical;
    p.steps.insert(p.steps.end(), c.steps.begin(), c.steps.end());
  }
  return p;
}

PushoutReport verify_pushout(const GridComplex& g, const Cover& cover, const Budget& budget,
                             int max_len) {
  PushoutReport report;
  HomTable t1 = HomTable::full_subcategory(g, cover.a1, budget, &cover.x1);
  HomTable t2 = HomTable::full_subcategory(g, cover.a2, budget, &cover.x2);
  HomTable t0 = HomTable::full_subcategory(g, cover.a0, budget, &cover.x0);
  report.presentation = pushout_presentation(t1, t2, t0);
  const CatPresentation& pres = report.presentation;

  std::vector<GridComplex::Vertex> A = cover.a1;
  A.insert(A.end(), cover.a2.begin(), cover.a2.end());
  A = sorted_unique(std::move(A));
  HomTable direct = HomTable::full_subcategory(g, A, budget);

  std::vector<GridComplex::Vertex> vert(pres.object_count);
  for (int i = 0; i < t1.object_count(); ++i) vert[pres.object_of_t1[i]] = t1.object(i);
  for (int j = 0; j < t2.object_count(); ++j) vert[pres.object_of_t2[j]] = t2.object(j);

  for (int oa = 0; oa < pres.object_count; ++oa) {
    for (int ob = 0; ob < pres.object_count; ++ob) {
      PresHom ph = hom_from_presentation(pres, oa, ob, max_len);
      int ia = *direct.index_of(vert[oa]), ib = *direct.index_of(vert[ob]);
      const ClassSet& dh = direct.hom(ia, ib);
      if (!ph.exact || !dh.exact) report.exact = false;
      std::set<int> image;
      std::string pair = g.label_of(vert[oa]) + " -> " + g.label_of(vert[ob]);
      for (const auto& word : ph.classes) {
        LatticePath p = evaluate_word(pres, t1, t2, word, vert[oa]);
        auto cls = dh.class_of(p);
        if (!cls) {
          report.failures.push_back("pushout word escapes the direct table at " + pair);
          continue;
        }
        if (!image.insert(*cls).second)
          report.failures.push_back("two pushout classes evaluate equal at " + pair);
      }
      if (ph.exact && dh.exact && ph.classes.size() != dh.classes.size())
        report.failures.push_back("class counts differ at " + pair + ": pushout " +
                                  std::to_string(ph.classes.size()) + ", direct " +
                                  std::to_string(dh.classes.size()));
    }
  }

  if (cover.has_b()) {
    // the A-level pushout must include into the B-level one generator by
    // generator, with evaluation unchanged (the inclusion square commutes)
    HomTable tb1 = HomTable::full_subcategory(g, cover.b1, budget, &cover.x1);
    HomTable tb2 = HomTable::full_subcategory(g, cover.b2, budget, &cover.x2);
    HomTable tb0 = HomTable::full_subcategory(g, cover.b0, budget, &cover.x0);
    CatPresentation presB = pushout_presentation(tb1, tb2, tb0);
    std::map<std::tuple<int, int, int, int>, int> genB;
    for (size_t i = 0; i < presB.generators.size(); ++i) {
      const auto& gn = presB.generators[i];
      const HomTable& tb = gn.piece == 1 ? tb1 : tb2;
      genB[{gn.piece, tb.object(gn.piece_src), tb.object(gn.piece_dst), gn.piece_class}] =
          static_cast<int>(i);
    }
    for (const auto& gn : pres.generators) {
      const HomTable& ta = gn.piece == 1 ? t1 : t2;
      GridComplex::Vertex va = ta.object(gn.piece_src), vb = ta.object(gn.piece_dst);
      auto it = genB.find({gn.piece, va, vb, gn.piece_class});
      if (it == genB.end()) {
        report.failures.push_back("A-level generator missing at B level: " + g.label_of(va) +
                                  " -> " + g.label_of(vb));
        continue;
      }
      const auto& gb = presB.generators[it->second];
      const HomTable& tb = gb.piece == 1 ? tb1 : tb2;
      const LatticePath& pa = ta.hom(gn.piece_src, gn.piece_dst).classes[gn.piece_class].canonical;
      const LatticePath& pb = tb.hom(gb.piece_src, gb.piece_dst).classes[gb.piece_class].canonical;
      if (pa.steps != pb.steps)
        report.failures.push_back("inclusion square broken at " + g.label_of(va) + " -> " +
                                  g.label_of(vb));
    }
  }

  report.passed = report.failures.empty();
  return report;
}

RetractData pushout_retract(const HomTable& glued, const HomTable& t1, const RetractData& d1,
                            const HomTable& t2, const RetractData& d2, const HomTable& t0,
                            const RetractData& d0) {
  if (d1.direction != d2.direction || d1.direction != d0.direction)
    throw Error(Errc::incompatible_retracts, "piece retract directions disagree");
  bool future = d1.direction == Direction::future;

  RetractData out;
  out.direction = d1.direction;
  std::set<int> cod;
  auto add_cod = [&](const HomTable& t, const RetractData& d) {
    for (int i : d.codomain) {
      auto gi = glued.index_of(t.object(i));
      if (!gi)
        throw Error(Errc::input_error, "retract target missing from the glued table");
      cod.insert(*gi);
    }
  };
  add_cod(t1, d1);
  add_cod(t2, d2);
  out.codomain.assign(cod.begin(), cod.end());

  out.assign.resize(glued.object_count());
  for (int x = 0; x < glued.object_count(); ++x) {
    GridComplex::Vertex v = glued.object(x);
    bool have = false;
    RetractAssignment chosen;
    auto consider = [&](const HomTable& t, const RetractData& d, const char* which) {
      auto ix = t.index_of(v);
      if (!ix) return;
      const RetractAssignment& asg = d.assign[*ix];
      GridComplex::Vertex tv = t.object(asg.target);
      auto gt = glued.index_of(tv);
      if (!gt)
        throw Error(Errc::input_error, "retract target missing from the glued table");
      const LatticePath& w = future ? t.hom(*ix, asg.target).classes[asg.witness].canonical
                                    : t.hom(asg.target, *ix).classes[asg.witness].canonical;
      auto cls = future ? glued.hom(x, *gt).class_of(w) : glued.hom(*gt, x).class_of(w);
      if (!cls)
        throw Error(Errc::inexact_hom_set, "piece witness escapes the glued table");
      if (!have) {
        chosen = {*gt, *cls};
        have = true;
      } else if (chosen.target != *gt || chosen.witness != *cls) {
        throw Error(Errc::incompatible_retracts, std::string("pieces disagree at ") +
                                                     glued.grid().label_of(v) + " (piece " +
                                                     which + ")");
      }
    };
    consider(t1, d1, "1");
    consider(t2, d2, "2");
    consider(t0, d0, "0");
    if (!have)
      throw Error(Errc::cover_invalid,
                  "object " + glued.grid().label_of(v) + " belongs to neither piece");
    out.assign[x] = chosen;
  }
  return out;
}

RetractChain pushout_chain(const HomTable& glued, const PieceChains& pieces) {
  ChainResult r1 = run_chain(*pieces.base1, *pieces.chain1);
  ChainResult r2 = run_chain(*pieces.base2, *pieces.chain2);
  ChainResult r0 = run_chain(*pieces.base0, *pieces.chain0);
  for (const ChainResult* r : {&r1, &r2, &r0}) {
    if (!r->passed)
      throw Error(Errc::analysis_error, "piece chain failed: " + r->failures.front());
  }
  if (r1.data.size() != r2.data.size() || r1.data.size() != r0.data.size())
    throw Error(Errc::input_error, "piece chains have different lengths");

  RetractChain out;
  HomTable cur = glued;
  for (size_t k = 0; k < r1.data.size(); ++k) {
    RetractData d = pushout_retract(cur, r1.tables[k], r1.data[k], r2.tables[k], r2.data[k],
                                    r0.tables[k], r0.data[k]);
    bool future = d.direction == Direction::future;
    ChainStep step;
    step.direction = d.direction;
    std::map<GridComplex::Vertex, std::pair<GridComplex::Vertex, std::vector<int>>> asg;
    for (int x = 0; x < cur.object_count(); ++x) {
      const RetractAssignment& a = d.assign[x];
      const LatticePath& w = future ? cur.hom(x, a.target).classes[a.witness].canonical
                                    : cur.hom(a.target, x).classes[a.witness].canonical;
      asg[cur.object(x)] = {cur.object(a.target), w.steps};
    }
    for (int i : d.codomain) step.targets.push_back(cur.object(i));
    step.assignment = std::move(asg);
    out.steps.push_back(std::move(step));
    cur = cur.restrict(d.codomain);
  }
  return out;
}

ModelReport pushout_extremal_model(const GridComplex& g, const Cover& cover,
                                   const RetractChain& m1, const RetractChain& m2,
                                   const RetractChain& m0, const Budget& budget) {
  auto verts_in = [&](const Region& r) {
    std::vector<GridComplex::Vertex> out;
    for (GridComplex::Vertex v : g.allowed_vertices()) {
      if (r.contains_vertex(g, v)) out.push_back(v);
    }
    return out;
  };
  HomTable b1 = HomTable::full_subcategory(g, verts_in(cover.x1), budget, &cover.x1);
  HomTable b2 = HomTable::full_subcategory(g, verts_in(cover.x2), budget, &cover.x2);
  HomTable b0 = HomTable::full_subcategory(g, verts_in(cover.x0), budget, &cover.x0);
  HomTable glued = HomTable::full_subcategory(g, g.allowed_vertices(), budget);
  PieceChains pieces{&b1, &m1, &b2, &m2, &b0, &m0};
  RetractChain chain = pushout_chain(glued, pieces);
  return verify_extremal_model(g, chain, budget);
}

} // namespace ditop
