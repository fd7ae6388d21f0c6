#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ditop/errors.hpp"
#include "ditop/van_kampen.hpp"
#include "functor_search.hpp"
#include "model_helpers.hpp"
#include "scenes.hpp"

#include <array>
#include <random>
#include <set>

using namespace ditop;
using namespace ditop::testing;

namespace {

// Vertical split of the square annulus: pieces overlap in the band of the two
// hole columns x in {1/3, 2/3}.
Window annulus_w1() { return Window{{{r(0), r(2, 3)}, {r(0), r(1)}}}; }
Window annulus_w2() { return Window{{{r(1, 3), r(1)}, {r(0), r(1)}}}; }

std::vector<GridComplex::Vertex> annulus_band(const GridComplex& g) {
  return vertices_where(
      g, [](const std::vector<Rat>& c) { return c[0] == Rat(1, 3) || c[0] == Rat(2, 3); });
}

Cover annulus_band_cover(const GridComplex& g) {
  auto band = annulus_band(g);
  auto a1 = band;
  a1.push_back(g.marked_vertex("a"));
  auto a2 = band;
  a2.push_back(g.marked_vertex("b"));
  return make_cover(g, annulus_w1(), annulus_w2(), a1, a2);
}

int pres_object(const CatPresentation& pres, const std::string& label) {
  for (int i = 0; i < pres.object_count; ++i) {
    if (pres.object_labels[i] == label) return i;
  }
  REQUIRE_MESSAGE(false, ("no pushout object labelled " + label));
  return -1;
}

Errc thrown_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  REQUIRE_MESSAGE(false, "expected an error");
  return Errc::analysis_error;
}

} // namespace

TEST_CASE("window regions and cover validation") {
  GridComplex g = compactify(square_annulus());

  SUBCASE("window bounds must be grid coordinates") {
    Window w{{{r(0), r(1, 2)}, {r(0), r(1)}}};
    CHECK(thrown_code([&] { (void)window_region(g, w); }) == Errc::input_error);
  }

  SUBCASE("a gap between the pieces is rejected") {
    Window w1{{{r(0), r(1, 3)}, {r(0), r(1)}}};
    Window w2{{{r(2, 3), r(1)}, {r(0), r(1)}}};
    CHECK(thrown_code([&] {
            (void)make_cover(g, w1, w2, {g.marked_vertex("a")}, {g.marked_vertex("b")});
          }) == Errc::cover_invalid);
  }

  SUBCASE("overlap objects must belong to both pieces") {
    auto band = annulus_band(g);
    auto a1 = band; // a2 misses the band vertices that sit in the overlap
    a1.push_back(g.marked_vertex("a"));
    CHECK(thrown_code([&] {
            (void)make_cover(g, annulus_w1(), annulus_w2(), a1, {g.marked_vertex("b")});
          }) == Errc::cover_invalid);
  }

  SUBCASE("valid cover computes the overlap band") {
    Cover c = annulus_band_cover(g);
    // overlap = the two hole columns, eight vertices, all in A0
    CHECK(c.a0.size() == 8);
    for (GridComplex::Vertex v : c.a0) CHECK(c.x0.contains_vertex(g, v));
    CHECK_FALSE(c.x0.contains_vertex(g, g.marked_vertex("a")));
    CHECK_FALSE(c.x0.contains_vertex(g, g.marked_vertex("b")));
  }
}

TEST_CASE("path decomposition over the annulus cover") {
  GridComplex g = compactify(square_annulus());
  Cover c = annulus_band_cover(g);
  GridComplex::Vertex a = g.marked_vertex("a"), b = g.marked_vertex("b");

  SUBCASE("bottom-right boundary path splits into two segments") {
    LatticePath p{a, {0, 0, 0, 1, 1, 1}};
    auto segs = decompose_path(g, c, p);
    REQUIRE(segs.size() == 2);
    CHECK(segs[0].second == 1);
    CHECK(segs[0].first.steps == std::vector<int>{0, 0});
    CHECK(segs[1].second == 2);
    CHECK(segs[1].first.steps == std::vector<int>{0, 1, 1, 1});
    CHECK(segs[1].first.start == *g.vertex_at({r(2, 3), r(0)}));
  }

  SUBCASE("a path inside the overlap stays one piece-1 segment") {
    LatticePath p{*g.vertex_at({r(1, 3), r(0)}), {1, 1, 1}};
    auto segs = decompose_path(g, c, p);
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].second == 1); // overlap edges go to piece 1
  }

  SUBCASE("empty path keeps its start and gets a piece label") {
    auto segs = decompose_path(g, c, LatticePath{b, {}});
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].second == 2);
  }

  SUBCASE("concatenating the segments restores every a -> b dipath") {
    PathSet ps = enumerate_dipaths(g, a, b, Budget{});
    REQUIRE_FALSE(ps.truncated);
    REQUIRE(ps.paths.size() == 20);
    for (const LatticePath& p : ps.paths) {
      auto segs = decompose_path(g, c, p);
      LatticePath glued{p.start, {}};
      GridComplex::Vertex at = p.start;
      int last = 0;
      for (const auto& [seg, label] : segs) {
        CHECK(seg.start == at);
        CHECK(label != last); // maximal segments: labels alternate
        last = label;
        glued.steps.insert(glued.steps.end(), seg.steps.begin(), seg.steps.end());
        at = path_end(g, seg);
      }
      CHECK(glued == p);
      CHECK(at == b);
    }
  }
}

TEST_CASE("same-grid inclusion rejects overlap objects outside the piece") {
  GridComplex g = compactify(square_annulus());
  HomTable t0 = HomTable::full_subcategory(g, {g.marked_vertex("a")}, Budget{});
  HomTable tk = HomTable::full_subcategory(g, {g.marked_vertex("b")}, Budget{});
  CHECK(thrown_code([&] { (void)inclusion_same_grid(t0, tk); }) ==
        Errc::inclusion_not_functorial);
}

TEST_CASE("annulus vertical split: pushout presentation matches the direct category") {
  GridComplex g = compactify(square_annulus());
  Cover c = annulus_band_cover(g);
  PushoutReport rep = verify_pushout(g, c, Budget{});
  for (const std::string& f : rep.failures) MESSAGE(f);
  CHECK(rep.passed);
  CHECK(rep.exact);

  PresHom ab = hom_from_presentation(rep.presentation, pres_object(rep.presentation, "a"),
                                     pres_object(rep.presentation, "b"), 6);
  CHECK(ab.exact);
  CHECK(ab.classes.size() == 2);
}

TEST_CASE("annulus triple cover: A-level pushout includes into the B-level one") {
  GridComplex g = compactify(square_annulus());
  auto band = annulus_band(g);
  auto a1 = band;
  a1.push_back(g.marked_vertex("a"));
  auto a2 = band;
  a2.push_back(g.marked_vertex("b"));
  Region x1 = window_region(g, annulus_w1()), x2 = window_region(g, annulus_w2());
  auto b1 = vertices_where(g, [&](const std::vector<Rat>&) { return true; });
  std::vector<GridComplex::Vertex> bb1, bb2;
  for (GridComplex::Vertex v : b1) {
    if (x1.contains_vertex(g, v)) bb1.push_back(v);
    if (x2.contains_vertex(g, v)) bb2.push_back(v);
  }
  Cover c = make_cover(g, annulus_w1(), annulus_w2(), a1, a2, bb1, bb2);
  REQUIRE(c.has_b());
  PushoutReport rep = verify_pushout(g, c, Budget{});
  for (const std::string& f : rep.failures) MESSAGE(f);
  CHECK(rep.passed);
}

TEST_CASE("swiss flag horizontal split: pushout presentation matches and is exact") {
  GridComplex g = compactify(swiss_flag());
  Window w1{{{r(0), r(1)}, {r(0), r(3, 5)}}};
  Window w2{{{r(0), r(1)}, {r(2, 5), r(1)}}};
  auto band = vertices_where(
      g, [](const std::vector<Rat>& c) { return c[1] == Rat(2, 5) || c[1] == Rat(3, 5); });
  auto a1 = band;
  a1.push_back(g.marked_vertex("a"));
  auto a2 = band;
  a2.push_back(g.marked_vertex("d"));
  Cover c = make_cover(g, w1, w2, a1, a2);
  PushoutReport rep = verify_pushout(g, c, Budget{});
  for (const std::string& f : rep.failures) MESSAGE(f);
  CHECK(rep.passed);
  CHECK(rep.exact);

  const CatPresentation& pres = rep.presentation;
  PresHom ad = hom_from_presentation(pres, pres_object(pres, "a"), pres_object(pres, "d"), 6);
  CHECK(ad.exact);
  CHECK(ad.classes.size() == 2);
  // the trap corner b still reaches d through neither piece
  PresHom bd = hom_from_presentation(pres, pres_object(pres, "b"), pres_object(pres, "d"), 6);
  CHECK(bd.exact);
  CHECK(bd.classes.empty());
}

// ---------------------------------------------------------------------------
// Small annulus cover used for the presentation-level tests: three objects per
// piece, overlap objects s (bottom of the left band column) and t (top of the
// right one).

namespace {

struct SmallCover {
  GridComplex g;
  Cover cover;
  HomTable t1, t2, t0;
  CatPresentation pres;
};

SmallCover small_annulus_cover() {
  SmallCover sc{compactify(square_annulus()), {}, {}, {}, {}, {}};
  GridComplex& g = sc.g;
  GridComplex::Vertex a = g.marked_vertex("a"), b = g.marked_vertex("b");
  GridComplex::Vertex s = *g.vertex_at({r(1, 3), r(0)});
  GridComplex::Vertex t = *g.vertex_at({r(2, 3), r(1)});
  sc.cover = make_cover(g, annulus_w1(), annulus_w2(), {a, s, t}, {s, t, b});
  sc.t1 = HomTable::full_subcategory(g, sc.cover.a1, Budget{}, &sc.cover.x1);
  sc.t2 = HomTable::full_subcategory(g, sc.cover.a2, Budget{}, &sc.cover.x2);
  sc.t0 = HomTable::full_subcategory(g, sc.cover.a0, Budget{}, &sc.cover.x0);
  sc.pres = pushout_presentation(sc.t1, sc.t2, sc.t0);
  return sc;
}

} // namespace

TEST_CASE("small annulus cover: presentation shape and hom-sets") {
  SmallCover sc = small_annulus_cover();
  const CatPresentation& pres = sc.pres;
  CHECK(pres.object_count == 4);
  // piece 1 contributes a->s, two a->t, two s->t; piece 2 two s->t, two s->b,
  // t->b; the overlap identifies the s->t pairs
  CHECK(pres.generators.size() == 10);
  CHECK(pres.indecomposable().size() == 4);

  int oa = pres_object(pres, "a"), ob = pres_object(pres, "b");
  PresHom ab = hom_from_presentation(pres, oa, ob, 4);
  CHECK(ab.exact);
  REQUIRE(ab.classes.size() == 2);

  // the two words evaluate to the two direct dihomotopy classes
  GridComplex::Vertex av = sc.g.marked_vertex("a");
  HomTable direct = HomTable::full_subcategory(
      sc.g, {av, sc.g.marked_vertex("b")}, Budget{});
  const ClassSet& dh = direct.hom(0, 1);
  REQUIRE(dh.classes.size() == 2);
  std::set<int> image;
  for (const auto& w : ab.classes) {
    LatticePath p = evaluate_word(pres, sc.t1, sc.t2, w, av);
    auto cls = dh.class_of(p);
    REQUIRE(cls);
    image.insert(*cls);
  }
  CHECK(image.size() == 2);
}

// ---------------------------------------------------------------------------
// Universal property: functors out of the computed pushout correspond
// bijectively to compatible functor pairs on the pieces.


TEST_CASE("pushout universal property over random finite target categories") {
  SmallCover sc = small_annulus_cover();
  const CatPresentation& pres = sc.pres;
  PieceInclusion incl1 = inclusion_same_grid(sc.t0, sc.t1);
  PieceInclusion incl2 = inclusion_same_grid(sc.t0, sc.t2);
  auto slots1 = class_slots(sc.t1), slots2 = class_slots(sc.t2);
  std::map<std::array<int, 3>, int> sidx1, sidx2;
  for (size_t k = 0; k < slots1.size(); ++k) sidx1[slots1[k]] = static_cast<int>(k);
  for (size_t k = 0; k < slots2.size(); ++k) sidx2[slots2[k]] = static_cast<int>(k);

  std::mt19937_64 rng(97531);
  long long pairs_seen = 0;
  for (int iter = 0; iter < 100; ++iter) {
    TargetCat C = random_target(rng);
    auto f1 = table_functors(sc.t1, C);
    auto f2 = table_functors(sc.t2, C);

    // compatible pairs: agree on the overlap objects and classes
    std::set<std::pair<Functor, Functor>> pairs;
    for (const Functor& p1 : f1) {
      for (const Functor& p2 : f2) {
        bool ok = true;
        for (int i = 0; i < sc.t0.object_count() && ok; ++i) {
          if (p1.obj[incl1.objects[i]] != p2.obj[incl2.objects[i]]) ok = false;
        }
        for (const auto& [key, c1] : incl1.classes) {
          if (!ok) break;
          auto [i, j, c0] = key;
          auto id0 = sc.t0.hom(i, i).identity();
          if (i == j && id0 && c0 == *id0) continue;
          int img1 = p1.img[sidx1.at({incl1.objects[i], incl1.objects[j], c1})];
          int img2 = p2.img[sidx2.at(
              {incl2.objects[i], incl2.objects[j], incl2.classes.at(key)})];
          if (img1 != img2) ok = false;
        }
        if (ok) pairs.insert({p1, p2});
      }
    }

    // restriction of each pushout functor along the piece inclusions
    auto funs = presentation_functors(pres, C);
    std::set<std::pair<Functor, Functor>> restricted;
    for (const Functor& F : funs) {
      Functor p1{std::vector<int>(sc.t1.object_count()), std::vector<int>(slots1.size())};
      Functor p2{std::vector<int>(sc.t2.object_count()), std::vector<int>(slots2.size())};
      for (int i = 0; i < sc.t1.object_count(); ++i) p1.obj[i] = F.obj[pres.object_of_t1[i]];
      for (int i = 0; i < sc.t2.object_count(); ++i) p2.obj[i] = F.obj[pres.object_of_t2[i]];
      for (size_t gi = 0; gi < pres.generators.size(); ++gi) {
        const auto& gen = pres.generators[gi];
        auto& p = gen.piece == 1 ? p1 : p2;
        const auto& sidx = gen.piece == 1 ? sidx1 : sidx2;
        p.img[sidx.at({gen.piece_src, gen.piece_dst, gen.piece_class})] = F.img[gi];
      }
      CHECK(restricted.insert({p1, p2}).second); // mediating functor is unique
    }
    CHECK(funs.size() == pairs.size()); // ... and exists for every pair
    CHECK(restricted == pairs);
    pairs_seen += static_cast<long long>(pairs.size());
  }
  CHECK(pairs_seen > 0);
}

// ---------------------------------------------------------------------------
// Cross-grid gluing: two-hole square and cylinder glued along a segment.

TEST_CASE("two-hole square glued to a cylinder along a segment") {
  GridComplex g1 = compactify(two_hole_square());
  GridComplex g2 = compactify(glued_cylinder());
  GridComplex g0 = compactify(unit_segment());

  std::vector<GridComplex::Vertex> marks1;
  for (const char* n : {"a", "p", "m", "m'", "q", "b"}) marks1.push_back(g1.marked_vertex(n));
  std::sort(marks1.begin(), marks1.end());
  HomTable t1 = HomTable::full_subcategory(g1, marks1, Budget{});
  REQUIRE(t1.all_exact());

  Budget loop_budget{200000, 12};
  HomTable t2 = HomTable::full_subcategory(
      g2, {g2.marked_vertex("m"), g2.marked_vertex("m'")}, loop_budget);
  HomTable t0 = HomTable::full_subcategory(
      g0, {g0.marked_vertex("m"), g0.marked_vertex("m'")}, Budget{});
  REQUIRE(t0.object(0) == g0.marked_vertex("m"));

  int m1 = *t1.index_of(g1.marked_vertex("m")), m1p = *t1.index_of(g1.marked_vertex("m'"));
  int m2 = *t2.index_of(g2.marked_vertex("m")), m2p = *t2.index_of(g2.marked_vertex("m'"));

  // hand-built inclusions: endpoints map by name, the overlap segment class
  // maps to the straight vertical path in either piece
  auto build = [&](const HomTable& tk, int im, int imp,
                   GridComplex::Vertex vm) -> PieceInclusion {
    PieceInclusion incl;
    incl.objects = {im, imp};
    incl.classes[{0, 0, *t0.hom(0, 0).identity()}] = tk.identity(im);
    incl.classes[{1, 1, *t0.hom(1, 1).identity()}] = tk.identity(imp);
    auto vert = tk.hom(im, imp).class_of(LatticePath{vm, {1, 1, 1}});
    REQUIRE(vert);
    incl.classes[{0, 1, 0}] = *vert;
    return incl;
  };
  REQUIRE(t0.hom(0, 1).classes.size() == 1);
  PieceInclusion incl1 = build(t1, m1, m1p, g1.marked_vertex("m"));
  PieceInclusion incl2 = build(t2, m2, m2p, g2.marked_vertex("m"));

  CatPresentation pres = pushout_presentation(t1, t2, t0, incl1, incl2);
  CHECK(pres.object_count == 6);

  // indecomposable generators: the five boundary hops, the two diagonals
  // through the gaps, and one winding loop at each of m, m'
  auto indec = pres.indecomposable();
  REQUIRE(indec.size() == 9);
  std::multiset<std::pair<std::string, std::string>> ends, expect{
      {"a", "p"}, {"p", "m"}, {"m", "m'"}, {"m'", "q"}, {"q", "b"},
      {"a", "m'"}, {"m", "b"}, {"m", "m"}, {"m'", "m'"}};
  for (int gi : indec) {
    ends.insert({pres.object_labels[pres.generators[gi].src],
                 pres.object_labels[pres.generators[gi].dst]});
  }
  CHECK(ends == expect);

  int om = pres_object(pres, "m"), omp = pres_object(pres, "m'");
  int oa = pres_object(pres, "a"), ob = pres_object(pres, "b");

  // loop hom-sets are graded by winding number: one class per length
  for (int o : {om, omp}) {
    PresHom loops = hom_from_presentation(pres, o, o, 3);
    CHECK_FALSE(loops.exact); // arbitrarily long windings exist
    REQUIRE(loops.classes.size() == 4);
    for (int len = 0; len <= 3; ++len)
      CHECK(static_cast<int>(loops.classes[len].size()) == len);
  }

  // m -> m' with at most k windings has k+1 classes per winding count: the
  // crossing can pass each copy of the hole on either side
  PresHom across = hom_from_presentation(pres, om, omp, 3);
  CHECK_FALSE(across.exact);
  CHECK(across.classes.size() == 6); // 1 + 2 + 3 for windings 0, 1, 2

  // a -> b: three ways through the gaps, each left/right route dressed with
  // the windings that fit in five generators
  PresHom ab = hom_from_presentation(pres, oa, ob, 5);
  CHECK_FALSE(ab.exact);
  CHECK(ab.classes.size() == 7);
}

// ---------------------------------------------------------------------------
// Gluing retract chains: the overlap band is fixed by both piece chains, so
// the piecewise reflections agree and glue.

namespace {

struct ChainSetup {
  GridComplex g;
  Cover cover;
  HomTable b1, b2, b0, glued;
  RetractChain m1, m2, m0;
};

ChainSetup annulus_chain_setup() {
  ChainSetup cs{compactify(square_annulus()), {}, {}, {}, {}, {}, {}, {}, {}};
  GridComplex& g = cs.g;
  cs.cover = annulus_band_cover(g);
  auto in_region = [&](const Region& r) {
    std::vector<GridComplex::Vertex> out;
    for (GridComplex::Vertex v : g.allowed_vertices())
      if (r.contains_vertex(g, v)) out.push_back(v);
    return out;
  };
  Budget budget;
  cs.b1 = HomTable::full_subcategory(g, in_region(cs.cover.x1), budget, &cs.cover.x1);
  cs.b2 = HomTable::full_subcategory(g, in_region(cs.cover.x2), budget, &cs.cover.x2);
  cs.b0 = HomTable::full_subcategory(g, in_region(cs.cover.x0), budget, &cs.cover.x0);
  cs.glued = HomTable::full_subcategory(g, g.allowed_vertices(), budget);

  auto band = annulus_band(g);
  GridComplex::Vertex a = g.marked_vertex("a"), b = g.marked_vertex("b");
  GridComplex::Vertex a_up = *g.vertex_at({r(0), r(1, 3)});

  auto with = [](std::vector<GridComplex::Vertex> base,
                 std::initializer_list<GridComplex::Vertex> more) {
    base.insert(base.end(), more);
    return base;
  };
  cs.m1.steps.push_back({Direction::future, with(band, {a, a_up}), std::nullopt});
  cs.m1.steps.push_back({Direction::past, with(band, {a}), std::nullopt});
  cs.m2.steps.push_back({Direction::future, with(band, {b}), std::nullopt});
  cs.m2.steps.push_back({Direction::past, with(band, {b}), std::nullopt});
  cs.m0.steps.push_back({Direction::future, band, std::nullopt});
  cs.m0.steps.push_back({Direction::past, band, std::nullopt});
  return cs;
}

} // namespace

TEST_CASE("single-step chain gluing reduces to the retract pushout") {
  ChainSetup cs = annulus_chain_setup();
  RetractChain s1{{cs.m1.steps[0]}}, s2{{cs.m2.steps[0]}}, s0{{cs.m0.steps[0]}};
  ChainResult r1 = run_chain(cs.b1, s1), r2 = run_chain(cs.b2, s2), r0 = run_chain(cs.b0, s0);
  REQUIRE(r1.passed);
  REQUIRE(r2.passed);
  REQUIRE(r0.passed);

  RetractData d = pushout_retract(cs.glued, r1.tables[0], r1.data[0], r2.tables[0], r2.data[0],
                                  r0.tables[0], r0.data[0]);
  CHECK(verify_retract(cs.glued, d).passed);

  PieceChains pieces{&cs.b1, &s1, &cs.b2, &s2, &cs.b0, &s0};
  RetractChain glued_chain = pushout_chain(cs.glued, pieces);
  REQUIRE(glued_chain.steps.size() == 1);
  std::vector<GridComplex::Vertex> targets;
  for (int i : d.codomain) targets.push_back(cs.glued.object(i));
  CHECK(glued_chain.steps[0].targets == targets);
  CHECK(run_chain(cs.glued, glued_chain).passed);
}

TEST_CASE("glued extremal model on the annulus split") {
  ChainSetup cs = annulus_chain_setup();
  ModelReport rep = pushout_extremal_model(cs.g, cs.cover, cs.m1, cs.m2, cs.m0, Budget{});
  for (const std::string& f : rep.failures) MESSAGE(f);
  REQUIRE(rep.passed);
  CHECK(rep.ext_covered);
  // final objects: the band plus the two extremal corners
  auto final_objs = rep.final_table().objects();
  auto expect = annulus_band(cs.g);
  expect.push_back(cs.g.marked_vertex("a"));
  expect.push_back(cs.g.marked_vertex("b"));
  std::sort(expect.begin(), expect.end());
  CHECK(final_objs == expect);
}

TEST_CASE("piece chains disagreeing on the overlap are rejected") {
  ChainSetup cs = annulus_chain_setup();
  // piece 2 retracts a band vertex that the other pieces keep fixed
  GridComplex::Vertex moved = *cs.g.vertex_at({r(1, 3), r(1)});
  for (ChainStep& step : cs.m2.steps) {
    auto& targets = step.targets;
    targets.erase(std::remove(targets.begin(), targets.end(), moved), targets.end());
  }
  PieceChains pieces{&cs.b1, &cs.m1, &cs.b2, &cs.m2, &cs.b0, &cs.m0};
  CHECK(thrown_code([&] { (void)pushout_chain(cs.glued, pieces); }) ==
        Errc::incompatible_retracts);
}
